#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cmath>

#include "hcp/error.hpp"
#include "hcp/formats.hpp"
#include "hcp/lightbulb.hpp"
#include "hcp/rates.hpp"
#include "hcp/solver.hpp"

namespace py = pybind11;

namespace {

std::vector<hcp::BitVector> to_vectors(const std::vector<std::string>& rows) {
    std::vector<hcp::BitVector> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(hcp::BitVector::from_string(r));
    }
    return out;
}

std::vector<std::string> to_strings(const std::vector<hcp::BitVector>& vs) {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
        out.push_back(v.to_string());
    }
    return out;
}

hcp::SolveConfig make_config(std::uint64_t seed, std::optional<std::uint64_t> trials, std::optional<std::size_t> radius,
                             const std::string& code, std::size_t workers, double epsilon,
                             std::optional<bool> early_exit, bool adjacent_equal_only) {
    hcp::SolveConfig cfg;
    cfg.seed = seed;
    cfg.trial_budget = trials;
    cfg.radius = radius;
    const auto kind = hcp::parse_code_kind(code);
    if (!kind) {
        throw hcp::ConfigError("code must be 'gilbert' or 'concat'");
    }
    cfg.code_kind = *kind;
    cfg.workers = workers;
    cfg.epsilon = epsilon;
    cfg.early_exit = early_exit;
    cfg.adjacent_equal_only = adjacent_equal_only;
    cfg.validate();
    return cfg;
}

#define HCP_SOLVE_ARGS                                                                                               \
    py::kw_only(), py::arg("seed") = 0, py::arg("trials") = py::none(), py::arg("radius") = py::none(),            \
        py::arg("code") = "gilbert", py::arg("workers") = 1, py::arg("epsilon") = 1.0,                              \
        py::arg("early_exit") = py::none(), py::arg("adjacent_equal_only") = false

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact closest pair in Hamming space via error-correcting codes";

    auto base = py::register_exception<hcp::Error>(m, "HcpError", PyExc_RuntimeError);
    py::register_exception<hcp::DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<hcp::DomainError>(m, "DomainError", base.ptr());
    py::register_exception<hcp::ResourceError>(m, "ResourceError", base.ptr());
    py::register_exception<hcp::ConstructionError>(m, "ConstructionError", base.ptr());
    py::register_exception<hcp::ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<hcp::ParseError>(m, "ParseError", base.ptr());
    py::register_exception<hcp::DataError>(m, "DataError", base.ptr());
    py::register_exception<hcp::InvariantError>(m, "InvariantError", base.ptr());

    // rates
    m.def("h2", &hcp::rates::h2, py::arg("p"));
    m.def("h2_inv", &hcp::rates::h2_inv, py::arg("y"));
    m.def("kappa_gv", &hcp::rates::kappa_gv, py::arg("delta"));
    m.def("kappa_z", &hcp::rates::kappa_z, py::arg("delta"));
    m.def("trial_count", &hcp::rates::trial_count, py::arg("m"), py::arg("n"), py::arg("log2K"), py::arg("dmin"),
          py::arg("radius"));
    m.def("gapped_trial_count", &hcp::rates::gapped_trial_count, py::arg("m"), py::arg("n"), py::arg("log2K"),
          py::arg("dmin"), py::arg("radius"));
    m.def(
        "table1",
        [](std::optional<std::vector<double>> deltas) {
            const auto ds = deltas.value_or(hcp::rates::table1_deltas());
            py::list rows;
            for (const auto& r : hcp::rates::table1(ds)) {
                py::dict d;
                d["delta"] = r.delta;
                d["c_hamming"] = r.hamming.length_ratio;
                d["gamma_hamming"] = r.hamming.exponent;
                d["c_gv"] = r.gv.length_ratio;
                d["gamma_gv"] = r.gv.exponent;
                rows.append(d);
            }
            return rows;
        },
        py::arg("deltas") = py::none());

    // instances
    py::class_<hcp::Instance>(m, "Instance")
        .def(py::init([](const std::vector<std::string>& rows) { return hcp::Instance(to_vectors(rows)); }),
             py::arg("rows"))
        .def_property_readonly("n", &hcp::Instance::n)
        .def_property_readonly("m", &hcp::Instance::m)
        .def_property_readonly("rows", [](const hcp::Instance& i) { return to_strings(i.vectors()); })
        .def_property_readonly("planted",
                               [](const hcp::Instance& i) -> std::optional<std::tuple<std::size_t, std::size_t, std::size_t>> {
                                   if (!i.planted()) {
                                       return std::nullopt;
                                   }
                                   return std::make_tuple(i.planted()->i, i.planted()->j, i.planted()->distance);
                               })
        .def("__len__", &hcp::Instance::n);

    m.def(
        "generate_planted",
        [](std::size_t n, std::size_t mm, std::size_t dmin, std::optional<std::size_t> d2, std::uint64_t seed) {
            hcp::PlantedSpec spec;
            spec.n = n;
            spec.m = mm;
            spec.dmin = dmin;
            spec.d2 = d2;
            spec.seed = seed;
            return hcp::generate_planted(spec).instance;
        },
        py::arg("n"), py::arg("m"), py::arg("dmin"), py::arg("d2") = py::none(), py::arg("seed") = 0);
    m.def("read_instance", &hcp::io::read_instance, py::arg("path"));
    m.def("write_instance", &hcp::io::write_instance, py::arg("path"), py::arg("instance"));

    // solvers
    py::class_<hcp::PairResult>(m, "PairResult")
        .def_readonly("i", &hcp::PairResult::i)
        .def_readonly("j", &hcp::PairResult::j)
        .def_readonly("dist", &hcp::PairResult::dist)
        .def_readonly("trials_used", &hcp::PairResult::trials_used)
        .def_readonly("trials_planned", &hcp::PairResult::trials_planned)
        .def_readonly("seed", &hcp::PairResult::seed)
        .def_readonly("radius", &hcp::PairResult::radius)
        .def_property_readonly("algorithm",
                               [](const hcp::PairResult& r) { return std::string(hcp::algorithm_name(r.algorithm)); })
        .def_property_readonly("pair", [](const hcp::PairResult& r) { return std::make_pair(r.i, r.j); })
        .def("__eq__", [](const hcp::PairResult& a, const hcp::PairResult& b) { return a == b; })
        .def("__repr__", [](const hcp::PairResult& r) {
            return "PairResult(i=" + std::to_string(r.i) + ", j=" + std::to_string(r.j) +
                   ", dist=" + std::to_string(r.dist) + ", algorithm=" + std::string(hcp::algorithm_name(r.algorithm)) +
                   ")";
        });

    m.def("brute_force", &hcp::brute_force, py::arg("instance"));
    m.def(
        "solve_randomized",
        [](const hcp::Instance& inst, std::size_t dmin, std::uint64_t seed, std::optional<std::uint64_t> trials,
           std::optional<std::size_t> radius, const std::string& code, std::size_t workers, double eps,
           std::optional<bool> early, bool adj) {
            return hcp::solve_randomized(inst, dmin, make_config(seed, trials, radius, code, workers, eps, early, adj));
        },
        py::arg("instance"), py::arg("dmin"), HCP_SOLVE_ARGS);
    m.def(
        "solve_gapped",
        [](const hcp::Instance& inst, std::size_t dmin, std::size_t d2, std::uint64_t seed,
           std::optional<std::uint64_t> trials, std::optional<std::size_t> radius, const std::string& code,
           std::size_t workers, double eps, std::optional<bool> early, bool adj) {
            return hcp::solve_gapped(inst, dmin, d2, make_config(seed, trials, radius, code, workers, eps, early, adj));
        },
        py::arg("instance"), py::arg("dmin"), py::arg("d2"), HCP_SOLVE_ARGS);
    m.def(
        "solve_deterministic",
        [](const hcp::Instance& inst, std::size_t dmin, std::uint64_t seed, std::optional<std::uint64_t> trials,
           std::optional<std::size_t> radius, const std::string& code, std::size_t workers, double eps,
           std::optional<bool> early, bool adj) {
            return hcp::solve_deterministic(inst, dmin,
                                            make_config(seed, trials, radius, code, workers, eps, early, adj));
        },
        py::arg("instance"), py::arg("dmin"), HCP_SOLVE_ARGS);
    m.def(
        "search_dmin",
        [](const hcp::Instance& inst, std::uint64_t seed, std::optional<std::uint64_t> trials,
           std::optional<std::size_t> radius, const std::string& code, std::size_t workers, double eps,
           std::optional<bool> early, bool adj) {
            const auto r =
                hcp::search_dmin(inst, make_config(seed, trials, radius, code, workers, eps, early, adj));
            std::vector<std::size_t> radii;
            for (const auto& s : r.steps) {
                radii.push_back(s.radius);
            }
            return py::make_tuple(r.dmin, r.pair, radii);
        },
        py::arg("instance"), HCP_SOLVE_ARGS);
    m.def(
        "solve_bichromatic",
        [](const std::vector<std::string>& red, const std::vector<std::string>& blue, std::size_t dmin,
           std::uint64_t seed, std::optional<std::uint64_t> trials, std::optional<std::size_t> radius,
           const std::string& code, std::size_t workers, double eps, std::optional<bool> early, bool adj) {
            return hcp::solve_bichromatic(to_vectors(red), to_vectors(blue), dmin,
                                          make_config(seed, trials, radius, code, workers, eps, early, adj));
        },
        py::arg("red"), py::arg("blue"), py::arg("dmin"), HCP_SOLVE_ARGS);

    // codes
    py::class_<hcp::GilbertCode, std::shared_ptr<hcp::GilbertCode>>(m, "GilbertCode")
        .def(py::init([](std::size_t mm, std::size_t d, std::optional<std::size_t> radius) {
                 return std::make_shared<hcp::GilbertCode>(hcp::GilbertCode::build(mm, d, radius.value_or(d / 2)));
             }),
             py::arg("m"), py::arg("d"), py::arg("radius") = py::none())
        .def_property_readonly("m", &hcp::GilbertCode::m)
        .def_property_readonly("d", &hcp::GilbertCode::d)
        .def_property_readonly("size", &hcp::GilbertCode::size)
        .def_property_readonly("covering_radius", &hcp::GilbertCode::covering_radius)
        .def_property_readonly("codewords",
                               [](const hcp::GilbertCode& c) {
                                   std::vector<std::uint32_t> v;
                                   for (std::size_t k = 0; k < c.size(); ++k) {
                                       v.push_back(c.codeword_value(k));
                                   }
                                   return v;
                               })
        .def("lookup", &hcp::GilbertCode::lookup, py::arg("x"));

    py::class_<hcp::ReedSolomon>(m, "ReedSolomon")
        .def(py::init<unsigned, std::size_t, std::size_t>(), py::arg("t"), py::arg("n"), py::arg("k"))
        .def_property_readonly("length", &hcp::ReedSolomon::length)
        .def_property_readonly("dimension", &hcp::ReedSolomon::dimension)
        .def_property_readonly("min_distance", &hcp::ReedSolomon::min_distance)
        .def("encode", [](const hcp::ReedSolomon& rs, const std::vector<hcp::gf::Elem>& msg) { return rs.encode(msg); })
        .def("decode",
             [](const hcp::ReedSolomon& rs, const std::vector<hcp::gf::Elem>& word) { return rs.decode(word); });

    // light bulb
    m.def("sample_dimension", &hcp::lightbulb::sample_dimension, py::arg("n"), py::arg("rho"));
    m.def(
        "lightbulb",
        [](std::size_t n, double rho, std::optional<std::size_t> length, std::uint64_t seed, std::size_t workers) {
            const std::size_t mm = hcp::lightbulb::sample_dimension(n, rho);
            hcp::lightbulb::Config cfg;
            cfg.solve.seed = seed;
            cfg.solve.workers = workers;
            const auto rounds =
                static_cast<std::size_t>(std::ceil(cfg.repetition * std::log2(static_cast<double>(n)) - 1e-9));
            const auto inst = hcp::lightbulb::generate(n, rho, length.value_or(mm * rounds), seed);
            const auto res = hcp::lightbulb::solve(inst, cfg);
            py::dict d;
            d["pair"] = std::make_pair(res.pair.i, res.pair.j);
            d["planted"] = inst.planted;
            d["recovered"] = res.recovered(inst);
            d["votes"] = res.votes;
            d["rounds"] = res.rounds.size();
            d["sample_bits"] = res.m;
            d["threshold"] = res.threshold;
            return d;
        },
        py::arg("n"), py::arg("rho"), py::arg("length") = py::none(), py::arg("seed") = 0, py::arg("workers") = 1);
}
