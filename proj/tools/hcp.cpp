// hcp: command-line front end for the closest-pair solvers.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hcp/bench.hpp"
#include "hcp/error.hpp"
#include "hcp/formats.hpp"
#include "hcp/lightbulb.hpp"
#include "hcp/rates.hpp"
#include "hcp/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInvariant = 4;

/// Exhaustive minimum distance is only computed up to this many codewords.
constexpr std::size_t kInspectMaxCodewords = 4096;

struct SolveFlags {
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> trials;
    std::optional<std::size_t> radius;
    std::string code = "gilbert";
    std::size_t workers = 0;
    double epsilon = 1.0;
    std::string early_exit;
    std::string adjacent_equal_only = "off";
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("--seed", f.seed, "64-bit seed");
    cmd->add_option("--trials", f.trials, "trial budget override")->check(CLI::PositiveNumber);
    cmd->add_option("--radius", f.radius, "decode radius override");
    cmd->add_option("--code", f.code, "code family")->check(CLI::IsMember({"gilbert", "concat"}));
    cmd->add_option("--workers", f.workers, "worker threads (0: all processors)");
    cmd->add_option("--epsilon", f.epsilon, "radius growth for search, in (0, 1]");
    cmd->add_option("--early-exit", f.early_exit, "stop at the first pair within dmin")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--check-adjacent-equal-only", f.adjacent_equal_only, "only measure equal adjacent keys")
        ->check(CLI::IsMember({"on", "off"}));
}

hcp::SolveConfig to_config(const SolveFlags& f) {
    hcp::SolveConfig cfg;
    cfg.seed = f.seed;
    cfg.trial_budget = f.trials;
    cfg.radius = f.radius;
    cfg.code_kind = *hcp::parse_code_kind(f.code);
    cfg.workers = f.workers;
    cfg.epsilon = f.epsilon;
    if (!f.early_exit.empty()) {
        cfg.early_exit = f.early_exit == "on";
    }
    cfg.adjacent_equal_only = f.adjacent_equal_only == "on";
    cfg.validate();
    return cfg;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) {
        throw hcp::ResourceError("cannot write " + out_path);
    }
    out << text;
}

std::string join_steps(const std::vector<hcp::SearchStep>& steps, bool radii) {
    std::string s;
    for (const auto& st : steps) {
        if (!s.empty()) {
            s += ',';
        }
        s += std::to_string(radii ? st.radius : st.trials);
    }
    return s;
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

int cmd_gen(std::size_t n, std::size_t m, std::size_t dmin, std::optional<std::size_t> d2, std::uint64_t seed,
            const std::string& out, bool text) {
    hcp::PlantedSpec spec;
    spec.n = n;
    spec.m = m;
    spec.dmin = dmin;
    spec.d2 = d2;
    spec.seed = seed;
    const auto gen = hcp::generate_planted(spec);
    if (text) {
        emit(hcp::io::format_text_instance(gen.instance), out);
    } else {
        hcp::io::write_instance(out, gen.instance);
    }
    std::cerr << "generated n=" << n << " m=" << m << " planted=(" << gen.instance.planted()->i << ", "
              << gen.instance.planted()->j << ") dmin=" << dmin << " retries=" << gen.retries << '\n';
    return kExitOk;
}

int cmd_solve(const std::string& path, const std::string& algo, std::optional<std::size_t> dmin,
              std::optional<std::size_t> d2, const SolveFlags& flags, const std::string& out) {
    const auto inst = hcp::io::read_instance(path);
    const auto cfg = to_config(flags);
    const auto alg = hcp::parse_algorithm(algo);
    const bool needs_dmin = alg != hcp::Algorithm::brute && alg != hcp::Algorithm::search;
    if (needs_dmin && !dmin) {
        throw hcp::ConfigError("--dmin is required for --algo " + algo);
    }
    std::vector<std::pair<std::string, std::string>> extra;
    const auto t0 = std::chrono::steady_clock::now();
    hcp::PairResult result;
    switch (*alg) {
    case hcp::Algorithm::brute: result = hcp::brute_force(inst); break;
    case hcp::Algorithm::randomized: result = hcp::solve_randomized(inst, *dmin, cfg); break;
    case hcp::Algorithm::deterministic: result = hcp::solve_deterministic(inst, *dmin, cfg); break;
    case hcp::Algorithm::gapped:
        if (!d2) {
            throw hcp::ConfigError("--d2 is required for --algo gapped");
        }
        result = hcp::solve_gapped(inst, *dmin, *d2, cfg);
        break;
    case hcp::Algorithm::search: {
        const auto s = hcp::search_dmin(inst, cfg);
        result = s.pair;
        extra.emplace_back("dmin_found", std::to_string(s.dmin));
        extra.emplace_back("search_radii", join_steps(s.steps, true));
        extra.emplace_back("search_trials", join_steps(s.steps, false));
        break;
    }
    default: throw hcp::ConfigError("unsupported algorithm " + algo);
    }
    const double ms = elapsed_ms(t0);
    auto report = hcp::io::make_report(inst, result, cfg, ms);
    if (inst.planted()) {
        extra.emplace_back("planted_found",
                           result.i == inst.planted()->i && result.j == inst.planted()->j ? "true" : "false");
    }
    report.extra = std::move(extra);
    emit(hcp::io::format_report(report), out);
    return kExitOk;
}

int cmd_lightbulb(std::size_t n, double rho, std::optional<std::size_t> length, std::optional<std::size_t> rounds,
                  double repetition, const SolveFlags& flags, const std::string& out) {
    hcp::lightbulb::Config cfg;
    cfg.solve = to_config(flags);
    cfg.repetition = repetition;
    cfg.rounds = rounds;
    if (n < 2) {
        throw hcp::DomainError("light bulb needs n >= 2");
    }
    const std::size_t m = hcp::lightbulb::sample_dimension(n, rho);
    const std::size_t planned_rounds = rounds.value_or(
        static_cast<std::size_t>(std::ceil(repetition * std::log2(static_cast<double>(n)) - 1e-9)));
    const std::size_t len = length.value_or(m * std::max<std::size_t>(1, planned_rounds));

    const auto t0 = std::chrono::steady_clock::now();
    auto inst = hcp::lightbulb::generate(n, rho, len, flags.seed);
    std::size_t flips = 0;
    if (rho < 0) {
        // The harness knows the planted pair, so it re-randomizes until the flip separates it.
        constexpr std::size_t kMaxFlips = 64;
        while (true) {
            auto f = hcp::lightbulb::flip_negative(inst, flags.seed + flips);
            ++flips;
            if (f.separated) {
                inst = std::move(f.instance);
                break;
            }
            if (flips >= kMaxFlips) {
                throw hcp::DataError("no separating flip found");
            }
        }
    }
    const auto res = hcp::lightbulb::solve(inst, cfg);
    const double ms = elapsed_ms(t0);

    const hcp::Instance full(inst.sequences, hcp::PlantedInfo{inst.planted.first, inst.planted.second,
                                                               hcp::hamming(inst.sequences[inst.planted.first],
                                                                            inst.sequences[inst.planted.second])});
    auto report = hcp::io::make_report(full, res.pair, cfg.solve, ms);
    report.extra = {{"rho", fixed(rho, 6)},
                    {"sample_bits", std::to_string(res.m)},
                    {"threshold", std::to_string(res.threshold)},
                    {"rounds", std::to_string(res.rounds.size())},
                    {"votes", std::to_string(res.votes)},
                    {"flips", std::to_string(flips)},
                    {"planted_i", std::to_string(inst.planted.first)},
                    {"planted_j", std::to_string(inst.planted.second)},
                    {"planted_recovered", res.recovered(inst) ? "true" : "false"}};
    emit(hcp::io::format_report(report), out);
    return kExitOk;
}

int cmd_rates(bool table1, const std::vector<double>& deltas, const std::string& out) {
    std::vector<double> ds = table1 || deltas.empty() ? hcp::rates::table1_deltas() : deltas;
    std::ostringstream s;
    s << "delta\tc_hamming\tgamma_hamming\tc_gv\tgamma_gv\tkappa_gv\tkappa_z\n";
    for (const auto& row : hcp::rates::table1(ds)) {
        s << fixed(row.delta, 4) << '\t' << fixed(row.hamming.length_ratio, 4) << '\t'
          << fixed(row.hamming.exponent, 4) << '\t' << fixed(row.gv.length_ratio, 4) << '\t'
          << fixed(row.gv.exponent, 4) << '\t' << fixed(hcp::rates::kappa_gv(row.delta), 4) << '\t'
          << fixed(hcp::rates::kappa_z(row.delta), 4) << '\n';
    }
    emit(s.str(), out);
    return kExitOk;
}

int cmd_code_build(std::size_t m, std::size_t d, std::optional<std::size_t> radius, std::size_t max_bits,
                   const std::string& out) {
    const auto code = hcp::GilbertCode::build(m, d, radius.value_or(d / 2), max_bits);
    hcp::io::write_file(out, hcp::io::encode_code_table(code));
    std::cerr << "built m=" << m << " d=" << d << " K=" << code.size() << " covering_radius=" << code.covering_radius()
              << '\n';
    return kExitOk;
}

int cmd_code_inspect(const std::string& path) {
    const auto code = hcp::io::decode_code_table(hcp::io::read_file(path));
    std::ostringstream s;
    s << "m = " << code.m() << '\n'
      << "d = " << code.d() << '\n'
      << "radius = " << code.radius() << '\n'
      << "K = " << code.size() << '\n'
      << "log2K = " << fixed(std::log2(static_cast<double>(code.size())), 6) << '\n'
      << "entry_bits = " << (code.wide_entries() ? 32 : 16) << '\n'
      << "covering_radius = " << code.covering_radius() << '\n';
    bool ok = code.covering_radius() <= code.d();
    if (code.size() <= kInspectMaxCodewords) {
        std::size_t best = code.m() + 1;
        const auto& cw = code.codewords();
        for (std::size_t a = 0; a < cw.size(); ++a) {
            for (std::size_t b = a + 1; b < cw.size(); ++b) {
                best = std::min(best, hcp::hamming(cw[a], cw[b]));
            }
        }
        if (cw.size() >= 2) {
            s << "min_distance = " << best << '\n';
            ok = ok && best >= code.d() + 1;
        } else {
            s << "min_distance = none\n";
        }
    } else {
        s << "min_distance = skipped\n";
    }
    s << "invariants = " << (ok ? "ok" : "violated") << '\n';
    std::cout << s.str();
    if (!ok) {
        throw hcp::InvariantError("code table violates the Gilbert invariants");
    }
    return kExitOk;
}

int cmd_bench(const std::string& spec_text, const std::string& out) {
    const auto spec = hcp::bench::parse_spec(spec_text);
    emit(hcp::bench::format(hcp::bench::run(spec)), out);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact closest pair in Hamming space via error-correcting codes"};
    app.require_subcommand(1);

    // gen
    std::size_t g_n = 0;
    std::size_t g_m = 0;
    std::size_t g_dmin = 0;
    std::optional<std::size_t> g_d2;
    std::uint64_t g_seed = 0;
    std::string g_out;
    bool g_text = false;
    auto* gen = app.add_subcommand("gen", "write a planted instance");
    gen->add_option("--n", g_n, "vector count")->required();
    gen->add_option("--m", g_m, "bits per vector")->required();
    gen->add_option("--dmin", g_dmin, "planted distance")->required();
    gen->add_option("--d2", g_d2, "lower bound for every other distance (default dmin+1)");
    gen->add_option("--seed", g_seed, "64-bit seed");
    gen->add_option("--out,-o", g_out, "output path")->required();
    gen->add_flag("--text", g_text, "write the '0'/'1' text format");

    // solve
    std::string s_path;
    std::string s_algo = "rand";
    std::optional<std::size_t> s_dmin;
    std::optional<std::size_t> s_d2;
    std::string s_out;
    SolveFlags s_flags;
    auto* solve = app.add_subcommand("solve", "solve an instance file");
    solve->add_option("instance", s_path, "instance file (binary or text)")->required();
    solve->add_option("--algo", s_algo, "solver")->check(CLI::IsMember({"brute", "rand", "det", "gapped", "search"}));
    solve->add_option("--dmin", s_dmin, "known minimum distance (rand, det, gapped)");
    solve->add_option("--d2", s_d2, "second-smallest distance bound (gapped)");
    solve->add_option("--out,-o", s_out, "report path (default stdout)");
    add_solve_flags(solve, s_flags);

    // lightbulb
    std::size_t l_n = 0;
    double l_rho = 0.0;
    std::optional<std::size_t> l_length;
    std::optional<std::size_t> l_rounds;
    double l_rep = 3.0;
    std::string l_out;
    SolveFlags l_flags;
    auto* bulb = app.add_subcommand("lightbulb", "generate and solve a light bulb instance");
    bulb->add_option("--n", l_n, "sequence count")->required();
    bulb->add_option("--rho", l_rho, "planted correlation in (-1, 1), nonzero")->required();
    bulb->add_option("--length", l_length, "bits per sequence (default: sample bits x rounds)");
    bulb->add_option("--rounds", l_rounds, "voting rounds (default ceil(rep * log2 n))");
    bulb->add_option("--repetition", l_rep, "rounds per log2 n");
    bulb->add_option("--out,-o", l_out, "report path (default stdout)");
    add_solve_flags(bulb, l_flags);

    // rates
    bool r_table1 = false;
    std::vector<double> r_deltas;
    std::string r_out;
    auto* rates_cmd = app.add_subcommand("rates", "rate and exponent table");
    rates_cmd->add_flag("--table1", r_table1, "the seven reference relative distances");
    rates_cmd->add_option("--delta", r_deltas, "relative distances in (0, 1/2)");
    rates_cmd->add_option("--out,-o", r_out, "output path (default stdout)");

    // code
    std::size_t c_m = 0;
    std::size_t c_d = 0;
    std::optional<std::size_t> c_radius;
    std::size_t c_bits = hcp::kDefaultMaxTableBits;
    std::string c_out;
    std::string c_path;
    auto* code = app.add_subcommand("code", "Gilbert code tables");
    code->require_subcommand(1);
    auto* build = code->add_subcommand("build", "build and serialize a Gilbert code");
    build->add_option("--m", c_m, "block length")->required();
    build->add_option("--d", c_d, "design distance (codewords end up >= d+1 apart)")->required();
    build->add_option("--radius", c_radius, "lookup radius (default floor(d/2))");
    build->add_option("--max-table-bits", c_bits, "table budget as log2 entries");
    build->add_option("--out,-o", c_out, "output path")->required();
    auto* inspect = code->add_subcommand("inspect", "print code statistics and check invariants");
    inspect->add_option("table", c_path, "code table file")->required();

    // bench
    std::string b_spec;
    std::string b_out;
    auto* bench = app.add_subcommand("bench", "sweep solvers over a grid");
    bench->add_option("--spec", b_spec, "e.g. \"solvers=rand,det;n=32;m=12,14;delta=0.1;reps=3\"");
    bench->add_option("--out,-o", b_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*gen) {
            return cmd_gen(g_n, g_m, g_dmin, g_d2, g_seed, g_out, g_text);
        }
        if (*solve) {
            return cmd_solve(s_path, s_algo, s_dmin, s_d2, s_flags, s_out);
        }
        if (*bulb) {
            return cmd_lightbulb(l_n, l_rho, l_length, l_rounds, l_rep, l_flags, l_out);
        }
        if (*rates_cmd) {
            return cmd_rates(r_table1, r_deltas, r_out);
        }
        if (*build) {
            return cmd_code_build(c_m, c_d, c_radius, c_bits, c_out);
        }
        if (*inspect) {
            return cmd_code_inspect(c_path);
        }
        if (*bench) {
            return cmd_bench(b_spec, b_out);
        }
    } catch (const hcp::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const hcp::InvariantError& e) {
        std::cerr << "invariant violated: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const hcp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInfeasible;
    }
    return kExitInvariant;
}
