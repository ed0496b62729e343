#include "hcp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hcp/error.hpp"
#include "hcp/instance.hpp"
#include "hcp/rng.hpp"

namespace hcp::bench {

namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    while (true) {
        const auto p = s.find(sep);
        out.push_back(s.substr(0, p));
        if (p == std::string_view::npos) {
            return out;
        }
        s.remove_prefix(p + 1);
    }
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

template <class T>
T parse_number(std::string_view s, std::string_view key) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("bench spec: bad value '" + std::string(s) + "' for " + std::string(key));
    }
    return value;
}

double parse_double(std::string_view s, std::string_view key) {
    const std::string buf(s);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (buf.empty() || end != buf.c_str() + buf.size()) {
        throw ParseError("bench spec: bad value '" + buf + "' for " + std::string(key));
    }
    return v;
}

template <class T>
T median(std::vector<T> v) {
    if (v.empty()) {
        return T{};
    }
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

PairResult run_solver(std::string_view solver, const Instance& inst, std::size_t dmin, const SolveConfig& cfg) {
    if (solver == "brute") {
        return brute_force(inst);
    }
    if (solver == "rand") {
        return solve_randomized(inst, dmin, cfg);
    }
    if (solver == "det") {
        return solve_deterministic(inst, dmin, cfg);
    }
    if (solver == "gapped") {
        return solve_gapped(inst, dmin, dmin + 2, cfg);
    }
    if (solver == "search") {
        return search_dmin(inst, cfg).pair;
    }
    throw ConfigError("unknown bench solver '" + std::string(solver) + "'");
}

} // namespace

Spec parse_spec(std::string_view text) {
    Spec spec;
    for (auto item : split(text, ';')) {
        item = trim(item);
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("bench spec: expected key=value, got '" + std::string(item) + "'");
        }
        const auto key = trim(item.substr(0, eq));
        const auto values = split(trim(item.substr(eq + 1)), ',');
        if (key == "solvers") {
            spec.solvers.clear();
            for (auto v : values) {
                spec.solvers.emplace_back(trim(v));
            }
        } else if (key == "n") {
            spec.ns.clear();
            for (auto v : values) {
                spec.ns.push_back(parse_number<std::size_t>(trim(v), key));
            }
        } else if (key == "m") {
            spec.ms.clear();
            for (auto v : values) {
                spec.ms.push_back(parse_number<std::size_t>(trim(v), key));
            }
        } else if (key == "delta") {
            spec.deltas.clear();
            for (auto v : values) {
                spec.deltas.push_back(parse_double(trim(v), key));
            }
        } else if (key == "reps") {
            spec.reps = parse_number<std::size_t>(trim(values.front()), key);
        } else if (key == "seed") {
            spec.seed = parse_number<std::uint64_t>(trim(values.front()), key);
        } else if (key == "workers") {
            spec.workers = parse_number<std::size_t>(trim(values.front()), key);
        } else if (key == "early_exit") {
            const auto v = trim(values.front());
            if (v != "on" && v != "off") {
                throw ParseError("bench spec: early_exit must be on or off");
            }
            spec.early_exit = v == "on";
        } else {
            throw ParseError("bench spec: unknown key '" + std::string(key) + "'");
        }
    }
    return spec;
}

std::optional<double> Row::success_rate() const noexcept {
    if (checked == 0) {
        return std::nullopt;
    }
    return static_cast<double>(matched) / static_cast<double>(checked);
}

std::vector<Row> run(const Spec& spec) {
    std::vector<Row> rows;
    for (const auto& solver : spec.solvers) {
        for (const auto n : spec.ns) {
            for (const auto m : spec.ms) {
                for (const auto delta : spec.deltas) {
                    Row row;
                    row.solver = solver;
                    row.n = n;
                    row.m = m;
                    row.delta = delta;
                    row.dmin = static_cast<std::size_t>(std::lround(delta * static_cast<double>(m)));
                    std::vector<double> times;
                    std::vector<std::uint64_t> used;
                    std::vector<std::uint64_t> planned;
                    try {
                        for (std::size_t rep = 0; rep < spec.reps; ++rep) {
                            const std::uint64_t seed = derive_key(spec.seed, rows.size(), rep);
                            PlantedSpec ps;
                            ps.n = n;
                            ps.m = m;
                            ps.dmin = row.dmin;
                            ps.d2 = row.dmin + (solver == "gapped" ? 2 : 1);
                            ps.seed = seed;
                            const auto inst = generate_planted(ps).instance;
                            SolveConfig cfg;
                            cfg.seed = seed;
                            cfg.workers = spec.workers;
                            cfg.early_exit = spec.early_exit;
                            const auto t0 = std::chrono::steady_clock::now();
                            const auto res = run_solver(solver, inst, row.dmin, cfg);
                            const auto t1 = std::chrono::steady_clock::now();
                            times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
                            used.push_back(res.trials_used);
                            planned.push_back(res.trials_planned);
                            if (solver != "brute" && solver != "search" && res.trials_used != res.trials_planned) {
                                row.trials_match_plan = false;
                            }
                            ++row.runs;
                            if (n <= spec.brute_max_n) {
                                ++row.checked;
                                row.matched += brute_force(inst).dist == res.dist ? 1 : 0;
                            }
                        }
                    } catch (const std::exception& e) {
                        row.error = e.what();
                    }
                    row.median_ms = median(times);
                    row.median_trials_used = median(used);
                    row.median_trials_planned = median(planned);
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

std::string format(const std::vector<Row>& rows) {
    std::ostringstream out;
    out << "solver\tn\tm\tdelta\tdmin\truns\tmedian_ms\ttrials_used\ttrials_planned\tsuccess_rate\terror\n";
    for (const auto& r : rows) {
        char buf[64];
        out << r.solver << '\t' << r.n << '\t' << r.m << '\t';
        std::snprintf(buf, sizeof buf, "%.4f", r.delta);
        out << buf << '\t' << r.dmin << '\t' << r.runs << '\t';
        std::snprintf(buf, sizeof buf, "%.3f", r.median_ms);
        out << buf << '\t' << r.median_trials_used << '\t' << r.median_trials_planned << '\t';
        if (const auto s = r.success_rate()) {
            std::snprintf(buf, sizeof buf, "%.3f", *s);
            out << buf;
        } else {
            out << "na";
        }
        out << '\t' << (r.error.empty() ? "-" : r.error) << '\n';
    }
    return out.str();
}

} // namespace hcp::bench
