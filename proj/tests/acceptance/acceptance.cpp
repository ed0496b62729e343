// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hcp/bench.hpp"
#include "hcp/codes.hpp"
#include "hcp/error.hpp"
#include "hcp/formats.hpp"
#include "hcp/lightbulb.hpp"
#include "hcp/rates.hpp"
#include "hcp/solver.hpp"

namespace {

// Pinned tolerances and thresholds.
constexpr double kRateTableTol = 1e-3;
constexpr double kRateTableMaxSeconds = 1.0;
constexpr double kDetMaxSeconds = 120.0;
constexpr double kRandMaxSeconds = 300.0;
constexpr double kRandMinSuccess = 0.95;
constexpr double kSearchMinSuccess = 0.95;
constexpr double kBulbMinSuccess = 0.95;
constexpr double kBulbMaxSeconds = 180.0;
constexpr double kBulbSigmas = 3.0;
constexpr double kTimePerTrialSpread = 4.0;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

hcp::Instance planted(std::size_t n, std::size_t m, std::size_t dmin, std::size_t d2, std::uint64_t seed) {
    hcp::PlantedSpec spec;
    spec.n = n;
    spec.m = m;
    spec.dmin = dmin;
    spec.d2 = d2;
    spec.seed = seed;
    return hcp::generate_planted(spec).instance;
}

bool same_pair(const hcp::PairResult& a, const hcp::PairResult& b) {
    return a.i == b.i && a.j == b.j && a.dist == b.dist;
}

/// Brute force agrees with the planted metadata and the minimum is unique.
bool unique_planted_minimum(const hcp::Instance& inst) {
    const auto p = *inst.planted();
    const auto b = hcp::brute_force(inst);
    if (b.i != p.i || b.j != p.j || b.dist != p.distance) {
        return false;
    }
    for (std::size_t a = 0; a < inst.n(); ++a) {
        for (std::size_t c = a + 1; c < inst.n(); ++c) {
            if ((a != p.i || c != p.j) && hcp::hamming(inst[a], inst[c]) <= p.distance) {
                return false;
            }
        }
    }
    return true;
}

// 1: rate table against pinned four-decimal reference values.
Outcome rate_table() {
    struct Printed {
        double delta, ch, gh, cg, gg;
    };
    const Printed printed[] = {
        {0.01, 1.0476, 1.0742, 1.0879, 1.0770},  {0.025, 1.1074, 1.1591, 1.2029, 1.1728},
        {0.05, 1.2029, 1.2844, 1.4013, 1.3313},  {0.075, 1.2999, 1.4021, 1.6242, 1.5024},
        {0.1, 1.4013, 1.5171, 1.8832, 1.6949},   {0.125, 1.5090, 1.6316, 2.1909, 1.9170},
        {0.133, 1.5449, 1.6684, 2.3064, 1.9989},
    };
    const auto t0 = std::chrono::steady_clock::now();
    const auto rows = hcp::rates::table1(hcp::rates::table1_deltas());
    const double secs = seconds_since(t0);
    std::size_t ok = 0;
    double worst = 0.0;
    std::string misses;
    for (std::size_t k = 0; k < 7; ++k) {
        const double got[4] = {rows[k].hamming.length_ratio, rows[k].hamming.exponent, rows[k].gv.length_ratio,
                               rows[k].gv.exponent};
        const double want[4] = {printed[k].ch, printed[k].gh, printed[k].cg, printed[k].gg};
        const char* names[4] = {"c_hamming", "gamma_hamming", "c_gv", "gamma_gv"};
        for (int c = 0; c < 4; ++c) {
            const double diff = std::abs(got[c] - want[c]);
            worst = std::max(worst, diff);
            if (diff <= kRateTableTol) {
                ++ok;
            } else {
                misses += fmt(" [delta=%.3f %s got %.4f want %.4f]", printed[k].delta, names[c], got[c], want[c]);
            }
        }
    }
    return {ok == 28 && secs < kRateTableMaxSeconds,
            fmt("%zu/28 cells within %.0e, max diff %.4f, %.3f s", ok, kRateTableTol, worst, secs) + misses};
}

// 2: deterministic solver equals brute force.
Outcome deterministic_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t ok = 0;
    std::size_t bad_instances = 0;
    constexpr std::size_t kInstances = 500;
    for (std::uint64_t s = 0; s < kInstances; ++s) {
        const std::size_t m = 12 + s % 5;
        const std::size_t dmin = 1 + s % 4;
        // Roughly twice the number of disjoint radius-dmin balls, so rejection sampling succeeds.
        const double packing = std::exp2(static_cast<double>(m)) / static_cast<double>(hcp::ball_volume(m, dmin));
        const auto n = static_cast<std::size_t>(std::clamp(2.0 * packing, 8.0, 64.0));
        const auto inst = planted(n, m, dmin, dmin + 1, 1000 + s);
        if (!unique_planted_minimum(inst)) {
            ++bad_instances;
            continue;
        }
        hcp::SolveConfig cfg;
        cfg.seed = s;
        ok += same_pair(hcp::solve_deterministic(inst, dmin, cfg), hcp::brute_force(inst)) ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    return {ok == kInstances && secs < kDetMaxSeconds,
            fmt("%zu/%zu match, %zu invalid instances, %.1f s", ok, kInstances, bad_instances, secs)};
}

// 3: randomized solver with the formula trial count.
Outcome randomized_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr std::size_t kInstances = 200;
    std::size_t ok = 0;
    std::uint64_t planned = 0;
    for (std::uint64_t s = 0; s < kInstances; ++s) {
        const auto inst = planted(64, 18, 2, 4, 2000 + s);
        hcp::SolveConfig cfg;
        cfg.seed = 7 * s + 1;
        const auto r = hcp::solve_randomized(inst, 2, cfg);
        planned = r.trials_planned;
        ok += same_pair(r, hcp::brute_force(inst)) ? 1 : 0;
    }
    const double secs = seconds_since(t0);
    const double rate = static_cast<double>(ok) / kInstances;
    return {rate >= kRandMinSuccess && secs < kRandMaxSeconds,
            fmt("%zu/%zu match (%.3f, need %.2f), %llu trials planned, %.1f s", ok, kInstances, rate,
                kRandMinSuccess, static_cast<unsigned long long>(planned), secs)};
}

// 4: exhaustive good-shift census against K * C(dmin, floor(dmin/2)).
Outcome census() {
    constexpr std::size_t kInstances = 20;
    std::size_t ok = 0;
    double min_ratio = 1e300;
    for (std::uint64_t s = 0; s < kInstances; ++s) {
        const std::size_t m = 11 + s % 4;
        const std::size_t dmin = 1 + s % 4;
        const auto inst = planted(8, m, dmin, dmin + 1, 3000 + s);
        const std::size_t radius = (dmin + 1) / 2;
        const auto code = hcp::make_solver_code(m, dmin + 1, radius, {});
        const std::uint64_t k = code->params().size.value_or(std::uint64_t{1} << m);
        std::uint64_t choose = 1;
        for (std::size_t t = 0; t < dmin / 2; ++t) {
            choose = choose * (dmin - t) / (t + 1);
        }
        const std::uint64_t bound = k * choose;
        const std::uint64_t good = hcp::good_shift_census(inst, *code, radius);
        min_ratio = std::min(min_ratio, static_cast<double>(good) / static_cast<double>(bound));
        ok += good >= bound ? 1 : 0;
    }
    return {ok == kInstances, fmt("%zu/%zu instances meet the bound, min census/bound %.3f", ok, kInstances, min_ratio)};
}

// 5: Gilbert code properties, exhaustive over m <= 14, d <= 6.
Outcome gilbert_properties() {
    std::size_t codes = 0;
    std::size_t ok = 0;
    std::string first_bad;
    for (std::size_t m = 1; m <= 14; ++m) {
        for (std::size_t d = 1; d <= std::min<std::size_t>(m, 6); ++d) {
            const std::size_t radius = d / 2;
            const auto code = hcp::GilbertCode::build(m, d, radius);
            ++codes;
            const auto& cw = code.codewords();
            bool good = code.covering_radius() <= d;
            // Exhaustive covering radius by direct scan, independent of the BFS.
            std::size_t cover = 0;
            std::vector<std::uint32_t> vals;
            for (std::size_t k = 0; k < code.size(); ++k) {
                vals.push_back(code.codeword_value(k));
            }
            for (std::uint64_t x = 0; x < (1ULL << m) && good; ++x) {
                std::size_t nearest = m + 1;
                std::optional<std::uint32_t> unique;
                std::size_t within = 0;
                for (std::size_t k = 0; k < vals.size(); ++k) {
                    const auto dist = static_cast<std::size_t>(std::popcount(x ^ vals[k]));
                    nearest = std::min(nearest, dist);
                    if (dist <= radius) {
                        ++within;
                        unique = static_cast<std::uint32_t>(k);
                    }
                }
                cover = std::max(cover, nearest);
                const auto looked = code.lookup(x);
                if (within > 1 || looked.has_value() != (within == 1) || (looked && *looked != *unique)) {
                    good = false;
                }
            }
            good = good && cover == code.covering_radius() && cover <= d;
            for (std::size_t a = 0; a < cw.size() && good; ++a) {
                for (std::size_t b = a + 1; b < cw.size(); ++b) {
                    if (hcp::hamming(cw[a], cw[b]) < d + 1) {
                        good = false;
                        break;
                    }
                }
            }
            if (good) {
                ++ok;
            } else if (first_bad.empty()) {
                first_bad = fmt(" first failure m=%zu d=%zu", m, d);
            }
        }
    }
    return {ok == codes, fmt("%zu/%zu codes pass distance, covering and lookup checks", ok, codes) + first_bad};
}

// 6: Reed-Solomon GF(256), n=32, k=16.
Outcome reed_solomon() {
    const hcp::ReedSolomon rs(8, 32, 16);
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<hcp::gf::Elem> sym(0, 255);
    std::uniform_int_distribution<hcp::gf::Elem> nonzero(1, 255);
    auto corrupt = [&](std::vector<hcp::gf::Elem> word, std::size_t weight) {
        std::vector<std::size_t> pos(32);
        std::iota(pos.begin(), pos.end(), 0);
        std::shuffle(pos.begin(), pos.end(), rng);
        for (std::size_t e = 0; e < weight; ++e) {
            word[pos[e]] ^= nonzero(rng);
        }
        return word;
    };
    std::size_t recovered = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<hcp::gf::Elem> msg(16);
        for (auto& s : msg) {
            s = sym(rng);
        }
        const auto got = rs.decode(corrupt(rs.encode(msg), rep % 9));
        recovered += got && *got == msg ? 1 : 0;
    }
    std::size_t rejected = 0;
    std::size_t accepted_close = 0;
    std::size_t silent_wrong = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<hcp::gf::Elem> msg(16);
        for (auto& s : msg) {
            s = sym(rng);
        }
        const auto word = corrupt(rs.encode(msg), 9);
        const auto got = rs.decode(word);
        if (!got) {
            ++rejected;
        } else if (hcp::symbol_distance(rs.encode(*got), word) <= rs.radius()) {
            ++accepted_close; // a different codeword genuinely within the radius
        } else {
            ++silent_wrong;
        }
    }
    return {recovered == 1000 && silent_wrong == 0,
            fmt("weight<=8: %zu/1000 recovered; weight 9: %zu rejected, %zu decoded within radius, %zu wrong",
                recovered, rejected, accepted_close, silent_wrong)};
}

// 7: small concatenated code, exhaustive error patterns up to the composed radius.
Outcome concat_decode() {
    auto inner = std::make_shared<const hcp::GilbertCode>(hcp::GilbertCode::build(6, 2, 1));
    const hcp::ConcatCode cc(hcp::ReedSolomon(3, 7, 5), inner, 42);
    const std::size_t radius = cc.params().guaranteed_radius;
    const hcp::RadiusDecoder dec(cc, radius);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<hcp::gf::Elem> sym(0, 7);
    std::uint64_t patterns = 0;
    std::uint64_t corrected = 0;
    std::vector<std::size_t> idx;
    for (int w = 0; w < 50; ++w) {
        std::vector<hcp::gf::Elem> msg(5);
        for (auto& s : msg) {
            s = sym(rng);
        }
        const auto word = cc.encode(msg);
        std::function<void(std::size_t, hcp::BitVector&)> walk = [&](std::size_t start, hcp::BitVector& x) {
            ++patterns;
            corrected += dec(x) == word ? 1 : 0;
            if (idx.size() == radius) {
                return;
            }
            for (std::size_t b = start; b < 42; ++b) {
                x.flip(b);
                idx.push_back(b);
                walk(b + 1, x);
                idx.pop_back();
                x.flip(b);
            }
        };
        hcp::BitVector x = word;
        walk(0, x);
    }
    return {radius >= 1 && corrected == patterns,
            fmt("radius %zu, %llu/%llu patterns corrected over 50 codewords", radius,
                static_cast<unsigned long long>(corrected), static_cast<unsigned long long>(patterns))};
}

// 8: unknown dmin search.
Outcome dmin_search() {
    constexpr std::size_t kInstances = 100;
    std::size_t ok = 0;
    for (std::uint64_t s = 0; s < kInstances; ++s) {
        const std::size_t dmin = 1 + s % 5;
        const std::size_t m = 16 + s % 5;
        const auto inst = planted(32, m, dmin, dmin + 1, 4000 + s);
        hcp::SolveConfig cfg;
        cfg.seed = s;
        cfg.epsilon = 1.0;
        const auto r = hcp::search_dmin(inst, cfg);
        ok += r.dmin == hcp::brute_force(inst).dist ? 1 : 0;
    }
    const double rate = static_cast<double>(ok) / kInstances;
    return {rate >= kSearchMinSuccess, fmt("%zu/%zu exact (%.2f, need %.2f)", ok, kInstances, rate, kSearchMinSuccess)};
}

// 9: light bulb end to end.
Outcome light_bulb() {
    constexpr std::size_t kRuns = 100;
    constexpr std::size_t kN = 256;
    constexpr double kRho = 0.99;
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t m = hcp::lightbulb::sample_dimension(kN, kRho);
    hcp::lightbulb::Config cfg;
    const auto rounds = static_cast<std::size_t>(std::ceil(cfg.repetition * std::log2(double(kN)) - 1e-9));
    std::size_t recovered = 0;
    double sum = 0.0;
    for (std::uint64_t s = 0; s < kRuns; ++s) {
        const auto inst = hcp::lightbulb::generate(kN, kRho, m * rounds, 5000 + s);
        cfg.solve.seed = s;
        const auto res = hcp::lightbulb::solve(inst, cfg);
        recovered += res.recovered(inst) ? 1 : 0;
        // First round only: rounds of one run share the same sequences.
        sum += static_cast<double>(res.rounds.front().planted_sampled_dist);
    }
    const double secs = seconds_since(t0);
    const double p = (1.0 - kRho) / 2.0;
    const double expect = p * static_cast<double>(m);
    const double sigma = std::sqrt(static_cast<double>(m) * p * (1.0 - p) / kRuns);
    const double mean = sum / kRuns;
    const double rate = static_cast<double>(recovered) / kRuns;
    const bool pass = rate >= kBulbMinSuccess && std::abs(mean - expect) <= kBulbSigmas * sigma && secs < kBulbMaxSeconds;
    return {pass, fmt("%zu/%zu recovered (m=%zu, %zu rounds); sampled planted distance mean %.4f vs %.4f, "
                      "sigma %.4f; %.1f s",
                      recovered, kRuns, m, rounds, mean, expect, sigma, secs)};
}

// 10: trial counts follow the formula; time per trial stays within a constant factor.
Outcome trial_scaling() {
    hcp::bench::Spec spec;
    spec.solvers = {"rand"};
    spec.ns = {128};
    spec.ms = {14, 16, 18};
    spec.deltas = {0.1, 0.15, 0.2};
    spec.reps = 3;
    spec.seed = 10;
    spec.workers = 1;
    spec.early_exit = false;
    (void)hcp::bench::run(spec); // builds and caches the codes
    const auto rows = hcp::bench::run(spec);
    std::size_t exact = 0;
    double lo = 1e300;
    double hi = 0.0;
    std::string errors;
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            errors += " [" + r.error + "]";
            continue;
        }
        const std::size_t radius = (r.dmin + 1) / 2;
        const auto code = hcp::make_solver_code(r.m, r.dmin + 1, radius, {});
        const auto formula = hcp::rates::trial_count(r.m, r.n, code->params().log2_size, r.dmin, radius);
        exact += r.trials_match_plan && r.median_trials_planned == formula ? 1 : 0;
        const double per_trial = r.median_ms / static_cast<double>(r.median_trials_used);
        lo = std::min(lo, per_trial);
        hi = std::max(hi, per_trial);
    }
    const double spread = hi / lo;
    return {exact == rows.size() && errors.empty() && spread <= kTimePerTrialSpread,
            fmt("%zu/%zu cells use exactly the formula trial count; ms/trial %.4f..%.4f (spread %.2f, limit %.1f)",
                exact, rows.size(), lo, hi, spread, kTimePerTrialSpread) +
                errors};
}

// 11: bit-identical results across runs and worker counts.
Outcome determinism() {
    const auto inst = planted(96, 20, 3, 5, 6000);
    const auto gapped_inst = planted(96, 20, 2, 5, 6001);
    std::vector<hcp::BitVector> red(inst.vectors().begin(), inst.vectors().begin() + 40);
    std::vector<hcp::BitVector> blue(inst.vectors().begin() + 40, inst.vectors().end());
    const auto bulb = hcp::lightbulb::generate(128, 0.97, 21 * 22, 6002);

    auto reports = [&](std::size_t workers) {
        std::vector<std::vector<std::pair<std::string, std::string>>> out;
        auto add = [&](const hcp::Instance& in, const hcp::PairResult& r, const hcp::SolveConfig& cfg) {
            auto kv = hcp::io::parse_report(hcp::io::format_report(hcp::io::make_report(in, r, cfg, 0.0)));
            std::erase_if(kv, [](const auto& p) { return p.first == "wall_ms"; });
            out.push_back(std::move(kv));
        };
        for (const bool early : {false, true}) {
            hcp::SolveConfig cfg;
            cfg.seed = 99;
            cfg.workers = workers;
            cfg.early_exit = early;
            add(inst, hcp::solve_randomized(inst, 3, cfg), cfg);
            add(gapped_inst, hcp::solve_gapped(gapped_inst, 2, 5, cfg), cfg);
            add(inst, hcp::solve_deterministic(inst, 3, cfg), cfg);
            add(inst, hcp::search_dmin(inst, cfg).pair, cfg);
            const auto b = hcp::solve_bichromatic(red, blue, 3, cfg);
            out.push_back({{"bichromatic", fmt("%zu %zu %zu %llu", b.i, b.j, b.dist,
                                               static_cast<unsigned long long>(b.trials_used))}});
        }
        hcp::lightbulb::Config lc;
        lc.solve.seed = 5;
        lc.solve.workers = workers;
        const auto lr = hcp::lightbulb::solve(bulb, lc);
        std::string votes;
        for (const auto& rd : lr.rounds) {
            votes += fmt("%zu,%zu,%zu;", rd.i, rd.j, rd.sampled_dist);
        }
        out.push_back({{"lightbulb", votes}});
        return out;
    };
    const auto base = reports(1);
    std::size_t compared = 0;
    std::size_t equal = 0;
    for (const std::size_t w : {1U, 1U, 2U, 3U, 4U, 8U}) {
        const auto other = reports(w);
        for (std::size_t k = 0; k < base.size(); ++k) {
            ++compared;
            equal += other[k] == base[k] ? 1 : 0;
        }
    }
    return {compared == equal, fmt("%zu/%zu reports identical across repeated runs and 1..8 workers", equal, compared)};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"1 rate table", rate_table},
        {"2 deterministic oracle", deterministic_oracle},
        {"3 randomized oracle", randomized_oracle},
        {"4 good-shift census", census},
        {"5 gilbert properties", gilbert_properties},
        {"6 reed-solomon decode", reed_solomon},
        {"7 concatenated decode", concat_decode},
        {"8 dmin search", dmin_search},
        {"9 light bulb", light_bulb},
        {"10 trial scaling", trial_scaling},
        {"11 determinism", determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
    return failed == 0 ? 0 : 1;
}
