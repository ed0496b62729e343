#include "hcp/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hcp/error.hpp"

namespace hcp::rates {

namespace {

void check_unit(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

void check_open_half(double delta, const char* what) {
    if (!(delta > 0.0 && delta < 0.5)) {
        throw DomainError(std::string(what) + " must lie in (0, 1/2), got " + std::to_string(delta));
    }
}

double zyablov_objective(double delta, double inner_rate) {
    const double inner_delta = h2_inv(1.0 - inner_rate);
    return inner_rate * (1.0 - delta / inner_delta);
}

std::uint64_t shifts_from_log2(std::size_t m, double log2_count) {
    const double m_d = static_cast<double>(m);
    if (log2_count >= m_d) {
        return m >= 64 ? std::numeric_limits<std::uint64_t>::max() : std::uint64_t{1} << m;
    }
    if (log2_count <= 0.0) {
        return 1;
    }
    // Strip representation noise before taking the ceiling so exact integers stay exact.
    const double value = std::exp2(log2_count);
    const double rounded = std::round(value);
    const double c = std::abs(value - rounded) <= 1e-9 * value ? rounded : std::ceil(value);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(c));
}

} // namespace

double h2(double p) {
    check_unit(p, "probability");
    if (p == 0.0 || p == 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double h2_inv(double y) {
    check_unit(y, "entropy");
    if (y == 0.0) {
        return 0.0;
    }
    if (y == 1.0) {
        return 0.5;
    }
    double lo = 0.0;
    double hi = 0.5;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (h2(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double kappa_gv(double delta) {
    if (!(delta >= 0.0 && delta <= 0.5)) {
        throw DomainError("relative distance must lie in [0, 1/2], got " + std::to_string(delta));
    }
    return 1.0 - h2(delta);
}

double kappa_z(double delta) {
    check_open_half(delta, "relative distance");
    const double hi = 1.0 - h2(delta);

    // Unimodality probe on a coarse grid; fall back to a dense scan if it fails.
    constexpr int kProbe = 256;
    bool descending = false;
    bool unimodal = true;
    double prev = 0.0;
    for (int i = 1; i < kProbe; ++i) {
        const double v = zyablov_objective(delta, hi * i / kProbe);
        if (i > 1) {
            if (v < prev - 1e-15) {
                descending = true;
            } else if (descending && v > prev + 1e-15) {
                unimodal = false;
                break;
            }
        }
        prev = v;
    }

    if (!unimodal) {
        double best = 0.0;
        for (double r = 1e-6; r < hi; r += 1e-6) {
            best = std::max(best, zyablov_objective(delta, r));
        }
        return best;
    }

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = 0.0;
    double b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = zyablov_objective(delta, c);
    double fd = zyablov_objective(delta, d);
    while (b - a > 1e-9) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = zyablov_objective(delta, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = zyablov_objective(delta, d);
        }
    }
    return std::max({fc, fd, zyablov_objective(delta, 0.5 * (a + b))});
}

double binom_log2(std::uint64_t n, std::uint64_t k) {
    if (k > n) {
        throw DomainError("binomial needs k <= n (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    if (k == 0 || k == n) {
        return 0.0;
    }
    const auto nd = static_cast<double>(n);
    const auto kd = static_cast<double>(k);
    return (std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0)) / std::numbers::ln2;
}

BinomialBounds binomial_bounds(std::uint64_t n, std::uint64_t k) {
    if (k == 0 || k >= n) {
        throw DomainError("binomial bounds need 0 < k < n");
    }
    const double nd = static_cast<double>(n);
    const double lambda = static_cast<double>(k) / nd;
    const double entropy_bits = nd * h2(lambda);
    const double var = nd * lambda * (1.0 - lambda);
    return {entropy_bits - 0.5 * std::log2(8.0 * var), binom_log2(n, k),
            entropy_bits - 0.5 * std::log2(2.0 * std::numbers::pi * var)};
}

std::vector<double> table1_deltas() { return {0.01, 0.025, 0.05, 0.075, 0.1, 0.125, 0.133}; }

std::vector<Table1Row> table1(std::span<const double> deltas) {
    std::vector<Table1Row> rows;
    rows.reserve(deltas.size());
    for (const double delta : deltas) {
        check_open_half(delta, "relative distance");
        const double gain = h2(delta) - delta;
        Table1Row row{delta, {}, {}};
        row.gv.delta = delta;
        row.gv.rate = 1.0 - h2(delta);
        row.gv.length_ratio = 1.0 / row.gv.rate;
        row.gv.exponent = 1.0 + gain * row.gv.length_ratio;
        row.hamming.delta = delta;
        row.hamming.rate = 1.0 - h2(delta / 2.0);
        row.hamming.length_ratio = 1.0 / row.hamming.rate;
        row.hamming.exponent = 1.0 + gain * row.hamming.length_ratio;
        rows.push_back(row);
    }
    return rows;
}

std::uint64_t trial_count(std::size_t m, std::uint64_t n, double log2K, std::size_t dmin, std::size_t radius) {
    if (n < 2) {
        throw DomainError("trial count needs n >= 2");
    }
    if (log2K < 0.0 || log2K > static_cast<double>(m)) {
        throw DomainError("trial count needs 0 <= log2 K <= m");
    }
    if (dmin > m) {
        throw DomainError("trial count needs dmin <= m");
    }
    if (dmin > 0 && (2 * radius < dmin || radius > dmin)) {
        throw DomainError("trial count needs dmin/2 <= radius <= dmin (dmin=" + std::to_string(dmin) +
                          ", radius=" + std::to_string(radius) + ")");
    }
    const double good = dmin == 0 ? 0.0 : binom_log2(dmin, radius);
    const double log2_count = 1.0 + std::log2(std::log(static_cast<double>(n))) + static_cast<double>(m) - log2K - good;
    return shifts_from_log2(m, log2_count);
}

std::uint64_t gapped_trial_count(std::size_t m, std::uint64_t n, double log2K, std::size_t dmin, std::size_t radius) {
    if (n < 2) {
        throw DomainError("trial count needs n >= 2");
    }
    if (log2K < 0.0 || log2K > static_cast<double>(m)) {
        throw DomainError("trial count needs 0 <= log2 K <= m");
    }
    const std::size_t half_up = (dmin + 1) / 2;
    if (dmin > m || radius < half_up || radius - half_up > m - dmin) {
        throw DomainError("gapped trial count needs ceil(dmin/2) <= radius <= m - floor(dmin/2)");
    }
    const double good = binom_log2(dmin, dmin / 2) + binom_log2(m - dmin, radius - half_up);
    const double log2_count = 1.0 + std::log2(std::log(static_cast<double>(n))) + static_cast<double>(m) - log2K - good;
    return shifts_from_log2(m, log2_count);
}

GappedExponent gapped_exponent(double delta, double delta_prime) {
    check_open_half(delta, "delta");
    check_open_half(delta_prime, "delta'");
    if (!(delta < delta_prime)) {
        throw DomainError("gapped exponent needs delta < delta'");
    }
    const double spread = (1.0 - delta) * h2((delta_prime - delta) / (2.0 * (1.0 - delta)));
    return {1.0 - kappa_z(delta_prime) - delta - spread, h2(delta_prime) - delta - spread};
}

GappedExponent nongapped_exponent(double delta) {
    check_open_half(delta, "delta");
    return {1.0 - kappa_z(delta) - delta, h2(delta) - delta};
}

std::vector<SweepPoint> gapped_sweep(double delta, double eps_max, std::size_t steps) {
    if (steps == 0 || !(eps_max > 0.0) || !((1.0 + eps_max) * delta < 0.5)) {
        throw DomainError("sweep needs steps > 0 and (1 + eps_max) delta < 1/2");
    }
    std::vector<SweepPoint> out;
    out.reserve(steps);
    for (std::size_t i = 1; i <= steps; ++i) {
        const double eps = eps_max * static_cast<double>(i) / static_cast<double>(steps);
        out.push_back({eps, gapped_exponent(delta, (1.0 + eps) * delta)});
    }
    return out;
}

} // namespace hcp::rates
