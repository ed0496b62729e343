#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hcp::rates {

/// Binary entropy in bits; h2(0) = h2(1) = 0.
[[nodiscard]] double h2(double p);
/// Inverse of h2 on [0, 1/2], by bisection to 1e-12.
[[nodiscard]] double h2_inv(double y);

/// Gilbert-Varshamov rate 1 - h2(delta), delta in [0, 1/2].
[[nodiscard]] double kappa_gv(double delta);
/// Zyablov rate: max over inner rate r of r * (1 - delta / h2_inv(1 - r)), 0 < delta < 1/2.
[[nodiscard]] double kappa_z(double delta);

/// log2 C(n, k) via lgamma.
[[nodiscard]] double binom_log2(std::uint64_t n, std::uint64_t k);

struct BinomialBounds {
    double lower_log2;
    double exact_log2;
    double upper_log2;
};
/// The sandwich 2^{nH(l)}/sqrt(8nl(1-l)) <= C(n, ln) <= 2^{nH(l)}/sqrt(2 pi n l(1-l)), 0 < k < n.
[[nodiscard]] BinomialBounds binomial_bounds(std::uint64_t n, std::uint64_t k);

struct RatePoint {
    double delta = 0.0;
    double rate = 0.0;
    double exponent = 0.0;
    /// c = m / log2 n
    double length_ratio = 0.0;
};

struct Table1Row {
    double delta;
    RatePoint hamming;
    RatePoint gv;
};

/// The seven relative distances of the reference running-time table.
[[nodiscard]] std::vector<double> table1_deltas();

/**
 * Running-time exponents with m = c log2 n. GV column: c = 1/(1 - h2(delta));
 * Hamming column: c = 1/(1 - h2(delta/2)); both use gamma' = 1 + (h2(delta) - delta) c.
 */
[[nodiscard]] std::vector<Table1Row> table1(std::span<const double> deltas);

/**
 * Number of random shifts for success probability >= 1 - 1/n^2:
 * ceil(2 ln n * 2^m / (K * C(dmin, radius))), evaluated in log space and clamped to [1, 2^m].
 * Requires dmin/2 <= radius <= dmin (radius is ignored when dmin = 0) and log2K <= m.
 */
[[nodiscard]] std::uint64_t trial_count(std::size_t m, std::uint64_t n, double log2K, std::size_t dmin,
                                        std::size_t radius);

/**
 * Gapped variant: the per-shift success bound uses
 * |MID_G| >= C(dmin, floor(dmin/2)) * C(m - dmin, radius - ceil(dmin/2)).
 */
[[nodiscard]] std::uint64_t gapped_trial_count(std::size_t m, std::uint64_t n, double log2K, std::size_t dmin,
                                               std::size_t radius);

struct GappedExponent {
    double zyablov;
    double gv;
};

/// Exponent gamma (time 2^{gamma m}) of the gapped solver for 0 < delta < delta_prime < 1/2.
[[nodiscard]] GappedExponent gapped_exponent(double delta, double delta_prime);
/// Non-gapped exponent: 1 - kappa_z(delta) - delta and h2(delta) - delta.
[[nodiscard]] GappedExponent nongapped_exponent(double delta);

struct SweepPoint {
    double epsilon;
    GappedExponent exponent;
};
/// delta' = (1 + eps) delta for eps on a uniform grid in (0, eps_max].
[[nodiscard]] std::vector<SweepPoint> gapped_sweep(double delta, double eps_max, std::size_t steps);

} // namespace hcp::rates
