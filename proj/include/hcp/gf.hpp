#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace hcp::gf {

/// Field element of GF(2^t), stored as its polynomial-basis integer value in [0, 2^t).
using Elem = std::uint32_t;

/**
 * GF(2^t) for 2 <= t <= 16 with a fixed modulus per degree.
 *
 *   t  modulus                     t  modulus
 *   2  x^2+x+1            (0x7)    10 x^10+x^3+1            (0x409)
 *   3  x^3+x+1            (0xB)    11 x^11+x^2+1            (0x805)
 *   4  x^4+x+1            (0x13)   12 x^12+x^6+x^4+x+1      (0x1053)
 *   5  x^5+x^2+1          (0x25)   13 x^13+x^4+x^3+x+1      (0x201B)
 *   6  x^6+x+1            (0x43)   14 x^14+x^10+x^6+x+1     (0x4443)
 *   7  x^7+x+1            (0x83)   15 x^15+x+1              (0x8003)
 *   8  x^8+x^4+x^3+x^2+1  (0x11D)  16 x^16+x^12+x^3+x+1     (0x1100B)
 *   9  x^9+x^4+1          (0x211)
 *
 * Each modulus is checked for irreducibility at construction. The log/exp
 * tables use the smallest primitive element as generator (x itself for every
 * modulus above, since all of them are primitive).
 */
class Field {
public:
    explicit Field(unsigned t);

    [[nodiscard]] unsigned degree() const noexcept { return t_; }
    [[nodiscard]] std::uint32_t order() const noexcept { return q_; }
    [[nodiscard]] std::uint32_t modulus() const noexcept { return modulus_; }
    [[nodiscard]] Elem generator() const noexcept { return exp_[1]; }

    [[nodiscard]] static Elem add(Elem a, Elem b) noexcept { return a ^ b; }
    [[nodiscard]] Elem mul(Elem a, Elem b) const;
    [[nodiscard]] Elem inv(Elem a) const;
    [[nodiscard]] Elem div(Elem a, Elem b) const;
    [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const;

    /// generator^k, k taken mod q-1.
    [[nodiscard]] Elem exp(std::uint64_t k) const noexcept { return exp_[k % (q_ - 1)]; }
    /// Discrete log of a nonzero element.
    [[nodiscard]] std::uint32_t log(Elem a) const;

    /// Carry-less multiply then reduce; independent of the tables.
    [[nodiscard]] Elem mul_slow(Elem a, Elem b) const noexcept;

private:
    void check(Elem a) const;

    unsigned t_;
    std::uint32_t q_;
    std::uint32_t modulus_;
    std::vector<Elem> exp_;          // size q-1
    std::vector<std::uint32_t> log_; // size q, log_[0] unused
};

/// Fixed modulus for degree t (see Field).
[[nodiscard]] std::uint32_t default_modulus(unsigned t);
/// Trial division by every polynomial of degree 1..deg/2.
[[nodiscard]] bool is_irreducible(std::uint32_t poly);

/// Polynomial over a Field; coefficient i multiplies x^i. Trailing zeros are trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs);

    [[nodiscard]] static Poly constant(Elem c) { return Poly(std::vector<Elem>{c}); }

    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] Elem coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }
    [[nodiscard]] const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }

    friend bool operator==(const Poly&, const Poly&) = default;

private:
    void trim();
    std::vector<Elem> coeffs_;
};

[[nodiscard]] Elem eval(const Field& f, const Poly& p, Elem x);
[[nodiscard]] Poly add(const Poly& a, const Poly& b);
[[nodiscard]] Poly mul(const Field& f, const Poly& a, const Poly& b);
/// Quotient and remainder; throws DomainError when dividing by zero.
[[nodiscard]] std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b);

struct Point {
    Elem x;
    Elem y;
};

/// Lagrange interpolation: the unique polynomial of degree < points.size() through all points.
[[nodiscard]] Poly interpolate(const Field& f, std::span<const Point> points);

/**
 * Solves A·z = b over the field by Gauss-Jordan elimination. A is row-major
 * rows x cols. Returns false if inconsistent; free variables are set to 0.
 */
bool solve_linear(const Field& f, std::vector<Elem> a, std::vector<Elem> b, std::size_t rows, std::size_t cols,
                  std::vector<Elem>& solution);

} // namespace hcp::gf
