#include <string>

#include "hcp/codes.hpp"
#include "hcp/error.hpp"

namespace hcp {

ReedSolomon::ReedSolomon(unsigned field_degree, std::size_t n, std::size_t k) : field_(field_degree), n_(n), k_(k) {
    if (k == 0 || k > n || n > field_.order() - 1) {
        throw DomainError("Reed-Solomon needs 1 <= k <= n <= q-1 (q=" + std::to_string(field_.order()) +
                          ", n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    }
    alphas_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        alphas_.push_back(field_.exp(i));
    }
}

std::vector<gf::Elem> ReedSolomon::encode(std::span<const gf::Elem> msg) const {
    if (msg.size() != k_) {
        throw DimensionError("message has " + std::to_string(msg.size()) + " symbols, expected " + std::to_string(k_));
    }
    const gf::Poly p(std::vector<gf::Elem>(msg.begin(), msg.end()));
    std::vector<gf::Elem> out;
    out.reserve(n_);
    for (const auto a : alphas_) {
        out.push_back(gf::eval(field_, p, a));
    }
    return out;
}

// Berlekamp-Welch: find monic E of degree e and Q of degree < e+k with
// Q(a_i) = r_i E(a_i) for every i; then P = Q / E.
std::optional<std::vector<gf::Elem>> ReedSolomon::decode(std::span<const gf::Elem> received) const {
    if (received.size() != n_) {
        throw DimensionError("received word has " + std::to_string(received.size()) + " symbols, expected " +
                             std::to_string(n_));
    }
    for (const auto r : received) {
        if (r >= field_.order()) {
            throw DomainError("received symbol outside the field");
        }
    }
    const std::size_t e = radius();
    const std::size_t cols = e + (e + k_); // E_0..E_{e-1}, Q_0..Q_{e+k-1}
    std::vector<gf::Elem> a(n_ * cols, 0);
    std::vector<gf::Elem> b(n_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
        const gf::Elem alpha = alphas_[i];
        const gf::Elem r = received[i];
        gf::Elem pw = 1;
        for (std::size_t j = 0; j < e + k_; ++j) {
            if (j < e) {
                a[i * cols + j] = field_.mul(r, pw);
            }
            a[i * cols + e + j] = pw;
            pw = field_.mul(pw, alpha);
        }
        b[i] = field_.mul(r, field_.pow(alpha, e));
    }
    std::vector<gf::Elem> z;
    if (!gf::solve_linear(field_, std::move(a), std::move(b), n_, cols, z)) {
        return std::nullopt;
    }
    std::vector<gf::Elem> ecoef(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(e));
    ecoef.push_back(1);
    const gf::Poly err(std::move(ecoef));
    const gf::Poly q(std::vector<gf::Elem>(z.begin() + static_cast<std::ptrdiff_t>(e), z.end()));
    auto [p, rem] = gf::divmod(field_, q, err);
    if (!rem.is_zero() || p.degree() >= static_cast<int>(k_)) {
        return std::nullopt;
    }
    std::vector<gf::Elem> msg(k_, 0);
    for (std::size_t i = 0; i < k_; ++i) {
        msg[i] = p.coeff(i);
    }
    if (symbol_distance(encode(msg), received) > e) {
        return std::nullopt;
    }
    return msg;
}

std::size_t symbol_distance(std::span<const gf::Elem> a, std::span<const gf::Elem> b) {
    if (a.size() != b.size()) {
        throw DimensionError("symbol vectors differ in length");
    }
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d += a[i] != b[i] ? 1 : 0;
    }
    return d;
}

} // namespace hcp
