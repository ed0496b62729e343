#include "hcp/gf.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hcp/error.hpp"

namespace hcp::gf {

namespace {

constexpr std::uint32_t kModuli[17] = {
    0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11D,
    0x211,  0x409,  0x805,  0x1053, 0x201B, 0x4443, 0x8003, 0x1100B,
};

int poly_degree(std::uint64_t p) { return p == 0 ? -1 : 63 - std::countl_zero(p); }

// Remainder of binary polynomial a modulo b.
std::uint64_t poly_mod(std::uint64_t a, std::uint64_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
        a ^= b << (da - db);
    }
    return a;
}

} // namespace

std::uint32_t default_modulus(unsigned t) {
    if (t < 2 || t > 16) {
        throw DomainError("field degree must be in [2, 16], got " + std::to_string(t));
    }
    return kModuli[t];
}

bool is_irreducible(std::uint32_t poly) {
    const int d = poly_degree(poly);
    if (d < 1) {
        return false;
    }
    for (std::uint64_t div = 2; poly_degree(div) <= d / 2; ++div) {
        if (poly_mod(poly, div) == 0) {
            return false;
        }
    }
    return true;
}

Field::Field(unsigned t) : t_(t), q_(0), modulus_(default_modulus(t)) {
    if (!is_irreducible(modulus_)) {
        throw InvariantError("modulus for t=" + std::to_string(t) + " is reducible");
    }
    q_ = std::uint32_t{1} << t;
    exp_.resize(q_ - 1);
    log_.assign(q_, 0);
    for (Elem g = 2; g < q_; ++g) {
        Elem cur = 1;
        bool primitive = true;
        for (std::uint32_t k = 0; k < q_ - 1; ++k) {
            if (k > 0 && cur == 1) {
                primitive = false;
                break;
            }
            exp_[k] = cur;
            log_[cur] = k;
            cur = mul_slow(cur, g);
        }
        if (primitive && cur == 1) {
            return;
        }
    }
    throw InvariantError("no primitive element found");
}

Elem Field::mul_slow(Elem a, Elem b) const noexcept {
    std::uint64_t prod = 0;
    for (unsigned i = 0; i < t_; ++i) {
        if ((b >> i) & 1U) {
            prod ^= std::uint64_t{a} << i;
        }
    }
    return static_cast<Elem>(poly_mod(prod, modulus_));
}

void Field::check(Elem a) const {
    if (a >= q_) {
        throw DomainError("element " + std::to_string(a) + " outside GF(2^" + std::to_string(t_) + ")");
    }
}

Elem Field::mul(Elem a, Elem b) const {
    check(a);
    check(b);
    if (a == 0 || b == 0) {
        return 0;
    }
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

Elem Field::inv(Elem a) const {
    check(a);
    if (a == 0) {
        throw DomainError("inverse of zero");
    }
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, std::uint64_t e) const {
    check(a);
    if (e == 0) {
        return 1;
    }
    if (a == 0) {
        return 0;
    }
    return exp_[(static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t Field::log(Elem a) const {
    check(a);
    if (a == 0) {
        throw DomainError("log of zero");
    }
    return log_[a];
}

Poly::Poly(std::vector<Elem> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

Elem eval(const Field& f, const Poly& p, Elem x) {
    Elem acc = 0;
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = Field::add(f.mul(acc, x), *it);
    }
    return acc;
}

Poly add(const Poly& a, const Poly& b) {
    const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Elem> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = a.coeff(i) ^ b.coeff(i);
    }
    return Poly(std::move(out));
}

Poly mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) {
        return {};
    }
    std::vector<Elem> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
            out[i + j] ^= f.mul(a.coeffs()[i], b.coeffs()[j]);
        }
    }
    return Poly(std::move(out));
}

std::pair<Poly, Poly> divmod(const Field& f, const Poly& a, const Poly& b) {
    if (b.is_zero()) {
        throw DomainError("polynomial division by zero");
    }
    std::vector<Elem> rem = a.coeffs();
    const int db = b.degree();
    if (a.degree() < db) {
        return {Poly{}, a};
    }
    std::vector<Elem> quot(static_cast<std::size_t>(a.degree() - db + 1), 0);
    const Elem lead_inv = f.inv(b.coeffs().back());
    for (int i = a.degree(); i >= db; --i) {
        const Elem c = rem[static_cast<std::size_t>(i)];
        if (c == 0) {
            continue;
        }
        const Elem factor = f.mul(c, lead_inv);
        quot[static_cast<std::size_t>(i - db)] = factor;
        for (int j = 0; j <= db; ++j) {
            rem[static_cast<std::size_t>(i - db + j)] ^= f.mul(factor, b.coeffs()[static_cast<std::size_t>(j)]);
        }
    }
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly interpolate(const Field& f, std::span<const Point> points) {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].x == points[j].x) {
                throw DomainError("duplicate interpolation x-coordinate " + std::to_string(points[i].x));
            }
        }
    }
    Poly result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        // basis_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j)
        Poly basis = Poly::constant(1);
        Elem denom = 1;
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) {
                continue;
            }
            basis = mul(f, basis, Poly(std::vector<Elem>{points[j].x, 1}));
            denom = f.mul(denom, Field::add(points[i].x, points[j].x));
        }
        const Elem scale = f.mul(points[i].y, f.inv(denom));
        std::vector<Elem> scaled = basis.coeffs();
        for (auto& c : scaled) {
            c = f.mul(c, scale);
        }
        result = add(result, Poly(std::move(scaled)));
    }
    return result;
}

bool solve_linear(const Field& f, std::vector<Elem> a, std::vector<Elem> b, std::size_t rows, std::size_t cols,
                  std::vector<Elem>& solution) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p * cols + c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        if (p != r) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::swap(a[p * cols + k], a[r * cols + k]);
            }
            std::swap(b[p], b[r]);
        }
        const Elem inv = f.inv(a[r * cols + c]);
        for (std::size_t k = 0; k < cols; ++k) {
            a[r * cols + k] = f.mul(a[r * cols + k], inv);
        }
        b[r] = f.mul(b[r], inv);
        for (std::size_t i = 0; i < rows; ++i) {
            const Elem factor = a[i * cols + c];
            if (i == r || factor == 0) {
                continue;
            }
            for (std::size_t k = 0; k < cols; ++k) {
                a[i * cols + k] ^= f.mul(factor, a[r * cols + k]);
            }
            b[i] ^= f.mul(factor, b[r]);
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return false;
        }
    }
    solution.assign(cols, 0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        solution[pivot_col[i]] = b[i];
    }
    return true;
}

} // namespace hcp::gf
