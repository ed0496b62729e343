#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hcp/error.hpp"
#include "hcp/gf.hpp"

using hcp::gf::Elem;
using hcp::gf::Field;
using hcp::gf::Poly;

TEST(Field, RejectsDegreeOutOfRange) {
    EXPECT_THROW(Field(1), hcp::DomainError);
    EXPECT_THROW(Field(17), hcp::DomainError);
}

TEST(Field, DocumentedModuliAreIrreducible) {
    for (unsigned t = 2; t <= 16; ++t) {
        const Field f(t);
        EXPECT_EQ(f.order(), 1U << t);
        EXPECT_EQ(f.modulus(), hcp::gf::default_modulus(t));
        EXPECT_TRUE(hcp::gf::is_irreducible(f.modulus()));
    }
    EXPECT_EQ(hcp::gf::default_modulus(8), 0x11DU);
    EXPECT_FALSE(hcp::gf::is_irreducible(0b101)); // x^2 + 1 = (x + 1)^2
}

TEST(Field, SmallMultiplicationsByHand) {
    const Field f(3); // x^3 + x + 1
    EXPECT_EQ(f.mul(2, 2), 4U);
    EXPECT_EQ(f.mul(4, 2), 3U);
    EXPECT_EQ(f.mul(6, 7), f.mul_slow(6, 7));
}

TEST(Field, AdditionTableRowsArePermutations) {
    const Field f(2);
    for (Elem a = 0; a < 4; ++a) {
        std::set<Elem> row;
        for (Elem b = 0; b < 4; ++b) {
            row.insert(Field::add(a, b));
        }
        EXPECT_EQ(row.size(), 4U);
        EXPECT_EQ(Field::add(a, a), 0U);
    }
}

TEST(Field, InverseExhaustiveUpToDegreeEight) {
    for (unsigned t = 2; t <= 8; ++t) {
        const Field f(t);
        for (Elem a = 1; a < f.order(); ++a) {
            EXPECT_EQ(f.mul(a, f.inv(a)), 1U) << "t=" << t << " a=" << a;
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.exp(f.log(a)), a);
        }
        EXPECT_THROW((void)f.inv(0), hcp::DomainError);
    }
}

TEST(Field, TableMultiplicationMatchesCarrylessOracle) {
    std::mt19937_64 rng(3);
    for (unsigned t = 2; t <= 16; ++t) {
        const Field f(t);
        std::uniform_int_distribution<Elem> pick(0, f.order() - 1);
        for (int rep = 0; rep < 300; ++rep) {
            const Elem a = pick(rng);
            const Elem b = pick(rng);
            EXPECT_EQ(f.mul(a, b), f.mul_slow(a, b));
        }
    }
}

TEST(Field, AxiomsExhaustiveSmallFields) {
    for (unsigned t = 2; t <= 4; ++t) {
        const Field f(t);
        for (Elem a = 0; a < f.order(); ++a) {
            for (Elem b = 0; b < f.order(); ++b) {
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                for (Elem c = 0; c < f.order(); ++c) {
                    EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    EXPECT_EQ(f.mul(a, Field::add(b, c)), Field::add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

TEST(Field, AxiomsSampledUpToDegreeEight) {
    std::mt19937_64 rng(9);
    for (unsigned t = 5; t <= 8; ++t) {
        const Field f(t);
        std::uniform_int_distribution<Elem> pick(0, f.order() - 1);
        for (int rep = 0; rep < 2000; ++rep) {
            const Elem a = pick(rng);
            const Elem b = pick(rng);
            const Elem c = pick(rng);
            EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            EXPECT_EQ(f.mul(a, Field::add(b, c)), Field::add(f.mul(a, b), f.mul(a, c)));
        }
    }
}

TEST(Field, GeneratorIsPrimitive) {
    for (unsigned t = 2; t <= 12; ++t) {
        const Field f(t);
        std::set<Elem> powers;
        for (std::uint32_t k = 0; k + 1 < f.order(); ++k) {
            powers.insert(f.exp(k));
        }
        EXPECT_EQ(powers.size(), f.order() - 1);
    }
}

TEST(Field, RangeChecked) {
    const Field f(4);
    EXPECT_THROW((void)f.mul(16, 1), hcp::DomainError);
    EXPECT_THROW((void)f.inv(16), hcp::DomainError);
    EXPECT_NO_THROW((void)f.mul(15, 15));
}

TEST(Poly, TrimsLeadingZeros) {
    const Poly p(std::vector<Elem>{1, 2, 0, 0});
    EXPECT_EQ(p.degree(), 1);
    EXPECT_TRUE(Poly().is_zero());
    EXPECT_EQ(Poly().degree(), -1);
}

TEST(Poly, EvalExamples) {
    const Field f8(3);
    EXPECT_EQ(hcp::gf::eval(f8, Poly::constant(5), 3), 5U);
    EXPECT_EQ(hcp::gf::eval(f8, Poly(std::vector<Elem>{2, 3}), 1), 1U);
    const Field f4(2);
    const Elem g = f4.generator();
    EXPECT_EQ(hcp::gf::eval(f4, Poly(std::vector<Elem>{0, 0, 1}), g), f4.mul(g, g));
}

TEST(Poly, DivmodReconstructs) {
    const Field f(5);
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<Elem> pick(0, f.order() - 1);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<Elem> ac(8);
        std::vector<Elem> bc(3);
        for (auto& c : ac) {
            c = pick(rng);
        }
        for (auto& c : bc) {
            c = pick(rng);
        }
        bc.back() = 1 + pick(rng) % (f.order() - 1);
        const Poly a(ac);
        const Poly b(bc);
        const auto [q, r] = hcp::gf::divmod(f, a, b);
        EXPECT_LT(r.degree(), b.degree());
        EXPECT_EQ(hcp::gf::add(hcp::gf::mul(f, q, b), r), a);
    }
    EXPECT_THROW((void)hcp::gf::divmod(f, Poly::constant(1), Poly()), hcp::DomainError);
}

TEST(Poly, InterpolationRecoversPolynomial) {
    const Field f(8);
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<Elem> pick(0, 255);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Elem> coeffs(4);
        for (auto& c : coeffs) {
            c = pick(rng);
        }
        const Poly p(coeffs);
        std::vector<hcp::gf::Point> pts;
        for (Elem x = 1; x <= 4; ++x) {
            pts.push_back({x * 17, hcp::gf::eval(f, p, x * 17)});
        }
        const Poly q = hcp::gf::interpolate(f, pts);
        EXPECT_EQ(q, p);
        for (const auto& pt : pts) {
            EXPECT_EQ(hcp::gf::eval(f, q, pt.x), pt.y);
        }
    }
}

TEST(Poly, InterpolationEdgeCases) {
    const Field f(4);
    EXPECT_TRUE(hcp::gf::interpolate(f, std::vector<hcp::gf::Point>{}).is_zero());
    const std::vector<hcp::gf::Point> one{{3, 9}};
    EXPECT_EQ(hcp::gf::interpolate(f, one), Poly::constant(9));
    const std::vector<hcp::gf::Point> dup{{3, 9}, {3, 1}};
    EXPECT_THROW((void)hcp::gf::interpolate(f, dup), hcp::DomainError);
}

TEST(LinearSystem, SolvesSquareSystem) {
    const Field f(4);
    // x + y = 3, x + 2y = 5 over GF(16).
    std::vector<Elem> a{1, 1, 1, 2};
    std::vector<Elem> b{3, 5};
    std::vector<Elem> sol;
    ASSERT_TRUE(hcp::gf::solve_linear(f, a, b, 2, 2, sol));
    EXPECT_EQ(Field::add(sol[0], sol[1]), 3U);
    EXPECT_EQ(Field::add(sol[0], f.mul(2, sol[1])), 5U);
}

TEST(LinearSystem, DetectsInconsistency) {
    const Field f(4);
    std::vector<Elem> a{1, 1, 1, 1};
    std::vector<Elem> b{3, 5};
    std::vector<Elem> sol;
    EXPECT_FALSE(hcp::gf::solve_linear(f, a, b, 2, 2, sol));
}
