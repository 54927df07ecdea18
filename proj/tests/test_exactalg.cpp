#include <random>

#include <gtest/gtest.h>

#include <superdiag/linalg.hpp>
#include <superdiag/polynomial.hpp>
#include <superdiag/ratfun.hpp>

using namespace superdiag;

namespace {

using P = QTZPolynomial;
const P q = P::var_q(), t = P::var_t(), z = P::var_z();

P random_poly(std::mt19937& rng, int terms = 4, int max_deg = 3, bool with_z = true) {
    P p;
    for (int i = 0; i < terms; ++i) {
        Rational c(int(rng() % 7) - 3, 1 + int(rng() % 3));
        c.canonicalize();
        p += P::monomial(c, rng() % (max_deg + 1), rng() % (max_deg + 1), with_z ? rng() % 2 : 0);
    }
    return p;
}

RationalMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
    std::vector<std::vector<Rational>> rows(r, std::vector<Rational>(c));
    for (auto& row : rows)
        for (auto& v : row)
            if (rng() % 3 == 0) v = Rational(int(rng() % 5) - 2);
    // occasionally force a dependent column
    if (c >= 3 && rng() % 2)
        for (auto& row : rows) row[2] = row[0] + 2 * row[1];
    return RationalMatrix::from_dense(rows);
}

}  // namespace

TEST(Polynomial, TextForm) {
    P p = P(1L) + q * t + P::monomial(Rational(2), 2, 0, 1);
    EXPECT_EQ(p.to_string(), "1 + q*t + 2*z*q^2");
    EXPECT_EQ(P().to_string(), "0");
    EXPECT_EQ((P(1L) - q).to_string(), "1 - q");
    EXPECT_EQ(P::monomial(Rational(-1, 2), 0, 3).to_string(), "-1/2*t^3");
    EXPECT_EQ(P::parse(p.to_string()), p);
}

TEST(Polynomial, ParseRoundTripRandom) {
    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        auto p = random_poly(rng, 6);
        EXPECT_EQ(P::parse(p.to_string()), p) << p.to_string();
    }
    EXPECT_THROW(P::parse("q +"), std::invalid_argument);
    EXPECT_THROW(P::parse("w"), std::invalid_argument);
}

TEST(Polynomial, NoZeroCoefficientsStored) {
    P p = q + t - q;
    EXPECT_EQ(p, t);
    EXPECT_EQ(p.size(), 1u);
    EXPECT_TRUE((q - q).is_zero());
}

TEST(Polynomial, RingAxiomsRandom) {
    std::mt19937 rng(2);
    for (int i = 0; i < 200; ++i) {
        auto a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(a + b, b + a);
        EXPECT_TRUE((a - a).is_zero());
        EXPECT_EQ(a * P(1L), a);
    }
}

TEST(Polynomial, SpecializationIsHomomorphism) {
    std::mt19937 rng(3);
    for (int i = 0; i < 100; ++i) {
        auto a = random_poly(rng), b = random_poly(rng);
        for (auto spec : {std::tuple<std::optional<Rational>, std::optional<Rational>, std::optional<Rational>>{
                              std::nullopt, std::nullopt, Rational(0)},
                          {Rational(1), std::nullopt, std::nullopt},
                          {std::nullopt, Rational(1), std::nullopt}}) {
            auto [sq, st, sz] = spec;
            EXPECT_EQ((a * b).specialize(sq, st, sz), a.specialize(sq, st, sz) * b.specialize(sq, st, sz));
            EXPECT_EQ((a + b).specialize(sq, st, sz), a.specialize(sq, st, sz) + b.specialize(sq, st, sz));
        }
        EXPECT_EQ((a * b).evaluate(2, 3, 5), a.evaluate(2, 3, 5) * b.evaluate(2, 3, 5));
    }
}

TEST(Polynomial, SwapAndZPart) {
    P p = q * q + P(3L) * t * z;
    EXPECT_EQ(p.swap_qt(), t * t + P(3L) * q * z);
    EXPECT_EQ(p.z_part(1), P(3L) * t);
    EXPECT_EQ(p.z_part(0), q * q);
    EXPECT_EQ(p.pow(0), P(1L));
    EXPECT_EQ((q + t).pow(2), q * q + P(2L) * q * t + t * t);
}

TEST(DivideExact, SpecExamples) {
    EXPECT_EQ(divide_exact(P(1L) - q * q, P(1L) - q), P(1L) + q);
    EXPECT_TRUE(divide_exact(P(), q + t).is_zero());
    EXPECT_THROW(divide_exact(q, t), NotDivisible);
    EXPECT_THROW(divide_exact(q, P()), std::domain_error);
}

TEST(DivideExact, IntegerCoefficientsNeedExactDivision) {
    IntPolynomial two(BigInt(2)), three(BigInt(3));
    EXPECT_THROW(divide_exact(three, two), NotDivisible);
    EXPECT_EQ(divide_exact(IntPolynomial(BigInt(6)), two), three);
}

TEST(DivideExact, ProductThenQuotientRandom) {
    std::mt19937 rng(4);
    for (int i = 0; i < 200; ++i) {
        auto a = random_poly(rng), b = random_poly(rng);
        if (b.is_zero()) continue;
        EXPECT_EQ(divide_exact(a * b, b), a);
        if (!a.is_zero() && !(a * b + P(1L)).is_zero() && b.size() > 1)
            EXPECT_THROW(divide_exact(a * b + P(1L) + z * z * z * z, b), NotDivisible);
    }
}

TEST(RationalFunction, SpecExamples) {
    QTRationalFunction a(P(1L), q - t), b(P(1L), t - q);
    EXPECT_TRUE((a + b).is_zero());
    EXPECT_EQ(a * QTRationalFunction(q - t), QTRationalFunction(P(1L)));
    EXPECT_EQ((a * QTRationalFunction(q - t)).to_polynomial(), P(1L));
    QTRationalFunction c(q, P(1L) - t), d(t, P(1L) - t);
    EXPECT_EQ(c + d, QTRationalFunction(q + t, P(1L) - t));
}

TEST(RationalFunction, CanonicalForm) {
    QTRationalFunction f(P(2L) * q, P(4L) - P(4L) * t);  // leading term of den is -4t
    EXPECT_GT(sgn(f.den().leading_term().coeff), 0);
    EXPECT_EQ(f, QTRationalFunction(-q, P(2L) * t - P(2L)));
    QTRationalFunction g(P::monomial(Rational(1, 2), 1, 0), P::monomial(Rational(1, 3), 0, 1));
    for (auto& tm : g.num().terms()) EXPECT_TRUE(is_integer(tm.coeff));
    EXPECT_EQ(g, QTRationalFunction(P(3L) * q, P(2L) * t));
    EXPECT_THROW(QTRationalFunction(q, P()), std::domain_error);
    EXPECT_THROW(QTRationalFunction(P(1L), q).to_polynomial(), NotDivisible);
}

TEST(RationalFunction, FieldAxiomsRandom) {
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto n1 = random_poly(rng, 3, 2, false), n2 = random_poly(rng, 3, 2, false);
        auto d1 = random_poly(rng, 2, 2, false), d2 = random_poly(rng, 2, 2, false);
        if (d1.is_zero() || d2.is_zero()) continue;
        QTRationalFunction a(n1, d1), b(n2, d2);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ((a + b) - b, a);
        EXPECT_EQ(a * b, b * a);
        if (!b.is_zero()) EXPECT_EQ((a * b) / b, a);
    }
}

TEST(Rref, SpecExamples) {
    EXPECT_EQ(rank(RationalMatrix::identity(4)), 4u);
    EXPECT_EQ(rank(RationalMatrix(3, 4)), 0u);
    // 4x5 spanning matrix of I_2 at (1,0,1), coordinates x1t1, x1t2, x2t1, x2t2;
    // columns x1(t1+t2), x2(t1+t2), (x1+x2)t1, (x1+x2)t2, x1t1+x2t2
    auto m = RationalMatrix::from_dense({{1, 0, 1, 0, 1}, {1, 0, 0, 1, 0}, {0, 1, 1, 0, 0}, {0, 1, 0, 1, 1}});
    auto r = rref(m);
    EXPECT_EQ(r.rank, 4u);
    EXPECT_EQ(r.pivot_cols, (std::vector<std::uint32_t>{0, 1, 2, 4}));
}

TEST(Rref, BasisIsReduced) {
    auto m = RationalMatrix::from_dense({{2, 4, 1}, {1, 2, 0}, {0, 0, 3}});
    auto r = rref(m);
    EXPECT_EQ(r.rank, 2u);
    for (std::size_t j = 0; j < r.rank; ++j)
        for (std::size_t i = 0; i < r.rank; ++i) EXPECT_EQ(r.basis.at(r.pivot_rows[i], j), Rational(i == j));
}

TEST(Rref, RandomProperties) {
    std::mt19937 rng(6);
    for (int i = 0; i < 150; ++i) {
        std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
        auto m = random_matrix(rng, rows, cols);
        auto r = rref(m);
        EXPECT_EQ(r.rank, rank(m.transpose()));
        auto again = rref(r.basis);
        EXPECT_EQ(again.rank, r.rank);
        for (std::size_t j = 0; j < r.rank; ++j)
            for (std::size_t k = 0; k < rows; ++k) EXPECT_EQ(again.basis.at(k, j), r.basis.at(k, j));
        if (r.rank > 0) {
            LinearAction id = [](const SparseVector& v) { return v; };
            EXPECT_EQ(restricted_trace(r.basis, id), Rational(long(r.rank)));
        }
    }
}

TEST(RestrictedTrace, SpecExamples) {
    LinearAction swap = [](const SparseVector& v) {
        SparseVector out;
        for (auto& [i, c] : v) out.emplace_back(1 - i, c);
        std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return out;
    };
    EXPECT_EQ(restricted_trace(RationalMatrix::from_dense({{1}, {1}}), swap), Rational(1));
    // antisymmetric line: trace -1
    EXPECT_EQ(restricted_trace(RationalMatrix::from_dense({{1}, {-1}}), swap), Rational(-1));
    // not stable
    EXPECT_THROW(restricted_trace(RationalMatrix::from_dense({{1}, {0}}), swap), InvariantViolation);
    // not full column rank
    EXPECT_THROW(restricted_trace(RationalMatrix::from_dense({{1, 2}, {1, 2}}), swap), std::invalid_argument);
}

TEST(RestrictedTrace, IdentityBasisGivesFullTrace) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + rng() % 5;
        auto a = random_matrix(rng, n, n);
        LinearAction act = [&](const SparseVector& v) {
            SparseVector out;
            for (std::size_t i = 0; i < n; ++i) {
                Rational s = 0;
                for (auto& [j, c] : v) s += a.at(i, j) * c;
                if (sgn(s)) out.emplace_back(std::uint32_t(i), s);
            }
            return out;
        };
        Rational tr = 0;
        for (std::size_t i = 0; i < n; ++i) tr += a.at(i, i);
        EXPECT_EQ(restricted_trace(RationalMatrix::identity(n), act), tr);
    }
}

TEST(SparseVector, Axpy) {
    SparseVector a{{0, 1}, {2, 3}}, b{{1, 1}, {2, 1}};
    auto r = sparse_axpy(a, 3, b);
    EXPECT_EQ(r, (SparseVector{{0, 1}, {1, -3}}));
    EXPECT_EQ(sparse_get(r, 2), Rational(0));
}
