#pragma once

#include <stdexcept>
#include <string>

#include "polynomial.hpp"

namespace superdiag {

/* Quotient of two polynomials in q, t.  Kept in a light canonical form:
 * integer coefficients, no common integer content, positive leading
 * coefficient in the denominator.  No polynomial gcd is taken; equality is
 * decided by cross-multiplication and to_polynomial() certifies exactness.
 */
class QTRationalFunction {
public:
    QTRationalFunction() : num_(), den_(1L) {}
    QTRationalFunction(const QTZPolynomial& p) : num_(p), den_(1L) { canonicalize(); }
    QTRationalFunction(QTZPolynomial num, QTZPolynomial den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
        canonicalize();
    }

    const QTZPolynomial& num() const noexcept { return num_; }
    const QTZPolynomial& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    friend QTRationalFunction operator+(const QTRationalFunction& a, const QTRationalFunction& b) {
        if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
        return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
    }
    friend QTRationalFunction operator-(const QTRationalFunction& a, const QTRationalFunction& b) {
        return a + (-b);
    }
    QTRationalFunction operator-() const {
        QTRationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend QTRationalFunction operator*(const QTRationalFunction& a, const QTRationalFunction& b) {
        return {a.num_ * b.num_, a.den_ * b.den_};
    }
    friend QTRationalFunction operator/(const QTRationalFunction& a, const QTRationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("division by zero rational function");
        return {a.num_ * b.den_, a.den_ * b.num_};
    }
    QTRationalFunction& operator+=(const QTRationalFunction& o) { return *this = *this + o; }
    QTRationalFunction& operator*=(const QTRationalFunction& o) { return *this = *this * o; }

    friend bool operator==(const QTRationalFunction& a, const QTRationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    // Throws NotDivisible when the value is not a polynomial.
    QTZPolynomial to_polynomial() const { return divide_exact(num_, den_); }

    std::string to_string() const {
        if (den_ == QTZPolynomial(1L)) return num_.to_string();
        return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
    }

private:
    void canonicalize() {
        if (num_.is_zero()) {
            den_ = QTZPolynomial(1L);
            return;
        }
        // clear denominators, then remove the common integer content
        BigInt l = 1, g = 0;
        for (const auto* p : {&num_, &den_})
            for (auto& tm : p->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), tm.coeff.get_den_mpz_t());
        for (const auto* p : {&num_, &den_})
            for (auto& tm : p->terms()) {
                BigInt v = tm.coeff.get_num() * (l / tm.coeff.get_den());
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
            }
        Rational scale(l, g);
        scale.canonicalize();
        if (sgn(den_.leading_term().coeff) < 0) scale = -scale;
        if (scale != 1) {
            num_ *= scale;
            den_ *= scale;
        }
    }

    QTZPolynomial num_;
    QTZPolynomial den_;
};

}  // namespace superdiag
