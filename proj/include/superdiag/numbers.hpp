#pragma once

#include <gmpxx.h>

#include <string>

namespace superdiag {

using BigInt = mpz_class;
using Rational = mpq_class;

/* Coefficient-ring hooks used by the polynomial templates. */
template <class C>
struct CoeffTraits;

template <>
struct CoeffTraits<Rational> {
    static bool is_zero(const Rational& a) { return sgn(a) == 0; }
    static bool is_one(const Rational& a) { return a == 1; }
    static int sign(const Rational& a) { return sgn(a); }
    // quotient a / b when it exists in the ring
    static bool divide(const Rational& a, const Rational& b, Rational& out) {
        if (sgn(b) == 0) return false;
        out = a / b;
        return true;
    }
    static std::string to_string(const Rational& a) { return a.get_str(); }
    static Rational from_string(const std::string& s) {
        Rational r(s);
        r.canonicalize();
        return r;
    }
};

template <>
struct CoeffTraits<BigInt> {
    static bool is_zero(const BigInt& a) { return sgn(a) == 0; }
    static bool is_one(const BigInt& a) { return a == 1; }
    static int sign(const BigInt& a) { return sgn(a); }
    static bool divide(const BigInt& a, const BigInt& b, BigInt& out) {
        if (sgn(b) == 0 || !mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) return false;
        mpz_divexact(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return true;
    }
    static std::string to_string(const BigInt& a) { return a.get_str(); }
    static BigInt from_string(const std::string& s) { return BigInt(s); }
};

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace superdiag
