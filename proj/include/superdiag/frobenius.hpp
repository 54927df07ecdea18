#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "polynomial.hpp"

namespace superdiag {

/* Schur expansion of a qtz-graded Frobenius image: lambda -> coefficient.
 * Only nonzero coefficients are stored.
 */
struct FrobeniusSeries {
    int n = 0;
    PartitionMap<QTZPolynomial> coeffs;

    QTZPolynomial coefficient(const Partition& lambda) const {
        auto it = coeffs.find(lambda);
        return it == coeffs.end() ? QTZPolynomial{} : it->second;
    }

    void add(const Partition& lambda, const QTZPolynomial& p) {
        if (p.is_zero()) return;
        auto& slot = coeffs[lambda];
        slot += p;
        if (slot.is_zero()) coeffs.erase(lambda);
    }

    // Apply the same specialization to every coefficient.
    FrobeniusSeries specialize(std::optional<Rational> q, std::optional<Rational> t,
                               std::optional<Rational> z) const {
        FrobeniusSeries r;
        r.n = n;
        for (auto& [lam, p] : coeffs) r.add(lam, p.specialize(q, t, z));
        return r;
    }

    // Graded dimension: sum_lambda f^lambda * coeff(lambda).
    QTZPolynomial hilbert_series() const {
        QTZPolynomial h;
        for (auto& [lam, p] : coeffs) h += p * Rational(syt_count(lam));
        return h;
    }

    bool integral() const {
        for (auto& [lam, p] : coeffs)
            for (auto& tm : p.terms())
                if (!is_integer(tm.coeff)) return false;
        return true;
    }

    bool schur_positive() const {
        for (auto& [lam, p] : coeffs)
            if (!p.all_coefficients_nonnegative()) return false;
        return true;
    }

    std::string to_string() const {
        std::string s;
        for (auto& [lam, p] : coeffs) s += "s(" + lam.to_string() + "): " + p.to_string() + "\n";
        return s;
    }

    friend bool operator==(const FrobeniusSeries& a, const FrobeniusSeries& b) {
        return a.n == b.n && a.coeffs == b.coeffs;
    }
};

struct SeriesDiff {
    Partition lambda;
    QTZPolynomial lhs;
    QTZPolynomial rhs;
    QTZPolynomial difference;  // lhs - rhs
};

/// Per-lambda differences; empty iff the series agree.
inline std::vector<SeriesDiff> compare_series(const FrobeniusSeries& lhs, const FrobeniusSeries& rhs) {
    if (lhs.n != rhs.n) throw std::invalid_argument("compare_series: different n");
    PartitionMap<int> keys;
    for (auto& [lam, p] : lhs.coeffs) keys[lam] = 1;
    for (auto& [lam, p] : rhs.coeffs) keys[lam] = 1;
    std::vector<SeriesDiff> out;
    for (auto& [lam, unused] : keys) {
        auto a = lhs.coefficient(lam), b = rhs.coefficient(lam);
        auto d = a - b;
        if (!d.is_zero()) out.push_back({lam, a, b, d});
    }
    return out;
}

}  // namespace superdiag
