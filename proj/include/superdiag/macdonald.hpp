#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "frobenius.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "ratfun.hpp"

namespace superdiag {

enum class SymBasis { Monomial, Schur, Power, Elementary };

inline std::string basis_name(SymBasis b) {
    switch (b) {
        case SymBasis::Monomial: return "m";
        case SymBasis::Schur: return "s";
        case SymBasis::Power: return "p";
        case SymBasis::Elementary: return "e";
    }
    return "?";
}

/* Homogeneous symmetric function of degree n in one basis. */
template <class C>
struct SymFunc {
    SymBasis basis = SymBasis::Schur;
    int n = 0;
    PartitionMap<C> coeffs;

    C coefficient(const Partition& lambda) const {
        auto it = coeffs.find(lambda);
        return it == coeffs.end() ? C{} : it->second;
    }

    friend bool operator==(const SymFunc& a, const SymFunc& b) {
        return a.basis == b.basis && a.n == b.n && a.coeffs == b.coeffs;
    }
};

/* A cell (row, col) of a Young diagram, rows indexed from the longest part.
 * arm: cells strictly right in the row; leg: cells strictly below in the
 * column; coarm = col; coleg = row.
 */
struct Cell {
    int row = 0, col = 0;
    int arm = 0, leg = 0;
    int coarm() const { return col; }
    int coleg() const { return row; }
};

inline std::vector<Cell> cells(const Partition& mu) {
    const Partition conj = mu.conjugate();
    std::vector<Cell> out;
    for (std::size_t r = 0; r < mu.length(); ++r)
        for (int c = 0; c < mu[r]; ++c)
            out.push_back({int(r), c, mu[r] - c - 1, conj[c] - int(r) - 1});
    return out;
}

namespace detail {

template <class C>
Polynomial<C> qt_monomial(unsigned q, unsigned t) {
    return Polynomial<C>::monomial(C(1), q, t);
}

}  // namespace detail

struct MacdonaldScalars {
    QTZPolynomial B;   // sum_c q^{a'} t^{l'}
    QTZPolynomial Pi;  // prod_{c != (0,0)} (1 - q^{a'} t^{l'})
    QTZPolynomial w;   // prod_c (q^a - t^{l+1})(t^l - q^{a+1})
    QTZPolynomial M;   // (1-q)(1-t)
};

inline MacdonaldScalars macdonald_scalars(const Partition& mu) {
    if (mu.empty()) throw std::invalid_argument("macdonald_scalars: empty partition");
    using P = QTZPolynomial;
    MacdonaldScalars s;
    s.Pi = P(1L);
    s.w = P(1L);
    s.M = (P(1L) - P::var_q()) * (P(1L) - P::var_t());
    for (auto& c : cells(mu)) {
        s.B += detail::qt_monomial<Rational>(c.coarm(), c.coleg());
        if (c.row != 0 || c.col != 0) s.Pi *= P(1L) - detail::qt_monomial<Rational>(c.coarm(), c.coleg());
        s.w *= (detail::qt_monomial<Rational>(c.arm, 0) - detail::qt_monomial<Rational>(0, c.leg + 1)) *
               (detail::qt_monomial<Rational>(0, c.leg) - detail::qt_monomial<Rational>(c.arm + 1, 0));
    }
    return s;
}

/// Coefficient M B_mu Pi_mu / w_mu of Htilde_mu in the expansion of e_n.
inline QTRationalFunction en_expansion_coefficient(const Partition& mu) {
    auto s = macdonald_scalars(mu);
    return {s.M * s.B * s.Pi, s.w};
}

/// e_k[B_mu - 1]: elementary symmetric function of the non-(0,0) cell weights.
template <class C = Rational>
Polynomial<C> ek_pleth(const Partition& mu, int k) {
    const int n = mu.size();
    if (n == 0 || k < 0 || k > n - 1) throw std::invalid_argument("ek_pleth: need 0 <= k <= |mu|-1");
    // dp[j] = e_j of the alphabet seen so far
    std::vector<Polynomial<C>> dp(k + 1);
    dp[0] = Polynomial<C>(C(1));
    for (auto& c : cells(mu)) {
        if (c.row == 0 && c.col == 0) continue;
        auto x = detail::qt_monomial<C>(c.coarm(), c.coleg());
        for (int j = k; j >= 1; --j) dp[j] += dp[j - 1] * x;
    }
    return dp[k];
}

inline constexpr int kMaxHtildeSize = 8;

/* Htilde_mu in the monomial basis by the Haglund-Haiman-Loehr filling
 * formula.  The coefficient of m_nu is the sum over fillings with content
 * exactly nu of q^inv t^maj.
 */
inline SymFunc<QTZPolynomial> hhl_htilde(const Partition& mu) {
    const int n = mu.size();
    if (n > kMaxHtildeSize) throw std::invalid_argument("hhl_htilde: partition too large");
    SymFunc<QTZPolynomial> out;
    out.basis = SymBasis::Monomial;
    out.n = n;
    if (n == 0) {
        out.coeffs[Partition{}] = QTZPolynomial(1L);
        return out;
    }
    // cells in reading order: rows farthest from row 0 first, left to right
    auto all = cells(mu);
    std::vector<Cell> order;
    for (int r = int(mu.length()) - 1; r >= 0; --r)
        for (auto& c : all)
            if (c.row == r) order.push_back(c);
    const std::size_t m = order.size();
    auto pos = [&](int row, int col) -> int {
        for (std::size_t i = 0; i < m; ++i)
            if (order[i].row == row && order[i].col == col) return int(i);
        return -1;
    };
    std::vector<int> below(m, -1);  // the cell one step toward row 0
    for (std::size_t i = 0; i < m; ++i)
        if (order[i].row > 0) below[i] = pos(order[i].row - 1, order[i].col);
    // attacking pairs (u, v), u before v in reading order
    std::vector<std::pair<int, int>> attacks;
    for (std::size_t u = 0; u < m; ++u)
        for (std::size_t v = u + 1; v < m; ++v) {
            const auto& cu = order[u];
            const auto& cv = order[v];
            bool same_row = cu.row == cv.row;
            bool adjacent = cu.row == cv.row + 1 && cu.col > cv.col;
            if (same_row || adjacent) attacks.emplace_back(int(u), int(v));
        }

    for (auto& nu : partitions_of(n)) {
        std::vector<int> filling;
        for (std::size_t letter = 0; letter < nu.length(); ++letter)
            filling.insert(filling.end(), nu[letter], int(letter) + 1);
        std::map<std::pair<int, int>, long> counts;
        do {
            int maj = 0, inv = 0;
            for (std::size_t i = 0; i < m; ++i)
                if (below[i] >= 0 && filling[i] > filling[below[i]]) {
                    maj += order[i].leg + 1;
                    inv -= order[i].arm;
                }
            for (auto [u, v] : attacks)
                if (filling[u] > filling[v]) ++inv;
            ++counts[{inv, maj}];
        } while (std::next_permutation(filling.begin(), filling.end()));
        std::vector<QTZPolynomial::Term> terms;
        for (auto& [key, cnt] : counts) {
            if (key.first < 0) throw std::logic_error("hhl_htilde: negative inversion statistic");
            terms.push_back({QTZExponent{unsigned(key.first), unsigned(key.second), 0}.pack(), Rational(cnt)});
        }
        out.coeffs[nu] = QTZPolynomial::from_terms(std::move(terms));
    }
    return out;
}

namespace detail {

inline const std::vector<std::vector<std::int64_t>>& kostka_matrix(int n) {
    static std::shared_mutex mutex;
    static std::map<int, std::vector<std::vector<std::int64_t>>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto parts = partitions_of(n);
    std::vector<std::vector<std::int64_t>> k(parts.size(), std::vector<std::int64_t>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t j = 0; j < parts.size(); ++j) k[i][j] = kostka(parts[i], parts[j]);
    std::unique_lock lock(mutex);
    return cache.emplace(n, std::move(k)).first->second;
}

}  // namespace detail

/* Monomial -> Schur by back-substitution in the unitriangular Kostka
 * system; reverse lexicographic order refines dominance.
 */
template <class C>
SymFunc<C> mono_to_schur(const SymFunc<C>& f) {
    if (f.basis != SymBasis::Monomial) throw std::invalid_argument("mono_to_schur: expected monomial basis");
    auto parts = partitions_of(f.n);
    const auto& k = detail::kostka_matrix(f.n);
    std::vector<C> b(parts.size());
    SymFunc<C> out;
    out.basis = SymBasis::Schur;
    out.n = f.n;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        C v = f.coefficient(parts[j]);
        for (std::size_t i = 0; i < j; ++i)
            if (k[i][j] != 0 && !b[i].is_zero()) v -= b[i] * Rational(k[i][j]);
        b[j] = v;
        if (!v.is_zero()) out.coeffs[parts[j]] = v;
    }
    return out;
}

template <class C>
SymFunc<C> schur_to_mono(const SymFunc<C>& f) {
    if (f.basis != SymBasis::Schur) throw std::invalid_argument("schur_to_mono: expected Schur basis");
    auto parts = partitions_of(f.n);
    const auto& k = detail::kostka_matrix(f.n);
    SymFunc<C> out;
    out.basis = SymBasis::Monomial;
    out.n = f.n;
    for (std::size_t j = 0; j < parts.size(); ++j) {
        C v{};
        for (std::size_t i = 0; i < parts.size(); ++i)
            if (k[i][j] != 0) v += f.coefficient(parts[i]) * Rational(k[i][j]);
        if (!v.is_zero()) out.coeffs[parts[j]] = v;
    }
    return out;
}

/// Htilde_mu in the Schur basis (memoized).
inline const SymFunc<QTZPolynomial>& htilde_schur(const Partition& mu) {
    static std::shared_mutex mutex;
    static std::map<Partition, SymFunc<QTZPolynomial>> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find(mu); it != cache.end()) return it->second;
    }
    auto s = mono_to_schur(hhl_htilde(mu));
    std::unique_lock lock(mutex);
    return cache.emplace(mu, std::move(s)).first->second;
}

namespace detail {

/* Factor Phi_d(X, Y) homogenized, with X = q^qa and Y = t^tb.  Binomials
 * q^alpha - t^beta split into these factors, which lets the Macdonald
 * denominators share a small least common multiple.
 */
struct Atom {
    int d, qa, tb;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

// Coefficients of Phi_d, from x^d - 1 = prod_{e | d} Phi_e.
inline std::vector<BigInt> cyclotomic(int d) {
    std::vector<BigInt> p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (int e = 1; e < d; ++e) {
        if (d % e) continue;
        auto f = cyclotomic(e);  // monic
        std::vector<BigInt> quot(p.size() - f.size() + 1, 0);
        for (int i = int(p.size()) - 1; i >= int(f.size()) - 1; --i) {
            BigInt c = p[i];
            quot[i - f.size() + 1] = c;
            for (std::size_t j = 0; j < f.size(); ++j) p[i - f.size() + 1 + j] -= c * f[j];
        }
        p = std::move(quot);
    }
    return p;
}

inline IntPolynomial atom_poly(const Atom& a) {
    auto phi = cyclotomic(a.d);
    const unsigned deg = unsigned(phi.size() - 1);
    std::vector<IntPolynomial::Term> terms;
    for (unsigned i = 0; i <= deg; ++i)
        if (sgn(phi[i]) != 0)
            terms.push_back({QTZExponent{a.qa * i, a.tb * (deg - i), 0}.pack(), phi[i]});
    return IntPolynomial::from_terms(std::move(terms));
}

// q^alpha - t^beta as a product of atoms
inline void binomial_atoms(int alpha, int beta, std::map<Atom, int>& into) {
    if (alpha == 0 && beta == 0) throw std::logic_error("binomial_atoms: zero binomial");
    const int g = std::gcd(alpha, beta);
    for (int d = 1; d <= g; ++d)
        if (g % d == 0) ++into[Atom{d, alpha / g, beta / g}];
}

inline IntPolynomial atom_product(const std::map<Atom, int>& atoms) {
    IntPolynomial p(BigInt(1));
    for (auto& [a, mult] : atoms)
        if (mult > 0) p *= atom_poly(a).pow(unsigned(mult));
    return p;
}

}  // namespace detail

/* Delta'_{e_k}(e_n) for all k, over one common denominator.  For each mu
 * the scalar M B Pi / w is written as (sign * E * atoms) / atoms, common
 * atoms cancelled; D is the atom-wise lcm of the denominators.  Each Schur
 * coefficient is the single fraction Num / D, certified by exact division.
 */
class DeltaEngine {
public:
    explicit DeltaEngine(int n, unsigned threads = 1) : n_(n), parts_(partitions_of(n)) {
        if (n < 1) throw std::invalid_argument("DeltaEngine: n must be positive");
        std::vector<std::map<detail::Atom, int>> dens;
        std::vector<IntPolynomial> nums;
        for (auto& mu : parts_) {
            int sign = 1;
            std::map<detail::Atom, int> num, den;
            IntPolynomial explicit_factor = ek_like_B(mu);
            detail::binomial_atoms(1, 0, num);  // 1 - q = -(q - 1)
            sign = -sign;
            detail::binomial_atoms(0, 1, num);  // 1 - t = 1 - t^1
            for (auto& c : cells(mu)) {
                if (c.row != 0 || c.col != 0) {
                    if (c.coleg() == 0) {
                        detail::binomial_atoms(c.coarm(), 0, num);
                        sign = -sign;
                    } else if (c.coarm() == 0) {
                        detail::binomial_atoms(0, c.coleg(), num);
                    } else {
                        explicit_factor *= IntPolynomial(BigInt(1)) -
                                           detail::qt_monomial<BigInt>(c.coarm(), c.coleg());
                    }
                }
                detail::binomial_atoms(c.arm, c.leg + 1, den);
                detail::binomial_atoms(c.arm + 1, c.leg, den);
                sign = -sign;
            }
            for (auto& [a, mult] : den) {
                auto it = num.find(a);
                if (it == num.end()) continue;
                int common = std::min(mult, it->second);
                mult -= common;
                it->second -= common;
            }
            for (auto& [a, mult] : den) lcm_[a] = std::max(lcm_[a], mult);
            auto numerator = explicit_factor * detail::atom_product(num);
            if (sign < 0) numerator = -numerator;
            nums.push_back(std::move(numerator));
            dens.push_back(std::move(den));
        }
        denominator_ = detail::atom_product(lcm_);
        // P_mu = numerator_mu * D / den_mu
        std::vector<std::size_t> idx(parts_.size());
        std::iota(idx.begin(), idx.end(), 0);
        scaled_ = parallel_map(
            idx,
            [&](std::size_t i) {
                std::map<detail::Atom, int> rest;
                for (auto& [a, mult] : lcm_) {
                    auto it = dens[i].find(a);
                    rest[a] = mult - (it == dens[i].end() ? 0 : it->second);
                }
                return nums[i] * detail::atom_product(rest);
            },
            threads);
        // Htilde Schur coefficients times P_mu, per (lambda, mu)
        std::vector<std::size_t> pairs(parts_.size() * parts_.size());
        std::iota(pairs.begin(), pairs.end(), 0);
        weighted_ = parallel_map(
            pairs,
            [&](std::size_t p) {
                const auto& lam = parts_[p / parts_.size()];
                const auto& mu = parts_[p % parts_.size()];
                auto k = htilde_schur(mu).coefficient(lam).convert<BigInt>();
                return k * scaled_[p % parts_.size()];
            },
            threads);
        threads_ = threads;
    }

    int n() const noexcept { return n_; }
    const IntPolynomial& common_denominator() const noexcept { return denominator_; }

    /// <Delta'_{e_k}(e_n), s_lambda> for every lambda, certified polynomial.
    SymFunc<QTZPolynomial> delta_prime_ek(int k) const {
        if (k < 0 || k > n_ - 1) throw std::invalid_argument("delta_prime_ek_en: need 0 <= k <= n-1");
        std::vector<IntPolynomial> eks;
        for (auto& mu : parts_) eks.push_back(ek_pleth<BigInt>(mu, k));
        std::vector<std::size_t> lam_idx(parts_.size());
        std::iota(lam_idx.begin(), lam_idx.end(), 0);
        auto coeffs = parallel_map(
            lam_idx,
            [&](std::size_t l) {
                IntPolynomial num;
                for (std::size_t m = 0; m < parts_.size(); ++m)
                    num += eks[m] * weighted_[l * parts_.size() + m];
                return divide_exact(num, denominator_);
            },
            threads_);
        SymFunc<QTZPolynomial> out;
        out.basis = SymBasis::Schur;
        out.n = n_;
        for (std::size_t l = 0; l < parts_.size(); ++l)
            if (!coeffs[l].is_zero()) out.coeffs[parts_[l]] = coeffs[l].convert<Rational>();
        return out;
    }

private:
    static IntPolynomial ek_like_B(const Partition& mu) {
        IntPolynomial b;
        for (auto& c : cells(mu)) b += detail::qt_monomial<BigInt>(c.coarm(), c.coleg());
        return b;
    }

    int n_;
    unsigned threads_ = 1;
    std::vector<Partition> parts_;
    std::map<detail::Atom, int> lcm_;
    IntPolynomial denominator_;
    std::vector<IntPolynomial> scaled_;
    std::vector<IntPolynomial> weighted_;
};

inline std::shared_ptr<const DeltaEngine> delta_engine(int n, unsigned threads = 1) {
    static std::mutex mutex;
    static std::map<int, std::shared_ptr<const DeltaEngine>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_shared<const DeltaEngine>(n, threads);
    return slot;
}

inline SymFunc<QTZPolynomial> delta_prime_ek_en(int n, int k, unsigned threads = 1) {
    return delta_engine(n, threads)->delta_prime_ek(k);
}

/// sum_{k=1}^{n} z^{k-1} Delta'_{e_{n-k}}(e_n) in the Schur basis.
inline FrobeniusSeries rhs_series(int n, unsigned threads = 1) {
    if (n < 1) throw std::invalid_argument("rhs_series: n must be positive");
    auto engine = delta_engine(n, threads);
    FrobeniusSeries out;
    out.n = n;
    for (int k = 1; k <= n; ++k) {
        auto part = engine->delta_prime_ek(n - k);
        for (auto& [lam, p] : part.coeffs)
            out.add(lam, p * QTZPolynomial::monomial(Rational(1), 0, 0, unsigned(k - 1)));
    }
    return out;
}

}  // namespace superdiag
