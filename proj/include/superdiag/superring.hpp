#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "numbers.hpp"

namespace superdiag {

inline constexpr int kMaxVariables = 12;

/// Homogeneous degree (x-degree, y-degree, theta-degree).
struct TriDegree {
    int a = 0, b = 0, c = 0;

    friend auto operator<=>(const TriDegree&, const TriDegree&) = default;
    friend bool operator==(const TriDegree&, const TriDegree&) = default;

    TriDegree operator+(const TriDegree& o) const { return {a + o.a, b + o.b, c + o.c}; }
    TriDegree operator-(const TriDegree& o) const { return {a - o.a, b - o.b, c - o.c}; }
    bool fits_in(const TriDegree& o) const { return a <= o.a && b <= o.b && c <= o.c; }
    bool valid() const { return a >= 0 && b >= 0 && c >= 0; }

    std::string to_string() const {
        return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
    }
};

/* Monomial x^xexp y^yexp theta_{i1} ... theta_{ic} with i1 < ... < ic.
 * Any sign coming from reordering thetas lives in the coefficient.
 * Variable indices are 1-based in the public interface.
 */
class SuperMonomial {
public:
    SuperMonomial() = default;
    explicit SuperMonomial(int n) : n_(static_cast<std::uint8_t>(n)) {
        if (n < 0 || n > kMaxVariables) throw std::invalid_argument("unsupported number of variables");
    }

    SuperMonomial(int n, const std::vector<int>& xexp, const std::vector<int>& yexp,
                  const std::vector<int>& theta)
        : SuperMonomial(n) {
        if (int(xexp.size()) != n || int(yexp.size()) != n)
            throw std::invalid_argument("exponent vector length must equal n");
        for (int i = 0; i < n; ++i) {
            if (xexp[i] < 0 || yexp[i] < 0 || xexp[i] > 255 || yexp[i] > 255)
                throw std::invalid_argument("exponent out of range");
            x_[i] = std::uint8_t(xexp[i]);
            y_[i] = std::uint8_t(yexp[i]);
        }
        int prev = 0;
        for (int i : theta) {
            if (i <= prev || i > n) throw std::invalid_argument("theta indices must be strictly increasing in 1..n");
            theta_ |= std::uint16_t(1u << (i - 1));
            prev = i;
        }
    }

    int n() const noexcept { return n_; }
    int x(int i) const { return x_[i - 1]; }
    int y(int i) const { return y_[i - 1]; }
    bool has_theta(int i) const { return (theta_ >> (i - 1)) & 1u; }
    std::uint16_t theta_mask() const noexcept { return theta_; }

    std::vector<int> theta() const {
        std::vector<int> out;
        for (int i = 1; i <= n_; ++i)
            if (has_theta(i)) out.push_back(i);
        return out;
    }

    TriDegree degree() const {
        TriDegree d;
        for (int i = 0; i < n_; ++i) {
            d.a += x_[i];
            d.b += y_[i];
        }
        d.c = std::popcount(theta_);
        return d;
    }

    void set_x(int i, int e) { x_[i - 1] = std::uint8_t(e); }
    void set_y(int i, int e) { y_[i - 1] = std::uint8_t(e); }
    void set_theta_mask(std::uint16_t m) { theta_ = m; }

    // "x1^2*y3*t12"; "1" for the unit monomial
    std::string to_string() const {
        std::string s;
        auto add = [&](char v, int i, int e) {
            if (!e) return;
            if (!s.empty()) s += '*';
            s += v + std::to_string(i);
            if (e > 1) s += "^" + std::to_string(e);
        };
        for (int i = 1; i <= n_; ++i) add('x', i, x(i));
        for (int i = 1; i <= n_; ++i) add('y', i, y(i));
        if (theta_) {
            if (!s.empty()) s += '*';
            s += 't';
            for (int i : theta()) s += std::to_string(i);
        }
        return s.empty() ? "1" : s;
    }

    friend auto operator<=>(const SuperMonomial&, const SuperMonomial&) = default;
    friend bool operator==(const SuperMonomial&, const SuperMonomial&) = default;

    struct Hash {
        std::size_t operator()(const SuperMonomial& m) const noexcept {
            std::uint64_t h = 1469598103934665603ull ^ m.theta_;
            for (int i = 0; i < m.n_; ++i) {
                h = (h ^ m.x_[i]) * 1099511628211ull;
                h = (h ^ m.y_[i]) * 1099511628211ull;
            }
            return static_cast<std::size_t>(h);
        }
    };

private:
    std::uint8_t n_ = 0;
    std::array<std::uint8_t, kMaxVariables> x_{};
    std::array<std::uint8_t, kMaxVariables> y_{};
    std::uint16_t theta_ = 0;
};

/// Parity-signed product of two monomials; nullopt when a theta repeats.
struct SignedMonomial {
    int sign;
    SuperMonomial monomial;
};

inline std::optional<SignedMonomial> mono_mul(const SuperMonomial& u, const SuperMonomial& v) {
    if (u.n() != v.n()) throw std::invalid_argument("mono_mul: ring mismatch");
    if (u.theta_mask() & v.theta_mask()) return std::nullopt;
    SuperMonomial p = u;
    for (int i = 1; i <= u.n(); ++i) {
        int xe = u.x(i) + v.x(i), ye = u.y(i) + v.y(i);
        if (xe > 255 || ye > 255) throw std::overflow_error("mono_mul: exponent overflow");
        p.set_x(i, xe);
        p.set_y(i, ye);
    }
    p.set_theta_mask(u.theta_mask() | v.theta_mask());
    // transpositions to sort u's thetas followed by v's: pairs (i in u, j in v) with i > j
    int swaps = 0;
    for (int j = 1; j <= v.n(); ++j)
        if (v.has_theta(j)) swaps += std::popcount(std::uint32_t(u.theta_mask()) >> j);
    return SignedMonomial{swaps % 2 ? -1 : 1, p};
}

/// sigma applied to a monomial: x_i -> x_sigma(i) etc., re-sorted thetas.
inline SignedMonomial apply_perm(const Permutation& sigma, const SuperMonomial& m) {
    if (sigma.n() != m.n()) throw std::invalid_argument("apply_perm: size mismatch");
    SuperMonomial r(m.n());
    std::uint16_t mask = 0;
    int inversions = 0;
    std::vector<int> images;
    for (int i = 1; i <= m.n(); ++i) {
        r.set_x(sigma(i), m.x(i));
        r.set_y(sigma(i), m.y(i));
        if (m.has_theta(i)) {
            int s = sigma(i);
            for (int prev : images)
                if (prev > s) ++inversions;
            images.push_back(s);
            mask |= std::uint16_t(1u << (s - 1));
        }
    }
    r.set_theta_mask(mask);
    return {inversions % 2 ? -1 : 1, r};
}

/* Element of R_n = Q[x_1..x_n, y_1..y_n, theta_1..theta_n]. */
class SuperPolynomial {
public:
    explicit SuperPolynomial(int n = 0) : n_(n) {}

    static SuperPolynomial from_monomial(const SuperMonomial& m, const Rational& c = 1) {
        SuperPolynomial p(m.n());
        p.add_term(m, c);
        return p;
    }

    int n() const noexcept { return n_; }
    const std::map<SuperMonomial, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const SuperMonomial& m, const Rational& c) {
        if (m.n() != n_) throw std::invalid_argument("monomial from a different ring");
        if (sgn(c) == 0) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const SuperMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    /// The common tri-degree, or nullopt when zero or inhomogeneous.
    std::optional<TriDegree> degree() const {
        if (terms_.empty()) return std::nullopt;
        TriDegree d = terms_.begin()->first.degree();
        for (auto& [m, c] : terms_)
            if (m.degree() != d) return std::nullopt;
        return d;
    }

    SuperPolynomial& operator+=(const SuperPolynomial& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
    friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) {
        for (auto& [m, c] : b.terms_) a.add_term(m, -c);
        return a;
    }
    friend SuperPolynomial operator*(const Rational& s, const SuperPolynomial& a) {
        SuperPolynomial r(a.n_);
        for (auto& [m, c] : a.terms_) r.add_term(m, s * c);
        return r;
    }

    friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("ring mismatch");
        SuperPolynomial r(a.n_);
        for (auto& [u, cu] : a.terms_)
            for (auto& [v, cv] : b.terms_)
                if (auto p = mono_mul(u, v)) r.add_term(p->monomial, p->sign * cu * cv);
        return r;
    }

    friend bool operator==(const SuperPolynomial&, const SuperPolynomial&) = default;

    // Terms in lex order with x1 > x2 > ... > y1 > ... > theta1 > ...
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<std::vector<int>, const std::pair<const SuperMonomial, Rational>*>> order;
        for (auto& term : terms_) {
            std::vector<int> key;
            for (int i = 1; i <= n_; ++i) key.push_back(term.first.x(i));
            for (int i = 1; i <= n_; ++i) key.push_back(term.first.y(i));
            for (int i = 1; i <= n_; ++i) key.push_back(term.first.has_theta(i));
            order.emplace_back(std::move(key), &term);
        }
        std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        std::string s;
        bool first = true;
        for (auto& [key, term] : order) {
            const auto& [m, c] = *term;
            Rational mag = abs(c);
            s += first ? (sgn(c) < 0 ? "-" : "") : (sgn(c) < 0 ? " - " : " + ");
            first = false;
            if (mag != 1) s += mag.get_str() + "*";
            s += m.to_string();
        }
        return s;
    }

private:
    int n_;
    std::map<SuperMonomial, Rational> terms_;
};

inline SuperPolynomial apply_perm(const Permutation& sigma, const SuperPolynomial& f) {
    SuperPolynomial r(f.n());
    for (auto& [m, c] : f.terms()) {
        auto img = apply_perm(sigma, m);
        r.add_term(img.monomial, img.sign * c);
    }
    return r;
}

/// p_{r,s} = sum_i x_i^r y_i^s, for 0 < r+s <= n.
inline SuperPolynomial gen_p(int n, int r, int s) {
    if (r < 0 || s < 0 || r + s <= 0 || r + s > n)
        throw std::invalid_argument("gen_p: need 0 < r+s <= n");
    SuperPolynomial p(n);
    for (int i = 1; i <= n; ++i) {
        SuperMonomial m(n);
        m.set_x(i, r);
        m.set_y(i, s);
        p.add_term(m, 1);
    }
    return p;
}

/// ptilde_{r,s} = sum_i x_i^r y_i^s theta_i, for 0 <= r+s < n.
inline SuperPolynomial gen_ptilde(int n, int r, int s) {
    if (r < 0 || s < 0 || r + s >= n)
        throw std::invalid_argument("gen_ptilde: need 0 <= r+s < n");
    SuperPolynomial p(n);
    for (int i = 1; i <= n; ++i) {
        SuperMonomial m(n);
        m.set_x(i, r);
        m.set_y(i, s);
        m.set_theta_mask(std::uint16_t(1u << (i - 1)));
        p.add_term(m, 1);
    }
    return p;
}

struct IdealGenerator {
    TriDegree degree;
    SuperPolynomial poly;
    std::string name;
};

/* All generators of I_n: the p_{r,s} first, then the ptilde_{r,s}, each
 * family in (r+s, r) lexicographic order.
 */
inline std::vector<IdealGenerator> ideal_generators(int n) {
    std::vector<IdealGenerator> gens;
    for (int d = 1; d <= n; ++d)
        for (int r = 0; r <= d; ++r)
            gens.push_back({{r, d - r, 0}, gen_p(n, r, d - r),
                            "p" + std::to_string(r) + "," + std::to_string(d - r)});
    for (int d = 0; d < n; ++d)
        for (int r = 0; r <= d; ++r)
            gens.push_back({{r, d - r, 1}, gen_ptilde(n, r, d - r),
                            "pt" + std::to_string(r) + "," + std::to_string(d - r)});
    return gens;
}

inline std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// dim R_n^{(a,b,c)} = C(a+n-1, n-1) C(b+n-1, n-1) C(n, c).
inline std::int64_t component_dimension(int n, const TriDegree& d) {
    if (!d.valid()) return 0;
    if (n == 0) return (d.a == 0 && d.b == 0 && d.c == 0) ? 1 : 0;
    return binomial(d.a + n - 1, n - 1) * binomial(d.b + n - 1, n - 1) * binomial(n, d.c);
}

namespace detail {

// weak compositions of total into n parts, lexicographically decreasing
inline std::vector<std::vector<int>> compositions(int total, int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == n - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int v = left; v >= 0; --v) {
            cur[pos] = v;
            self(self, pos + 1, left - v);
        }
    };
    if (n == 0) {
        if (total == 0) out.emplace_back();
        return out;
    }
    rec(rec, 0, total);
    return out;
}

}  // namespace detail

/// All normal-form monomials of the given tri-degree, in a fixed order.
inline std::vector<SuperMonomial> enumerate_monomials(int n, const TriDegree& d) {
    if (n < 1 || n > kMaxVariables) throw std::invalid_argument("enumerate_monomials: bad n");
    std::vector<SuperMonomial> out;
    if (!d.valid() || d.c > n) return out;
    auto xs = detail::compositions(d.a, n);
    auto ys = detail::compositions(d.b, n);
    std::vector<std::uint16_t> masks;
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (std::popcount(m) == d.c) masks.push_back(std::uint16_t(m));
    out.reserve(xs.size() * ys.size() * masks.size());
    for (auto& xe : xs)
        for (auto& ye : ys)
            for (auto mask : masks) {
                SuperMonomial m(n);
                for (int i = 1; i <= n; ++i) {
                    m.set_x(i, xe[i - 1]);
                    m.set_y(i, ye[i - 1]);
                }
                m.set_theta_mask(mask);
                out.push_back(m);
            }
    return out;
}

}  // namespace superdiag
