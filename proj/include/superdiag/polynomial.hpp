#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "numbers.hpp"

namespace superdiag {

struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Exponent triple (deg_q, deg_t, deg_z) packed into one word so that the
 * integer order is graded lexicographic with q > t > z, and so that packed
 * keys add componentwise.
 */
struct QTZExponent {
    unsigned q = 0, t = 0, z = 0;

    static constexpr unsigned kMax = 0xffff;

    std::uint64_t pack() const {
        if (q + t + z > kMax) throw std::overflow_error("exponent too large");
        return (std::uint64_t(q + t + z) << 48) | (std::uint64_t(q) << 32) |
               (std::uint64_t(t) << 16) | std::uint64_t(z);
    }
    static QTZExponent unpack(std::uint64_t key) {
        return {unsigned((key >> 32) & 0xffff), unsigned((key >> 16) & 0xffff),
                unsigned(key & 0xffff)};
    }
    friend bool operator==(const QTZExponent&, const QTZExponent&) = default;
};

inline bool key_divides(std::uint64_t a, std::uint64_t b) {
    auto x = QTZExponent::unpack(a), y = QTZExponent::unpack(b);
    return x.q <= y.q && x.t <= y.t && x.z <= y.z;
}

/* Sparse polynomial in q, t, z over the coefficient ring C.  Terms are kept
 * sorted by packed exponent with no zero coefficients.
 */
template <class C>
class Polynomial {
public:
    using Coeff = C;
    using Traits = CoeffTraits<C>;

    struct Term {
        std::uint64_t key;
        C coeff;
    };

    Polynomial() = default;
    Polynomial(long c) : Polynomial(C(c)) {}
    Polynomial(const C& c) {
        if (!Traits::is_zero(c)) terms_.push_back({0, c});
    }

    static Polynomial monomial(const C& c, unsigned q, unsigned t, unsigned z = 0) {
        Polynomial p;
        if (!Traits::is_zero(c)) p.terms_.push_back({QTZExponent{q, t, z}.pack(), c});
        return p;
    }
    static Polynomial var_q() { return monomial(C(1), 1, 0, 0); }
    static Polynomial var_t() { return monomial(C(1), 0, 1, 0); }
    static Polynomial var_z() { return monomial(C(1), 0, 0, 1); }

    // Build from unsorted, possibly repeated terms.
    static Polynomial from_terms(std::vector<Term> terms) {
        std::sort(terms.begin(), terms.end(),
                  [](const Term& a, const Term& b) { return a.key < b.key; });
        Polynomial p;
        for (auto& tm : terms) {
            if (!p.terms_.empty() && p.terms_.back().key == tm.key)
                p.terms_.back().coeff += tm.coeff;
            else
                p.terms_.push_back(std::move(tm));
        }
        p.drop_zeros();
        return p;
    }

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    C coefficient(unsigned q, unsigned t, unsigned z = 0) const {
        auto key = QTZExponent{q, t, z}.pack();
        auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                                   [](const Term& a, std::uint64_t k) { return a.key < k; });
        if (it != terms_.end() && it->key == key) return it->coeff;
        return C(0);
    }

    const Term& leading_term() const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        return terms_.back();
    }

    unsigned max_degree(char var) const {
        unsigned d = 0;
        for (auto& tm : terms_) {
            auto e = QTZExponent::unpack(tm.key);
            d = std::max(d, var == 'q' ? e.q : var == 't' ? e.t : e.z);
        }
        return d;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& tm : r.terms_) tm.coeff = -tm.coeff;
        return r;
    }

    Polynomial& operator+=(const Polynomial& o) { return *this = combine(*this, o, 1); }
    Polynomial& operator-=(const Polynomial& o) { return *this = combine(*this, o, -1); }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    Polynomial& operator*=(const C& c) {
        if (Traits::is_zero(c)) {
            terms_.clear();
        } else {
            for (auto& tm : terms_) tm.coeff *= c;
        }
        return *this;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, 1); }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, -1); }
    friend Polynomial operator*(Polynomial a, const C& c) { return a *= c; }
    friend Polynomial operator*(const C& c, Polynomial a) { return a *= c; }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if (a.size() == 1 && b.size() == 1)
            return monomial_product(a.terms_[0], b.terms_[0]);
        // dense accumulation when the exponent box is small relative to the work
        auto box = [](const Polynomial& p) {
            unsigned mq = 0, mt = 0, mz = 0;
            for (auto& tm : p.terms_) {
                auto e = QTZExponent::unpack(tm.key);
                mq = std::max(mq, e.q);
                mt = std::max(mt, e.t);
                mz = std::max(mz, e.z);
            }
            return std::make_tuple(mq, mt, mz);
        };
        auto [aq, at, az] = box(a);
        auto [bq, bt, bz] = box(b);
        const std::size_t nq = aq + bq + 1, nt = at + bt + 1, nz = az + bz + 1;
        const std::size_t cells = nq * nt * nz;
        if (cells <= 4 * a.size() * b.size() + 1024) {
            std::vector<C> dense(cells);
            std::vector<char> used(cells, 0);
            for (auto& x : a.terms_) {
                auto ex = QTZExponent::unpack(x.key);
                for (auto& y : b.terms_) {
                    auto ey = QTZExponent::unpack(y.key);
                    std::size_t idx = ((ex.q + ey.q) * nt + (ex.t + ey.t)) * nz + (ex.z + ey.z);
                    if (used[idx]) {
                        mpz_or_mpq_addmul(dense[idx], x.coeff, y.coeff);
                    } else {
                        dense[idx] = x.coeff * y.coeff;
                        used[idx] = 1;
                    }
                }
            }
            Polynomial r;
            for (std::size_t iq = 0; iq < nq; ++iq)
                for (std::size_t it = 0; it < nt; ++it)
                    for (std::size_t iz = 0; iz < nz; ++iz) {
                        std::size_t idx = (iq * nt + it) * nz + iz;
                        if (used[idx] && !Traits::is_zero(dense[idx]))
                            r.terms_.push_back(
                                {QTZExponent{unsigned(iq), unsigned(it), unsigned(iz)}.pack(),
                                 std::move(dense[idx])});
                    }
            std::sort(r.terms_.begin(), r.terms_.end(),
                      [](const Term& u, const Term& v) { return u.key < v.key; });
            return r;
        }
        std::unordered_map<std::uint64_t, C> acc;
        acc.reserve(a.size() * b.size());
        for (auto& x : a.terms_)
            for (auto& y : b.terms_) {
                auto [it, fresh] = acc.try_emplace(x.key + y.key);
                if (fresh)
                    it->second = x.coeff * y.coeff;
                else
                    mpz_or_mpq_addmul(it->second, x.coeff, y.coeff);
            }
        std::vector<Term> terms;
        terms.reserve(acc.size());
        for (auto& [k, c] : acc)
            if (!Traits::is_zero(c)) terms.push_back({k, std::move(c)});
        std::sort(terms.begin(), terms.end(),
                  [](const Term& u, const Term& v) { return u.key < v.key; });
        Polynomial r;
        r.terms_ = std::move(terms);
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r(C(1)), b = *this;
        while (e) {
            if (e & 1) r *= b;
            e >>= 1;
            if (e) b *= b;
        }
        return r;
    }

    /* Substitute constants for any subset of the variables; the remaining
     * variables stay symbolic.
     */
    Polynomial specialize(std::optional<C> q, std::optional<C> t, std::optional<C> z) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        auto power = [](const C& base, unsigned e) {
            C r(1);
            for (unsigned i = 0; i < e; ++i) r *= base;
            return r;
        };
        for (auto& tm : terms_) {
            auto e = QTZExponent::unpack(tm.key);
            C c = tm.coeff;
            QTZExponent ne = e;
            if (q) { c *= power(*q, e.q); ne.q = 0; }
            if (t) { c *= power(*t, e.t); ne.t = 0; }
            if (z) { c *= power(*z, e.z); ne.z = 0; }
            out.push_back({ne.pack(), std::move(c)});
        }
        return from_terms(std::move(out));
    }

    C evaluate(const C& q, const C& t, const C& z) const {
        auto s = specialize(q, t, z);
        return s.is_zero() ? C(0) : s.terms_.front().coeff;
    }

    Polynomial swap_qt() const {
        std::vector<Term> out;
        for (auto& tm : terms_) {
            auto e = QTZExponent::unpack(tm.key);
            out.push_back({QTZExponent{e.t, e.q, e.z}.pack(), tm.coeff});
        }
        return from_terms(std::move(out));
    }

    // Coefficient of z^k, as a polynomial in q, t.
    Polynomial z_part(unsigned k) const {
        Polynomial r;
        for (auto& tm : terms_) {
            auto e = QTZExponent::unpack(tm.key);
            if (e.z == k) r.terms_.push_back({QTZExponent{e.q, e.t, 0}.pack(), tm.coeff});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& u, const Term& v) { return u.key < v.key; });
        return r;
    }

    bool all_coefficients_nonnegative() const {
        return std::all_of(terms_.begin(), terms_.end(),
                           [](const Term& tm) { return Traits::sign(tm.coeff) >= 0; });
    }

    template <class D>
    Polynomial<D> convert() const {
        std::vector<typename Polynomial<D>::Term> out;
        out.reserve(terms_.size());
        for (auto& tm : terms_) out.push_back({tm.key, D(tm.coeff)});
        return Polynomial<D>::from_terms(std::move(out));
    }

    /* Human-readable form, terms ordered by (deg_z, deg_q, deg_t):
     * "1 + q*t + 2*z*q^2".
     */
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<const Term*> order;
        for (auto& tm : terms_) order.push_back(&tm);
        std::sort(order.begin(), order.end(), [](const Term* a, const Term* b) {
            auto x = QTZExponent::unpack(a->key), y = QTZExponent::unpack(b->key);
            return std::tie(x.z, x.q, x.t) < std::tie(y.z, y.q, y.t);
        });
        std::string s;
        bool first = true;
        for (const Term* tm : order) {
            int sg = Traits::sign(tm->coeff);
            C mag = sg < 0 ? C(-tm->coeff) : tm->coeff;
            if (first)
                s += sg < 0 ? "-" : "";
            else
                s += sg < 0 ? " - " : " + ";
            first = false;
            auto e = QTZExponent::unpack(tm->key);
            std::string mono;
            auto add = [&](const char* v, unsigned d) {
                if (!d) return;
                if (!mono.empty()) mono += '*';
                mono += v;
                if (d > 1) mono += "^" + std::to_string(d);
            };
            add("z", e.z);
            add("q", e.q);
            add("t", e.t);
            if (mono.empty())
                s += Traits::to_string(mag);
            else if (Traits::is_one(mag))
                s += mono;
            else
                s += Traits::to_string(mag) + "*" + mono;
        }
        return s;
    }

    static Polynomial parse(std::string_view text) {
        std::vector<Term> terms;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < text.size() && text[i] == ' ') ++i;
        };
        auto number = [&] {
            std::size_t b = i;
            while (i < text.size() && ((text[i] >= '0' && text[i] <= '9') || text[i] == '/')) ++i;
            return std::string(text.substr(b, i - b));
        };
        skip();
        if (text.substr(i) == "0") return {};
        bool first = true;
        while (true) {
            skip();
            if (i >= text.size()) break;
            int sg = 1;
            if (text[i] == '+' || text[i] == '-') {
                sg = text[i] == '-' ? -1 : 1;
                ++i;
                skip();
            } else if (!first) {
                throw std::invalid_argument("malformed polynomial string");
            }
            first = false;
            C coeff(1);
            QTZExponent e;
            bool need_factor = true;
            while (need_factor) {
                need_factor = false;
                if (i < text.size() && text[i] >= '0' && text[i] <= '9') {
                    coeff *= Traits::from_string(number());
                } else if (i < text.size() && (text[i] == 'q' || text[i] == 't' || text[i] == 'z')) {
                    char v = text[i++];
                    unsigned d = 1;
                    if (i < text.size() && text[i] == '^') {
                        ++i;
                        auto digits = number();
                        if (digits.empty()) throw std::invalid_argument("malformed exponent");
                        d = static_cast<unsigned>(std::stoul(digits));
                    }
                    (v == 'q' ? e.q : v == 't' ? e.t : e.z) += d;
                } else {
                    throw std::invalid_argument("malformed polynomial string");
                }
                if (i < text.size() && text[i] == '*') {
                    ++i;
                    need_factor = true;
                }
            }
            if (sg < 0) coeff = -coeff;
            terms.push_back({e.pack(), coeff});
        }
        return from_terms(std::move(terms));
    }

private:
    static void mpz_or_mpq_addmul(C& acc, const C& x, const C& y) {
        if constexpr (std::is_same_v<C, BigInt>)
            mpz_addmul(acc.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
        else
            acc += x * y;
    }

    static Polynomial monomial_product(const Term& x, const Term& y) {
        Polynomial r;
        r.terms_.push_back({x.key + y.key, x.coeff * y.coeff});
        return r;
    }

    static Polynomial combine(const Polynomial& a, const Polynomial& b, int sign) {
        Polynomial r;
        r.terms_.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a.terms_[i].key < b.terms_[j].key)) {
                r.terms_.push_back(a.terms_[i++]);
            } else if (i == a.size() || b.terms_[j].key < a.terms_[i].key) {
                r.terms_.push_back({b.terms_[j].key, sign > 0 ? b.terms_[j].coeff : C(-b.terms_[j].coeff)});
                ++j;
            } else {
                C c = sign > 0 ? C(a.terms_[i].coeff + b.terms_[j].coeff)
                               : C(a.terms_[i].coeff - b.terms_[j].coeff);
                if (!Traits::is_zero(c)) r.terms_.push_back({a.terms_[i].key, std::move(c)});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void drop_zeros() {
        terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                    [](const Term& tm) { return Traits::is_zero(tm.coeff); }),
                     terms_.end());
    }

    template <class D>
    friend class Polynomial;

    std::vector<Term> terms_;
};

using QTZPolynomial = Polynomial<Rational>;
using IntPolynomial = Polynomial<BigInt>;

/* Exact quotient num / den.  Throws NotDivisible when den does not divide
 * num in the polynomial ring over C.
 */
template <class C>
Polynomial<C> divide_exact(const Polynomial<C>& num, const Polynomial<C>& den) {
    using Traits = CoeffTraits<C>;
    if (den.is_zero()) throw std::domain_error("divide_exact: division by zero polynomial");
    if (num.is_zero()) return {};
    const auto& lt = den.leading_term();
    std::map<std::uint64_t, C> rem;
    for (auto& tm : num.terms()) rem.emplace(tm.key, tm.coeff);
    std::vector<typename Polynomial<C>::Term> quot;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        if (!key_divides(lt.key, top->first))
            throw NotDivisible("divide_exact: leading monomial not divisible");
        C qc;
        if (!Traits::divide(top->second, lt.coeff, qc))
            throw NotDivisible("divide_exact: leading coefficient not divisible");
        const std::uint64_t qk = top->first - lt.key;
        for (auto& dt : den.terms()) {
            auto [it, fresh] = rem.try_emplace(dt.key + qk);
            it->second -= qc * dt.coeff;
            if (Traits::is_zero(it->second)) rem.erase(it);
        }
        quot.push_back({qk, std::move(qc)});
    }
    return Polynomial<C>::from_terms(std::move(quot));
}

}  // namespace superdiag
