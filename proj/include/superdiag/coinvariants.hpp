#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "combinatorics.hpp"
#include "frobenius.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "superring.hpp"

namespace superdiag {

/* Basis of the ideal component I_n^{(a,b,c)} in the monomial coordinates
 * of R_n^{(a,b,c)}.
 */
struct IdealComponentBasis {
    int n = 0;
    TriDegree degree;
    std::vector<SuperMonomial> monomial_index;
    ReducedBasis basis;
    std::size_t spanning_vectors_used = 0;

    std::size_t rank() const noexcept { return basis.rank(); }
};

/* Signed permutation of monomial coordinates induced by sigma. */
class CoordinateAction {
public:
    CoordinateAction(const Permutation& sigma, const std::vector<SuperMonomial>& monomials,
                     const std::unordered_map<SuperMonomial, std::uint32_t, SuperMonomial::Hash>& index) {
        image_.reserve(monomials.size());
        sign_.reserve(monomials.size());
        for (auto& m : monomials) {
            auto img = apply_perm(sigma, m);
            auto it = index.find(img.monomial);
            if (it == index.end()) throw std::logic_error("permutation left the graded component");
            image_.push_back(it->second);
            sign_.push_back(static_cast<std::int8_t>(img.sign));
        }
    }

    SparseVector operator()(const SparseVector& v) const {
        SparseVector out;
        out.reserve(v.size());
        for (auto& [i, val] : v) out.emplace_back(image_[i], sign_[i] > 0 ? val : Rational(-val));
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    // trace of the action on the whole component
    std::int64_t trace() const {
        std::int64_t t = 0;
        for (std::size_t i = 0; i < image_.size(); ++i)
            if (image_[i] == i) t += sign_[i];
        return t;
    }

private:
    std::vector<std::uint32_t> image_;
    std::vector<std::int8_t> sign_;
};

namespace detail {

using MonomialIndex = std::unordered_map<SuperMonomial, std::uint32_t, SuperMonomial::Hash>;

inline MonomialIndex index_monomials(const std::vector<SuperMonomial>& mons) {
    MonomialIndex idx;
    idx.reserve(mons.size() * 2);
    for (std::uint32_t i = 0; i < mons.size(); ++i) idx.emplace(mons[i], i);
    return idx;
}

inline IdealComponentBasis ideal_component_impl(int n, const TriDegree& d,
                                                std::vector<SuperMonomial> mons,
                                                const MonomialIndex& index) {
    IdealComponentBasis out;
    out.n = n;
    out.degree = d;
    IncrementalBasis inc(mons.size());
    if (!mons.empty()) {
        for (auto& gen : ideal_generators(n)) {
            if (!gen.degree.fits_in(d)) continue;
            for (auto& m : enumerate_monomials(n, d - gen.degree)) {
                SparseVector v;
                for (auto& [gm, gc] : gen.poly.terms()) {
                    auto prod = mono_mul(gm, m);
                    if (!prod) continue;
                    v.emplace_back(index.at(prod->monomial), prod->sign * gc);
                }
                std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                ++out.spanning_vectors_used;
                inc.insert(v);
                if (inc.full()) break;
            }
            if (inc.full()) break;
        }
    }
    out.basis = inc.finish();
    out.monomial_index = std::move(mons);
    return out;
}

}  // namespace detail

/* Spanning set {g * m : g a generator of degree e <= d, m a monomial of
 * degree d - e}, reduced to a basis.  Stops early once the component is
 * exhausted.
 */
inline IdealComponentBasis ideal_component(int n, const TriDegree& d) {
    auto mons = enumerate_monomials(n, d);
    auto index = detail::index_monomials(mons);
    return detail::ideal_component_impl(n, d, std::move(mons), index);
}

/// Trace of sigma on R_n^{(a,b,c)}: fixed monomials counted with their sign.
inline std::int64_t trace_regular(const Permutation& sigma, int n, const TriDegree& d) {
    std::int64_t t = 0;
    for (auto& m : enumerate_monomials(n, d)) {
        auto img = apply_perm(sigma, m);
        if (img.monomial == m) t += img.sign;
    }
    return t;
}

/// chi_{M_n^{(a,b,c)}} for every cycle type.
struct QuotientCharacter {
    int n = 0;
    TriDegree degree;
    std::int64_t full_dim = 0;    // dim R_n^{(a,b,c)}
    std::int64_t ideal_rank = 0;  // dim I_n^{(a,b,c)}
    PartitionMap<std::int64_t> values;

    std::int64_t dim() const { return full_dim - ideal_rank; }
    bool is_zero() const { return dim() == 0; }

    friend bool operator==(const QuotientCharacter&, const QuotientCharacter&) = default;
};

namespace detail {

inline std::int64_t quotient_trace(const CoordinateAction& act, const IdealComponentBasis& ideal) {
    Rational on_ideal = restricted_trace(ideal.basis, std::cref(act));
    if (!is_integer(on_ideal)) throw InvariantViolation("non-integral trace on ideal component");
    return act.trace() - on_ideal.get_num().get_si();
}

}  // namespace detail

/// Character of M_n^{(a,b,c)} at the permutation sigma.
inline std::int64_t character_at(const Permutation& sigma, int n, const TriDegree& d) {
    auto mons = enumerate_monomials(n, d);
    auto index = detail::index_monomials(mons);
    CoordinateAction act(sigma, mons, index);
    auto ideal = detail::ideal_component_impl(n, d, mons, index);
    return detail::quotient_trace(act, ideal);
}

/// chi_M(mu) using the canonical representative of cycle type mu.
inline std::int64_t character_quotient(const Partition& mu, int n, const TriDegree& d) {
    if (mu.size() != n) throw std::invalid_argument("character_quotient: |mu| != n");
    return character_at(cycle_representative(mu), n, d);
}

/// All character values of one component, sharing one ideal basis.
inline QuotientCharacter compute_quotient_character(int n, const TriDegree& d) {
    QuotientCharacter qc;
    qc.n = n;
    qc.degree = d;
    auto mons = enumerate_monomials(n, d);
    qc.full_dim = static_cast<std::int64_t>(mons.size());
    const auto parts = partitions_of(n);
    if (mons.empty()) {
        for (auto& mu : parts) qc.values[mu] = 0;
        return qc;
    }
    auto index = detail::index_monomials(mons);
    auto ideal = detail::ideal_component_impl(n, d, mons, index);
    qc.ideal_rank = static_cast<std::int64_t>(ideal.rank());
    for (auto& mu : parts) {
        if (ideal.basis.rank() == mons.size()) {
            qc.values[mu] = 0;
            continue;
        }
        CoordinateAction act(cycle_representative(mu), ideal.monomial_index, index);
        qc.values[mu] = detail::quotient_trace(act, ideal);
    }
    const Partition ones(std::vector<int>(n, 1));
    if (qc.values.at(ones) != qc.dim())
        throw InvariantViolation("identity character differs from quotient dimension");
    return qc;
}

/// Schur multiplicities of one component: lambda -> <chi_M, chi^lambda>.
inline PartitionMap<std::int64_t> schur_multiplicities(const QuotientCharacter& qc) {
    auto table = CharacterTable::get(qc.n);
    PartitionMap<std::int64_t> out;
    for (auto& lam : table->partitions()) {
        Rational s = 0;
        for (auto& [mu, val] : qc.values)
            if (val != 0) s += Rational(val * (*table)(lam, mu)) / z_mu(mu);
        if (!is_integer(s)) throw InvariantViolation("Frobenius coefficient is not integral");
        if (sgn(s) != 0) out[lam] = s.get_num().get_si();
    }
    return out;
}

/* Optional persistent store for component results (see cache.hpp). */
class ComponentStore {
public:
    virtual ~ComponentStore() = default;
    virtual std::optional<QuotientCharacter> load(int n, const TriDegree& d) = 0;
    virtual void save(const QuotientCharacter& qc) = 0;
};

using Clock = std::chrono::steady_clock;

struct ModuleOptions {
    int extra_band = 1;
    int max_band = 0;  // 0: n(n-1)/2 + n + 1
    unsigned threads = 1;
    std::optional<Clock::time_point> deadline;
    ComponentStore* store = nullptr;
    std::vector<TriDegree> must_compute;  // e.g. the symmetric-function support
};

/* Memoizing source of component characters for one n. */
class ComponentEngine {
public:
    ComponentEngine(int n, ComponentStore* store = nullptr, unsigned threads = 1)
        : n_(n), store_(store), threads_(threads) {}

    int n() const noexcept { return n_; }

    std::vector<QuotientCharacter> get_many(const std::vector<TriDegree>& degrees) {
        auto results = parallel_map(
            degrees, [this](const TriDegree& d) { return get(d); }, threads_);
        return results;
    }

    QuotientCharacter get(const TriDegree& d) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = memo_.find(d); it != memo_.end()) return it->second;
        }
        std::optional<QuotientCharacter> qc;
        if (store_) qc = store_->load(n_, d);
        bool hit = qc.has_value();
        if (!qc) {
            qc = compute_quotient_character(n_, d);
            if (store_) store_->save(*qc);
        }
        std::lock_guard lock(mutex_);
        if (hit)
            ++cache_hits_;
        else
            ++computed_;
        return memo_.emplace(d, *qc).first->second;
    }

    bool known(const TriDegree& d) const {
        std::lock_guard lock(mutex_);
        return memo_.count(d) > 0;
    }

    std::vector<TriDegree> known_degrees() const {
        std::lock_guard lock(mutex_);
        std::vector<TriDegree> out;
        for (auto& [d, qc] : memo_) out.push_back(d);
        return out;
    }

    std::size_t computed() const { return computed_; }
    std::size_t cache_hits() const { return cache_hits_; }

private:
    int n_;
    ComponentStore* store_;
    unsigned threads_;
    mutable std::mutex mutex_;
    std::map<TriDegree, QuotientCharacter> memo_;
    std::size_t computed_ = 0, cache_hits_ = 0;
};

struct RowFrontier {
    int c = 0;
    bool closed = false;             // a band of zeros was reached
    int closing_band = -1;           // a+b of that band
    bool extra_band_clean = true;    // no nonzero component in the extra bands
    int extra_bands_scanned = 0;
    std::vector<TriDegree> nonzero;  // sorted
    std::vector<TriDegree> computed;
};

struct DeadlineExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline int default_max_band(int n) { return n * (n - 1) / 2 + n + 1; }

/* Explore the theta-degree c row by increasing band a+b.  A component whose
 * left or lower neighbour vanishes vanishes itself (every monomial of the
 * larger degree is a variable times a monomial of the smaller one), so it
 * is skipped; the row closes at the first band with no nonzero component.
 * The next `extra_band` bands are then computed in full as a check.
 */
inline RowFrontier explore_row(ComponentEngine& engine, int c, const ModuleOptions& opt) {
    const int n = engine.n();
    const int max_band = opt.max_band > 0 ? opt.max_band : default_max_band(n);
    RowFrontier row;
    row.c = c;
    std::set<std::pair<int, int>> zero;  // computed or implied zeros
    auto check_deadline = [&] {
        if (opt.deadline && Clock::now() > *opt.deadline) throw DeadlineExceeded("time budget exceeded");
    };
    for (int band = 0; band <= max_band; ++band) {
        check_deadline();
        std::vector<TriDegree> needed;
        for (int a = 0; a <= band; ++a) {
            int b = band - a;
            bool implied = (a > 0 && zero.count({a - 1, b})) || (b > 0 && zero.count({a, b - 1}));
            if (implied)
                zero.insert({a, b});
            else
                needed.push_back({a, b, c});
        }
        bool any_nonzero = false;
        for (auto& qc : engine.get_many(needed)) {
            row.computed.push_back(qc.degree);
            if (qc.is_zero()) {
                zero.insert({qc.degree.a, qc.degree.b});
            } else {
                any_nonzero = true;
                row.nonzero.push_back(qc.degree);
            }
        }
        if (!any_nonzero) {
            row.closed = true;
            row.closing_band = band;
            break;
        }
    }
    if (!row.closed) return row;
    for (int e = 1; e <= opt.extra_band; ++e) {
        check_deadline();
        std::vector<TriDegree> all;
        const int band = row.closing_band + e;
        for (int a = 0; a <= band; ++a) all.push_back({a, band - a, c});
        for (auto& qc : engine.get_many(all)) {
            row.computed.push_back(qc.degree);
            if (!qc.is_zero()) {
                row.extra_band_clean = false;
                row.nonzero.push_back(qc.degree);
            }
        }
        ++row.extra_bands_scanned;
    }
    std::sort(row.nonzero.begin(), row.nonzero.end());
    std::sort(row.computed.begin(), row.computed.end());
    return row;
}

/// Degrees (a,b,c) with M_n^{(a,b,c)} != 0 for one theta-degree.
inline std::set<TriDegree> support_frontier(int n, int c, const ModuleOptions& opt = {}) {
    if (c < 0 || c > n) throw std::invalid_argument("support_frontier: need 0 <= c <= n");
    ComponentEngine engine(n, opt.store, opt.threads);
    auto row = explore_row(engine, c, opt);
    return {row.nonzero.begin(), row.nonzero.end()};
}

struct ModuleResult {
    FrobeniusSeries series;
    std::map<TriDegree, std::int64_t> hilbert;  // nonzero components only
    std::vector<RowFrontier> rows;
    std::vector<QuotientCharacter> components;  // nonzero components, sorted by degree
    std::vector<TriDegree> evaluated;           // every component evaluated, sorted
    bool complete = false;                      // every row closed, extra bands clean
    bool deadline_hit = false;
    std::size_t components_computed = 0;
    std::size_t cache_hits = 0;
};

/* The qtz-graded Frobenius image of M_n in the Schur basis:
 * coeff(lambda) = sum_{a,b,c} q^a t^b z^c sum_mu chi_M(mu) chi^lambda(mu) / z_mu.
 */
inline ModuleResult frobenius_module(int n, const ModuleOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("frobenius_module: n must be positive");
    ComponentEngine engine(n, opt.store, opt.threads);
    ModuleResult res;
    res.series.n = n;
    res.complete = true;
    try {
        for (int c = 0; c <= n; ++c) {
            auto row = explore_row(engine, c, opt);
            res.complete = res.complete && row.closed && row.extra_band_clean;
            res.rows.push_back(std::move(row));
        }
        std::vector<TriDegree> extra;
        for (auto& d : opt.must_compute)
            if (!engine.known(d)) extra.push_back(d);
        engine.get_many(extra);
    } catch (const DeadlineExceeded&) {
        res.complete = false;
        res.deadline_hit = true;
    }
    std::set<TriDegree> nonzero;
    for (auto& row : res.rows) nonzero.insert(row.nonzero.begin(), row.nonzero.end());
    for (auto& d : opt.must_compute)
        if (engine.known(d) && !engine.get(d).is_zero()) nonzero.insert(d);
    for (auto& d : nonzero) {
        auto qc = engine.get(d);
        res.hilbert[d] = qc.dim();
        for (auto& [lam, mult] : schur_multiplicities(qc))
            res.series.add(lam, QTZPolynomial::monomial(Rational(mult), d.a, d.b, d.c));
        res.components.push_back(std::move(qc));
    }
    res.evaluated = engine.known_degrees();
    res.components_computed = engine.computed();
    res.cache_hits = engine.cache_hits();
    return res;
}

}  // namespace superdiag
