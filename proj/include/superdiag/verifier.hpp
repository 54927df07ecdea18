#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cache.hpp"
#include "coinvariants.hpp"
#include "frobenius.hpp"
#include "macdonald.hpp"

namespace superdiag {

enum class Verdict { Equal, Differ, Inconclusive };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Equal: return "EQUAL";
        case Verdict::Differ: return "DIFFER";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

inline Verdict parse_verdict(const std::string& s) {
    if (s == "EQUAL") return Verdict::Equal;
    if (s == "DIFFER") return Verdict::Differ;
    if (s == "INCONCLUSIVE") return Verdict::Inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

struct RowSummary {
    int c = 0;
    bool closed = false;
    int closing_band = -1;
    int extra_bands_scanned = 0;
    bool extra_band_clean = true;
    std::size_t components_explored = 0;
    std::size_t nonzero_components = 0;
};

struct VerificationReport {
    int n = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> reasons;  // why the verdict is not EQUAL
    FrobeniusSeries lhs;               // module side
    FrobeniusSeries rhs;               // Delta' side
    std::vector<SeriesDiff> diffs;

    // component statistics
    std::vector<RowSummary> rows;
    std::size_t nonzero_components = 0;
    std::size_t components_explored = 0;
    std::int64_t max_component_dim = 0;
    bool rhs_support_covered = false;
    std::map<TriDegree, std::int64_t> hilbert;

    // specializations; the *_dim fields are sum_lambda f^lambda coeff(lambda)
    BigInt lhs_z0_dim = 0, rhs_z0_dim = 0;          // z = 0, q = t = 1
    BigInt lhs_total_dim = 0, rhs_total_dim = 0;    // q = t = z = 1
    FrobeniusSeries lhs_t0, rhs_t0;                  // t = 0
    bool lhs_integral = true;
    bool lhs_schur_positive = false, rhs_schur_positive = false;
    bool top_z_is_sign_lhs = false, top_z_is_sign_rhs = false;  // coefficient of z^{n-1} is s_{1^n}

    // run-dependent; only rendered on request
    double seconds_rhs = 0, seconds_module = 0;
    std::size_t components_computed = 0, cache_hits = 0;
};

struct VerifyOptions {
    int extra_band = 1;
    int max_band = 0;
    unsigned threads = 1;
    std::optional<std::filesystem::path> cache_dir;
    std::optional<double> budget_seconds;
    bool long_run = false;  // required for n >= kLongRunThreshold
};

inline constexpr int kLongRunThreshold = 5;

namespace detail {

inline BigInt dimension_at_one(const FrobeniusSeries& s, bool z_zero) {
    auto spec = s.specialize(Rational(1), Rational(1), z_zero ? Rational(0) : Rational(1));
    auto h = spec.hilbert_series();
    Rational v = h.is_zero() ? Rational(0) : h.coefficient(0, 0, 0);
    if (!is_integer(v)) throw InvariantViolation("non-integral dimension");
    return v.get_num();
}

inline bool top_z_is_sign(const FrobeniusSeries& s) {
    const Partition ones(std::vector<int>(s.n, 1));
    for (auto& [lam, p] : s.coeffs) {
        auto top = p.z_part(unsigned(s.n - 1));
        if (lam == ones ? top != QTZPolynomial(1L) : !top.is_zero()) return false;
    }
    return s.coeffs.count(ones) > 0;
}

inline std::set<TriDegree> support_of(const FrobeniusSeries& s) {
    std::set<TriDegree> out;
    for (auto& [lam, p] : s.coeffs)
        for (auto& tm : p.terms()) {
            auto e = QTZExponent::unpack(tm.key);
            out.insert({int(e.q), int(e.t), int(e.z)});
        }
    return out;
}

}  // namespace detail

/* Compute both sides and compare them exactly.  The symmetric-function
 * side runs first; its support is forced into the module-side exploration,
 * which otherwise proceeds by its own frontier plus the extra bands.  EQUAL
 * requires every theta-row to close, every extra band to be clean, and
 * every symmetric-function support degree to have been computed.
 */
inline VerificationReport verify_conjecture(int n, const VerifyOptions& opt = {}) {
    if (n < 1) throw std::invalid_argument("verify_conjecture: n must be positive");
    if (n >= kLongRunThreshold && !opt.long_run)
        throw std::invalid_argument("n >= " + std::to_string(kLongRunThreshold) +
                                    " is a long-running verification; enable long_run to proceed");
    using clock = std::chrono::steady_clock;
    VerificationReport rep;
    rep.n = n;
    const auto start = clock::now();

    rep.rhs = rhs_series(n, opt.threads);
    const auto after_rhs = clock::now();
    rep.seconds_rhs = std::chrono::duration<double>(after_rhs - start).count();
    const auto rhs_support = detail::support_of(rep.rhs);

    std::unique_ptr<DiskCache> cache;
    if (opt.cache_dir) cache = std::make_unique<DiskCache>(*opt.cache_dir);
    ModuleOptions mo;
    mo.extra_band = opt.extra_band;
    mo.max_band = opt.max_band;
    mo.threads = opt.threads;
    mo.store = cache.get();
    mo.must_compute.assign(rhs_support.begin(), rhs_support.end());
    if (opt.budget_seconds)
        mo.deadline = start + std::chrono::duration_cast<clock::duration>(
                                  std::chrono::duration<double>(*opt.budget_seconds));
    auto mod = frobenius_module(n, mo);
    rep.seconds_module = std::chrono::duration<double>(clock::now() - after_rhs).count();

    rep.lhs = mod.series;
    rep.hilbert = mod.hilbert;
    rep.components_computed = mod.components_computed;
    rep.cache_hits = mod.cache_hits;
    rep.nonzero_components = mod.components.size();
    for (auto& qc : mod.components) rep.max_component_dim = std::max(rep.max_component_dim, qc.dim());
    for (auto& row : mod.rows) {
        RowSummary rs;
        rs.c = row.c;
        rs.closed = row.closed;
        rs.closing_band = row.closing_band;
        rs.extra_bands_scanned = row.extra_bands_scanned;
        rs.extra_band_clean = row.extra_band_clean;
        rs.components_explored = row.computed.size();
        rs.nonzero_components = row.nonzero.size();
        rep.rows.push_back(rs);
    }
    rep.components_explored = mod.evaluated.size();
    const std::set<TriDegree> evaluated(mod.evaluated.begin(), mod.evaluated.end());
    rep.rhs_support_covered = std::all_of(rhs_support.begin(), rhs_support.end(),
                                          [&](const TriDegree& d) { return evaluated.count(d) > 0; });

    rep.diffs = compare_series(rep.lhs, rep.rhs);
    rep.lhs_integral = rep.lhs.integral();
    rep.lhs_schur_positive = rep.lhs.schur_positive();
    rep.rhs_schur_positive = rep.rhs.schur_positive();
    rep.lhs_z0_dim = detail::dimension_at_one(rep.lhs, true);
    rep.rhs_z0_dim = detail::dimension_at_one(rep.rhs, true);
    rep.lhs_total_dim = detail::dimension_at_one(rep.lhs, false);
    rep.rhs_total_dim = detail::dimension_at_one(rep.rhs, false);
    rep.lhs_t0 = rep.lhs.specialize(std::nullopt, Rational(0), std::nullopt);
    rep.rhs_t0 = rep.rhs.specialize(std::nullopt, Rational(0), std::nullopt);
    rep.top_z_is_sign_lhs = detail::top_z_is_sign(rep.lhs);
    rep.top_z_is_sign_rhs = detail::top_z_is_sign(rep.rhs);

    if (mod.deadline_hit) rep.reasons.push_back("time budget exceeded before exploration finished");
    for (auto& row : mod.rows) {
        if (!row.closed)
            rep.reasons.push_back("theta-degree " + std::to_string(row.c) + " did not reach a zero band");
        else if (!row.extra_band_clean)
            rep.reasons.push_back("nonzero component beyond the zero band at theta-degree " +
                                  std::to_string(row.c));
    }
    if (!mod.deadline_hit && int(mod.rows.size()) != n + 1)
        rep.reasons.push_back("not every theta-degree was explored");
    if (!rep.rhs_support_covered) rep.reasons.push_back("symmetric-function support not fully computed");

    if (!mod.complete || !rep.rhs_support_covered || int(mod.rows.size()) != n + 1)
        rep.verdict = Verdict::Inconclusive;
    else
        rep.verdict = rep.diffs.empty() ? Verdict::Equal : Verdict::Differ;
    if (rep.verdict == Verdict::Differ) rep.reasons.push_back("Schur coefficients differ");
    return rep;
}

}  // namespace superdiag
