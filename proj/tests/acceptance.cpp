// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include <superdiag/superdiag.hpp>

using namespace superdiag;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            failures.push_back(what);
        }
    }
};

// Reports for n = 1..4 with default options, shared by several criteria.
struct Shared {
    std::map<int, VerificationReport> reports;
    std::map<int, double> seconds;
};

Shared& shared() {
    static Shared s = [] {
        Shared out;
        for (int n = 1; n <= 4; ++n) {
            auto t0 = Clock::now();
            out.reports[n] = verify_conjecture(n);
            out.seconds[n] = since(t0);
        }
        return out;
    }();
    return s;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

Partition ones(int n) { return Partition(std::vector<int>(n, 1)); }

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do out.emplace_back(im);
    while (std::next_permutation(im.begin(), im.end()));
    return out;
}

void criterion1(Outcome& o) {
    auto& s = shared();
    double small = 0;
    for (int n = 1; n <= 3; ++n) {
        small += s.seconds[n];
        o.check(s.reports[n].verdict == Verdict::Equal, "n=" + std::to_string(n) + " not EQUAL");
    }
    o.check(small < 60, "n<=3 took longer than 60 s");
    o.check(s.reports[4].verdict == Verdict::Equal, "n=4 not EQUAL");
    o.check(s.seconds[4] < 1800, "n=4 took longer than 30 min");
    o.detail << "n=1..3 EQUAL in " << small << " s, n=4 EQUAL in " << s.seconds[4] << " s";

    bool gated = false;
    try {
        verify_conjecture(5);
    } catch (const std::invalid_argument&) {
        gated = true;
    }
    o.check(gated, "n=5 ran without the long-run opt-in");
    VerifyOptions lr;
    lr.long_run = true;
    lr.budget_seconds = 2;
    auto partial = verify_conjecture(5, lr);
    o.check(partial.verdict == Verdict::Inconclusive, "budget-limited long run did not report INCONCLUSIVE");
    o.detail << "; n=5 long-run mode gated and budget-aware";

    for (int n = 5; n <= 6; ++n) {
        auto t0 = Clock::now();
        auto rhs = rhs_series(n);
        o.check(!rhs.coeffs.empty(), "rhs empty for n=" + std::to_string(n));
        o.detail << "; rhs n=" << n << " in " << since(t0) << " s";
    }
}

void criterion2(Outcome& o) {
    for (int n = 1; n <= 4; ++n) {
        auto& r = shared().reports[n];
        o.check(r.lhs_z0_dim == ipow(n + 1, n - 1), "module z=0 dimension wrong for n=" + std::to_string(n));
        o.detail << (n > 1 ? ", " : "") << r.lhs_z0_dim.get_str();
    }
}

void criterion3(Outcome& o) {
    for (int n = 1; n <= 4; ++n) {
        auto& r = shared().reports[n];
        o.check(r.top_z_is_sign_lhs, "module z^{n-1} coefficient is not s_{1^n}, n=" + std::to_string(n));
        o.check(r.top_z_is_sign_rhs, "delta z^{n-1} coefficient is not s_{1^n}, n=" + std::to_string(n));
    }
    for (int n = 1; n <= 6; ++n) {
        auto rhs = rhs_series(n);
        for (auto& [lam, p] : rhs.coeffs)
            o.check(p.z_part(n - 1) == (lam == ones(n) ? QTZPolynomial(1L) : QTZPolynomial()),
                    "rhs top z coefficient wrong, n=" + std::to_string(n));
        auto e0 = delta_prime_ek_en(n, 0);
        o.check(e0.coeffs.size() == 1 && e0.coefficient(ones(n)) == QTZPolynomial(1L),
                "Delta'_{e_0}(e_n) != s_{1^n} for n=" + std::to_string(n));
    }
    o.detail << "module n<=4, delta n<=6, Delta'_{e_0}(e_n) = s_{1^n} for n<=6";
}

void criterion4(Outcome& o) {
    std::size_t count = 0;
    for (int n = 1; n <= 6; ++n)
        for (auto& mu : partitions_of(n)) {
            ++count;
            const auto& h = htilde_schur(mu);
            const auto& hc = htilde_schur(mu.conjugate());
            const std::string tag = " for mu=" + mu.to_string();
            o.check(h.coefficient({n}) == QTZPolynomial(1L), "<H, s_n> != 1" + tag);
            for (auto& lam : partitions_of(n)) {
                auto c = h.coefficient(lam);
                o.check(c.swap_qt() == hc.coefficient(lam), "conjugation symmetry" + tag);
                o.check(c.evaluate(1, 1, 0) == syt_count(lam), "q=t=1 SYT count" + tag);
                o.check(c.all_coefficients_nonnegative(), "negative coefficient" + tag);
                for (auto& tm : c.terms()) o.check(is_integer(tm.coeff), "non-integral coefficient" + tag);
            }
        }
    o.detail << count << " partitions of n<=6 checked";
}

void criterion5(Outcome& o) {
    auto t0 = Clock::now();
    for (int n = 1; n <= 7; ++n) {
        CharacterTable tab(n);
        const auto& parts = tab.partitions();
        for (std::size_t i = 0; i < parts.size(); ++i)
            for (std::size_t k = 0; k < parts.size(); ++k) {
                Rational s = 0;
                for (std::size_t j = 0; j < parts.size(); ++j) {
                    Rational term(tab.at(i, j) * tab.at(k, j), z_mu(parts[j]));
                    term.canonicalize();
                    s += term;
                }
                o.check(s == (i == k ? 1 : 0), "orthogonality fails at n=" + std::to_string(n));
            }
    }
    double tchar = since(t0);
    o.check(tchar < 10, "character orthogonality took more than 10 s");
    for (int n = 1; n <= 7; ++n)
        for (auto& lam : partitions_of(n))
            for (auto& nu : partitions_of(n)) {
                auto k = kostka(lam, nu);
                if (lam == nu)
                    o.check(k == 1, "Kostka diagonal != 1");
                else if (k != 0)
                    o.check(dominates(lam, nu), "Kostka nonzero off dominance order");
            }
    o.detail << "orthogonality n<=7 in " << tchar << " s; Kostka unitriangular n<=7";
}

void criterion6(Outcome& o) {
    std::mt19937 rng(20240601);
    std::size_t components = 0, stability_checks = 0;
    for (int n = 1; n <= 4; ++n) {
        auto res = frobenius_module(n);
        o.check(res.complete, "module exploration incomplete, n=" + std::to_string(n));
        o.check(res.series.integral(), "non-integral Frobenius coefficient, n=" + std::to_string(n));
        ComponentEngine engine(n);
        auto perms = all_permutations(n);
        std::vector<TriDegree> sampled;
        for (auto& d : res.evaluated) {
            ++components;
            auto qc = engine.get(d);
            auto ideal = ideal_component(n, d);
            const std::int64_t expected = component_dimension(n, d) - std::int64_t(ideal.rank());
            o.check(qc.values.at(ones(n)) == expected, "chi(1^n) != dim R - rank I at " + d.to_string());
            if (d.c == n) o.check(qc.is_zero(), "c=n component nonzero at " + d.to_string());
            if (ideal.rank() == 0) continue;
            std::vector<Permutation> acting;
            if (n <= 3) {
                acting = perms;
            } else if (rng() % 4 == 0) {
                acting = {Permutation({2, 1, 3, 4}), Permutation({2, 3, 4, 1}), perms[rng() % perms.size()]};
            }
            auto index = detail::index_monomials(ideal.monomial_index);
            for (auto& s : acting) {
                ++stability_checks;
                try {
                    CoordinateAction act(s, ideal.monomial_index, index);
                    restricted_trace(ideal.basis, std::cref(act));
                } catch (const InvariantViolation&) {
                    o.check(false, "ideal component not stable at " + d.to_string());
                }
            }
        }
        o.check(compute_quotient_character(n, {0, 0, n}).is_zero(), "M^(0,0,n) nonzero");
        for (auto& row : res.rows)
            if (row.c == n) o.check(row.nonzero.empty(), "c=n row has nonzero components");
    }
    o.detail << components << " components, " << stability_checks
             << " stability checks (all of S_n for n<=3, sampled for n=4)";
}

void criterion7(Outcome& o) {
    for (int n = 1; n <= 4; ++n)
        o.check(shared().reports[n].lhs_schur_positive, "module side not Schur positive, n=" + std::to_string(n));
    for (int n = 1; n <= 6; ++n)
        o.check(rhs_series(n).schur_positive(), "delta side not Schur positive, n=" + std::to_string(n));
    o.detail << "schur_positive: module n<=4, delta n<=6";
}

void criterion8(Outcome& o) {
    const fs::path dir = fs::temp_directory_path() / ("superdiag-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    auto render = [](const VerificationReport& r) { return render_report(r, "json") + render_report(r, "text"); };
    for (int n : {3, 4}) {
        const std::string tag = " (n=" + std::to_string(n) + ")";
        auto base = render(shared().reports[n]);
        VerifyOptions plain;
        o.check(render(verify_conjecture(n, plain)) == base, "repeat run differs" + tag);
        VerifyOptions threaded;
        threaded.threads = 4;
        o.check(render(verify_conjecture(n, threaded)) == base, "4 threads differ" + tag);
        VerifyOptions cached;
        cached.threads = 2;
        cached.cache_dir = dir;
        auto cold = verify_conjecture(n, cached);
        auto warm = verify_conjecture(n, cached);
        o.check(cold.cache_hits == 0 && cold.components_computed > 0, "cold run was not cold" + tag);
        o.check(warm.components_computed == 0 && warm.cache_hits > 0, "warm run recomputed" + tag);
        o.check(render(cold) == base, "cold-cache run differs" + tag);
        o.check(render(warm) == base, "warm-cache run differs" + tag);
    }
    fs::remove_all(dir);
    o.detail << "identical reports: repeat, 1/2/4 threads, cold and warm cache, n=3,4";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"end-to-end verification", criterion1},
        {"z=0, q=t=1 dimension is (n+1)^(n-1)", criterion2},
        {"forced identities", criterion3},
        {"modified Macdonald properties", criterion4},
        {"character orthogonality and Kostka", criterion5},
        {"module-side internal consistency", criterion6},
        {"Schur positivity", criterion7},
        {"determinism", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail.str() << " [" << since(t0) << " s]";
        for (std::size_t k = 0; k < o.failures.size() && k < 5; ++k) std::cout << "\n      - " << o.failures[k];
        std::cout << std::endl;
        failed += !o.ok;
    }
    std::cout << (failed ? "FAILED " : "PASSED ") << criteria.size() - failed << "/" << criteria.size()
              << " acceptance criteria" << std::endl;
    return failed ? 1 : 0;
}
