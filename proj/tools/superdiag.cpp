// Command-line front end: verify, frobenius, hilbert, macdonald, character.
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include <superdiag/superdiag.hpp>

using namespace superdiag;

namespace {

constexpr int kExitUsage = 3;
constexpr int kExitInternal = 4;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

int exit_code(Verdict v) {
    switch (v) {
        case Verdict::Equal: return 0;
        case Verdict::Differ: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return kExitInternal;
}

TriDegree parse_degree(const std::string& s) {
    TriDegree d;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> d.a >> c1 >> d.b >> c2 >> d.c) || c1 != ',' || c2 != ',' || !in.eof() || !d.valid())
        throw UsageError("degree must look like a,b,c with nonnegative entries: " + s);
    return d;
}

FrobeniusSeries apply_spec(const FrobeniusSeries& s, const std::string& spec) {
    if (spec.empty()) return s;
    if (spec == "z=0") return s.specialize(std::nullopt, std::nullopt, Rational(0));
    if (spec == "t=0") return s.specialize(std::nullopt, Rational(0), std::nullopt);
    if (spec == "q=t=1") return s.specialize(Rational(1), Rational(1), std::nullopt);
    throw UsageError("unknown specialization: " + spec);
}

void require_long_run(int n, bool long_run) {
    if (n >= kLongRunThreshold && !long_run)
        throw UsageError("module side for n >= " + std::to_string(kLongRunThreshold) +
                         " runs for hours; pass --long-run to proceed");
}

void print_series(const FrobeniusSeries& s, const std::string& format) {
    if (format == "json")
        std::cout << series_to_json(s).dump(2) << "\n";
    else
        std::cout << s.to_string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact comparison of super-diagonal coinvariant Frobenius series with Delta' expressions"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "compute both sides and compare them exactly");
    int v_n = 0;
    VerifyOptions vopt;
    std::string v_cache, v_format = "text";
    double v_budget = 0;
    bool v_timing = false;
    verify->add_option("--n", v_n, "size n")->required()->check(CLI::Range(1, kMaxVariables));
    verify->add_option("--extra-band", vopt.extra_band, "bands scanned past each zero frontier")
        ->check(CLI::NonNegativeNumber);
    verify->add_flag("--check-extra-band", "scan at least one band past each zero frontier");
    verify->add_option("--max-band", vopt.max_band, "largest a+b explored per theta-degree (0: automatic)")
        ->check(CLI::NonNegativeNumber);
    verify->add_option("--threads", vopt.threads, "worker threads")->check(CLI::PositiveNumber);
    verify->add_option("--cache-dir", v_cache, "directory for persisted component results");
    verify->add_option("--format", v_format, "report format")
        ->check(CLI::IsMember({"json", "csv", "latex", "text"}));
    verify->add_option("--budget-seconds", v_budget, "wall-clock budget; INCONCLUSIVE when exceeded")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--long-run", vopt.long_run, "allow n >= 5 (hours of computation)");
    verify->add_flag("--timing", v_timing, "include timings and cache counters in the report");

    // frobenius
    auto* frob = app.add_subcommand("frobenius", "print one side's Schur expansion");
    int f_n = 0;
    std::string f_side, f_spec, f_format = "text";
    unsigned f_threads = 1;
    bool f_long = false;
    frob->add_option("--n", f_n, "size n")->required()->check(CLI::Range(1, kMaxVariables));
    frob->add_option("--side", f_side, "module or delta")->required()->check(CLI::IsMember({"module", "delta"}));
    frob->add_option("--spec", f_spec, "specialization")->check(CLI::IsMember({"z=0", "t=0", "q=t=1"}));
    frob->add_option("--format", f_format, "output format")->check(CLI::IsMember({"json", "text"}));
    frob->add_option("--threads", f_threads, "worker threads")->check(CLI::PositiveNumber);
    frob->add_flag("--long-run", f_long, "allow the module side for n >= 5");

    // hilbert
    auto* hil = app.add_subcommand("hilbert", "dimension of every nonzero component (a,b,c)");
    int h_n = 0;
    unsigned h_threads = 1;
    bool h_long = false;
    hil->add_option("--n", h_n, "size n")->required()->check(CLI::Range(1, kMaxVariables));
    hil->add_option("--threads", h_threads, "worker threads")->check(CLI::PositiveNumber);
    hil->add_flag("--long-run", h_long, "allow n >= 5");

    // macdonald
    auto* mac = app.add_subcommand("macdonald", "Schur expansion of the modified Macdonald polynomial");
    std::string m_mu, m_format = "text";
    mac->add_option("--mu", m_mu, "partition, e.g. \"2,1\"")->required();
    mac->add_option("--format", m_format, "output format")->check(CLI::IsMember({"json", "text"}));

    // character
    auto* chr = app.add_subcommand("character", "S_n character of one quotient component");
    int c_n = 0;
    std::string c_degree, c_format = "text";
    chr->add_option("--n", c_n, "size n")->required()->check(CLI::Range(1, kMaxVariables));
    chr->add_option("--degree", c_degree, "tri-degree a,b,c")->required();
    chr->add_option("--format", c_format, "output format")->check(CLI::IsMember({"json", "text"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*verify) {
            if (verify->count("--check-extra-band") && vopt.extra_band < 1) vopt.extra_band = 1;
            if (!v_cache.empty()) vopt.cache_dir = v_cache;
            if (verify->count("--budget-seconds")) vopt.budget_seconds = v_budget;
            require_long_run(v_n, vopt.long_run);
            auto rep = verify_conjecture(v_n, vopt);
            RenderOptions ro;
            ro.include_timing = v_timing;
            std::cout << render_report(rep, v_format, ro);
            return exit_code(rep.verdict);
        }
        if (*frob) {
            FrobeniusSeries s;
            if (f_side == "delta") {
                s = rhs_series(f_n, f_threads);
            } else {
                require_long_run(f_n, f_long);
                ModuleOptions mo;
                mo.threads = f_threads;
                auto res = frobenius_module(f_n, mo);
                if (!res.complete) std::cerr << "warning: module exploration did not close every row\n";
                s = res.series;
            }
            print_series(apply_spec(s, f_spec), f_format);
            return 0;
        }
        if (*hil) {
            require_long_run(h_n, h_long);
            ModuleOptions mo;
            mo.threads = h_threads;
            auto res = frobenius_module(h_n, mo);
            std::cout << "a,b,c,dim\n";
            for (auto& [d, dim] : res.hilbert) std::cout << d.to_string() << "," << dim << "\n";
            if (!res.complete) std::cerr << "warning: module exploration did not close every row\n";
            return 0;
        }
        if (*mac) {
            Partition mu;
            try {
                mu = Partition::parse(m_mu);
            } catch (const std::exception& e) {
                throw UsageError(e.what());
            }
            if (mu.size() < 1 || mu.size() > kMaxHtildeSize)
                throw UsageError("partition size must be between 1 and " + std::to_string(kMaxHtildeSize));
            const auto& h = htilde_schur(mu);
            if (m_format == "json")
                std::cout << symfunc_to_json(h).dump(2) << "\n";
            else
                for (auto& [lam, p] : h.coeffs) std::cout << "s(" << lam.to_string() << "): " << p.to_string() << "\n";
            return 0;
        }
        if (*chr) {
            auto d = parse_degree(c_degree);
            auto qc = compute_quotient_character(c_n, d);
            auto mult = schur_multiplicities(qc);
            if (c_format == "json") {
                auto j = CacheEntry::from_character(qc).to_json();
                nlohmann::ordered_json m = nlohmann::ordered_json::object();
                for (auto& [lam, k] : mult) m[lam.to_string()] = k;
                j["ideal_rank"] = qc.ideal_rank;
                j["schur_multiplicities"] = m;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "n = " << c_n << ", degree " << d.to_string() << "\n";
                std::cout << "dim R = " << qc.full_dim << ", rank I = " << qc.ideal_rank << ", dim M = " << qc.dim()
                          << "\n";
                for (auto& [mu, v] : qc.values) std::cout << "chi(" << mu.to_string() << ") = " << v << "\n";
                for (auto& [lam, k] : mult)
                    if (k != 0) std::cout << "s(" << lam.to_string() << ") x " << k << "\n";
            }
            return 0;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
