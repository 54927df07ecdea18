#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "macdonald.hpp"
#include "verifier.hpp"

namespace superdiag {

enum class ReportFormat { Json, Csv, Latex, Text };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "latex") return ReportFormat::Latex;
    if (s == "text") return ReportFormat::Text;
    throw std::invalid_argument("unknown report format: " + s);
}

struct RenderOptions {
    bool include_timing = false;  // timings and cache counters vary between runs
};

/// { basis, n, coeffs: { "lambda": "polynomial" } }
inline nlohmann::ordered_json series_to_json(const FrobeniusSeries& s) {
    nlohmann::ordered_json j;
    j["basis"] = "s";
    j["n"] = s.n;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (auto& [lam, p] : s.coeffs) c[lam.to_string()] = p.to_string();
    j["coeffs"] = c;
    return j;
}

template <class C>
nlohmann::ordered_json symfunc_to_json(const SymFunc<C>& f) {
    nlohmann::ordered_json j;
    j["basis"] = basis_name(f.basis);
    j["n"] = f.n;
    nlohmann::ordered_json c = nlohmann::ordered_json::object();
    for (auto& [lam, p] : f.coeffs) c[lam.to_string()] = p.to_string();
    j["coeffs"] = c;
    return j;
}

inline FrobeniusSeries series_from_json(const nlohmann::json& j) {
    if (j.at("basis").get<std::string>() != "s") throw std::invalid_argument("expected Schur basis");
    FrobeniusSeries s;
    s.n = j.at("n").get<int>();
    for (auto& [k, v] : j.at("coeffs").items())
        s.add(Partition::parse(k), QTZPolynomial::parse(v.get<std::string>()));
    return s;
}

inline nlohmann::ordered_json report_to_json(const VerificationReport& r, const RenderOptions& opt = {}) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["verdict"] = verdict_name(r.verdict);
    j["reasons"] = r.reasons;
    j["lhs"] = series_to_json(r.lhs);
    j["rhs"] = series_to_json(r.rhs);
    auto diffs = nlohmann::ordered_json::array();
    for (auto& d : r.diffs)
        diffs.push_back({{"lambda", d.lambda.to_string()},
                         {"lhs", d.lhs.to_string()},
                         {"rhs", d.rhs.to_string()},
                         {"difference", d.difference.to_string()}});
    j["diffs"] = diffs;
    nlohmann::ordered_json spec;
    spec["z0_qt1_dimension"] = {{"lhs", r.lhs_z0_dim.get_str()}, {"rhs", r.rhs_z0_dim.get_str()}};
    spec["qtz1_dimension"] = {{"lhs", r.lhs_total_dim.get_str()}, {"rhs", r.rhs_total_dim.get_str()}};
    spec["t0"] = {{"lhs", series_to_json(r.lhs_t0)}, {"rhs", series_to_json(r.rhs_t0)}};
    j["specializations"] = spec;
    j["checks"] = {{"lhs_integral", r.lhs_integral},
                   {"lhs_schur_positive", r.lhs_schur_positive},
                   {"rhs_schur_positive", r.rhs_schur_positive},
                   {"lhs_top_z_is_sign", r.top_z_is_sign_lhs},
                   {"rhs_top_z_is_sign", r.top_z_is_sign_rhs},
                   {"rhs_support_covered", r.rhs_support_covered}};
    auto rows = nlohmann::ordered_json::array();
    for (auto& row : r.rows)
        rows.push_back({{"c", row.c},
                        {"closed", row.closed},
                        {"closing_band", row.closing_band},
                        {"extra_bands_scanned", row.extra_bands_scanned},
                        {"extra_band_clean", row.extra_band_clean},
                        {"components_explored", row.components_explored},
                        {"nonzero_components", row.nonzero_components}});
    j["statistics"] = {{"components_explored", r.components_explored},
                       {"nonzero_components", r.nonzero_components},
                       {"max_component_dim", r.max_component_dim},
                       {"rows", rows}};
    auto hil = nlohmann::ordered_json::array();
    for (auto& [d, dim] : r.hilbert) hil.push_back({{"degree", {d.a, d.b, d.c}}, {"dim", dim}});
    j["hilbert"] = hil;
    if (opt.include_timing)
        j["timing"] = {{"seconds_rhs", r.seconds_rhs},
                       {"seconds_module", r.seconds_module},
                       {"components_computed", r.components_computed},
                       {"cache_hits", r.cache_hits}};
    return j;
}

/// Reads back the verdict, both series and the diff list.
inline VerificationReport report_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    VerificationReport r;
    r.n = j.at("n").get<int>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    for (auto& s : j.at("reasons")) r.reasons.push_back(s.get<std::string>());
    r.lhs = series_from_json(j.at("lhs"));
    r.rhs = series_from_json(j.at("rhs"));
    for (auto& d : j.at("diffs"))
        r.diffs.push_back({Partition::parse(d.at("lambda").get<std::string>()),
                           QTZPolynomial::parse(d.at("lhs").get<std::string>()),
                           QTZPolynomial::parse(d.at("rhs").get<std::string>()),
                           QTZPolynomial::parse(d.at("difference").get<std::string>())});
    return r;
}

namespace detail {

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline std::string latex_poly(const std::string& p) {
    std::string out;
    for (char c : p) {
        if (c == '*')
            out += ' ';
        else
            out += c;
    }
    return out;
}

}  // namespace detail

inline std::string render_report(const VerificationReport& r, ReportFormat format, const RenderOptions& opt = {}) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Json:
            os << report_to_json(r, opt).dump(2) << "\n";
            break;
        case ReportFormat::Csv:
            os << "lambda,lhs,rhs,difference\n";
            for (auto& d : r.diffs)
                os << detail::csv_field(d.lambda.to_string()) << ',' << detail::csv_field(d.lhs.to_string()) << ','
                   << detail::csv_field(d.rhs.to_string()) << ',' << detail::csv_field(d.difference.to_string())
                   << "\n";
            break;
        case ReportFormat::Latex:
            os << "% n = " << r.n << ", verdict " << verdict_name(r.verdict) << "\n";
            os << "\\begin{tabular}{ll}\n\\hline\n$\\lambda$ & $\\langle \\mathcal{F}_{qtz}(M_" << r.n
               << "), s_\\lambda \\rangle$ \\\\\n\\hline\n";
            for (auto& [lam, p] : r.lhs.coeffs)
                os << "$(" << lam.to_string() << ")$ & $" << detail::latex_poly(p.to_string()) << "$ \\\\\n";
            os << "\\hline\n\\end{tabular}\n";
            break;
        case ReportFormat::Text:
            os << "n = " << r.n << "\n";
            os << "verdict: " << verdict_name(r.verdict) << "\n";
            for (auto& why : r.reasons) os << "  reason: " << why << "\n";
            os << "module side (Schur expansion):\n";
            for (auto& [lam, p] : r.lhs.coeffs) os << "  s(" << lam.to_string() << "): " << p.to_string() << "\n";
            if (!r.diffs.empty()) {
                os << "differences (module - delta):\n";
                for (auto& d : r.diffs)
                    os << "  s(" << d.lambda.to_string() << "): " << d.difference.to_string() << "\n";
            }
            os << "z=0, q=t=1 dimension: module " << r.lhs_z0_dim.get_str() << ", delta " << r.rhs_z0_dim.get_str()
               << "\n";
            os << "q=t=z=1 dimension: module " << r.lhs_total_dim.get_str() << ", delta "
               << r.rhs_total_dim.get_str() << "\n";
            os << "schur positive: module " << (r.lhs_schur_positive ? "yes" : "no") << ", delta "
               << (r.rhs_schur_positive ? "yes" : "no") << "\n";
            os << "components explored: " << r.components_explored << ", nonzero: " << r.nonzero_components
               << "\n";
            for (auto& row : r.rows)
                os << "  theta-degree " << row.c << ": " << (row.closed ? "closed at band " : "open")
                   << (row.closed ? std::to_string(row.closing_band) : std::string()) << ", extra bands "
                   << row.extra_bands_scanned << (row.extra_band_clean ? " clean" : " NOT clean") << "\n";
            if (opt.include_timing)
                os << "time: delta " << r.seconds_rhs << " s, module " << r.seconds_module << " s, computed "
                   << r.components_computed << ", cache hits " << r.cache_hits << "\n";
            break;
    }
    return os.str();
}

inline std::string render_report(const VerificationReport& r, const std::string& format,
                                 const RenderOptions& opt = {}) {
    return render_report(r, parse_format(format), opt);
}

}  // namespace superdiag
