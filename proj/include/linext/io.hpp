#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catalog.hpp"
#include "convex.hpp"
#include "error.hpp"
#include "extreal.hpp"
#include "geometry.hpp"
#include "linear_extended.hpp"
#include "scoring.hpp"

namespace linext::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Exact text forms.  JSON carries rationals and extended reals as strings;
// CSV carries rounded decimals with "inf"/"-inf" literals.
// ---------------------------------------------------------------------------

inline json ratvec_to_json(const RatVec& v)
{
    json arr = json::array();
    for (const Rational& c : v) arr.push_back(format_rational(c));
    return arr;
}

inline RatVec ratvec_from_json(const json& j)
{
    if (!j.is_array())
        fail(Errc::ParseError, "expected an array of rational strings");
    RatVec out;
    out.reserve(j.size());
    for (const json& c : j) {
        if (!c.is_string())
            fail(Errc::ParseError, "expected a rational string");
        out.push_back(parse_rational(c.get<std::string>()));
    }
    return out;
}

// Rounded decimal with the given number of fractional digits (half away from
// zero), trailing zeros trimmed.
inline std::string to_decimal(const Rational& r, unsigned digits)
{
    Rational mag = abs_of(r);
    Int den = detail::pow10_int(digits);
    // round(mag * den) half away from zero
    Rational scaled = mag * Rational(den);
    Int floor_part = numerator(scaled) / denominator(scaled);
    Rational rem = scaled - Rational(floor_part);
    Int total = floor_part + (rem * 2 >= 1 ? 1 : 0);

    Int ipart = total / den;
    Int fpart = total % den;
    std::ostringstream os;
    if (r < 0 && total != 0) os << '-';
    os << ipart;
    if (fpart != 0) {
        std::string frac = fpart.str();
        frac.insert(frac.begin(), digits - frac.size(), '0');
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        os << '.' << frac;
    }
    return os.str();
}

inline std::string extreal_to_decimal(const ExtReal& v, unsigned digits)
{
    if (v.is_plus_inf()) return "inf";
    if (v.is_minus_inf()) return "-inf";
    return to_decimal(v.finite_value(), digits);
}

// ---------------------------------------------------------------------------
// Function specs.
// LinExt:  {"dim": d, "dirs": [[...]], "tail": [...]}
// AffExt:  {"f": <linext>, "anchor": [...], "offset": "..."}
// Loading canonicalizes direction scaling but rejects non-orthogonal input.
// ---------------------------------------------------------------------------

inline json linext_to_json(const LinExt& f)
{
    json j;
    j["dim"] = f.dim();
    json dirs = json::array();
    for (const RatVec& v : f.dirs()) dirs.push_back(ratvec_to_json(v));
    j["dirs"] = dirs;
    j["tail"] = ratvec_to_json(f.tail());
    return j;
}

inline LinExt linext_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("dirs") || !j.contains("tail"))
        fail(Errc::ParseError, "function spec needs fields dim, dirs, tail");
    if (!j.at("dim").is_number_unsigned())
        fail(Errc::ParseError, "field dim must be a nonnegative integer");
    std::size_t dim = j.at("dim").get<std::size_t>();
    if (!j.at("dirs").is_array())
        fail(Errc::ParseError, "field dirs must be an array of vectors");
    std::vector<RatVec> dirs;
    for (const json& d : j.at("dirs")) dirs.push_back(ratvec_from_json(d));
    RatVec tail = ratvec_from_json(j.at("tail"));
    return LinExt::make(dim, std::move(dirs), std::move(tail));
}

inline json affext_to_json(const AffExt& h)
{
    json j;
    j["f"] = linext_to_json(h.f);
    j["anchor"] = ratvec_to_json(h.anchor);
    j["offset"] = format_rational(h.offset);
    return j;
}

inline AffExt affext_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("f") || !j.contains("anchor") || !j.contains("offset"))
        fail(Errc::ParseError, "affine spec needs fields f, anchor, offset");
    if (!j.at("offset").is_string())
        fail(Errc::ParseError, "field offset must be a rational string");
    return AffExt(linext_from_json(j.at("f")), ratvec_from_json(j.at("anchor")),
                  parse_rational(j.at("offset").get<std::string>()));
}

// A spec file holds either kind; the "f" field marks the affine one.
struct EvalSpec {
    std::optional<LinExt> lin;
    std::optional<AffExt> aff;

    std::size_t dim() const { return lin ? lin->dim() : aff->dim(); }
    ExtReal eval(const RatVec& x) const { return lin ? lin->eval(x) : affext_eval(*aff, x); }
};

inline EvalSpec eval_spec_from_json(const json& j)
{
    EvalSpec out;
    if (j.is_object() && j.contains("f"))
        out.aff = affext_from_json(j);
    else
        out.lin = linext_from_json(j);
    return out;
}

// ---------------------------------------------------------------------------
// Score tables.
// {"outcomes": [labels], "preds": [[rational strings]], "values": [[extreal strings]]}
// ---------------------------------------------------------------------------

inline json score_table_to_json(const ScoreTable& t)
{
    json j;
    j["outcomes"] = t.outcomes().labels();
    json preds = json::array();
    for (const Dist& p : t.preds()) preds.push_back(ratvec_to_json(p.probs()));
    j["preds"] = preds;
    json values = json::array();
    for (const auto& row : t.values()) {
        json r = json::array();
        for (const ExtReal& v : row) r.push_back(format_extreal(v));
        values.push_back(r);
    }
    j["values"] = values;
    return j;
}

inline ScoreTable score_table_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("outcomes") || !j.contains("preds") ||
        !j.contains("values"))
        fail(Errc::ParseError, "score table needs fields outcomes, preds, values");
    if (!j.at("outcomes").is_array())
        fail(Errc::ParseError, "field outcomes must be an array of labels");
    std::vector<std::string> labels;
    for (const json& l : j.at("outcomes")) {
        if (!l.is_string())
            fail(Errc::ParseError, "outcome labels must be strings");
        labels.push_back(l.get<std::string>());
    }
    if (!j.at("preds").is_array() || !j.at("values").is_array())
        fail(Errc::ParseError, "fields preds and values must be arrays");
    std::vector<Dist> preds;
    for (const json& p : j.at("preds")) preds.emplace_back(ratvec_from_json(p));
    std::vector<std::vector<ExtReal>> values;
    for (const json& row : j.at("values")) {
        if (!row.is_array())
            fail(Errc::ParseError, "score rows must be arrays");
        std::vector<ExtReal> r;
        for (const json& v : row) {
            if (!v.is_string())
                fail(Errc::ParseError, "scores must be extended-real strings");
            r.push_back(parse_extreal(v.get<std::string>()));
        }
        values.push_back(std::move(r));
    }
    return ScoreTable(OutcomeSet(std::move(labels)), std::move(preds), std::move(values));
}

// CSV export: one row per (pred, outcome), decimals at the given precision.
inline std::string score_table_to_csv(const ScoreTable& t, unsigned digits)
{
    std::ostringstream os;
    os << "pred,outcome,score\n";
    for (std::size_t i = 0; i < t.preds().size(); ++i) {
        std::string pred;
        for (std::size_t k = 0; k < t.preds()[i].size(); ++k) {
            if (k > 0) pred += ';';
            pred += to_decimal(t.preds()[i][k], digits);
        }
        for (std::size_t y = 0; y < t.outcomes().size(); ++y)
            os << pred << ',' << t.outcomes().label(y) << ','
               << extreal_to_decimal(t.value(i, y), digits) << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Verdict reports.  Every report carries a "verdict" field; the remaining
// fields depend on the verdict kind.
// ---------------------------------------------------------------------------

inline std::string properness_verdict_string(Properness v)
{
    switch (v) {
        case Properness::StrictlyProperOnGrid: return "strictly-proper-on-grid";
        case Properness::ProperOnGrid: return "proper-on-grid";
        case Properness::Violation: return "violation";
    }
    return "?";
}

inline json properness_to_json(const PropernessReport& rep, const ScoreTable& t)
{
    json j;
    j["verdict"] = properness_verdict_string(rep.verdict);
    if (rep.verdict == Properness::Violation) {
        j["misreport"] = ratvec_to_json(t.preds()[*rep.misreport].probs());
        j["truth"] = ratvec_to_json(t.preds()[*rep.truth].probs());
        j["misreport_score"] = format_extreal(rep.misreport_score);
        j["truthful_score"] = format_extreal(rep.truthful_score);
    } else if (rep.tie) {
        j["tie"] = json::array({ratvec_to_json(t.preds()[rep.tie->first].probs()),
                                ratvec_to_json(t.preds()[rep.tie->second].probs())});
    }
    return j;
}

inline json ill_cert_to_json(const IllCertificate& cert)
{
    json j;
    if (cert.certified) {
        j["verdict"] = "certified";
        json w = json::array();
        for (const LinExt& f : cert.witnesses) w.push_back(linext_to_json(f));
        j["witnesses"] = w;
    } else {
        j["verdict"] = "fails-at";
        j["point"] = ratvec_to_json(cert.failing_point->probs());
        j["subgradient"] = linext_to_json(*cert.failing_subgradient);
    }
    return j;
}

inline json axiom_report_to_json(const AxiomReport& rep)
{
    json j;
    j["verdict"] = rep.passed() ? "pass" : "fail";
    j["scaling_checked"] = rep.scaling_checked;
    j["additivity_checked"] = rep.additivity_checked;
    j["additivity_skipped"] = rep.additivity_skipped;
    json fails = json::array();
    for (const AxiomFailure& f : rep.failures) {
        json e;
        e["axiom"] = f.axiom;
        e["x"] = ratvec_to_json(f.sample.x);
        e["x2"] = ratvec_to_json(f.sample.x2);
        e["alpha"] = format_rational(f.sample.alpha);
        e["expected"] = format_extreal(f.expected);
        e["actual"] = format_extreal(f.actual);
        fails.push_back(e);
    }
    j["failures"] = fails;
    return j;
}

// ---------------------------------------------------------------------------
// File helpers.
// ---------------------------------------------------------------------------

inline json parse_json_text(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(Errc::ParseError, origin + ": " + e.what());
    }
}

inline json parse_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(Errc::ParseError, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_json_text(buf.str(), path);
}

inline std::string dump_json(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace linext::io
