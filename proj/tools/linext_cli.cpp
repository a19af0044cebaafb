// Command-line front end: evaluate function specs, fuzz the linearity axioms,
// build and verify scoring rules, emit certificates and plot data.
//
// Exit codes: 0 = pass, 1 = property failure (axiom counterexample, verdict
// failure, or --expect mismatch), 2 = input error.

#include <CLI11.hpp>

#include <linext/catalog.hpp>
#include <linext/convex.hpp>
#include <linext/error.hpp>
#include <linext/extreal.hpp>
#include <linext/geometry.hpp>
#include <linext/grid.hpp>
#include <linext/io.hpp>
#include <linext/linear_extended.hpp>
#include <linext/scoring.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace linext;

RatVec parse_point(const std::string& text)
{
    RatVec out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        out.push_back(parse_rational(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

void emit(const std::string& payload, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        fail(Errc::ParseError, "cannot open output file: " + out_path);
    out << payload;
}

unsigned checked_precision(unsigned precision)
{
    if (precision < 1 || precision > 100)
        fail(Errc::PreconditionViolated, "--precision must lie in [1, 100]");
    return precision;
}

// Catalog grids may contain off-simplex probe points; predictions are the
// simplex members only.
std::vector<Dist> simplex_preds(const CatalogEntry& entry, unsigned den)
{
    std::vector<Dist> preds;
    for (const RatVec& x : entry.default_grid(den)) {
        Rational total = 0;
        bool ok = true;
        for (const Rational& c : x) {
            if (c < 0) { ok = false; break; }
            total += c;
        }
        if (ok && total == 1) preds.emplace_back(x);
    }
    if (preds.empty())
        fail(Errc::PreconditionViolated, "grid contains no predictions; raise --grid-denominator");
    return preds;
}

int cmd_eval(const std::string& spec_path, const std::string& point_text)
{
    io::EvalSpec spec = io::eval_spec_from_json(io::parse_json_file(spec_path));
    RatVec x = parse_point(point_text);
    ExtReal v = spec.eval(x);
    const char* cls = v.is_plus_inf() ? "plus" : (v.is_minus_inf() ? "minus" : "finite");
    std::cout << format_extreal(v) << "\n" << cls << "\n";
    return 0;
}

int cmd_axioms(const std::string& spec_path, std::size_t trials, std::uint64_t seed)
{
    io::json j = io::parse_json_file(spec_path);
    if (j.is_object() && j.contains("f"))
        fail(Errc::ParseError, "axioms expects a linear extended function spec");
    LinExt f = io::linext_from_json(j);
    AxiomReport rep = check_axioms(f, default_axiom_samples(f, trials, seed));
    std::cout << io::dump_json(io::axiom_report_to_json(rep));
    return rep.passed() ? 0 : 1;
}

int finish_verdict(const std::string& verdict, const std::string& expect, bool pass_by_default,
                   const std::vector<std::string>& valid_expects)
{
    if (expect.empty()) return pass_by_default ? 0 : 1;
    bool valid = false;
    for (const std::string& v : valid_expects) valid = valid || v == expect;
    if (!valid)
        fail(Errc::PreconditionViolated, "--expect value not recognized: " + expect);
    return verdict == expect ? 0 : 1;
}

int cmd_score_build(const std::string& name, std::size_t outcomes, unsigned den,
                    unsigned precision, const std::string& rule, const std::string& format,
                    const std::string& out_path)
{
    CatalogEntry entry = catalog_by_name(name, outcomes, checked_precision(precision));
    std::vector<Dist> preds = simplex_preds(entry, den);
    ScoreTable table = rule == "subgradient" ? subgradient_rule(entry.spec, preds, entry.outcomes)
                                             : subtangent_rule(entry.spec, preds, entry.outcomes);
    if (format == "csv")
        emit(io::score_table_to_csv(table, precision), out_path);
    else
        emit(io::dump_json(io::score_table_to_json(table)), out_path);
    return 0;
}

int cmd_score_verify(const std::string& table_path, const std::string& expect,
                     const std::string& out_path)
{
    ScoreTable table = io::score_table_from_json(io::parse_json_file(table_path));
    PropernessReport rep = verify_properness(table);
    emit(io::dump_json(io::properness_to_json(rep, table)), out_path);
    return finish_verdict(io::properness_verdict_string(rep.verdict), expect,
                          rep.verdict != Properness::Violation,
                          {"strictly-proper-on-grid", "proper-on-grid", "violation"});
}

int cmd_score_reconstruct(const std::string& table_path, const std::string& expect,
                          const std::string& out_path)
{
    ScoreTable table = io::score_table_from_json(io::parse_json_file(table_path));
    ConvexSpec g = savage_reconstruct(table);

    std::vector<RatVec> grid;
    grid.reserve(table.preds().size());
    for (const Dist& p : table.preds()) grid.push_back(p.probs());

    io::json j;
    io::json preds = io::json::array();
    io::json values = io::json::array();
    for (const RatVec& q : grid) {
        preds.push_back(io::ratvec_to_json(q));
        values.push_back(format_extreal(g.eval(q)));
    }
    j["preds"] = preds;
    j["values"] = values;

    StrictConvexityProbe probe = strict_convexity_probe(g, grid);
    std::string verdict = probe.strict ? "strict-on-grid" : "shared-support";
    j["probe"] = verdict;
    if (!probe.strict)
        j["shared_pair"] = io::json::array({io::ratvec_to_json(probe.shared_pair->first),
                                            io::ratvec_to_json(probe.shared_pair->second)});
    emit(io::dump_json(j), out_path);
    return finish_verdict(verdict, expect, true, {"strict-on-grid", "shared-support"});
}

int cmd_score_ill_cert(const std::string& name, std::size_t outcomes, unsigned den,
                       unsigned precision, const std::string& expect,
                       const std::string& out_path)
{
    CatalogEntry entry = catalog_by_name(name, outcomes, checked_precision(precision));
    std::vector<Dist> preds = simplex_preds(entry, den);
    IllCertificate cert = ill_certificate(entry.spec, preds);
    emit(io::dump_json(io::ill_cert_to_json(cert)), out_path);
    return finish_verdict(cert.certified ? "certified" : "fails-at", expect, cert.certified,
                          {"certified", "fails-at"});
}

int cmd_plotdata(const std::string& name, std::size_t points, unsigned precision,
                 const std::string& out_path)
{
    CatalogEntry entry = catalog_by_name(name, 2, checked_precision(precision));
    if (!entry.outcomes || entry.outcomes->size() != 2)
        fail(Errc::NonBinary, "plotdata requires a binary-outcome entry");
    if (points < 2)
        fail(Errc::PreconditionViolated, "--points must be at least 2");
    std::ostringstream os;
    os << "p1,g\n";
    for (std::size_t i = 0; i < points; ++i) {
        Rational p1(Int(i), Int(points - 1));
        RatVec x{Rational(1) - p1, p1};
        os << io::to_decimal(p1, precision) << ','
           << io::extreal_to_decimal(entry.spec.eval(x), precision) << '\n';
    }
    emit(os.str(), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact linear extended functions and proper scoring rules"};
    app.require_subcommand(1);

    int exit_code = 0;

    // eval SPEC POINT
    std::string eval_spec, eval_point;
    CLI::App* eval = app.add_subcommand("eval", "Evaluate a function spec at a point");
    eval->add_option("spec", eval_spec, "JSON function spec path")->required();
    eval->add_option("point", eval_point, "comma-separated rational coordinates")->required();
    eval->callback([&] { exit_code = cmd_eval(eval_spec, eval_point); });

    // axioms SPEC
    std::string ax_spec;
    std::size_t ax_trials = 1000;
    std::uint64_t ax_seed = 0;
    CLI::App* ax = app.add_subcommand("axioms", "Fuzz the linearity axioms of a spec");
    ax->add_option("spec", ax_spec, "JSON function spec path")->required();
    ax->add_option("--trials", ax_trials, "number of sampled points");
    ax->add_option("--seed", ax_seed, "rng seed");
    ax->callback([&] { exit_code = cmd_axioms(ax_spec, ax_trials, ax_seed); });

    // score {build, verify, reconstruct, ill-cert}
    CLI::App* score = app.add_subcommand("score", "Scoring-rule workbench");
    score->require_subcommand(1);

    std::string b_name, b_rule = "subtangent", b_format = "json", b_out;
    std::size_t b_outcomes = 2;
    unsigned b_den = 16, b_prec = 50;
    CLI::App* build = score->add_subcommand("build", "Build a rule table from a catalog entry");
    build->add_option("name", b_name, "catalog entry name")->required();
    build->add_option("--outcomes", b_outcomes, "number of outcomes");
    build->add_option("--grid-denominator", b_den, "Farey denominator bound")
        ->check(CLI::PositiveNumber);
    build->add_option("--precision", b_prec, "decimal digits for rounded logs");
    build->add_option("--rule", b_rule, "subtangent or subgradient")
        ->check(CLI::IsMember({"subtangent", "subgradient"}));
    build->add_option("--format", b_format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    build->add_option("--out", b_out, "output path (default stdout)");
    build->callback([&] {
        exit_code = cmd_score_build(b_name, b_outcomes, b_den, b_prec, b_rule, b_format, b_out);
    });

    std::string v_table, v_expect, v_out;
    CLI::App* verify = score->add_subcommand("verify", "Verify properness of a table");
    verify->add_option("table", v_table, "score table JSON path")->required();
    verify->add_option("--expect", v_expect, "expected verdict");
    verify->add_option("--out", v_out, "output path (default stdout)");
    verify->callback([&] { exit_code = cmd_score_verify(v_table, v_expect, v_out); });

    std::string r_table, r_expect, r_out;
    CLI::App* rec = score->add_subcommand("reconstruct", "Rebuild a convex function from a table");
    rec->add_option("table", r_table, "score table JSON path")->required();
    rec->add_option("--expect", r_expect, "expected probe verdict");
    rec->add_option("--out", r_out, "output path (default stdout)");
    rec->callback([&] { exit_code = cmd_score_reconstruct(r_table, r_expect, r_out); });

    std::string i_name, i_expect, i_out;
    std::size_t i_outcomes = 2;
    unsigned i_den = 16, i_prec = 50;
    CLI::App* ill = score->add_subcommand("ill-cert", "Interior-finiteness certificate on a grid");
    ill->add_option("name", i_name, "catalog entry name")->required();
    ill->add_option("--outcomes", i_outcomes, "number of outcomes");
    ill->add_option("--grid-denominator", i_den, "Farey denominator bound")
        ->check(CLI::PositiveNumber);
    ill->add_option("--precision", i_prec, "decimal digits for rounded logs");
    ill->add_option("--expect", i_expect, "expected verdict");
    ill->add_option("--out", i_out, "output path (default stdout)");
    ill->callback([&] {
        exit_code = cmd_score_ill_cert(i_name, i_outcomes, i_den, i_prec, i_expect, i_out);
    });

    // plotdata NAME
    std::string p_name, p_out;
    std::size_t p_points = 101;
    unsigned p_prec = 50;
    CLI::App* plot = app.add_subcommand("plotdata", "Emit (p(1), g) CSV for a binary entry");
    plot->add_option("name", p_name, "catalog entry name")->required();
    plot->add_option("--points", p_points, "number of evenly spaced p(1) values");
    plot->add_option("--precision", p_prec, "decimal digits");
    plot->add_option("--out", p_out, "output path (default stdout)");
    plot->callback([&] { exit_code = cmd_plotdata(p_name, p_points, p_prec, p_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const linext::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
