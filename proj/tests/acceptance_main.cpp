// Acceptance harness: exercises the project's hard guarantees end to end and
// prints one PASS/FAIL line per criterion.  Exit code 0 iff all pass.

#include "testutil.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace linext;
using testutil::R;
using testutil::vec;

namespace {

int failed_criteria = 0;

void report(int idx, const char* label, bool pass)
{
    std::printf("criterion %2d: %s  %s\n", idx, pass ? "PASS" : "FAIL", label);
    std::fflush(stdout);
    if (!pass) ++failed_criteria;
}

Rational tol30() { return Rational(1, detail::pow10_int(30)); }

Rational abs_rat(Rational r) { return r < 0 ? Rational(-r) : r; }

std::vector<Dist> to_dists(const std::vector<RatVec>& grid)
{
    std::vector<Dist> out;
    out.reserve(grid.size());
    for (const RatVec& p : grid) out.emplace_back(p);
    return out;
}

// 1. Introductory function: four exact evaluations, and the 3-d convex
// function admits it as an extended subgradient at (1,0,0) across a dense
// box grid that leaves the ridge in every direction.
bool criterion1()
{
    LinExt f = intro_f();
    bool ok = f.eval(vec({"1", "2", "3"})) == ExtReal::plus_inf() &&
              f.eval(vec({"4", "-1", "0"})) == ExtReal::minus_inf() &&
              f.eval(vec({"7", "0", "0"})) == ExtReal(R(7)) &&
              f.eval(vec({"0", "0", "0"})) == ExtReal(R(0));
    if (!ok) return false;
    CatalogEntry entry = intro_entry();
    std::vector<RatVec> grid = entry.default_grid(8);
    return verify_subgradient(entry.spec, vec({"1", "0", "0"}), f, grid).passed;
}

// 2. Axiom fuzzing: 10,000 seeded random instances, d <= 5, denominators
// <= 64; scaling and legal additivity hold exactly with zero failures.
bool criterion2(std::vector<LinExt>& pool)
{
    std::mt19937_64 rng(20260002);
    std::size_t failures = 0;
    pool.reserve(10000);
    for (int i = 0; i < 10000; ++i) {
        std::size_t d = 1 + rng() % 5;
        LinExt f = testutil::random_linext(rng, d, 64);
        AxiomReport rep =
            check_axioms(f, default_axiom_samples(f, 20, 9000000u + (std::uint64_t)i));
        if (!rep.passed()) ++failures;
        pool.push_back(std::move(f));
    }
    return failures == 0;
}

// 3. Decomposition: over the same instances, the +inf and -inf regions are
// reflections of each other, the finite region is closed under addition and
// scaling (with exact linear values), and the +inf region is a convex cone.
bool criterion3(const std::vector<LinExt>& pool)
{
    std::mt19937_64 rng(20260003);
    std::size_t failures = 0, finite_ops = 0, cone_combos = 0;
    for (const LinExt& f : pool) {
        std::size_t d = f.dim();
        RatVec x = testutil::random_vec(rng, d, 6, 16);
        Classification cx = f.classify(x);
        Classification cn = f.classify(vscale(R(-1), x));
        if ((cx == Classification::Plus) != (cn == Classification::Minus)) ++failures;
        if ((cx == Classification::Finite) != (cn == Classification::Finite)) ++failures;

        if (finite_ops < 1000) {
            RatVec a = project_orthogonal(testutil::random_vec(rng, d, 6, 16), f.dirs());
            RatVec b = project_orthogonal(testutil::random_vec(rng, d, 6, 16), f.dirs());
            if (f.classify(a) != Classification::Finite ||
                f.classify(b) != Classification::Finite)
                ++failures;
            RatVec s = vadd(a, b);
            if (f.classify(s) != Classification::Finite ||
                f.eval(s) != ExtReal(f.eval(a).finite_value() + f.eval(b).finite_value()))
                ++failures;
            Rational alpha = testutil::random_rational(rng, 5, 6);
            if (f.eval(vscale(alpha, a)) != ExtReal(alpha * f.eval(a).finite_value()))
                ++failures;
            finite_ops += 2;  // one addition, one scaling
        }

        if (cone_combos < 1000 && f.depth() > 0) {
            // Two certified members of the +inf region: align the leading
            // direction so the first sign test fires positively.
            const RatVec& u = f.dirs()[0];
            Rational uu = dot(u, u);
            RatVec p = testutil::random_vec(rng, d, 6, 16);
            RatVec q = testutil::random_vec(rng, d, 6, 16);
            RatVec xp = vadd(p, vscale((R(1) - dot(p, u)) / uu, u));
            RatVec xq = vadd(q, vscale((R(1) - dot(q, u)) / uu, u));
            if (f.classify(xp) != Classification::Plus ||
                f.classify(xq) != Classification::Plus)
                ++failures;
            Rational ca(1 + (long long)(rng() % 7), 1 + (long long)(rng() % 5));
            Rational cb(1 + (long long)(rng() % 7), 1 + (long long)(rng() % 5));
            if (f.classify(vadd(vscale(ca, xp), vscale(cb, xq))) != Classification::Plus)
                ++failures;
            ++cone_combos;
        }
    }
    return failures == 0 && finite_ops >= 1000 && cone_combos >= 1000;
}

// 4. Parsimony: distinct canonical parameterizations are distinguishable by
// a constructed point, 1,000 out of 1,000 times.
bool criterion4()
{
    std::mt19937_64 rng(20260004);
    int found = 0;
    for (int i = 0; i < 1000; ++i) {
        std::size_t d = 1 + rng() % 4;
        LinExt f = testutil::random_linext(rng, d, 32);
        LinExt g = testutil::random_linext(rng, d, 32);
        if (equals(f, g)) {
            --i;
            continue;
        }
        auto z = distinguishing_point(f, g);
        if (z && f.eval(*z) != g.eval(*z)) ++found;
    }
    return found == 1000;
}

// 5. Indicator construction on 500 random polytopes avoiding the origin:
// the result satisfies the axioms and is -inf across the hull, exactly.
bool criterion5()
{
    std::mt19937_64 rng(20260005);
    std::size_t failures = 0;
    for (int i = 0; i < 500; ++i) {
        std::size_t d = 1 + rng() % 4;
        Polytope P = testutil::random_polytope_avoiding_origin(rng, d, 6);
        LinExt f = indicator_neg_on(P);
        if (!check_axioms(f, default_axiom_samples(f, 20, 500000u + (std::uint64_t)i))
                 .passed()) {
            ++failures;
            continue;
        }
        bool all_neg = true;
        for (const RatVec& v : P.vertices)
            all_neg = all_neg && f.eval(v) == ExtReal::minus_inf();
        for (int k = 0; k < 200 && all_neg; ++k) {
            std::vector<Rational> w;
            Rational total = 0;
            for (std::size_t j = 0; j < P.vertices.size(); ++j) {
                Rational c(1 + (long long)(rng() % 16));
                w.push_back(c);
                total += c;
            }
            RatVec x = zero_vec(d);
            for (std::size_t j = 0; j < P.vertices.size(); ++j)
                x = vadd(x, vscale(w[j] / total, P.vertices[j]));
            all_neg = f.eval(x) == ExtReal::minus_inf();
        }
        if (!all_neg) ++failures;
    }
    return failures == 0;
}

// 6. Interior-finiteness: the structural test agrees with the evaluation
// test on 2,000 seeded pairs, including vertex distributions and flat
// functions.
bool criterion6()
{
    std::mt19937_64 rng(20260006);
    std::size_t disagreements = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::size_t n = 2 + rng() % 3;
        Dist p = testutil::random_dist(rng, n);
        LinExt f = testutil::random_linext(rng, n, 8);
        if (interior_finite(f, p) != interior_finite_via_eval(f, p)) ++disagreements;
        Dist v = delta(rng() % n, n);
        if (interior_finite(f, v) != interior_finite_via_eval(f, v)) ++disagreements;
        LinExt flat = LinExt::make(n, {}, testutil::random_vec(rng, n, 6, 8));
        if (interior_finite(flat, p) != interior_finite_via_eval(flat, p)) ++disagreements;
    }
    return disagreements == 0;
}

// 7. Log rule on the binary grid with denominator 16: entries match log p(y)
// (-inf exactly at zero probability, finite entries within 1e-30), and the
// table is strictly proper.
bool criterion7()
{
    CatalogEntry ent = neg_entropy(OutcomeSet::letters(2));
    std::vector<Dist> preds = to_dists(simplex_grid(2, 16));
    ScoreTable S = subtangent_rule(ent.spec, preds, ent.outcomes);
    Rational tol = tol30();
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (std::size_t y = 0; y < 2; ++y) {
            const Rational& py = preds[i][y];
            const ExtReal& v = S.value(i, y);
            if (py == 0) {
                if (v != ExtReal::minus_inf()) return false;
            } else {
                if (!v.is_finite()) return false;
                // Reference at 80 digits: 30 digits beyond the target bound.
                if (abs_rat(v.finite_value() - log_rational(py, 80)) > tol) return false;
            }
        }
    }
    return verify_properness(S).verdict == Properness::StrictlyProperOnGrid;
}

// 8. Non-proper witness: S(p, y) = p(y) rewards claiming certainty; the
// report carries the exact expected scores 3/5 vs 13/25.
bool criterion8()
{
    OutcomeSet ab = OutcomeSet::letters(2);
    std::vector<Dist> preds = {Dist(vec({"1", "0"})), Dist(vec({"3/5", "2/5"}))};
    std::vector<std::vector<ExtReal>> values;
    for (const Dist& p : preds) values.push_back({ExtReal(p[0]), ExtReal(p[1])});
    ScoreTable S(ab, preds, values);
    PropernessReport rep = verify_properness(S);
    return rep.verdict == Properness::Violation && rep.misreport && rep.truth &&
           preds[*rep.misreport].probs() == vec({"1", "0"}) &&
           preds[*rep.truth].probs() == vec({"3/5", "2/5"}) &&
           rep.misreport_score == ExtReal(R(3, 5)) &&
           rep.truthful_score == ExtReal(R(13, 25));
}

// 9. The four-interval gallery: full simplex, closed squeeze, open squeeze,
// half-open squeeze.  Only the closed squeeze fails, at p(1) = 1/4.
bool criterion9()
{
    CatalogEntry full = neg_entropy(OutcomeSet::letters(2));
    IllCertificate c1 = ill_certificate(full.spec, to_dists(simplex_grid(2, 16)));

    CatalogEntry closed = squeezed_neg_entropy(R(1, 4), R(3, 4), true, true);
    IllCertificate c2 = ill_certificate(
        closed.spec, to_dists(binary_interval_grid(R(1, 4), R(3, 4), true, true, 16)));

    CatalogEntry open = squeezed_neg_entropy(R(1, 4), R(3, 4), false, false);
    IllCertificate c3 = ill_certificate(
        open.spec, to_dists(binary_interval_grid(R(1, 4), R(3, 4), false, false, 16)));

    CatalogEntry half = squeezed_neg_entropy(R(0), R(1, 2), true, false);
    IllCertificate c4 = ill_certificate(
        half.spec, to_dists(binary_interval_grid(R(0), R(1, 2), true, false, 16)));

    bool fails_at_quarter = !c2.certified && c2.failing_point.has_value() &&
                            c2.failing_point->probs() == vec({"3/4", "1/4"});
    return c1.certified && fails_at_quarter && c3.certified && c4.certified;
}

// 10. Reconstruction round trip: from the log-rule table the rebuilt convex
// function matches sum q log q within 1e-30 on the grid, its selectors are
// verified subgradients, and the strictness probe distinguishes the log rule
// (strict) from support-size (shared support).
bool criterion10()
{
    CatalogEntry ent = neg_entropy(OutcomeSet::letters(2));
    std::vector<Dist> preds = to_dists(simplex_grid(2, 16));
    ScoreTable S = subtangent_rule(ent.spec, preds, ent.outcomes);
    ConvexSpec g = savage_reconstruct(S);
    Rational tol = tol30();

    std::vector<RatVec> grid;
    grid.reserve(preds.size());
    for (const Dist& p : preds) grid.push_back(p.probs());

    for (const RatVec& q : grid) {
        Rational want = 0;
        for (const Rational& c : q)
            if (c != 0) want += c * log_rational(c, 50);
        ExtReal got = g.eval(q);
        if (!got.is_finite() || abs_rat(got.finite_value() - want) > tol) return false;
    }
    for (const RatVec& q : grid) {
        auto sel = g.subgrad(q);
        if (!sel || !verify_subgradient(g, q, *sel, grid).passed) return false;
    }
    if (!strict_convexity_probe(g, grid).strict) return false;

    CatalogEntry ss = support_size(OutcomeSet::letters(3));
    std::vector<Dist> sp = to_dists(simplex_grid(3, 3));
    ScoreTable T = subtangent_rule(ss.spec, sp, ss.outcomes);
    ConvexSpec h = savage_reconstruct(T);
    std::vector<RatVec> sgrid;
    for (const Dist& p : sp) sgrid.push_back(p.probs());
    StrictConvexityProbe probe = strict_convexity_probe(h, sgrid);
    return !probe.strict && probe.shared_pair.has_value();
}

// 11. The hyperplane g(z) = z . 1 - 1 with selector z . 1: subtangent scores
// vanish identically while subgradient scores are identically 1.
bool criterion11()
{
    CatalogEntry hp = hyperplane_entry(OutcomeSet::letters(2));
    std::vector<Dist> preds = to_dists(simplex_grid(2, 16));
    ScoreTable tan = subtangent_rule(hp.spec, preds, hp.outcomes);
    ScoreTable grad = subgradient_rule(hp.spec, preds, hp.outcomes);
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (std::size_t y = 0; y < 2; ++y) {
            if (tan.value(i, y) != ExtReal(R(0))) return false;
            if (grad.value(i, y) != ExtReal(R(1))) return false;
        }
    }
    return true;
}

// 12. CLI determinism: each workbench command, run twice with the same flags
// and seed, produces byte-identical bytes (stdout or --out file).
bool criterion12()
{
    const std::string cli = LINEXT_CLI_PATH;
    const std::string data = LINEXT_DATA_DIR;
    struct Cmd {
        std::string args;
        std::string out;  // empty: compare stdout
    };
    const std::vector<Cmd> cmds = {
        {"eval " + data + "/intro-f.json 1,2,3", ""},
        {"axioms " + data + "/intro-f.json --trials 500 --seed 0", ""},
        {"score build neg-entropy --grid-denominator 16 --out acc_build.json",
         "acc_build.json"},
        {"score build neg-entropy --grid-denominator 16 --format csv --out acc_build.csv",
         "acc_build.csv"},
        {"score verify acc_build.json --expect strictly-proper-on-grid --out acc_verify.json",
         "acc_verify.json"},
        {"score reconstruct acc_build.json --expect strict-on-grid --out acc_rec.json",
         "acc_rec.json"},
        {"score ill-cert squeezed:1/4,3/4 --grid-denominator 16 --expect fails-at "
         "--out acc_cert.json",
         "acc_cert.json"},
        {"plotdata neg-entropy --points 101 --out acc_plot.csv", "acc_plot.csv"},
    };
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    for (const Cmd& c : cmds) {
        testutil::CommandResult r1 = testutil::run_command(cli + " " + c.args + " 2>&1");
        std::string bytes1 = c.out.empty() ? r1.output : slurp(c.out);
        testutil::CommandResult r2 = testutil::run_command(cli + " " + c.args + " 2>&1");
        std::string bytes2 = c.out.empty() ? r2.output : slurp(c.out);
        if (r1.exit_code != 0 || r2.exit_code != 0) return false;
        if (bytes1.empty() || bytes1 != bytes2) return false;
    }
    return true;
}

}  // namespace

int main()
{
    std::vector<LinExt> pool;
    report(1, "introductory function: exact evaluation and verified subgradient",
           criterion1());
    report(2, "axiom fuzzing: 10,000 seeded instances, zero failures", criterion2(pool));
    report(3, "decomposition: sign symmetry, finite closure, cone closure",
           criterion3(pool));
    report(4, "parsimony: 1,000 distinct pairs distinguished by a point", criterion4());
    report(5, "indicator construction on 500 random polytopes", criterion5());
    report(6, "interior-finiteness: structural and evaluative tests agree", criterion6());
    report(7, "log rule matches log p(y) and is strictly proper", criterion7());
    report(8, "non-proper witness with exact expected scores", criterion8());
    report(9, "interval gallery: certified / fails-at 1/4 / certified / certified",
           criterion9());
    report(10, "reconstruction round trip with strictness probes", criterion10());
    report(11, "hyperplane: all-zero subtangent and all-one subgradient tables",
           criterion11());
    report(12, "CLI determinism: byte-identical reruns", criterion12());

    if (failed_criteria == 0)
        std::printf("acceptance: all 12 criteria pass\n");
    else
        std::printf("acceptance: %d criteria failed\n", failed_criteria);
    return failed_criteria == 0 ? 0 : 1;
}
