#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convex.hpp"
#include "error.hpp"
#include "extreal.hpp"
#include "geometry.hpp"
#include "linear_extended.hpp"

namespace linext {

// ---------------------------------------------------------------------------
// Outcome sets: ordered, distinct labels.  The label order fixes the
// coordinate order of every probability vector and the canonical direction
// order used by extended expected scores.
// ---------------------------------------------------------------------------

class OutcomeSet {
public:
    explicit OutcomeSet(std::vector<std::string> labels) : labels_(std::move(labels))
    {
        if (labels_.empty())
            fail(Errc::PreconditionViolated, "outcome set must be nonempty");
        for (std::size_t i = 0; i < labels_.size(); ++i)
            for (std::size_t j = i + 1; j < labels_.size(); ++j)
                if (labels_[i] == labels_[j])
                    fail(Errc::DuplicateLabel, "duplicate outcome label: " + labels_[i]);
    }

    // "a", "b", ..., "z", "aa", "ab", ... for larger sets.
    static OutcomeSet letters(std::size_t n)
    {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::string s;
            std::size_t k = i + 1;
            while (k > 0) {
                --k;
                s.insert(s.begin(), static_cast<char>('a' + (k % 26)));
                k /= 26;
            }
            labels.push_back(std::move(s));
        }
        return OutcomeSet(std::move(labels));
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::size_t index(const std::string& label) const
    {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == label) return i;
        fail(Errc::UnknownLabel, "unknown outcome label: " + label);
    }

    bool operator==(const OutcomeSet&) const = default;

private:
    std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Probability vectors with exact rational coordinates.
// ---------------------------------------------------------------------------

class Dist {
public:
    explicit Dist(RatVec probs) : probs_(std::move(probs))
    {
        if (probs_.empty())
            fail(Errc::BadDistribution, "distribution must have at least one coordinate");
        Rational total = 0;
        for (const Rational& c : probs_) {
            if (c < 0)
                fail(Errc::BadDistribution, "distribution coordinate is negative");
            total += c;
        }
        if (total != 1)
            fail(Errc::BadDistribution, "distribution coordinates must sum to 1");
    }

    const RatVec& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    const Rational& operator[](std::size_t i) const { return probs_.at(i); }

    std::vector<std::size_t> support() const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < probs_.size(); ++i)
            if (probs_[i] > 0) out.push_back(i);
        return out;
    }

    bool operator==(const Dist&) const = default;

private:
    RatVec probs_;
};

inline Dist delta(std::size_t y, std::size_t n)
{
    if (y >= n)
        fail(Errc::PreconditionViolated, "delta index out of range");
    RatVec v(n, Rational(0));
    v[y] = 1;
    return Dist(std::move(v));
}

inline Dist delta(const std::string& y, const OutcomeSet& outcomes)
{
    return delta(outcomes.index(y), outcomes.size());
}

// ---------------------------------------------------------------------------
// Score tables: a finite prediction set with one extended-real score per
// (prediction, outcome) pair.  Regularity (no +inf entry) is recomputed from
// the entries, never trusted.
// ---------------------------------------------------------------------------

class ScoreTable {
public:
    ScoreTable(OutcomeSet outcomes, std::vector<Dist> preds,
               std::vector<std::vector<ExtReal>> values)
        : outcomes_(std::move(outcomes)), preds_(std::move(preds)), values_(std::move(values))
    {
        if (preds_.empty())
            fail(Errc::PreconditionViolated, "score table must have at least one prediction");
        if (values_.size() != preds_.size())
            fail(Errc::DimensionMismatch, "score table needs one row per prediction");
        for (const Dist& p : preds_)
            if (p.size() != outcomes_.size())
                fail(Errc::DimensionMismatch, "prediction length does not match outcome count");
        regular_ = true;
        for (const auto& row : values_) {
            if (row.size() != outcomes_.size())
                fail(Errc::DimensionMismatch, "score row length does not match outcome count");
            for (const ExtReal& v : row)
                if (v.is_plus_inf()) regular_ = false;
        }
    }

    const OutcomeSet& outcomes() const { return outcomes_; }
    const std::vector<Dist>& preds() const { return preds_; }
    const std::vector<std::vector<ExtReal>>& values() const { return values_; }
    const ExtReal& value(std::size_t pred, std::size_t outcome) const
    {
        return values_.at(pred).at(outcome);
    }
    bool regular() const { return regular_; }

    std::size_t find_pred(const Dist& p) const
    {
        for (std::size_t i = 0; i < preds_.size(); ++i)
            if (preds_[i] == p) return i;
        fail(Errc::UnknownPred, "prediction is not a row of the score table");
    }

private:
    OutcomeSet outcomes_;
    std::vector<Dist> preds_;
    std::vector<std::vector<ExtReal>> values_;
    bool regular_ = false;
};

namespace detail {

inline LinExt selector_at(const ConvexSpec& g, const Dist& p)
{
    std::optional<LinExt> f = g.subgrad(p.probs());
    if (!f)
        fail(Errc::SelectorUnavailable, "no subgradient selector value at a prediction");
    return *f;
}

inline ExtReal domain_value_at(const ConvexSpec& g, const Dist& p)
{
    ExtReal gp = convex_eval(g, p.probs());
    if (!gp.is_finite())
        fail(Errc::PredOutsideDomain, "g is not finite at a prediction");
    return gp;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scoring rules built from a convex function with a subgradient selector.
// ---------------------------------------------------------------------------

// S(p, y) = g(p) + f_p(delta_y - p).  Sums are always legal because g(p) is
// finite at every prediction.  The result may still be non-regular.
inline ScoreTable subtangent_rule(const ConvexSpec& g, const std::vector<Dist>& preds,
                                  std::optional<OutcomeSet> outcomes = std::nullopt)
{
    OutcomeSet os = outcomes ? *outcomes : OutcomeSet::letters(g.dim);
    if (os.size() != g.dim)
        fail(Errc::DimensionMismatch, "outcome count does not match convex spec dimension");
    std::vector<std::vector<ExtReal>> values;
    values.reserve(preds.size());
    for (const Dist& p : preds) {
        ExtReal gp = detail::domain_value_at(g, p);
        LinExt f = detail::selector_at(g, p);
        std::vector<ExtReal> row;
        row.reserve(os.size());
        for (std::size_t y = 0; y < os.size(); ++y) {
            RatVec z = vsub(delta(y, os.size()).probs(), p.probs());
            row.push_back(*add(gp, f.eval(z)));
        }
        values.push_back(std::move(row));
    }
    return ScoreTable(std::move(os), preds, std::move(values));
}

// S(p, y) = f_p(delta_y).
inline ScoreTable subgradient_rule(const ConvexSpec& g, const std::vector<Dist>& preds,
                                   std::optional<OutcomeSet> outcomes = std::nullopt)
{
    OutcomeSet os = outcomes ? *outcomes : OutcomeSet::letters(g.dim);
    if (os.size() != g.dim)
        fail(Errc::DimensionMismatch, "outcome count does not match convex spec dimension");
    std::vector<std::vector<ExtReal>> values;
    values.reserve(preds.size());
    for (const Dist& p : preds) {
        detail::domain_value_at(g, p);
        LinExt f = detail::selector_at(g, p);
        std::vector<ExtReal> row;
        row.reserve(os.size());
        for (std::size_t y = 0; y < os.size(); ++y)
            row.push_back(f.eval(delta(y, os.size()).probs()));
        values.push_back(std::move(row));
    }
    return ScoreTable(std::move(os), preds, std::move(values));
}

// ---------------------------------------------------------------------------
// Expected scores.
// ---------------------------------------------------------------------------

// S(p; q) = sum_y scale(q(y), S(p, y)).  Regularity keeps every partial sum
// legal: terms are finite or -inf, and zero-probability outcomes contribute 0
// even against a -inf score.
inline ExtReal expected_score(const ScoreTable& S, const Dist& p, const Dist& q)
{
    if (!S.regular())
        fail(Errc::NotRegular, "expected_score requires a regular table");
    if (q.size() != S.outcomes().size())
        fail(Errc::DimensionMismatch, "q length does not match outcome count");
    std::size_t i = S.find_pred(p);
    ExtReal acc(0);
    for (std::size_t y = 0; y < q.size(); ++y)
        acc = *add(acc, scale(q[y], S.value(i, y)));
    return acc;
}

// The extended expected score function of row p: a linear extended function
// h with h(delta_y) = S(p, y) for every outcome y.  Directions are -delta_y
// for the -inf outcomes in ascending label order; the tail carries the finite
// scores.
inline LinExt extended_expected_score(const ScoreTable& S, const Dist& p)
{
    if (!S.regular())
        fail(Errc::NotRegular, "extended_expected_score requires a regular table");
    std::size_t i = S.find_pred(p);
    std::size_t n = S.outcomes().size();
    std::vector<RatVec> dirs;
    RatVec tail(n, Rational(0));
    for (std::size_t y = 0; y < n; ++y) {
        const ExtReal& v = S.value(i, y);
        if (v.is_minus_inf()) {
            RatVec d(n, Rational(0));
            d[y] = -1;
            dirs.push_back(std::move(d));
        } else {
            tail[y] = v.finite_value();
        }
    }
    return LinExt::make(n, std::move(dirs), std::move(tail));
}

// ---------------------------------------------------------------------------
// Properness verification: brute force over ordered pairs of distinct
// predictions, comparing misreport against truth under the extended order.
// ---------------------------------------------------------------------------

enum class Properness { StrictlyProperOnGrid, ProperOnGrid, Violation };

inline const char* properness_name(Properness v)
{
    switch (v) {
        case Properness::StrictlyProperOnGrid: return "StrictlyProperOnGrid";
        case Properness::ProperOnGrid: return "ProperOnGrid";
        case Properness::Violation: return "Violation";
    }
    return "?";
}

struct PropernessReport {
    Properness verdict = Properness::StrictlyProperOnGrid;
    // First violating ordered pair (misreport index, truth index), if any.
    std::optional<std::size_t> misreport;
    std::optional<std::size_t> truth;
    ExtReal misreport_score;
    ExtReal truthful_score;
    // First tie among distinct predictions, if any (costs strictness only).
    std::optional<std::pair<std::size_t, std::size_t>> tie;
};

inline PropernessReport verify_properness(const ScoreTable& S)
{
    if (!S.regular())
        fail(Errc::NotRegular, "verify_properness requires a regular table");
    const std::vector<Dist>& preds = S.preds();
    std::vector<ExtReal> truthful;
    truthful.reserve(preds.size());
    for (const Dist& q : preds)
        truthful.push_back(expected_score(S, q, q));

    PropernessReport out;
    for (std::size_t i = 0; i < preds.size(); ++i) {
        for (std::size_t j = 0; j < preds.size(); ++j) {
            if (i == j || preds[i] == preds[j]) continue;
            ExtReal m = expected_score(S, preds[i], preds[j]);
            if (m > truthful[j]) {
                out.verdict = Properness::Violation;
                out.misreport = i;
                out.truth = j;
                out.misreport_score = m;
                out.truthful_score = truthful[j];
                return out;
            }
            if (m == truthful[j] && !out.tie)
                out.tie = std::make_pair(i, j);
        }
    }
    out.verdict = out.tie ? Properness::ProperOnGrid : Properness::StrictlyProperOnGrid;
    return out;
}

// ---------------------------------------------------------------------------
// Interior-finiteness of a linear extended function at a distribution.
// ---------------------------------------------------------------------------

// Structural test on the canonical parameterization: (1) every direction is
// constant across the support coordinates of p, and (2) for every off-support
// outcome the directions agree with those constants along a prefix and then
// strictly drop, or agree through the last direction.
inline bool interior_finite(const LinExt& f, const Dist& p)
{
    if (f.dim() != p.size())
        fail(Errc::DimensionMismatch, "function dimension does not match distribution");
    std::vector<std::size_t> supp = p.support();
    const std::vector<RatVec>& dirs = f.dirs();

    std::vector<Rational> common(dirs.size());
    for (std::size_t j = 0; j < dirs.size(); ++j) {
        const Rational& c = dirs[j][supp[0]];
        for (std::size_t k = 1; k < supp.size(); ++k)
            if (dirs[j][supp[k]] != c) return false;
        common[j] = c;
    }

    for (std::size_t y = 0; y < p.size(); ++y) {
        if (p[y] > 0) continue;
        for (std::size_t j = 0; j < dirs.size(); ++j) {
            if (dirs[j][y] == common[j]) continue;
            if (dirs[j][y] > common[j]) return false;
            break;  // strict drop: later directions are unconstrained
        }
    }
    return true;
}

// Equivalent test by evaluation: f(delta_y - p) must avoid +inf for every y.
inline bool interior_finite_via_eval(const LinExt& f, const Dist& p)
{
    if (f.dim() != p.size())
        fail(Errc::DimensionMismatch, "function dimension does not match distribution");
    std::size_t n = p.size();
    for (std::size_t y = 0; y < n; ++y) {
        RatVec z = vsub(delta(y, n).probs(), p.probs());
        if (f.eval(z).is_plus_inf()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Interior-locally-Lipschitz certificate over a grid: each grid point needs a
// selector subgradient that is interior-finite there.  A registered alternate
// selector is consulted when the primary one fails.
// ---------------------------------------------------------------------------

struct IllCertificate {
    bool certified = true;
    std::vector<LinExt> witnesses;  // one per grid point when certified
    std::optional<Dist> failing_point;
    std::optional<LinExt> failing_subgradient;  // the primary selector's value
};

inline IllCertificate ill_certificate(const ConvexSpec& g, const std::vector<Dist>& gridP)
{
    IllCertificate out;
    for (const Dist& p : gridP) {
        detail::domain_value_at(g, p);
        LinExt f = detail::selector_at(g, p);
        if (interior_finite(f, p)) {
            out.witnesses.push_back(f);
            continue;
        }
        if (g.alt_subgrad) {
            std::optional<LinExt> f2 = g.alt_subgrad(p.probs());
            if (f2 && interior_finite(*f2, p)) {
                out.witnesses.push_back(*f2);
                continue;
            }
        }
        out.certified = false;
        out.failing_point = p;
        out.failing_subgradient = f;
        out.witnesses.clear();
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Savage-style reconstruction: from a regular proper table, rebuild a convex
// function as the pointwise supremum of the extended expected score functions
// and select S_q as the subgradient at each prediction q.
// ---------------------------------------------------------------------------

inline ConvexSpec savage_reconstruct(const ScoreTable& S)
{
    if (!S.regular())
        fail(Errc::NotRegular, "savage_reconstruct requires a regular table");
    PropernessReport rep = verify_properness(S);
    if (rep.verdict == Properness::Violation)
        fail(Errc::NotProper, "savage_reconstruct requires a proper table");

    auto rows = std::make_shared<std::vector<std::pair<RatVec, LinExt>>>();
    rows->reserve(S.preds().size());
    for (const Dist& p : S.preds())
        rows->emplace_back(p.probs(), extended_expected_score(S, p));

    ConvexSpec g;
    g.dim = S.outcomes().size();
    g.eval = [rows, dim = g.dim](const RatVec& x) {
        if (x.size() != dim)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        std::vector<ExtReal> vals;
        vals.reserve(rows->size());
        for (const auto& [p, f] : *rows)
            vals.push_back(f.eval(x));
        return sup(vals);
    };
    g.subgrad = [rows](const RatVec& x) -> std::optional<LinExt> {
        for (const auto& [p, f] : *rows)
            if (p == x) return f;
        return std::nullopt;
    };
    g.domain_hint = DomainHint{DomainKind::Simplex, Rational(0), Rational(1), true, true};
    return g;
}

}  // namespace linext
