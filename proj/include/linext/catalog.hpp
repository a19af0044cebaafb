#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "convex.hpp"
#include "error.hpp"
#include "extreal.hpp"
#include "geometry.hpp"
#include "grid.hpp"
#include "linear_extended.hpp"
#include "scoring.hpp"

namespace linext {

// ---------------------------------------------------------------------------
// Rounded transcendental evaluation.
//
// log_rational(r, digits) returns round(log r * 10^digits) / 10^digits as an
// exact rational.  The working float carries 120 decimal digits, which leaves
// at least 17 guard digits for any requested precision up to 100.  Results
// are memoized.
// ---------------------------------------------------------------------------

namespace detail {
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<120>>;

inline Int pow10_int(unsigned digits)
{
    Int p = 1;
    for (unsigned i = 0; i < digits; ++i) p *= 10;
    return p;
}
}  // namespace detail

inline Rational log_rational(const Rational& r, unsigned digits)
{
    if (r <= 0)
        fail(Errc::PreconditionViolated, "log requires a positive argument");
    if (digits == 0 || digits > 100)
        fail(Errc::PreconditionViolated, "precision must lie in [1, 100]");
    if (r == 1) return Rational(0);

    static std::map<std::pair<Rational, unsigned>, Rational> cache;
    static std::mutex cache_mutex;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find({r, digits});
        if (it != cache.end()) return it->second;
    }

    detail::BigFloat x = detail::BigFloat(numerator(r)) / detail::BigFloat(denominator(r));
    Int den = detail::pow10_int(digits);
    detail::BigFloat scaled = log(x) * detail::BigFloat(den);
    Int num = boost::multiprecision::round(scaled).convert_to<Int>();
    Rational out(num, den);

    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(std::make_pair(r, digits), out);
    return out;
}

// ---------------------------------------------------------------------------
// Catalog entries: a named convex function spec plus a default grid builder
// (keyed by a denominator bound) used by its validation tests.
// ---------------------------------------------------------------------------

struct CatalogEntry {
    std::string name;
    std::string notes;
    ConvexSpec spec;
    std::optional<OutcomeSet> outcomes;  // set for simplex-based entries
    std::function<std::vector<RatVec>(unsigned)> default_grid;
};

namespace detail {

inline bool is_simplex_point(const RatVec& x)
{
    Rational total = 0;
    for (const Rational& c : x) {
        if (c < 0) return false;
        total += c;
    }
    return total == 1;
}

inline RatVec unit_vec(std::size_t n, std::size_t y, const Rational& value)
{
    RatVec v(n, Rational(0));
    v[y] = value;
    return v;
}

// Vertical directions -delta_y for every zero coordinate, ascending.
inline std::vector<RatVec> off_support_verticals(const RatVec& x)
{
    std::vector<RatVec> dirs;
    for (std::size_t y = 0; y < x.size(); ++y)
        if (x[y] == 0) dirs.push_back(unit_vec(x.size(), y, Rational(-1)));
    return dirs;
}

inline std::vector<RatVec> box_grid(const std::vector<Rational>& values, std::size_t dim)
{
    std::vector<RatVec> out;
    std::vector<std::size_t> idx(dim, 0);
    for (;;) {
        RatVec p(dim);
        for (std::size_t k = 0; k < dim; ++k) p[k] = values[idx[k]];
        out.push_back(std::move(p));
        std::size_t k = 0;
        while (k < dim && ++idx[k] == values.size()) idx[k++] = 0;
        if (k == dim) break;
    }
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Negative entropy: g(p) = sum_y p(y) log p(y) on the simplex (+inf off it),
// with the 0 log 0 = 0 convention.  Its subtangent rule is the log rule.
// ---------------------------------------------------------------------------

inline CatalogEntry neg_entropy(const OutcomeSet& outcomes, unsigned precision = 50)
{
    std::size_t n = outcomes.size();
    ConvexSpec g;
    g.dim = n;
    g.eval = [n, precision](const RatVec& x) -> ExtReal {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return ExtReal::plus_inf();
        Rational total = 0;
        for (const Rational& c : x)
            if (c > 0) total += c * log_rational(c, precision);
        return ExtReal(total);
    };
    g.subgrad = [n, precision](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return std::nullopt;
        RatVec tail(n, Rational(0));
        for (std::size_t y = 0; y < n; ++y)
            if (x[y] > 0) tail[y] = Rational(1) + log_rational(x[y], precision);
        return LinExt::make(n, detail::off_support_verticals(x), std::move(tail));
    };
    g.domain_hint = DomainHint{DomainKind::Simplex, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "neg-entropy",
        "Negative entropy on the probability simplex; its subtangent rule is the log rule.",
        std::move(g),
        outcomes,
        [n](unsigned den) { return simplex_grid(n, den); },
    };
}

// ---------------------------------------------------------------------------
// Brier: g(q) = sum_y q(y)^2 - 1, finite on all of R^n, with the exact
// gradient 2q as selector.  Its subtangent rule is the quadratic score.
// ---------------------------------------------------------------------------

inline CatalogEntry brier(const OutcomeSet& outcomes)
{
    std::size_t n = outcomes.size();
    ConvexSpec g;
    g.dim = n;
    g.eval = [n](const RatVec& x) -> ExtReal {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        Rational total = -1;
        for (const Rational& c : x) total += c * c;
        return ExtReal(total);
    };
    g.subgrad = [n](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        return LinExt::make(n, {}, vscale(Rational(2), x));
    };
    g.domain_hint = DomainHint{DomainKind::Unrestricted, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "brier",
        "Quadratic score potential g(q) = sum q(y)^2 - 1 with its exact gradient selector.",
        std::move(g),
        outcomes,
        [n](unsigned den) { return simplex_grid(n, den); },
    };
}

// ---------------------------------------------------------------------------
// Set-function rules: g(p) = G(Supp(p)) for a decreasing set function G
// (larger support scores no higher), with the vertical selector.
// ---------------------------------------------------------------------------

inline CatalogEntry set_function_rule(const OutcomeSet& outcomes,
                                      std::function<Rational(const std::vector<bool>&)> G,
                                      std::string name = "set-function",
                                      std::string notes =
                                          "Support-based rule g(p) = G(Supp(p)) for a "
                                          "decreasing set function G.")
{
    std::size_t n = outcomes.size();
    if (n > 16)
        fail(Errc::PreconditionViolated, "set function check limited to 16 outcomes");
    // Exhaustive monotonicity check: adding an element never raises G.
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<bool> base(n);
        for (std::size_t y = 0; y < n; ++y) base[y] = (mask >> y) & 1;
        Rational gb = G(base);
        for (std::size_t y = 0; y < n; ++y) {
            if (base[y]) continue;
            std::vector<bool> bigger = base;
            bigger[y] = true;
            if (G(bigger) > gb)
                fail(Errc::NotMonotone, "set function must not increase under supersets");
        }
    }

    auto shared = std::make_shared<std::function<Rational(const std::vector<bool>&)>>(std::move(G));
    ConvexSpec g;
    g.dim = n;
    g.eval = [n, shared](const RatVec& x) -> ExtReal {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return ExtReal::plus_inf();
        std::vector<bool> mask(n);
        for (std::size_t y = 0; y < n; ++y) mask[y] = x[y] > 0;
        return ExtReal((*shared)(mask));
    };
    g.subgrad = [n](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return std::nullopt;
        return LinExt::make(n, detail::off_support_verticals(x), RatVec(n, Rational(0)));
    };
    g.domain_hint = DomainHint{DomainKind::Simplex, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        std::move(name),
        std::move(notes),
        std::move(g),
        outcomes,
        [n](unsigned den) { return simplex_grid(n, den); },
    };
}

inline CatalogEntry support_size(const OutcomeSet& outcomes)
{
    std::size_t n = outcomes.size();
    return set_function_rule(
        outcomes,
        [n](const std::vector<bool>& mask) {
            std::size_t sz = 0;
            for (bool b : mask) sz += b ? 1 : 0;
            return Rational(n - sz);
        },
        "support-size",
        "Awards |Y| - |Supp(p)| points on supported outcomes and -inf off support.");
}

// ---------------------------------------------------------------------------
// Squeezed negative entropy (binary outcomes): negative entropy affinely
// squeezed so its natural domain becomes the p(1)-interval [a, b], restricted
// per the closure flags.  Interior points get the chain-rule gradient;
// included endpoints get a vertical selector.
// ---------------------------------------------------------------------------

inline CatalogEntry squeezed_neg_entropy(const Rational& a, const Rational& b, bool lo_closed,
                                         bool hi_closed, unsigned precision = 50)
{
    if (!(Rational(0) <= a && a < b && b <= Rational(1)))
        fail(Errc::BadInterval, "squeeze interval must satisfy 0 <= a < b <= 1");

    auto in_domain = [a, b, lo_closed, hi_closed](const Rational& s) {
        bool above = lo_closed ? (s >= a) : (s > a);
        bool below = hi_closed ? (s <= b) : (s < b);
        return above && below;
    };
    Rational width = b - a;

    ConvexSpec g;
    g.dim = 2;
    g.eval = [a, width, in_domain, precision](const RatVec& x) -> ExtReal {
        if (x.size() != 2)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return ExtReal::plus_inf();
        if (!in_domain(x[1])) return ExtReal::plus_inf();
        Rational u = (x[1] - a) / width;
        Rational total = 0;
        if (u > 0) total += u * log_rational(u, precision);
        if (u < 1) total += (Rational(1) - u) * log_rational(Rational(1) - u, precision);
        return ExtReal(total);
    };
    g.subgrad = [a, width, in_domain, precision](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != 2)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return std::nullopt;
        if (!in_domain(x[1])) return std::nullopt;
        Rational u = (x[1] - a) / width;
        if (u == 0)
            return LinExt::make(2, {RatVec{Rational(0), Rational(-1)}}, RatVec(2, Rational(0)));
        if (u == 1)
            return LinExt::make(2, {RatVec{Rational(-1), Rational(0)}}, RatVec(2, Rational(0)));
        Rational slope =
            (log_rational(u, precision) - log_rational(Rational(1) - u, precision)) / width;
        return LinExt::make(2, {}, RatVec{Rational(0), slope});
    };
    g.domain_hint = DomainHint{DomainKind::SimplexInterval, a, b, lo_closed, hi_closed};

    std::string name = "squeezed:" + format_rational(a) + "," + format_rational(b) + "," +
                       std::string(lo_closed ? "closed" : "open") + "-" +
                       std::string(hi_closed ? "closed" : "open");
    return CatalogEntry{
        std::move(name),
        "Negative entropy squeezed onto a p(1)-interval of the binary simplex.",
        std::move(g),
        OutcomeSet::letters(2),
        [a, b, lo_closed, hi_closed](unsigned den) {
            return binary_interval_grid(a, b, lo_closed, hi_closed, den);
        },
    };
}

// ---------------------------------------------------------------------------
// Hyperplane: g(z) = z . 1 - 1, finite affine on all of R^n, with the
// constant selector f_p(z) = z . 1.  Its subtangent rule is identically 0 and
// its subgradient rule identically 1.
// ---------------------------------------------------------------------------

inline CatalogEntry hyperplane_entry(const OutcomeSet& outcomes)
{
    std::size_t n = outcomes.size();
    ConvexSpec g;
    g.dim = n;
    g.eval = [n](const RatVec& x) -> ExtReal {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        Rational total = -1;
        for (const Rational& c : x) total += c;
        return ExtReal(total);
    };
    g.subgrad = [n](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        return LinExt::make(n, {}, RatVec(n, Rational(1)));
    };
    g.domain_hint = DomainHint{DomainKind::Unrestricted, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "hyperplane",
        "Affine g(z) = z . 1 - 1 whose subtangent rule is constant 0 and whose "
        "subgradient rule is constant 1.",
        std::move(g),
        outcomes,
        [n](unsigned den) { return simplex_grid(n, den); },
    };
}

// ---------------------------------------------------------------------------
// Positively homogeneous relative-entropy potential on the nonnegative
// orthant: g(x) = sum_y x(y) log(x(y) / sum x), +inf off the orthant, 0 at
// the origin.  Its subgradient rule on the simplex is the log rule.
// ---------------------------------------------------------------------------

inline CatalogEntry hendrickson(const OutcomeSet& outcomes, unsigned precision = 50)
{
    std::size_t n = outcomes.size();
    ConvexSpec g;
    g.dim = n;
    g.eval = [n, precision](const RatVec& x) -> ExtReal {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        Rational total = 0;
        for (const Rational& c : x) {
            if (c < 0) return ExtReal::plus_inf();
            total += c;
        }
        if (total == 0) return ExtReal(Rational(0));
        Rational acc = 0;
        for (const Rational& c : x)
            if (c > 0) acc += c * log_rational(c / total, precision);
        return ExtReal(acc);
    };
    g.subgrad = [n, precision](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != n)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        Rational total = 0;
        for (const Rational& c : x) {
            if (c < 0) return std::nullopt;
            total += c;
        }
        RatVec tail(n, Rational(0));
        if (total > 0)
            for (std::size_t y = 0; y < n; ++y)
                if (x[y] > 0) tail[y] = log_rational(x[y] / total, precision);
        return LinExt::make(n, detail::off_support_verticals(x), std::move(tail));
    };
    g.domain_hint = DomainHint{DomainKind::Unrestricted, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "hendrickson",
        "Positively homogeneous potential g(x) = sum x(y) log(x(y)/sum x) on the "
        "nonnegative orthant; its subgradient rule is the log rule.",
        std::move(g),
        outcomes,
        [n](unsigned den) {
            std::vector<RatVec> pts = simplex_grid(n, den);
            std::size_t base = pts.size();
            pts.push_back(RatVec(n, Rational(0)));
            for (std::size_t i = 0; i < base; ++i)
                pts.push_back(vscale(Rational(2), pts[i]));
            return pts;
        },
    };
}

// ---------------------------------------------------------------------------
// Two-level demo (binary outcomes): strictly convex and bounded on the open
// simplex edge (g(p) = p(1)^2) with a constant higher level (2) at the two
// vertices; vertical selectors at the vertices keep every grid point
// interior-finite while the rule stays strictly proper.
// ---------------------------------------------------------------------------

inline CatalogEntry two_level_demo()
{
    ConvexSpec g;
    g.dim = 2;
    g.eval = [](const RatVec& x) -> ExtReal {
        if (x.size() != 2)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return ExtReal::plus_inf();
        if (x[0] == 0 || x[1] == 0) return ExtReal(Rational(2));
        return ExtReal(x[1] * x[1]);
    };
    g.subgrad = [](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != 2)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (!detail::is_simplex_point(x)) return std::nullopt;
        if (x[1] == 0)
            return LinExt::make(2, {RatVec{Rational(0), Rational(-1)}}, RatVec(2, Rational(0)));
        if (x[0] == 0)
            return LinExt::make(2, {RatVec{Rational(-1), Rational(0)}}, RatVec(2, Rational(0)));
        return LinExt::make(2, {}, RatVec{Rational(0), Rational(2) * x[1]});
    };
    g.domain_hint = DomainHint{DomainKind::Simplex, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "two-level",
        "Binary demo of the boundary-layer construction: strictly convex interior level "
        "g(p) = p(1)^2 under a constant vertex level 2, certified interior-finite.",
        std::move(g),
        OutcomeSet::letters(2),
        [](unsigned den) { return simplex_grid(2, den); },
    };
}

// ---------------------------------------------------------------------------
// Worked examples in ambient coordinates (not simplex-based).
// ---------------------------------------------------------------------------

// The depth-2 linear extended function used alongside the 3-d example g.
inline LinExt intro_f()
{
    return LinExt::make(3,
                        {RatVec{Rational(0), Rational(0), Rational(1)},
                         RatVec{Rational(0), Rational(1), Rational(0)}},
                        RatVec{Rational(1), Rational(0), Rational(0)});
}

inline CatalogEntry intro_entry()
{
    ConvexSpec g;
    g.dim = 3;
    g.eval = [](const RatVec& x) -> ExtReal {
        if (x.size() != 3)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (x[2] > 0) return ExtReal::plus_inf();
        if (x[2] < 0) return ExtReal(Rational(0));
        if (x[1] > 0) return ExtReal::plus_inf();
        if (x[1] < 0) return ExtReal(Rational(0));
        return ExtReal(x[0] * x[0] / 2);
    };
    g.subgrad = [](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != 3)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (x[2] < 0) return LinExt::zero(3);
        if (x[2] > 0) return std::nullopt;
        if (x[1] < 0)
            return LinExt::make(3, {RatVec{Rational(0), Rational(0), Rational(1)}},
                                RatVec(3, Rational(0)));
        if (x[1] > 0) return std::nullopt;
        return LinExt::make(3,
                            {RatVec{Rational(0), Rational(0), Rational(1)},
                             RatVec{Rational(0), Rational(1), Rational(0)}},
                            RatVec{x[0], Rational(0), Rational(0)});
    };
    g.domain_hint = DomainHint{DomainKind::Unrestricted, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "intro-3d",
        "Three-dimensional example: a parabolic ridge on the x-axis glued to flat "
        "half-spaces, with depth-2 extended subgradients on the ridge.",
        std::move(g),
        std::nullopt,
        [](unsigned den) { return detail::box_grid(symmetric_farey_fractions(den), 3); },
    };
}

inline CatalogEntry step_entry()
{
    ConvexSpec g;
    g.dim = 1;
    g.eval = [](const RatVec& x) -> ExtReal {
        if (x.size() != 1)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (x[0] < 1) return ExtReal(Rational(0));
        if (x[0] == 1) return ExtReal(Rational(1));
        return ExtReal::plus_inf();
    };
    g.subgrad = [](const RatVec& x) -> std::optional<LinExt> {
        if (x.size() != 1)
            fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
        if (x[0] < 1) return LinExt::zero(1);
        if (x[0] == 1) return LinExt::make(1, {RatVec{Rational(1)}}, RatVec{Rational(0)});
        return std::nullopt;
    };
    g.domain_hint = DomainHint{DomainKind::Unrestricted, Rational(0), Rational(1), true, true};
    return CatalogEntry{
        "step-1d",
        "One-dimensional example: 0 left of 1, jumps to 1 at the point 1, +inf beyond; "
        "the extended subgradient at 1 is inf * z.",
        std::move(g),
        std::nullopt,
        [](unsigned den) {
            std::vector<RatVec> pts;
            for (const Rational& r : symmetric_farey_fractions(den))
                pts.push_back(RatVec{Rational(2) * r});
            pts.push_back(RatVec{Rational(1)});
            return pts;
        },
    };
}

// The affine extended function supporting the 1-d step example at 1.
inline AffExt step_h()
{
    return AffExt(LinExt::make(1, {RatVec{Rational(1)}}, RatVec{Rational(0)}),
                  RatVec{Rational(1)}, Rational(1));
}

inline std::vector<CatalogEntry> paper_examples(unsigned precision = 50)
{
    std::vector<CatalogEntry> out;
    out.push_back(intro_entry());
    out.push_back(step_entry());
    out.push_back(hyperplane_entry(OutcomeSet::letters(2)));
    out.push_back(hendrickson(OutcomeSet::letters(2), precision));
    return out;
}

// ---------------------------------------------------------------------------
// Name-based lookup used by the CLI.  Simplex-based entries only.
// ---------------------------------------------------------------------------

inline CatalogEntry catalog_by_name(const std::string& name, std::size_t n_outcomes,
                                    unsigned precision = 50)
{
    if (n_outcomes == 0)
        fail(Errc::PreconditionViolated, "outcome count must be positive");
    OutcomeSet outcomes = OutcomeSet::letters(n_outcomes);
    if (name == "neg-entropy") return neg_entropy(outcomes, precision);
    if (name == "brier") return brier(outcomes);
    if (name == "support-size") return support_size(outcomes);
    if (name == "hyperplane") return hyperplane_entry(outcomes);
    if (name == "hendrickson") return hendrickson(outcomes, precision);
    if (name == "two-level") {
        if (n_outcomes != 2)
            fail(Errc::NonBinary, "two-level is defined for two outcomes");
        return two_level_demo();
    }
    if (name.rfind("squeezed:", 0) == 0) {
        if (n_outcomes != 2)
            fail(Errc::NonBinary, "squeezed entries are defined for two outcomes");
        std::string args = name.substr(9);
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = args.find(',', start);
            if (comma == std::string::npos) {
                parts.push_back(args.substr(start));
                break;
            }
            parts.push_back(args.substr(start, comma - start));
            start = comma + 1;
        }
        if (parts.size() < 2 || parts.size() > 3)
            fail(Errc::ParseError, "expected squeezed:a,b or squeezed:a,b,closure");
        Rational a = parse_rational(parts[0]);
        Rational b = parse_rational(parts[1]);
        bool lo_closed = true, hi_closed = true;
        if (parts.size() == 3) {
            const std::string& fl = parts[2];
            if (fl == "closed-closed") { lo_closed = true;  hi_closed = true; }
            else if (fl == "closed-open") { lo_closed = true;  hi_closed = false; }
            else if (fl == "open-closed") { lo_closed = false; hi_closed = true; }
            else if (fl == "open-open") { lo_closed = false; hi_closed = false; }
            else fail(Errc::ParseError, "unknown closure flags: " + fl);
        }
        return squeezed_neg_entropy(a, b, lo_closed, hi_closed, precision);
    }
    fail(Errc::UnknownName, "unknown catalog entry: " + name);
}

}  // namespace linext
