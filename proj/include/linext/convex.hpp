#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "error.hpp"
#include "extreal.hpp"
#include "geometry.hpp"
#include "linear_extended.hpp"

namespace linext {

// ---------------------------------------------------------------------------
// Affine extended functions: h(x) = f(x - anchor) + offset with f a LinExt
// and offset finite.  The sum is always legal because offset is finite.
// ---------------------------------------------------------------------------

struct AffExt {
    LinExt f;
    RatVec anchor;
    Rational offset;

    AffExt(LinExt f_, RatVec anchor_, Rational offset_)
        : f(std::move(f_)), anchor(std::move(anchor_)), offset(std::move(offset_))
    {
        if (anchor.size() != f.dim())
            fail(Errc::DimensionMismatch, "AffExt anchor dimension does not match f");
    }

    std::size_t dim() const { return f.dim(); }
};

inline ExtReal affext_eval(const AffExt& h, const RatVec& x)
{
    ExtReal base = h.f.eval(vsub(x, h.anchor));
    auto s = add(base, ExtReal(h.offset));
    // offset is finite, so the sum is always legal.
    return *s;
}

// Re-anchors h at x1 without changing it as a function.  Requires h(x1) finite.
inline AffExt rebase(const AffExt& h, const RatVec& x1)
{
    ExtReal v = affext_eval(h, x1);
    if (!v.is_finite())
        fail(Errc::NotFiniteAtPoint, "rebase requires a finite value at the new anchor");
    return AffExt(h.f, x1, v.finite_value());
}

inline bool affext_equals(const AffExt& a, const AffExt& b)
{
    if (a.dim() != b.dim())
        fail(Errc::DimensionMismatch, "affext_equals requires equal ambient dimension");
    if (!(a.f == b.f)) return false;
    // Same linear part; equal iff values agree at one finite point.  Compare by
    // normalizing b to a's anchor when finite there, else compare anchors' values.
    ExtReal va = affext_eval(a, a.anchor);
    ExtReal vb = affext_eval(b, a.anchor);
    return va == vb;
}

// ---------------------------------------------------------------------------
// Convex function specifications.
//
// eval must be total on rational points of the ambient space, returning +inf
// outside the effective domain and never -inf.  subgrad returns a subgradient
// selector value at points where one is defined (typically the effective
// domain), std::nullopt elsewhere.  alt_subgrad optionally supplies a second
// selector consulted by certification routines when the primary one fails.
// ---------------------------------------------------------------------------

enum class DomainKind { Unrestricted, Simplex, SimplexInterval };

struct DomainHint {
    DomainKind kind = DomainKind::Unrestricted;
    // For SimplexInterval (binary outcomes): the interval of p(1) values.
    Rational lo = 0;
    Rational hi = 1;
    bool lo_closed = true;
    bool hi_closed = true;
};

struct ConvexSpec {
    std::size_t dim = 0;
    std::function<ExtReal(const RatVec&)> eval;
    std::function<std::optional<LinExt>(const RatVec&)> subgrad;
    std::function<std::optional<LinExt>(const RatVec&)> alt_subgrad; // may be empty
    std::optional<DomainHint> domain_hint;
};

inline ExtReal convex_eval(const ConvexSpec& g, const RatVec& x)
{
    if (x.size() != g.dim)
        fail(Errc::DimensionMismatch, "point dimension does not match convex spec");
    return g.eval(x);
}

// ---------------------------------------------------------------------------
// Subgradient verification.
//
// f is a subgradient of g at x0 when g(x) >= g(x0) + f(x - x0) for all x.
// The check runs over the supplied test points; tolerance applies only when
// both sides are finite (an exact check uses tol = 0).  Requires g(x0) finite.
// ---------------------------------------------------------------------------

struct SubgradientCheck {
    bool passed = true;
    std::optional<RatVec> counterexample;
    ExtReal lhs;  // g(x) at the counterexample
    ExtReal rhs;  // g(x0) + f(x - x0) at the counterexample
};

inline SubgradientCheck verify_subgradient(const ConvexSpec& g, const RatVec& x0,
                                           const LinExt& f,
                                           const std::vector<RatVec>& testpoints,
                                           const Rational& tol = Rational(0))
{
    if (x0.size() != g.dim)
        fail(Errc::DimensionMismatch, "anchor dimension does not match convex spec");
    if (f.dim() != g.dim)
        fail(Errc::DimensionMismatch, "candidate dimension does not match convex spec");
    ExtReal g0 = g.eval(x0);
    if (g0.is_plus_inf())
        fail(Errc::AnchorOutsideDomain, "g is +inf at the anchor point");
    if (!g0.is_finite())
        fail(Errc::PreconditionViolated, "g must not take -inf");

    SubgradientCheck out;
    for (const RatVec& x : testpoints) {
        if (x.size() != g.dim)
            fail(Errc::DimensionMismatch, "test point dimension does not match convex spec");
        ExtReal lhs = g.eval(x);
        ExtReal rhs = *add(g0, f.eval(vsub(x, x0)));  // g0 finite, so always legal
        bool ok;
        if (rhs.is_minus_inf()) {
            ok = true;
        } else if (rhs.is_plus_inf()) {
            ok = lhs.is_plus_inf();
        } else if (lhs.is_plus_inf()) {
            ok = true;
        } else if (lhs.is_minus_inf()) {
            ok = false;
        } else {
            ok = lhs.finite_value() - rhs.finite_value() >= -tol;
        }
        if (!ok) {
            out.passed = false;
            out.counterexample = x;
            out.lhs = lhs;
            out.rhs = rhs;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Support test: does the affine extended function h support g at x0?
// Requires h(x0) == g(x0) (within tol when both finite) and h <= g on the
// test points (again within tol when both sides are finite).
// ---------------------------------------------------------------------------

struct SupportCheck {
    bool passed = true;
    bool anchored = true;               // h(x0) == g(x0)
    std::optional<RatVec> counterexample;
    ExtReal h_value;
    ExtReal g_value;
};

inline bool leq_with_tol(const ExtReal& a, const ExtReal& b, const Rational& tol)
{
    if (a.is_minus_inf()) return true;
    if (b.is_plus_inf()) return true;
    if (a.is_plus_inf()) return false;   // b not +inf here
    if (b.is_minus_inf()) return false;  // a not -inf here
    return a.finite_value() - b.finite_value() <= tol;
}

inline SupportCheck supports(const AffExt& h, const ConvexSpec& g, const RatVec& x0,
                             const std::vector<RatVec>& testpoints,
                             const Rational& tol = Rational(0))
{
    if (h.dim() != g.dim)
        fail(Errc::DimensionMismatch, "support candidate dimension does not match convex spec");
    if (x0.size() != g.dim)
        fail(Errc::DimensionMismatch, "support anchor dimension does not match convex spec");
    SupportCheck out;
    ExtReal hv = affext_eval(h, x0);
    ExtReal gv = g.eval(x0);
    bool equal_at_anchor;
    if (hv.is_finite() && gv.is_finite())
        equal_at_anchor = abs_of(hv.finite_value() - gv.finite_value()) <= tol;
    else
        equal_at_anchor = (hv == gv);
    if (!equal_at_anchor) {
        out.passed = false;
        out.anchored = false;
        out.counterexample = x0;
        out.h_value = hv;
        out.g_value = gv;
        return out;
    }
    for (const RatVec& x : testpoints) {
        ExtReal hx = affext_eval(h, x);
        ExtReal gx = g.eval(x);
        if (!leq_with_tol(hx, gx, tol)) {
            out.passed = false;
            out.counterexample = x;
            out.h_value = hx;
            out.g_value = gx;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pointwise supremum of a finite family of affine extended functions.
// The empty family evaluates to -inf everywhere.
// ---------------------------------------------------------------------------

inline ExtReal sup_family_eval(const std::vector<AffExt>& family, const RatVec& x)
{
    std::vector<ExtReal> vals;
    vals.reserve(family.size());
    for (const AffExt& h : family) {
        if (h.dim() != x.size())
            fail(Errc::DimensionMismatch, "family member dimension does not match point");
        vals.push_back(affext_eval(h, x));
    }
    return sup(vals);
}

// ---------------------------------------------------------------------------
// Strict convexity probe over a grid.
//
// For each ordered pair (a, b) with a != b, tests whether the selector value
// at a also supports g exactly at b, i.e. g(b) == g(a) + f_a(b - a).  Any such
// shared support witnesses failure of strict convexity on the grid.
// ---------------------------------------------------------------------------

struct StrictConvexityProbe {
    bool strict = true;
    std::optional<std::pair<RatVec, RatVec>> shared_pair;  // (anchor, other)
    std::optional<LinExt> shared_subgradient;
};

inline StrictConvexityProbe strict_convexity_probe(const ConvexSpec& g,
                                                   const std::vector<RatVec>& grid)
{
    StrictConvexityProbe out;
    std::vector<ExtReal> values;
    values.reserve(grid.size());
    for (const RatVec& x : grid) {
        if (x.size() != g.dim)
            fail(Errc::DimensionMismatch, "grid point dimension does not match convex spec");
        values.push_back(g.eval(x));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!values[i].is_finite()) continue;  // anchors must lie in the domain
        std::optional<LinExt> fa = g.subgrad(grid[i]);
        if (!fa)
            fail(Errc::SelectorUnavailable, "no subgradient selector value at a grid point");
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (i == j) continue;
            if (grid[i] == grid[j]) continue;
            ExtReal rhs = *add(values[i], fa->eval(vsub(grid[j], grid[i])));
            if (values[j] == rhs) {
                out.strict = false;
                out.shared_pair = std::make_pair(grid[i], grid[j]);
                out.shared_subgradient = *fa;
                return out;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Indicator family: affine extended functions that vanish at x, are -inf on
// the polytope, and walk an offset ladder.  Useful for building suprema that
// pin a value at x while ignoring the polytope.
// ---------------------------------------------------------------------------

inline std::vector<AffExt> indicator_family_at(const Polytope& domain, const RatVec& x,
                                               const std::vector<Rational>& ladder)
{
    if (x.size() != domain.dim)
        fail(Errc::DimensionMismatch, "base point dimension does not match polytope");
    LinExt f = indicator_neg_on(shift(domain, vscale(Rational(-1), x)));
    std::vector<AffExt> out;
    out.reserve(ladder.size());
    for (const Rational& beta : ladder)
        out.emplace_back(f, x, beta);
    return out;
}

}  // namespace linext
