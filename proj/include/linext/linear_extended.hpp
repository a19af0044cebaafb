#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "linext/error.hpp"
#include "linext/extreal.hpp"
#include "linext/geometry.hpp"

namespace linext {

enum class Classification { Minus = -1, Finite = 0, Plus = 1 };

inline const char* classification_name(Classification c) {
    switch (c) {
        case Classification::Minus: return "minus";
        case Classification::Finite: return "finite";
        case Classification::Plus: return "plus";
    }
    return "?";
}

/// A linear function into the extended reals, in canonical parameters: an
/// ordered stack of pairwise-orthogonal canonical directions v_1..v_t and a
/// finite tail w orthogonal to all of them. Evaluation walks the stack:
/// the first direction with dot(v_j, x) != 0 decides the value (+inf on the
/// positive side, -inf on the negative side); if every direction is
/// orthogonal to x the value is the finite dot(w, x).
///
/// Distinct canonical parameters always give distinct functions, so equality
/// of parameters is equality of functions.
class LinExt {
public:
    /// Strict constructor: directions must already be pairwise orthogonal
    /// (scaling is canonicalized here), the tail orthogonal to all of them.
    static LinExt make(std::size_t dim, std::vector<RatVec> dirs, RatVec tail) {
        if (dirs.size() > dim)
            fail(Errc::TooDeep, "depth " + std::to_string(dirs.size()) + " in dimension " + std::to_string(dim));
        for (auto& v : dirs) {
            if (v.size() != dim) fail(Errc::DimensionMismatch, "direction dimension");
            v = canonicalize_direction(v);
        }
        for (std::size_t i = 0; i < dirs.size(); ++i)
            for (std::size_t j = i + 1; j < dirs.size(); ++j)
                if (dot(dirs[i], dirs[j]) != 0)
                    fail(Errc::NotOrthogonal, "directions " + std::to_string(i) + " and " + std::to_string(j));
        if (tail.size() != dim) fail(Errc::DimensionMismatch, "tail dimension");
        for (std::size_t i = 0; i < dirs.size(); ++i)
            if (dot(tail, dirs[i]) != 0) fail(Errc::TailNotOrthogonal, "tail vs direction " + std::to_string(i));
        return LinExt(dim, std::move(dirs), std::move(tail));
    }

    /// Lenient constructor: accepts any independent directions and any tail,
    /// and canonicalizes without changing the function. Replacing v_j by its
    /// component orthogonal to v_1..v_{j-1} preserves every dot product taken
    /// on the subspace where evaluation reaches step j, and likewise for the
    /// tail, so Gram-Schmidt plus tail projection is evaluation-invariant.
    static LinExt canonicalized(std::size_t dim, const std::vector<RatVec>& dirs, const RatVec& tail) {
        for (const auto& v : dirs)
            if (v.size() != dim) fail(Errc::DimensionMismatch, "direction dimension");
        if (dirs.size() > dim) fail(Errc::TooDeep, "depth exceeds dimension");
        if (tail.size() != dim) fail(Errc::DimensionMismatch, "tail dimension");
        std::vector<RatVec> ortho = orthogonalize(dirs);
        RatVec w = project_orthogonal(tail, ortho);
        return LinExt(dim, std::move(ortho), std::move(w));
    }

    static LinExt zero(std::size_t dim) { return LinExt(dim, {}, zero_vec(dim)); }

    std::size_t dim() const { return dim_; }
    std::size_t depth() const { return dirs_.size(); }
    const std::vector<RatVec>& dirs() const { return dirs_; }
    const RatVec& tail() const { return tail_; }

    ExtReal eval(const RatVec& x) const {
        if (x.size() != dim_) fail(Errc::DimensionMismatch, "eval point dimension");
        for (const RatVec& v : dirs_) {
            int s = sign_of(dot(v, x));
            if (s > 0) return ExtReal::plus_inf();
            if (s < 0) return ExtReal::minus_inf();
        }
        return ExtReal(dot(tail_, x));
    }

    Classification classify(const RatVec& x) const {
        ExtReal y = eval(x);
        if (y.is_plus_inf()) return Classification::Plus;
        if (y.is_minus_inf()) return Classification::Minus;
        return Classification::Finite;
    }

    friend bool operator==(const LinExt& a, const LinExt& b) {
        return a.dim_ == b.dim_ && a.dirs_ == b.dirs_ && a.tail_ == b.tail_;
    }

private:
    LinExt(std::size_t dim, std::vector<RatVec> dirs, RatVec tail)
        : dim_(dim), dirs_(std::move(dirs)), tail_(std::move(tail)) {}

    std::size_t dim_;
    std::vector<RatVec> dirs_;
    RatVec tail_;
};

/// Parameter equality; functions over different spaces are not comparable.
inline bool equals(const LinExt& a, const LinExt& b) {
    if (a.dim() != b.dim()) fail(Errc::DimensionMismatch, "equals");
    return a == b;
}

/// Prepends a new outermost direction. v must be orthogonal to everything f
/// already uses, so the result evaluates f on v's hyperplane and sends the
/// two open sides to +inf / -inf.
inline LinExt push_front(const RatVec& v, const LinExt& f) {
    if (v.size() != f.dim()) fail(Errc::DimensionMismatch, "push_front direction");
    for (const RatVec& u : f.dirs())
        if (dot(v, u) != 0) fail(Errc::NotOrthogonal, "push_front: direction not orthogonal to existing stack");
    if (dot(v, f.tail()) != 0) fail(Errc::NotOrthogonal, "push_front: direction not orthogonal to tail");
    std::vector<RatVec> dirs;
    dirs.reserve(f.depth() + 1);
    dirs.push_back(v);
    dirs.insert(dirs.end(), f.dirs().begin(), f.dirs().end());
    return LinExt::make(f.dim(), std::move(dirs), f.tail());
}

/// The linear extended function that is -inf on all of conv(p) (which must
/// not contain the origin). Built by repeated supporting hyperplanes: each
/// round finds a direction nonpositive on the current face and orthogonal to
/// the stack so far, sends the strictly-negative vertices to -inf, and
/// recurses on the vertices left on the hyperplane. Every vertex is strictly
/// cut at some round, so evaluation reaches a negative sign test first.
inline LinExt indicator_neg_on(const Polytope& p) {
    std::vector<RatVec> dirs;
    std::optional<Polytope> face = p;
    while (face) {
        RatVec v;
        try {
            v = supporting_direction(*face, dirs);
        } catch (const Error& e) {
            if (e.code() == Errc::NoSupport)
                fail(Errc::ContainsOrigin, "indicator_neg_on: hull contains the origin");
            throw;
        }
        dirs.push_back(std::move(v));
        face = face_on_hyperplane(*face, dirs.back());
    }
    return LinExt::make(p.dim, std::move(dirs), zero_vec(p.dim));
}

// ---- axiom checking ----

struct AxiomSample {
    RatVec x;
    RatVec x2;
    Rational alpha;
};

struct AxiomFailure {
    std::string axiom; // "scaling" or "additivity"
    AxiomSample sample;
    ExtReal expected;
    ExtReal actual;
};

struct AxiomReport {
    std::size_t scaling_checked = 0;
    std::size_t additivity_checked = 0;
    std::size_t additivity_skipped = 0; // pairs whose extended sum is illegal
    std::vector<AxiomFailure> failures;

    bool passed() const { return failures.empty(); }
};

/// Checks f(alpha x) = alpha f(x) and, whenever f(x) + f(x2) is a legal
/// extended sum, f(x + x2) = f(x) + f(x2). Works on any evaluator so that
/// impostors (table-backed non-linear functions) can be fed to the tester.
inline AxiomReport check_axioms(const std::function<ExtReal(const RatVec&)>& f,
                                const std::vector<AxiomSample>& samples) {
    AxiomReport report;
    for (const AxiomSample& s : samples) {
        ExtReal fx = f(s.x);
        ExtReal expected = scale(s.alpha, fx);
        ExtReal actual = f(vscale(s.alpha, s.x));
        ++report.scaling_checked;
        if (!(actual == expected)) report.failures.push_back({"scaling", s, expected, actual});

        ExtReal fx2 = f(s.x2);
        std::optional<ExtReal> sum = add(fx, fx2);
        if (!sum) {
            ++report.additivity_skipped;
            continue;
        }
        ExtReal got = f(vadd(s.x, s.x2));
        ++report.additivity_checked;
        if (!(got == *sum)) report.failures.push_back({"additivity", s, *sum, got});
    }
    return report;
}

inline AxiomReport check_axioms(const LinExt& f, const std::vector<AxiomSample>& samples) {
    return check_axioms([&f](const RatVec& x) { return f.eval(x); }, samples);
}

namespace detail {

inline Rational random_rational(std::mt19937_64& rng, int num_bound, int den_bound) {
    auto draw = [&rng](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    int num = draw(2 * num_bound + 1) - num_bound;
    int den = 1 + draw(den_bound);
    return Rational(num, den);
}

inline RatVec random_vec(std::mt19937_64& rng, std::size_t dim, int num_bound, int den_bound) {
    RatVec v(dim);
    for (auto& x : v) x = random_rational(rng, num_bound, den_bound);
    return v;
}

} // namespace detail

/// Seeded sample generator for check_axioms: a mix of coordinate vectors,
/// the instance's own directions, and random rationals with denominators
/// up to 64.
inline std::vector<AxiomSample> default_axiom_samples(const LinExt& f, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::size_t d = f.dim();
    auto pick_point = [&]() -> RatVec {
        if (d == 0) return RatVec{};
        switch (rng() % 4) {
            case 0: {
                RatVec e = zero_vec(d);
                e[rng() % d] = detail::random_rational(rng, 4, 4);
                return e;
            }
            case 1:
                if (f.depth() > 0) {
                    RatVec v = f.dirs()[rng() % f.depth()];
                    return (rng() % 2) ? vscale(Rational(-1), v) : v;
                }
                [[fallthrough]];
            default:
                return detail::random_vec(rng, d, 64, 64);
        }
    };
    std::vector<AxiomSample> samples;
    samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Rational alpha;
        switch (rng() % 5) {
            case 0: alpha = 0; break;
            case 1: alpha = 1; break;
            case 2: alpha = -1; break;
            default: alpha = detail::random_rational(rng, 64, 64); break;
        }
        samples.push_back({pick_point(), pick_point(), alpha});
    }
    return samples;
}

namespace detail {

/// A point x with dot(u, x) > 0 > dot(w, x), for distinct canonical rays.
inline RatVec separate_rays(const RatVec& u, const RatVec& w) {
    Rational s = dot(u, w), a = dot(u, u);
    RatVec perp = vsub(w, vscale(s / a, u)); // component of w orthogonal to u
    if (is_zero_vec(perp)) return u;         // canonical distinct + parallel => opposite rays
    Rational p2 = dot(perp, perp);
    Rational c = (s <= 0) ? Rational(1) : p2 / (2 * s);
    return vsub(vscale(c, u), perp); // dot(u,.) = c*a > 0, dot(w,.) = c*s - p2 < 0
}

} // namespace detail

/// A point where the two functions take different values; nullopt iff the
/// canonical parameters coincide. At the first differing direction the point
/// strictly separates the two rays, so one function returns +inf and the
/// other -inf; when one stack extends the other, the first extra direction
/// is finite under the shorter function and +inf under the longer; when only
/// the tails differ, their difference separates the finite values.
inline std::optional<RatVec> distinguishing_point(const LinExt& f1, const LinExt& f2) {
    if (f1.dim() != f2.dim()) fail(Errc::DimensionMismatch, "distinguishing_point");
    std::size_t shared = std::min(f1.depth(), f2.depth());
    for (std::size_t j = 0; j < shared; ++j)
        if (f1.dirs()[j] != f2.dirs()[j]) return detail::separate_rays(f1.dirs()[j], f2.dirs()[j]);
    if (f1.depth() != f2.depth()) {
        const LinExt& longer = f1.depth() > f2.depth() ? f1 : f2;
        return longer.dirs()[shared];
    }
    if (f1.tail() != f2.tail()) return vsub(f1.tail(), f2.tail());
    return std::nullopt;
}

} // namespace linext
