#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "linext/error.hpp"
#include "linext/extreal.hpp"

namespace linext {

using RatVec = std::vector<Rational>;

inline Rational dot(const RatVec& u, const RatVec& v) {
    if (u.size() != v.size())
        fail(Errc::DimensionMismatch, "dot: " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
    return s;
}

inline RatVec vadd(const RatVec& u, const RatVec& v) {
    if (u.size() != v.size()) fail(Errc::DimensionMismatch, "vadd");
    RatVec r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
    return r;
}

inline RatVec vsub(const RatVec& u, const RatVec& v) {
    if (u.size() != v.size()) fail(Errc::DimensionMismatch, "vsub");
    RatVec r(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) r[i] = u[i] - v[i];
    return r;
}

inline RatVec vscale(const Rational& a, const RatVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = a * v[i];
    return r;
}

inline RatVec zero_vec(std::size_t d) { return RatVec(d, Rational(0)); }

inline bool is_zero_vec(const RatVec& v) {
    for (const Rational& x : v)
        if (x != 0) return false;
    return true;
}

/// Scale-canonical representative of a ray: divide by the max absolute
/// coordinate, so the result has infinity-norm exactly 1 and stays rational.
/// Positive scalings collapse to one representative; opposite rays stay
/// distinct.
inline RatVec canonicalize_direction(const RatVec& v) {
    if (is_zero_vec(v)) fail(Errc::ZeroVector, "canonicalize_direction");
    Rational m = 0;
    for (const Rational& x : v) {
        Rational a = abs_of(x);
        if (a > m) m = a;
    }
    return vscale(Rational(1) / m, v);
}

/// Component of x orthogonal to every vector in dirs (assumed pairwise
/// orthogonal and nonzero).
inline RatVec project_orthogonal(RatVec x, const std::vector<RatVec>& dirs) {
    for (const RatVec& u : dirs) {
        Rational coef = dot(x, u) / dot(u, u);
        if (coef != 0) x = vsub(x, vscale(coef, u));
    }
    return x;
}

/// Exact Gram-Schmidt. Output vectors are pairwise orthogonal, canonical,
/// and span the same nested subspaces as the input prefix by prefix.
inline std::vector<RatVec> orthogonalize(const std::vector<RatVec>& vs) {
    std::vector<RatVec> out;
    for (const RatVec& v : vs) {
        RatVec u = project_orthogonal(v, out);
        if (is_zero_vec(u)) fail(Errc::DependentInput, "orthogonalize: vector " + std::to_string(out.size()) + " is dependent");
        out.push_back(canonicalize_direction(u));
    }
    return out;
}

/// Bounded rational polytope in vertex representation; the represented set
/// is the convex hull of the vertices.
struct Polytope {
    std::size_t dim = 0;
    std::vector<RatVec> vertices;

    Polytope(std::size_t d, std::vector<RatVec> verts) : dim(d), vertices(std::move(verts)) {
        if (vertices.empty()) fail(Errc::EmptyPolytope, "polytope needs at least one vertex");
        for (const RatVec& z : vertices)
            if (z.size() != dim) fail(Errc::DimensionMismatch, "polytope vertex dimension");
    }
};

inline Polytope shift(const Polytope& p, const RatVec& offset) {
    std::vector<RatVec> verts;
    verts.reserve(p.vertices.size());
    for (const RatVec& z : p.vertices) verts.push_back(vadd(z, offset));
    return Polytope(p.dim, std::move(verts));
}

namespace detail {

/// Exact primal simplex, maximization. Solves max c.x s.t. A x <= b, x >= 0
/// with every b_i >= 0, so the slack basis is immediately feasible. Bland's
/// rule on both the entering and leaving choice guarantees termination under
/// the heavy degeneracy these instances have (many zero right-hand sides).
struct LpSolution {
    Rational objective;
    std::vector<Rational> x;
};

inline LpSolution simplex_max(const std::vector<RatVec>& A, const RatVec& b, const RatVec& c) {
    const std::size_t m = A.size(), n = c.size();
    const std::size_t cols = n + m + 1; // vars, slacks, rhs
    for (const Rational& bi : b)
        if (bi < 0) fail(Errc::PreconditionViolated, "simplex_max: negative rhs");

    std::vector<RatVec> t(m, RatVec(cols, Rational(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = A[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = b[i];
    }
    RatVec obj(cols, Rational(0));
    for (std::size_t j = 0; j < n; ++j) obj[j] = -c[j];
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

    for (;;) {
        std::size_t enter = cols - 1;
        for (std::size_t j = 0; j + 1 < cols; ++j)
            if (obj[j] < 0) {
                enter = j;
                break;
            }
        if (enter == cols - 1) break; // optimal

        std::size_t leave = m;
        Rational best_ratio = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave == m || ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) fail(Errc::PreconditionViolated, "simplex_max: unbounded");

        Rational piv = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rational f = t[i][enter];
            for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        {
            Rational f = obj[enter];
            if (f != 0)
                for (std::size_t j = 0; j < cols; ++j) obj[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    LpSolution sol;
    sol.objective = obj[cols - 1];
    sol.x.assign(n, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
    return sol;
}

/// Basis of {v : M v = 0} by exact Gauss-Jordan; one vector per free column,
/// in ascending free-column order.
inline std::vector<RatVec> kernel_basis(std::vector<RatVec> rows, std::size_t d) {
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < d && r < rows.size(); ++col) {
        std::size_t sel = rows.size();
        for (std::size_t i = r; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                sel = i;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        Rational piv = rows[r][col];
        for (std::size_t j = 0; j < d; ++j) rows[r][j] /= piv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][col] == 0) continue;
            Rational f = rows[i][col];
            for (std::size_t j = 0; j < d; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t f = 0; f < d; ++f) {
        if (is_pivot[f]) continue;
        RatVec v = zero_vec(d);
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

/// A canonical direction v with dot(v, z) <= 0 for every vertex z of p and
/// v orthogonal to every vector in `priors`. Maximizes the total slack
/// sum_i -dot(v, z_i) over the box [-1,1]^d by exact LP; when the optimum is
/// zero (every admissible v is orthogonal to all vertices), falls back to the
/// first kernel-basis vector of span(vertices + priors). NoSupport when no
/// nonzero v exists.
inline RatVec supporting_direction(const Polytope& p, const std::vector<RatVec>& priors) {
    const std::size_t d = p.dim;
    if (d == 0) fail(Errc::NoSupport, "supporting_direction: zero-dimensional space");
    for (const RatVec& u : priors)
        if (u.size() != d) fail(Errc::DimensionMismatch, "supporting_direction priors");

    // Variables: v = a - b with a, b in [0,1]^d.
    std::vector<RatVec> A;
    RatVec b;
    RatVec s = zero_vec(d);
    auto push_pair_row = [&](const RatVec& u, const Rational& rhs) {
        RatVec row(2 * d);
        for (std::size_t k = 0; k < d; ++k) {
            row[k] = u[k];
            row[d + k] = -u[k];
        }
        A.push_back(std::move(row));
        b.push_back(rhs);
    };
    for (const RatVec& z : p.vertices) {
        push_pair_row(z, Rational(0));
        s = vadd(s, z);
    }
    for (const RatVec& u : priors) {
        push_pair_row(u, Rational(0));
        push_pair_row(vscale(Rational(-1), u), Rational(0));
    }
    for (std::size_t k = 0; k < 2 * d; ++k) {
        RatVec row(2 * d, Rational(0));
        row[k] = 1;
        A.push_back(std::move(row));
        b.push_back(Rational(1));
    }
    RatVec c(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
        c[k] = -s[k];
        c[d + k] = s[k];
    }

    detail::LpSolution sol = detail::simplex_max(A, b, c);
    if (sol.objective > 0) {
        RatVec v(d);
        for (std::size_t k = 0; k < d; ++k) v[k] = sol.x[k] - sol.x[d + k];
        return canonicalize_direction(v);
    }

    // Optimum zero: admissible directions are exactly the joint kernel.
    std::vector<RatVec> rows = p.vertices;
    rows.insert(rows.end(), priors.begin(), priors.end());
    std::vector<RatVec> kernel = detail::kernel_basis(std::move(rows), d);
    if (kernel.empty()) fail(Errc::NoSupport, "supporting_direction: only v = 0 is admissible");
    return canonicalize_direction(kernel.front());
}

inline RatVec supporting_direction(const Polytope& p) { return supporting_direction(p, {}); }

/// The sub-polytope of vertices lying exactly on {z : dot(v, z) = 0}.
/// Requires dot(v, z) <= 0 for every vertex; nullopt when the face is empty.
inline std::optional<Polytope> face_on_hyperplane(const Polytope& p, const RatVec& v) {
    std::vector<RatVec> face;
    for (const RatVec& z : p.vertices) {
        Rational t = dot(v, z);
        if (t > 0) fail(Errc::PreconditionViolated, "face_on_hyperplane: vertex on the positive side");
        if (t == 0) face.push_back(z);
    }
    if (face.empty()) return std::nullopt;
    return Polytope(p.dim, std::move(face));
}

/// True iff some hyperplane strictly separates the origin from conv(p),
/// i.e. the origin lies outside the hull. Decided by exact LP: maximize eps
/// subject to dot(v, z) <= -eps per vertex, v in [-1,1]^d, eps in [0,1].
inline bool strictly_separable_from_origin(const Polytope& p) {
    const std::size_t d = p.dim;
    if (d == 0) return false; // the only point of R^0 is the origin itself
    // Variables: a, b (v = a - b), then eps.
    const std::size_t n = 2 * d + 1;
    std::vector<RatVec> A;
    RatVec b;
    for (const RatVec& z : p.vertices) {
        RatVec row(n, Rational(0));
        for (std::size_t k = 0; k < d; ++k) {
            row[k] = z[k];
            row[d + k] = -z[k];
        }
        row[2 * d] = 1; // dot(v,z) + eps <= 0
        A.push_back(std::move(row));
        b.push_back(Rational(0));
    }
    for (std::size_t k = 0; k < n; ++k) {
        RatVec row(n, Rational(0));
        row[k] = 1;
        A.push_back(std::move(row));
        b.push_back(Rational(1));
    }
    RatVec c(n, Rational(0));
    c[2 * d] = 1;
    return detail::simplex_max(A, b, c).objective > 0;
}

} // namespace linext
