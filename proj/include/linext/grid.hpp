#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "error.hpp"
#include "extreal.hpp"
#include "geometry.hpp"

namespace linext {

// All reduced fractions in [0, 1] with denominator at most max_den, ascending.
inline std::vector<Rational> farey_fractions(unsigned max_den)
{
    if (max_den == 0)
        fail(Errc::PreconditionViolated, "farey_fractions requires a positive denominator bound");
    std::set<Rational> seen;
    for (unsigned q = 1; q <= max_den; ++q)
        for (unsigned p = 0; p <= q; ++p)
            seen.insert(Rational(p, q));
    return std::vector<Rational>(seen.begin(), seen.end());
}

// All reduced fractions in [-1, 1] with denominator at most max_den, ascending.
inline std::vector<Rational> symmetric_farey_fractions(unsigned max_den)
{
    std::vector<Rational> pos = farey_fractions(max_den);
    std::set<Rational> seen(pos.begin(), pos.end());
    for (const Rational& r : pos) seen.insert(-r);
    return std::vector<Rational>(seen.begin(), seen.end());
}

namespace detail {

// Orders probability vectors by their reversed coordinate tuple, so binary
// grids ascend in the last coordinate.
struct RevLexLess {
    bool operator()(const RatVec& a, const RatVec& b) const
    {
        std::size_t n = a.size();
        for (std::size_t k = n; k-- > 0;) {
            if (a[k] != b[k]) return a[k] < b[k];
        }
        return false;
    }
};

inline void compositions(unsigned total, std::size_t parts, RatVec& acc, unsigned q,
                         std::set<RatVec, RevLexLess>& out)
{
    if (parts == 1) {
        acc.push_back(Rational(total, q));
        out.insert(acc);
        acc.pop_back();
        return;
    }
    for (unsigned first = 0; first <= total; ++first) {
        acc.push_back(Rational(first, q));
        compositions(total - first, parts - 1, acc, q, out);
        acc.pop_back();
    }
}

}  // namespace detail

// All probability vectors over n outcomes whose coordinates share a common
// denominator at most max_den, sorted ascending by reversed coordinate tuple.
inline std::vector<RatVec> simplex_grid(std::size_t n, unsigned max_den)
{
    if (n == 0)
        fail(Errc::PreconditionViolated, "simplex_grid requires at least one outcome");
    if (max_den == 0)
        fail(Errc::PreconditionViolated, "simplex_grid requires a positive denominator bound");
    std::set<RatVec, detail::RevLexLess> seen;
    for (unsigned q = 1; q <= max_den; ++q) {
        RatVec acc;
        detail::compositions(q, n, acc, q, seen);
    }
    return std::vector<RatVec>(seen.begin(), seen.end());
}

// Binary probability vectors (p(0), p(1)) with p(1) drawn from the Farey
// fractions of the given bound restricted to [lo, hi] with the stated closure,
// ascending in p(1).
inline std::vector<RatVec> binary_interval_grid(const Rational& lo, const Rational& hi,
                                                bool lo_closed, bool hi_closed,
                                                unsigned max_den)
{
    if (lo < 0 || hi > 1 || lo > hi)
        fail(Errc::BadInterval, "interval must satisfy 0 <= lo <= hi <= 1");
    std::vector<RatVec> out;
    for (const Rational& s : farey_fractions(max_den)) {
        bool above = lo_closed ? (s >= lo) : (s > lo);
        bool below = hi_closed ? (s <= hi) : (s < hi);
        if (above && below)
            out.push_back(RatVec{Rational(1) - s, s});
    }
    return out;
}

}  // namespace linext
