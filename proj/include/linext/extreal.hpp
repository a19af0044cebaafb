#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linext/error.hpp"

namespace linext {

using Int = boost::multiprecision::cpp_int;

/// Exact rational number. Always stored reduced with positive denominator;
/// the backing type maintains both invariants on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

inline Rational abs_of(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Canonical text form: "a/b" with b > 1, plain "a" for integers.
inline std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

/// Parses "a", "-a", "a/b". Rejects zero denominators and malformed input.
inline Rational parse_rational(const std::string& text) {
    auto is_int = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    std::size_t slash = text.find('/');
    if (slash == std::string::npos) {
        if (!is_int(text)) fail(Errc::ParseError, "not a rational: '" + text + "'");
        return Rational(Int(text));
    }
    std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) fail(Errc::ParseError, "not a rational: '" + text + "'");
    Int d(den);
    if (d == 0) fail(Errc::ParseError, "zero denominator: '" + text + "'");
    return Rational(Int(num), d);
}

/// A value in the extended reals: a rational, or one of the two infinities.
/// Total order: -inf < every finite < +inf. There is no topology here; the
/// infinities are algebraic tags with the arithmetic defined below.
class ExtReal {
public:
    ExtReal() : tag_(0) {}
    ExtReal(Rational v) : tag_(0), val_(std::move(v)) {}
    ExtReal(int v) : tag_(0), val_(v) {}

    static ExtReal plus_inf() {
        ExtReal x;
        x.tag_ = 1;
        return x;
    }
    static ExtReal minus_inf() {
        ExtReal x;
        x.tag_ = -1;
        return x;
    }

    bool is_finite() const { return tag_ == 0; }
    bool is_plus_inf() const { return tag_ == 1; }
    bool is_minus_inf() const { return tag_ == -1; }

    const Rational& finite_value() const {
        if (tag_ != 0) fail(Errc::NotFiniteAtPoint, "finite_value() on " + (tag_ > 0 ? std::string("inf") : std::string("-inf")));
        return val_;
    }

    int sign() const { return tag_ != 0 ? tag_ : sign_of(val_); }

    friend bool operator==(const ExtReal& a, const ExtReal& b) {
        return a.tag_ == b.tag_ && (a.tag_ != 0 || a.val_ == b.val_);
    }

    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
        if (a.tag_ != b.tag_) return a.tag_ <=> b.tag_;
        if (a.tag_ != 0) return std::strong_ordering::equal;
        if (a.val_ < b.val_) return std::strong_ordering::less;
        if (a.val_ == b.val_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

private:
    int tag_; // -1, 0, +1
    Rational val_;
};

/// Extended addition. beta + inf = inf and beta - inf = -inf for finite beta;
/// equal infinities add; inf + (-inf) has no value and returns nullopt.
/// Callers that need the illegality propagated must branch, not saturate.
inline std::optional<ExtReal> add(const ExtReal& a, const ExtReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtReal(a.finite_value() + b.finite_value());
    if (a.is_finite()) return b;
    if (b.is_finite()) return a;
    if (a == b) return a;
    return std::nullopt; // inf + (-inf)
}

/// Extended scaling by a rational. Total: 0 * (+-inf) = 0, alpha > 0 keeps
/// the tag, alpha < 0 flips it.
inline ExtReal scale(const Rational& alpha, const ExtReal& x) {
    if (x.is_finite()) return ExtReal(alpha * x.finite_value());
    int s = sign_of(alpha);
    if (s == 0) return ExtReal(0);
    if (s > 0) return x;
    return x.is_plus_inf() ? ExtReal::minus_inf() : ExtReal::plus_inf();
}

inline ExtReal negate(const ExtReal& x) { return scale(Rational(-1), x); }

/// Supremum under the total order; sup of the empty list is -inf.
inline ExtReal sup(const std::vector<ExtReal>& xs) {
    ExtReal best = ExtReal::minus_inf();
    for (const ExtReal& x : xs)
        if (x > best) best = x;
    return best;
}

/// Infimum under the total order; inf of the empty list is +inf.
inline ExtReal inf(const std::vector<ExtReal>& xs) {
    ExtReal best = ExtReal::plus_inf();
    for (const ExtReal& x : xs)
        if (x < best) best = x;
    return best;
}

inline std::string format_extreal(const ExtReal& x) {
    if (x.is_plus_inf()) return "inf";
    if (x.is_minus_inf()) return "-inf";
    return format_rational(x.finite_value());
}

inline ExtReal parse_extreal(const std::string& text) {
    if (text == "inf" || text == "+inf") return ExtReal::plus_inf();
    if (text == "-inf") return ExtReal::minus_inf();
    return ExtReal(parse_rational(text));
}

} // namespace linext
