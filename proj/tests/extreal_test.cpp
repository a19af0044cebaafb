#include "testutil.hpp"

#include <gtest/gtest.h>

#include <optional>
#include <vector>

using namespace linext;
using testutil::R;

namespace {

ExtReal fin(long long num, long long den = 1) { return ExtReal(R(num, den)); }

TEST(ExtReal, ConstructionAndPredicates)
{
    ExtReal zero;
    EXPECT_TRUE(zero.is_finite());
    EXPECT_EQ(zero.finite_value(), R(0));

    EXPECT_TRUE(ExtReal::plus_inf().is_plus_inf());
    EXPECT_TRUE(ExtReal::minus_inf().is_minus_inf());
    EXPECT_FALSE(ExtReal::plus_inf().is_finite());

    EXPECT_THROW(ExtReal::plus_inf().finite_value(), Error);
    try {
        ExtReal::minus_inf().finite_value();
        FAIL() << "expected error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NotFiniteAtPoint);
    }
}

TEST(ExtReal, AddExamples)
{
    EXPECT_EQ(add(fin(2), fin(5)), std::optional<ExtReal>(fin(7)));
    EXPECT_EQ(add(fin(3), ExtReal::plus_inf()), std::optional<ExtReal>(ExtReal::plus_inf()));
    EXPECT_EQ(add(fin(3), ExtReal::minus_inf()), std::optional<ExtReal>(ExtReal::minus_inf()));
    EXPECT_EQ(add(ExtReal::plus_inf(), ExtReal::plus_inf()),
              std::optional<ExtReal>(ExtReal::plus_inf()));
    EXPECT_EQ(add(ExtReal::minus_inf(), ExtReal::minus_inf()),
              std::optional<ExtReal>(ExtReal::minus_inf()));
    EXPECT_EQ(add(ExtReal::plus_inf(), ExtReal::minus_inf()), std::nullopt);
    EXPECT_EQ(add(ExtReal::minus_inf(), ExtReal::plus_inf()), std::nullopt);
}

TEST(ExtReal, ScaleExamples)
{
    EXPECT_EQ(scale(R(3), fin(4)), fin(12));
    EXPECT_EQ(scale(R(0), ExtReal::plus_inf()), fin(0));
    EXPECT_EQ(scale(R(0), ExtReal::minus_inf()), fin(0));
    EXPECT_EQ(scale(R(-2), ExtReal::plus_inf()), ExtReal::minus_inf());
    EXPECT_EQ(scale(R(2), ExtReal::minus_inf()), ExtReal::minus_inf());
    EXPECT_EQ(scale(R(-1, 3), ExtReal::minus_inf()), ExtReal::plus_inf());
    EXPECT_EQ(scale(R(1, 2), fin(5)), fin(5, 2));
}

TEST(ExtReal, NegateAndSign)
{
    EXPECT_EQ(negate(ExtReal::plus_inf()), ExtReal::minus_inf());
    EXPECT_EQ(negate(fin(-3)), fin(3));
    EXPECT_EQ(sign(R(7)), 1);
    EXPECT_EQ(sign(R(0)), 0);
    EXPECT_EQ(sign(R(-5)), -1);
}

TEST(ExtReal, TotalOrder)
{
    EXPECT_TRUE(ExtReal::minus_inf() < fin(-1000000));
    EXPECT_TRUE(fin(1000000) < ExtReal::plus_inf());
    EXPECT_TRUE(ExtReal::minus_inf() < ExtReal::plus_inf());
    EXPECT_TRUE(fin(1, 3) < fin(1, 2));
    EXPECT_FALSE(ExtReal::plus_inf() < ExtReal::plus_inf());
    EXPECT_FALSE(ExtReal::minus_inf() < ExtReal::minus_inf());
    EXPECT_TRUE(fin(2) <= fin(2));
    EXPECT_TRUE(fin(2) >= fin(2));
    EXPECT_TRUE(ExtReal::plus_inf() > fin(0));
}

TEST(ExtReal, SupInfExamples)
{
    EXPECT_EQ(sup({}), ExtReal::minus_inf());
    EXPECT_EQ(inf({}), ExtReal::plus_inf());
    EXPECT_EQ(sup({fin(3), ExtReal::plus_inf(), fin(-1)}), ExtReal::plus_inf());
    EXPECT_EQ(sup({fin(1), fin(2)}), fin(2));
    EXPECT_EQ(inf({fin(3), ExtReal::minus_inf()}), ExtReal::minus_inf());
    EXPECT_EQ(inf({fin(5), fin(2), fin(9)}), fin(2));
    EXPECT_EQ(sup({ExtReal::minus_inf()}), ExtReal::minus_inf());
}

TEST(ExtReal, FormatAndParse)
{
    EXPECT_EQ(format_extreal(fin(7)), "7");
    EXPECT_EQ(format_extreal(fin(-2, 3)), "-2/3");
    EXPECT_EQ(format_extreal(ExtReal::plus_inf()), "inf");
    EXPECT_EQ(format_extreal(ExtReal::minus_inf()), "-inf");

    EXPECT_EQ(parse_extreal("inf"), ExtReal::plus_inf());
    EXPECT_EQ(parse_extreal("-inf"), ExtReal::minus_inf());
    EXPECT_EQ(parse_extreal("5/3"), fin(5, 3));
    EXPECT_EQ(parse_rational("4/6"), R(2, 3));
    EXPECT_EQ(format_rational(parse_rational("-4/6")), "-2/3");

    for (const char* bad : {"", "abc", "1.5", "1/0", "1//2", "--3", "inf/2"}) {
        try {
            parse_extreal(bad);
            FAIL() << "expected parse error for: " << bad;
        } catch (const Error& e) {
            EXPECT_EQ(e.code(), Errc::ParseError) << bad;
        }
    }
}

TEST(ExtReal, RoundTripThroughText)
{
    std::mt19937_64 rng(71001);
    for (int i = 0; i < 500; ++i) {
        Rational r = testutil::random_rational(rng, 1000, 1000);
        EXPECT_EQ(parse_rational(format_rational(r)), r);
        ExtReal e(r);
        EXPECT_EQ(parse_extreal(format_extreal(e)), e);
    }
}

ExtReal random_extreal(std::mt19937_64& rng)
{
    switch (rng() % 5) {
        case 0: return ExtReal::plus_inf();
        case 1: return ExtReal::minus_inf();
        default: return ExtReal(testutil::random_rational(rng, 6, 6));
    }
}

TEST(ExtRealProperty, AddCommutativeAndAssociative)
{
    std::mt19937_64 rng(71002);
    for (int i = 0; i < 2000; ++i) {
        ExtReal a = random_extreal(rng);
        ExtReal b = random_extreal(rng);
        ExtReal c = random_extreal(rng);
        EXPECT_EQ(add(a, b), add(b, a));

        auto ab = add(a, b);
        auto bc = add(b, c);
        if (ab && bc) {
            auto left = add(*ab, c);
            auto right = add(a, *bc);
            if (left && right) EXPECT_EQ(*left, *right);
        }
    }
}

TEST(ExtRealProperty, ScaleLaws)
{
    std::mt19937_64 rng(71003);
    for (int i = 0; i < 2000; ++i) {
        Rational alpha = testutil::random_rational(rng, 5, 4);
        Rational beta = testutil::random_rational(rng, 5, 4);
        ExtReal a = random_extreal(rng);
        ExtReal b = random_extreal(rng);

        // Composition: alpha (beta a) == (alpha beta) a.
        EXPECT_EQ(scale(alpha, scale(beta, a)), scale(alpha * beta, a));

        // Distribution over legal sums.
        auto ab = add(a, b);
        if (ab) {
            auto rhs = add(scale(alpha, a), scale(alpha, b));
            ASSERT_TRUE(rhs.has_value());
            EXPECT_EQ(scale(alpha, *ab), *rhs);
        }

        // Unit and negation.
        EXPECT_EQ(scale(R(1), a), a);
        EXPECT_EQ(scale(R(-1), a), negate(a));
    }
}

TEST(ExtRealProperty, OrderIsTotalAndConsistent)
{
    std::mt19937_64 rng(71004);
    for (int i = 0; i < 2000; ++i) {
        ExtReal a = random_extreal(rng);
        ExtReal b = random_extreal(rng);
        int relations = (a < b ? 1 : 0) + (b < a ? 1 : 0) + (a == b ? 1 : 0);
        EXPECT_EQ(relations, 1);
        EXPECT_EQ(a <= b, !(b < a));
        EXPECT_EQ(sup({a, b}), (a < b ? b : a));
        EXPECT_EQ(inf({a, b}), (a < b ? a : b));
        EXPECT_EQ(negate(negate(a)), a);
        // Negation reverses order.
        EXPECT_EQ(a < b, negate(b) < negate(a));
    }
}

}  // namespace
