#include <gtest/gtest.h>

#include "superdenom/lattice.hpp"

using namespace superdenom;

namespace
{

Weight w(std::size_t m, std::vector<Rational> c) { return Weight(m, std::move(c)); }

} // namespace

TEST(Rational, PrintsReducedForm)
{
    EXPECT_EQ(to_string(Rational(6, 4)), "3/2");
    EXPECT_EQ(to_string(Rational(-4, 2)), "-2");
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("17"), Rational(17));
    EXPECT_THROW(parse_rational("1/0"), ValidationError);
}

TEST(Rational, BigCoefficientsStayExact)
{
    Rational f = 1;
    for (int i = 1; i <= 40; ++i) {
        f *= i;
    }
    EXPECT_EQ(to_string(f), "815915283247897734345611269596115894272000000000");
    EXPECT_EQ(f / f, Rational(1));
}

TEST(BilinearForm, NormalizedSignature)
{
    auto e1 = Weight::eps(2, 1, 0);
    auto d1 = Weight::delta(2, 1, 0);
    EXPECT_EQ(bilinear_form(e1, e1), 1);
    EXPECT_EQ(bilinear_form(d1, d1), -1);
    EXPECT_EQ(bilinear_form(e1 - d1, e1 - d1), 0);
    EXPECT_EQ(bilinear_form(Rational(2) * d1, Rational(2) * d1), -4);
}

TEST(BilinearForm, SymmetricOnSamples)
{
    std::vector<Weight> v = {w(2, {1, Rational(1, 2), -3}), w(2, {0, 2, 5}), w(2, {Rational(-7, 3), 1, 1})};
    for (const auto &x : v) {
        for (const auto &y : v) {
            EXPECT_EQ(bilinear_form(x, y), bilinear_form(y, x));
        }
    }
}

TEST(BilinearForm, DimensionMismatchIsStructural)
{
    EXPECT_THROW(bilinear_form(Weight(2, 1), Weight(1, 2)), StructuralError);
    EXPECT_THROW(Weight(2, 1) + Weight(3, 0), StructuralError);
}

TEST(Weight, Printing)
{
    EXPECT_EQ(to_string(Weight::eps(2, 2, 0) - Weight::delta(2, 2, 1)), "e1-d2");
    EXPECT_EQ(to_string(Weight(1, 1)), "0");
    EXPECT_EQ(to_string(w(1, {Rational(1, 2), 2})), "1/2e1+2d1");
}

class ConeTest : public ::testing::Test
{
protected:
    // gl(2|1) style basis: α = ε1−δ1, β = δ1−ε2.
    Weight alpha = w(2, {1, 0, -1});
    Weight beta = w(2, {0, -1, 1});
    SpanBasis basis{std::vector<Weight>{alpha, beta}};
};

TEST_F(ConeTest, ZeroHasZeroCoords)
{
    auto c = in_positive_cone(Weight(2, 1), basis, ConeRing::integer);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->coeffs, (std::vector<Rational>{0, 0}));
    EXPECT_EQ(height(*c), 0);
}

TEST_F(ConeTest, ReadsOffCoordinates)
{
    auto nu = alpha + Rational(2) * beta;
    auto c = in_positive_cone(nu, basis, ConeRing::integer);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->coeffs, (std::vector<Rational>{1, 2}));
    EXPECT_EQ(basis.reconstruct(c->coeffs), nu);
    EXPECT_EQ(height(*c), 3);
}

TEST_F(ConeTest, OutsideSpanIsAbsent)
{
    EXPECT_FALSE(in_positive_cone(Weight::eps(2, 1, 0), basis, ConeRing::rational));
    EXPECT_FALSE(in_positive_cone(-alpha, basis, ConeRing::rational));
}

TEST_F(ConeTest, RationalVersusIntegerRing)
{
    auto half = Rational(1, 2) * alpha;
    EXPECT_FALSE(in_positive_cone(half, basis, ConeRing::integer));
    auto c = in_positive_cone(half, basis, ConeRing::rational);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->coeffs[0], Rational(1, 2));
}

TEST(Height, Additive)
{
    ConeCoords a{{1, 2, 0}};
    ConeCoords b{{0, 3, Rational(1, 2)}};
    auto s = a;
    s += b;
    EXPECT_EQ(height(s), height(a) + height(b));
    EXPECT_EQ(height(ConeCoords{}), 0);
}

TEST(SpanBasis, RejectsDependentFamilies)
{
    auto a = Weight::eps(2, 0, 0);
    EXPECT_THROW(SpanBasis(std::vector<Weight>{a, a}), ValidationError);
    EXPECT_THROW(SpanBasis(std::vector<Weight>{a, Weight::eps(2, 0, 1), a - Weight::eps(2, 0, 1)}),
                 ValidationError);
}

TEST(SpanBasis, SpanBasisOverloadMatches)
{
    std::vector<Weight> b = {Weight::eps(2, 0, 0) - Weight::eps(2, 0, 1), Weight::eps(2, 0, 1)};
    auto nu = Weight::eps(2, 0, 0) + Weight::eps(2, 0, 1);
    auto c = in_positive_cone(nu, std::span<const Weight>(b), ConeRing::integer);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->coeffs, (std::vector<Rational>{1, 2}));
}
