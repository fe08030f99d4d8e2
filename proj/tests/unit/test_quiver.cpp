#include "dtq/quiver/generating.hpp"
#include "support/builders.hpp"

#include <gtest/gtest.h>

using namespace dtq;
using namespace dtq::test;

namespace {

HalfTwistPoly neg_x(int k) { return detail::neg_x_pow(k); }

Quiver two_cycle() { return Quiver({"1", "2"}, {{0, 1}, {1, 0}}); }

} // namespace

TEST(EulerForm, Examples)
{
    EXPECT_EQ(euler_form(Quiver::point(), DimVector{2}, DimVector{3}), 6);
    for (int d = 0; d < 4; ++d)
        for (int e = 0; e < 4; ++e)
            EXPECT_EQ(euler_form(Quiver::jordan(), DimVector{d}, DimVector{e}), 0);
    EXPECT_EQ(euler_form(Quiver::k1(), DimVector{1, 0}, DimVector{0, 1}), -1);
    EXPECT_EQ(euler_form(Quiver::k1(), DimVector{0, 1}, DimVector{1, 0}), 0);
    EXPECT_THROW(euler_form(Quiver::k1(), DimVector{1}, DimVector{0, 1}), Error);
}

TEST(EulerForm, Bilinear)
{
    Quiver q({"a", "b", "c"}, {{1, 2, 0}, {0, 0, 1}, {3, 0, 2}});
    Random rng(1);
    for (int i = 0; i < 50; ++i) {
        DimVector d{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)};
        DimVector d2{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)};
        DimVector e{rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)};
        EXPECT_EQ(euler_form(q, d + d2, e), euler_form(q, d, e) + euler_form(q, d2, e));
        EXPECT_EQ(euler_form(q, e, d + d2), euler_form(q, e, d) + euler_form(q, e, d2));
        EXPECT_EQ(antisym_form(q, d, e), -antisym_form(q, e, d));
        EXPECT_EQ(antisym_form(q, d, d), 0);
        EXPECT_EQ(twist_form(q)(d, e), antisym_form(q, d, e));
    }
}

TEST(AntisymForm, Examples)
{
    EXPECT_EQ(antisym_form(Quiver::k1(), DimVector{1, 0}, DimVector{0, 1}), -1);
    EXPECT_EQ(antisym_form(two_cycle(), DimVector{1, 2}, DimVector{3, 1}), 0);
    EXPECT_TRUE(twist_form(Quiver::loops(3)).is_zero());
    EXPECT_TRUE(twist_form(two_cycle()).is_zero());
}

TEST(IsSymmetric, Examples)
{
    EXPECT_TRUE(is_symmetric(Quiver::loops(4)));
    EXPECT_FALSE(is_symmetric(Quiver::k1()));
    EXPECT_TRUE(is_symmetric(two_cycle()));
}

TEST(StackSeries, Examples)
{
    auto p = stack_series(Quiver::point(), 5);
    for (int d = 0; d <= 5; ++d)
        EXPECT_EQ(p.coeff(DimVector{d}), frac(neg_x(d * d), gl_class(static_cast<unsigned>(d))));
    EXPECT_EQ(stack_series(Quiver::jordan(), 2).coeff(DimVector{1}), frac(L, L - ONE));
    for (int m = 0; m <= 4; ++m)
        EXPECT_EQ(stack_series(Quiver::loops(m), 1).coeff(DimVector{1}), frac(neg_x(m + 1), L - ONE));
    EXPECT_EQ(stack_series(Quiver::k1(), 3).coeff(DimVector{0, 0}), RatFunc(1));
}

TEST(StackSeries, DenominatorsDivideGaugeClass)
{
    for (const auto& q : {Quiver::k1(), two_cycle(), Quiver::loops(2)}) {
        auto a = stack_series(q, 4);
        for (const auto& [d, v] : a.coefficients())
            EXPECT_TRUE((v * RatFunc(gauge_class(d))).is_polynomial());
    }
}

TEST(FramedSeries, PointQuiverBinomial)
{
    for (int f = 0; f <= 4; ++f) {
        auto z = framed_series(Quiver::point(), {{f}}, 6);
        for (int d = 0; d <= 6; ++d) {
            RatFunc want = d <= f ? RatFunc(neg_x(d * d) * gauss_binomial(static_cast<unsigned>(f), static_cast<unsigned>(d))) : RatFunc();
            EXPECT_EQ(z.coeff(DimVector{d}), want) << f << "," << d;
        }
    }
}

TEST(FramedSeries, Examples)
{
    EXPECT_EQ(framed_series(Quiver::jordan(), {{1}}, 3).coeff(DimVector{1}), RatFunc(L));
    EXPECT_EQ(framed_series(two_cycle(), {{1, 2}}, 3).coeff(DimVector{0, 0}), RatFunc(1));
    try {
        framed_series(Quiver::k1(), {{1, 1}}, 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
    }
}

TEST(HilbertMotive, Examples)
{
    for (unsigned f = 1; f <= 4; ++f)
        for (unsigned d = 0; d <= f; ++d)
            EXPECT_EQ(hilbert_motive(Quiver::point(), {{static_cast<int>(f)}}, DimVector{static_cast<int>(d)}), gauss_binomial(f, d));
    auto m = hilbert_motives(Quiver::jordan(), {{1}}, 5);
    for (int d = 0; d <= 5; ++d)
        EXPECT_EQ(m.at(DimVector{d}), HalfTwistPoly::l_pow(d));
    EXPECT_EQ(hilbert_motive(Quiver::loops(2), {{1}}, DimVector{0}), ONE);
}

TEST(HilbertMotive, IntegralForSeveralQuivers)
{
    EXPECT_NO_THROW(hilbert_motives(Quiver::loops(2), {{1}}, 5));
    EXPECT_NO_THROW(hilbert_motives(Quiver::loops(3), {{2}}, 4));
    EXPECT_NO_THROW(hilbert_motives(two_cycle(), {{1, 1}}, 4));
    // 2-loop, f = 1: the one-dimensional framed moduli space is A^2
    EXPECT_EQ(hilbert_motives(Quiver::loops(2), {{1}}, 1).at(DimVector{1}), L * L);
}

TEST(Slope, Examples)
{
    Stability th{{1, -1}};
    EXPECT_EQ(slope(th, DimVector{1, 1}), Rational(0));
    EXPECT_EQ(slope(th, DimVector{1, 0}), Rational(1));
    EXPECT_EQ(slope(th, DimVector{2, 1}), Rational(1, 3));
    EXPECT_EQ(slope(Stability{{0, 0}}, DimVector{3, 1}), Rational(0));
    try {
        slope(th, DimVector{0, 0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ZeroDimVector);
    }
}

TEST(HarderNarasimhan, TrivialStability)
{
    auto s = hn_semistable_series(Quiver::k1(), {{0, 0}}, 4);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s.begin()->second, stack_series(Quiver::k1(), 4));
}

TEST(HarderNarasimhan, K1WorkedExample)
{
    const Quiver q = Quiver::k1();
    auto s = hn_semistable_series(q, {{1, -1}}, 4);
    ASSERT_EQ(s.begin()->first, Rational(1));
    const auto& s0 = s.at(Rational(0));
    EXPECT_EQ(s0.coeff(DimVector{1, 1}), frac(LHALF, L - ONE));
    // explicit identity at (1,1)
    RatFunc u = frac(LHALF, L - ONE);
    EXPECT_EQ(stack_series(q, 2).coeff(DimVector{1, 1}), u + l_half_pow(-1) * u * u);
    EXPECT_TRUE(hn_reassembles(q, s, 4));
    // semistable at (1,1) times (L-1)^2 is the count q - 1
    EXPECT_EQ(s0.coeff(DimVector{1, 1}) * RatFunc(gauge_class(DimVector{1, 1})) * l_half_pow(-euler_form(q, DimVector{1, 1}, DimVector{1, 1})),
              RatFunc(L - ONE));
}

TEST(HarderNarasimhan, SupportOnOwnSlope)
{
    Quiver q({"1", "2", "3"}, {{0, 2, 1}, {0, 0, 1}, {0, 0, 0}});
    Stability th{{2, 0, -1}};
    auto s = hn_semistable_series(q, th, 4);
    for (const auto& [mu, f] : s)
        for (const auto& [d, v] : f.coefficients()) {
            if (!d.is_zero()) {
                EXPECT_EQ(slope(th, d), mu);
            }
        }
    EXPECT_TRUE(hn_reassembles(q, s, 4));
}

TEST(HarderNarasimhan, ReassemblyOnSeveralQuivers)
{
    EXPECT_TRUE(hn_reassembles(Quiver::k1(), hn_semistable_series(Quiver::k1(), {{-1, 1}}, 4), 4));
    Quiver kron({"1", "2"}, {{0, 2}, {0, 0}});
    EXPECT_TRUE(hn_reassembles(kron, hn_semistable_series(kron, {{1, 0}}, 4), 4));
    EXPECT_TRUE(hn_reassembles(two_cycle(), hn_semistable_series(two_cycle(), {{1, -1}}, 4), 4));
}
