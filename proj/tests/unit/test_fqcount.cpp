#include "dtq/fqcount/interpolate.hpp"
#include "dtq/quiver/generating.hpp"
#include "support/builders.hpp"

#include <gtest/gtest.h>

using namespace dtq;
using namespace dtq::test;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::DomainError;
}

Integer z(long v) { return Integer(v); }

Quiver kronecker() { return Quiver({"1", "2"}, {{0, 2}, {0, 0}}); }

/// Brute-force commuting pairs of n x n matrices over F_p.
long commuting_pairs(int n, long p)
{
    const int e = n * n;
    long total = 1;
    for (int i = 0; i < 2 * e; ++i)
        total *= p;
    long count = 0;
    std::vector<long> v(2 * e);
    for (long idx = 0; idx < total; ++idx) {
        long r = idx;
        for (auto& x : v) {
            x = r % p;
            r /= p;
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i)
            for (int j = 0; j < n && ok; ++j) {
                long s = 0;
                for (int k = 0; k < n; ++k)
                    s += v[i * n + k] * v[e + k * n + j] - v[e + i * n + k] * v[k * n + j];
                ok = s % p == 0;
            }
        count += ok;
    }
    return count;
}

} // namespace

TEST(Primes, FirstPrimes)
{
    EXPECT_EQ(first_primes(10), (std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29}));
    EXPECT_TRUE(is_prime(2));
    EXPECT_FALSE(is_prime(1));
    EXPECT_FALSE(is_prime(91));
}

TEST(RelationParser, Parses)
{
    const Quiver q = Quiver::loops(2);
    auto r = parse_relation("a*b - b*a", q);
    ASSERT_EQ(r.terms.size(), 2u);
    EXPECT_EQ(r.terms[0].coeff, 1);
    EXPECT_EQ(r.terms[0].arrows, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(r.terms[1].coeff, -1);
    EXPECT_EQ(parse_relation("a^2", q).terms[0].arrows, (std::vector<std::size_t>{0, 0}));
    EXPECT_EQ(parse_relation("3 a*b + 2*b", q).terms[0].coeff, 3);
    EXPECT_EQ(parse_relation("a*b \xE2\x88\x92 b*a", q).terms[1].coeff, -1);
    EXPECT_TRUE(parse_relation("2a - 2*a", q).terms.empty());
}

TEST(RelationParser, Errors)
{
    const Quiver q = Quiver::loops(2);
    EXPECT_EQ(code_of([&] { parse_relation("", q); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_relation("a*", q); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_relation("a b", q); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_relation("3", q); }), ErrorCode::ParseError);
    EXPECT_EQ(code_of([&] { parse_relation("a*c", q); }), ErrorCode::MalformedRelation);
    EXPECT_EQ(code_of([&] { parse_relation("a*a", Quiver::k1()); }), ErrorCode::MalformedRelation);
    const Quiver two({"1", "2"}, {{0, 1}, {1, 0}});
    EXPECT_NO_THROW(parse_relation("a*b", two));
    EXPECT_EQ(code_of([&] { parse_relation("a*b - b*a", two); }), ErrorCode::MalformedRelation);
}

TEST(CountReps, Examples)
{
    for (int d = 0; d <= 4; ++d)
        EXPECT_EQ(count_reps(Quiver::point(), {}, DimVector{d}, 3), 1);
    EXPECT_EQ(count_reps(Quiver::jordan(), {}, DimVector{1}, 5), 5);
    const auto nil = parse_relations({"a*a"}, Quiver::jordan());
    EXPECT_EQ(count_reps(Quiver::jordan(), nil, DimVector{2}, 2), 4);
    EXPECT_EQ(count_reps(Quiver::jordan(), nil, DimVector{2}, 3), 9);
    // rank <= 1: zero plus 7 lines times 3 planes containing them
    EXPECT_EQ(count_reps(Quiver::jordan(), nil, DimVector{3}, 2), 22);
}

TEST(CountReps, CommutingPairs)
{
    const Quiver q = Quiver::loops(2);
    const auto rel = parse_relations({"a*b - b*a"}, q);
    EXPECT_EQ(count_reps(q, rel, DimVector{1}, 5), 25);
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 2), commuting_pairs(2, 2));
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 3), commuting_pairs(2, 3));
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 2), 88);
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 3), 945);
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 5), 18625);
}

TEST(CountReps, QuadraticRelationsMatchBruteForce)
{
    // b appears twice in one term, so a is the solved arrow
    const Quiver q = Quiver::loops(2);
    const auto rel = parse_relations({"a*b*b - b*b*a"}, q);
    long brute = 0;
    const long p = 2;
    for (int idx = 0; idx < 256; ++idx) {
        long m[2][4];
        for (int k = 0; k < 8; ++k)
            m[k / 4][k % 4] = (idx >> k) & 1;
        auto mul = [&](const long* x, const long* y, long* out) {
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    out[i * 2 + j] = (x[i * 2] * y[j] + x[i * 2 + 1] * y[2 + j]) % p;
        };
        long bb[4], l[4], r[4];
        mul(m[1], m[1], bb);
        mul(m[0], bb, l);
        mul(bb, m[0], r);
        bool ok = true;
        for (int k = 0; k < 4; ++k)
            ok = ok && (l[k] - r[k]) % p == 0;
        brute += ok;
    }
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 2), brute);
}

TEST(CountReps, FreeQuiversArePowers)
{
    const Quiver q({"1", "2", "3"}, {{1, 1, 0}, {0, 0, 2}, {1, 0, 0}});
    for (const auto& d : gradings(3, 2)) {
        const auto p = count_polynomial(q, {}, d, static_cast<unsigned>(q.rep_dimension(d)));
        std::vector<Integer> want(static_cast<std::size_t>(q.rep_dimension(d)) + 1, 0);
        want.back() = 1;
        EXPECT_EQ(p.coeffs, want) << d.to_string();
    }
    EXPECT_EQ(count_polynomial(Quiver::k1(), {}, DimVector{2, 1}, 2).coeffs, (std::vector<Integer>{0, 0, 1}));
}

TEST(CountReps, Budget)
{
    CountOptions tiny;
    tiny.budget = 100;
    const auto nil = parse_relations({"a*a"}, Quiver::jordan());
    EXPECT_EQ(code_of([&] { count_reps(Quiver::jordan(), nil, DimVector{2}, 5, tiny); }), ErrorCode::BudgetExceeded);
    // the solved arrow does not count against the budget
    const Quiver q = Quiver::loops(2);
    tiny.budget = 81;
    EXPECT_EQ(count_reps(q, parse_relations({"a*b - b*a"}, q), DimVector{2}, 3, tiny), 945);
    EXPECT_EQ(code_of([&] { count_reps(Quiver::jordan(), {}, DimVector{1}, 4); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([&] { count_semistable(kronecker(), {{1, 0}}, DimVector{3, 3}, 5, tiny); }), ErrorCode::BudgetExceeded);
}

TEST(CountReps, DeterministicAcrossThreads)
{
    const Quiver q = Quiver::loops(2);
    const auto rel = parse_relations({"a*b - b*a"}, q);
    CountOptions one, many;
    many.threads = 7;
    EXPECT_EQ(count_reps(q, rel, DimVector{2}, 7, one), count_reps(q, rel, DimVector{2}, 7, many));
    EXPECT_EQ(count_semistable(kronecker(), {{1, 0}}, DimVector{2, 2}, 3, one),
              count_semistable(kronecker(), {{1, 0}}, DimVector{2, 2}, 3, many));
    EXPECT_EQ(count_invertible_matrices(3, 3, one), count_invertible_matrices(3, 3, many));
}

TEST(CountInvertible, MatchesGlClass)
{
    CountOptions opt;
    opt.threads = 0;
    for (unsigned n = 0; n <= 3; ++n)
        for (std::uint64_t p : {2u, 3u, 5u}) {
            const Integer brute = count_invertible_matrices(n, p, opt);
            EXPECT_EQ(Rational(brute), gl_class(n).eval_at_L(Rational(Integer(static_cast<unsigned long>(p))))) << n << "," << p;
        }
}

TEST(CountSemistable, Examples)
{
    const Quiver q = Quiver::k1();
    const Stability th{{1, -1}};
    EXPECT_EQ(count_semistable(q, th, DimVector{1, 1}, 3), 2);
    EXPECT_EQ(count_semistable(q, th, DimVector{1, 0}, 2), 1);
    EXPECT_EQ(count_semistable(q, th, DimVector{0, 1}, 2), 1);
    const std::vector<long> want11{1, 2, 4}, want22{6, 48, 480};
    const std::uint64_t ps[] = {2, 3, 5};
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(count_semistable(q, th, DimVector{1, 1}, ps[i]), want11[static_cast<std::size_t>(i)]);
        EXPECT_EQ(count_semistable(q, th, DimVector{2, 2}, ps[i]), want22[static_cast<std::size_t>(i)]);
    }
    // the vertex-2 subrepresentation always destabilizes
    EXPECT_EQ(count_semistable(q, {{-1, 1}}, DimVector{1, 1}, 5), 0);
}

TEST(CountSemistable, TrivialStabilityIsEverything)
{
    const Quiver q = kronecker();
    for (const auto& d : gradings(2, 3))
        EXPECT_EQ(count_semistable(q, {{0, 0}}, d, 2), count_reps(q, {}, d, 2)) << d.to_string();
}

TEST(CountSemistable, MatchesHarderNarasimhan)
{
    const std::vector<std::pair<Quiver, Stability>> cases{
        {Quiver::k1(), {{1, -1}}}, {kronecker(), {{1, 0}}}, {Quiver({"1", "2"}, {{0, 1}, {1, 0}}), {{1, -1}}}};
    for (const auto& [q, th] : cases) {
        const auto s = hn_semistable_series(q, th, 3);
        for (const auto& d : gradings(q.size(), 3)) {
            if (d.is_zero())
                continue;
            const RatFunc v = s.at(slope(th, d)).coeff(d) * RatFunc(gauge_class(d)) * RatFunc(detail::neg_x_pow(-euler_form(q, d, d)));
            ASSERT_TRUE(v.is_polynomial()) << d.to_string();
            for (std::uint64_t p : {2u, 3u}) {
                const Rational want = v.to_poly().eval_at_L(Rational(Integer(static_cast<unsigned long>(p))));
                EXPECT_EQ(Rational(count_semistable(q, th, d, p)), want) << d.to_string() << " q=" << p;
            }
        }
    }
}

TEST(Interpolate, Examples)
{
    auto jordan = count_polynomial(Quiver::jordan(), {}, DimVector{1}, 1);
    EXPECT_EQ(jordan.coeffs, (std::vector<Integer>{0, 1}));
    EXPECT_EQ(jordan.samples.size(), 3u);
    auto k1 = semistable_count_polynomial(Quiver::k1(), {{1, -1}}, DimVector{1, 1}, 1);
    EXPECT_EQ(k1.coeffs, (std::vector<Integer>{-1, 1}));
    auto c = interpolate({{2, z(7)}, {3, z(7)}, {5, z(7)}}, 0);
    EXPECT_EQ(c.coeffs, (std::vector<Integer>{7}));
    EXPECT_EQ(interpolate({{2, z(0)}, {3, z(0)}}, 0).coeffs, (std::vector<Integer>{0}));
}

TEST(Interpolate, RejectsNonPolynomialData)
{
    // 2^p is not a polynomial in p of degree <= 2
    EXPECT_EQ(code_of([] { interpolate({{2, z(4)}, {3, z(8)}, {5, z(32)}, {7, z(128)}}, 2); }), ErrorCode::NotPolynomialCount);
    // interpolant with half-integral coefficients
    EXPECT_EQ(code_of([] { interpolate({{2, z(1)}, {3, z(3)}, {5, z(10)}}, 2); }), ErrorCode::DomainError);
    EXPECT_EQ(code_of([] { interpolate({{2, z(1)}, {3, z(3)}, {5, z(10)}, {7, z(21)}}, 2); }), ErrorCode::NotPolynomialCount);
    EXPECT_EQ(code_of([] { interpolate({{2, z(1)}}, 0); }), ErrorCode::DomainError);
}

TEST(ToMotive, Examples)
{
    EXPECT_EQ(to_motive(CountPolynomial{{0, 1}, {}}), L);
    EXPECT_EQ(to_motive(CountPolynomial{{-1, 1}, {}}), L - ONE);
    EXPECT_EQ(to_motive(CountPolynomial{{0, 1, 1}, {}}), L * L + L);
    const CountPolynomial p{{3, -2, 0, 5}, {}};
    EXPECT_EQ(euler_specialize(to_motive(p)), p(1));
}
