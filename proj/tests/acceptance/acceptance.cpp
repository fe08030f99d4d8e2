// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "dtq/dt/dt.hpp"
#include "dtq/fqcount/interpolate.hpp"
#include "dtq/lambda/symexpr.hpp"
#include "support/builders.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace dtq;
using dtq::test::Random;

namespace {

struct Verdict {
    bool ok = true;
    std::string why;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            why = what;
        }
    }
};

HalfTwistPoly l_pow_half(int k) { return detail::neg_x_pow(k); }

Rational at_q(const HalfTwistPoly& p, std::uint64_t q) { return p.eval_at_L(Rational(Integer(static_cast<unsigned long>(q)))); }

void single_support(Verdict& v, const DTResult& r, const HalfTwistPoly& dt1, int n, const std::string& name)
{
    v.require(r.all_integral(), name + ": non-integral DT value");
    v.require(r.value(DimVector{1}) == RatFunc(dt1), name + ": DT_1");
    for (int d = 2; d <= n; ++d)
        v.require(r.value(DimVector{d}).is_zero(), name + ": DT_" + std::to_string(d) + " nonzero");
}

Verdict point_quiver()
{
    Verdict v;
    single_support(v, dt_all(Quiver::point(), 8), HalfTwistPoly(1), 8, "point");
    for (int f = 1; f <= 3; ++f)
        v.require(ptdt_check(Quiver::point(), {{f}}, 8), "ptdt f=" + std::to_string(f));
    for (unsigned f = 1; f <= 4; ++f)
        for (unsigned d = 0; d <= f; ++d)
            v.require(hilbert_motive(Quiver::point(), {{static_cast<int>(f)}}, DimVector{static_cast<int>(d)}) == gauss_binomial(f, d),
                      "hilbert motive f=" + std::to_string(f) + " d=" + std::to_string(d));
    // sum_d chi(Z_{f,d}) t^d against the coefficients of (1 - t)^f
    for (int f = 1; f <= 4; ++f) {
        std::vector<long> binom{1};
        for (int i = 0; i < f; ++i) {
            std::vector<long> next(binom.size() + 1, 0);
            for (std::size_t k = 0; k < binom.size(); ++k) {
                next[k] += binom[k];
                next[k + 1] -= binom[k];
            }
            binom = next;
        }
        const auto z = framed_series(Quiver::point(), {{f}}, 8);
        for (int d = 0; d <= 8; ++d) {
            const long want = d <= f ? binom[static_cast<std::size_t>(d)] : 0;
            v.require(euler_specialize(z.coeff(DimVector{d})) == Rational(Integer(want)),
                      "Euler specialization f=" + std::to_string(f) + " d=" + std::to_string(d));
        }
    }
    return v;
}

Verdict jordan_quiver()
{
    Verdict v;
    single_support(v, dt_all(Quiver::jordan(), 8), HalfTwistPoly::l_half(), 8, "Jordan");
    const auto m = hilbert_motives(Quiver::jordan(), {{1}}, 5);
    for (int d = 0; d <= 5; ++d)
        v.require(m.at(DimVector{d}) == HalfTwistPoly::l_pow(d), "[M_1," + std::to_string(d) + "] != L^d");
    return v;
}

Verdict loop_quivers()
{
    Verdict v;
    for (int m : {2, 3}) {
        const auto r = dt_all(Quiver::loops(m), 5);
        v.require(r.value(DimVector{1}) == RatFunc(l_pow_half(m)), std::to_string(m) + "-loop DT_1");
        for (int d = 1; d <= 5; ++d)
            v.require(r.integral.at(DimVector{d}), std::to_string(m) + "-loop DT_" + std::to_string(d) + " not integral");
    }
    return v;
}

Verdict k1_wallcrossing()
{
    Verdict v;
    const Quiver q = Quiver::k1();
    const Stability th{{1, -1}};
    const auto s = hn_semistable_series(q, th, 4);
    for (const auto& d : gradings(2, 4)) {
        if (d.is_zero())
            continue;
        const RatFunc c = s.at(slope(th, d)).coeff(d) * RatFunc(gauge_class(d)) * RatFunc(detail::neg_x_pow(-euler_form(q, d, d)));
        v.require(c.is_polynomial(), "semistable class at " + d.to_string() + " times gauge group is not a polynomial");
        if (!c.is_polynomial())
            continue;
        for (std::uint64_t p : {2u, 3u, 5u})
            v.require(at_q(c.num(), p) == Rational(count_semistable(q, th, d, p)),
                      "semistable count at " + d.to_string() + " q=" + std::to_string(p));
    }
    v.require(hn_reassembles(q, s, 4), "reassembly");
    const auto dt = dt_slope(q, th, Rational(0), 4);
    v.require(dt.value(DimVector{1, 1}) == RatFunc(1), "slope-0 DT at (1,1)");
    v.require(dt.value(DimVector{2, 2}).is_zero(), "slope-0 DT at (2,2)");
    return v;
}

Verdict ptdt_cross()
{
    Verdict v;
    for (int f = 1; f <= 3; ++f)
        v.require(ptdt_check(Quiver::point(), {{f}}, 6), "point f=" + std::to_string(f));
    for (int f = 1; f <= 2; ++f)
        v.require(ptdt_check(Quiver::jordan(), {{f}}, 6), "Jordan f=" + std::to_string(f));
    v.require(ptdt_check(Quiver::loops(2), {{1}}, 6), "2-loop f=1");
    return v;
}

Verdict lambda_suite()
{
    Verdict v;
    for (unsigned k = 1; k <= 8; ++k) {
        const HalfTwistPoly sign(k % 2 == 1 ? 1 : -1);
        v.require(psi(HalfTwistPoly::l_half(), k) == sign * l_pow_half(static_cast<int>(k)), "Adams sign law k=" + std::to_string(k));
    }
    Random rng(2024);
    for (int i = 0; i < 100; ++i)
        v.require(check_sigma_group_hom(rng.ratfunc(), rng.ratfunc(), 6), "sigma group law, pair " + std::to_string(i));
    for (unsigned n = 0; n <= 60; ++n)
        for (unsigned m = 1; m <= std::max(n, 1u); ++m)
            for (unsigned p = 0; p * m <= n; ++p)
                v.require(check_bracket_split(m, p, n - p * m), "bracket identity n=" + std::to_string(n) + " m=" + std::to_string(m));
    for (unsigned m = 1; m <= 3; ++m)
        for (unsigned n = 0; n <= 3; ++n)
            v.require(check_eq1(m, n), "eq1 m=" + std::to_string(m) + " n=" + std::to_string(n));
    for (int i = 0; i < 100; ++i) {
        const auto a = rng.ratfunc(), b = rng.ratfunc();
        v.require(adams_special_check(a, b, static_cast<unsigned>(rng.uniform(1, 4)), static_cast<unsigned>(rng.uniform(1, 4))),
                  "Adams special tuple " + std::to_string(i));
    }
    for (unsigned m = 1; m <= 4; ++m)
        for (unsigned n = 1; m * n <= 4; ++n)
            v.require(verify_Pmn(compute_Pmn(m, n)), "P^{" + std::to_string(m) + "," + std::to_string(n) + "}");
    return v;
}

Verdict dimension_reduction()
{
    Verdict v;
    std::map<DimVector, CountPolynomial> ones;
    for (int d = 1; d <= 6; ++d)
        ones.emplace(DimVector{d}, CountPolynomial::constant(1));
    v.require(dimred_dt(Quiver::point(), ones, 6).values == dt_all(Quiver::jordan(), 6).values, "point base != Jordan DT");

    const Quiver base = Quiver::loops(2);
    const auto rel = parse_relations({"a*b - b*a"}, base);
    CountOptions opt;
    opt.threads = 0;
    std::map<DimVector, CountPolynomial> counts;
    counts.emplace(DimVector{1}, count_polynomial(base, rel, DimVector{1}, 2, opt));
    const auto c2 = count_polynomial(base, rel, DimVector{2}, 8, opt);
    v.require(c2.samples.size() == 10 && c2.samples.back().first == 29, "d=2 sampling primes");
    counts.emplace(DimVector{2}, c2);
    const auto r = dimred_dt(base, counts, 2);
    v.require(r.value(DimVector{1}) == RatFunc(l_pow_half(3)), "DT_1 != L^{3/2}");
    v.require(r.integral.at(DimVector{2}), "DT_2 not polynomial");
    return v;
}

Verdict joyce_song_transform()
{
    Verdict v;
    const auto bar = euler_dt(joyce_song(dt_all(Quiver::jordan(), 6)));
    for (int d = 1; d <= 6; ++d)
        v.require(bar.at(DimVector{d}) == Rational(Integer(-1), Integer(d * d)), "Jordan d=" + std::to_string(d));
    v.require(euler_divisor_sum_holds(dt_all(Quiver::point(), 8)), "divisor sum, point");
    v.require(euler_divisor_sum_holds(dt_all(Quiver::jordan(), 8)), "divisor sum, Jordan");
    v.require(euler_divisor_sum_holds(dt_all(Quiver::loops(2), 5)), "divisor sum, 2-loop");
    v.require(euler_divisor_sum_holds(dt_all(Quiver::loops(3), 5)), "divisor sum, 3-loop");
    return v;
}

struct Criterion {
    int id;
    const char* title;
    double limit_s; // <= 0: no runtime limit
    std::function<Verdict()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "point quiver DT, PT-DT, Hilbert classes, binomial formula", 1, point_quiver},
        {2, "Jordan quiver DT and Hilbert classes", 5, jordan_quiver},
        {3, "2- and 3-loop DT_1 and integrality to d=5", 60, loop_quivers},
        {4, "K_1 wall-crossing against point counts", 30, k1_wallcrossing},
        {5, "PT-DT cross-pipeline agreement", 0, ptdt_cross},
        {6, "lambda-ring identity suite", 0, lambda_suite},
        {7, "dimension reduction", 300, dimension_reduction},
        {8, "Joyce-Song transform and divisor sums", 0, joyce_song_transform},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v.ok = false;
            v.why = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (v.ok && c.limit_s > 0 && secs >= c.limit_s) {
            v.ok = false;
            v.why = "runtime limit " + std::to_string(c.limit_s) + " s exceeded";
        }
        std::printf("criterion %d: %s  %s  (%.2f s)%s%s\n", c.id, v.ok ? "PASS" : "FAIL", c.title, secs, v.ok ? "" : "  ", v.why.c_str());
        std::fflush(stdout);
        failed += v.ok ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
