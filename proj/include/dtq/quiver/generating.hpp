#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/lambda_ops.hpp"
#include "dtq/quiver/quiver.hpp"
#include "dtq/series/ops.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace dtq {

/// prod_i [GL(d_i)]
inline HalfTwistPoly gauge_class(const DimVector& d)
{
    HalfTwistPoly p(1);
    for (int di : d.entries())
        p *= gl_class(static_cast<unsigned>(di));
    return p;
}

/// A_d = (-x)^{chi(d,d)} L^{dim R_d} / prod_i [GL(d_i)]
inline RatFunc stack_coefficient(const Quiver& q, const DimVector& d)
{
    const int e = euler_form(q, d, d) + 2 * q.rep_dimension(d);
    return RatFunc(detail::neg_x_pow(e), gauge_class(d));
}

inline GradedSeries stack_series(const Quiver& q, int n)
{
    GradedSeries a(q.size(), n);
    for (const auto& d : gradings(q.size(), n))
        a.set(d, stack_coefficient(q, d));
    return a;
}

inline void require_symmetric(const Quiver& q)
{
    if (!is_symmetric(q))
        fail(ErrorCode::NotSymmetric, "operation requires a symmetric quiver");
}

/// Z_f = (L^{f.d} A_d)_d * A^{-1}
inline GradedSeries framed_series(const Quiver& q, const FramingVector& f, int n)
{
    require_symmetric(q);
    if (f.f.size() != q.size())
        fail(ErrorCode::ArityMismatch, "framing vector does not match the quiver");
    const GradedSeries a = stack_series(q, n);
    const GradedSeries shift = a.map_coefficients(
        [&](const DimVector& d, const RatFunc& v) { return v.shifted(2 * f.dot(d)); });
    return mul(shift, star_inverse(a, TwistForm(q.size())));
}

/// [M_{f,d}] = Z_{f,d} (-x)^{-chi(d,d)} for all |d| <= n.
inline std::map<DimVector, HalfTwistPoly> hilbert_motives(const Quiver& q, const FramingVector& f, int n)
{
    const GradedSeries z = framed_series(q, f, n);
    std::map<DimVector, HalfTwistPoly> out;
    for (const auto& d : gradings(q.size(), n)) {
        RatFunc v = z.coeff(d) * RatFunc(detail::neg_x_pow(-euler_form(q, d, d)));
        if (!v.is_polynomial())
            fail(ErrorCode::IntegralityFailure, "framed class at " + d.to_string() + " is not a polynomial");
        out.emplace(d, v.num());
    }
    return out;
}

inline HalfTwistPoly hilbert_motive(const Quiver& q, const FramingVector& f, const DimVector& d)
{
    q.check(d);
    return hilbert_motives(q, f, d.total()).at(d);
}

/// Semistable factors indexed by slope, largest slope first.
using SlopeSeries = std::map<Rational, GradedSeries, std::greater<>>;

/// Solves stack_series = S_{mu_1} * S_{mu_2} * ... (decreasing slopes,
/// twisted product) for the factors, one total degree at a time.
inline SlopeSeries hn_semistable_series(const Quiver& q, const Stability& th, int n)
{
    if (th.theta.size() != q.size())
        fail(ErrorCode::ArityMismatch, "stability does not match the quiver");
    const auto all = gradings(q.size(), n);
    const DimVector zero(q.size());
    const TwistForm tw = twist_form(q);
    const bool twisted = !tw.is_zero();

    std::vector<Rational> slopes;
    for (const auto& d : all)
        if (!d.is_zero())
            slopes.push_back(slope(th, d));
    std::sort(slopes.begin(), slopes.end(), std::greater<>());
    slopes.erase(std::unique(slopes.begin(), slopes.end()), slopes.end());
    auto index_of = [&](const Rational& mu) {
        return static_cast<std::size_t>(std::lower_bound(slopes.begin(), slopes.end(), mu, std::greater<>()) - slopes.begin());
    };
    const std::size_t ns = slopes.size();

    // S_e for e != 0, each on its own slope
    std::map<DimVector, RatFunc> s;
    // tail[e][i] = coefficient at e of S_{mu_i} * ... * S_{mu_last}; tail[e][ns] = [e == 0]
    std::map<DimVector, std::vector<RatFunc>> tail;
    tail[zero] = std::vector<RatFunc>(ns + 1, RatFunc(1));
    std::vector<std::vector<DimVector>> by_slope(ns);

    const GradedSeries a = stack_series(q, n);
    for (const auto& e : all) {
        if (e.is_zero())
            continue;
        const std::size_t own = index_of(slope(th, e));
        std::vector<RatFunc> t(ns + 1);
        for (std::size_t i = ns; i-- > 0;) {
            RatFunc acc = t[i + 1];
            for (const auto& ep : by_slope[i]) {
                if (!ep.le(e) || ep == e)
                    continue;
                const DimVector rest = e - ep;
                const RatFunc& r = tail.at(rest)[i + 1];
                if (r.is_zero())
                    continue;
                RatFunc term = s.at(ep) * r;
                if (twisted)
                    term = term * RatFunc(detail::neg_x_pow(tw(ep, rest)));
                acc += term;
            }
            t[i] = acc;
        }
        const RatFunc se = a.coeff(e) - t[0];
        for (std::size_t i = 0; i <= own; ++i)
            t[i] += se;
        s.emplace(e, se);
        by_slope[own].push_back(e);
        tail.emplace(e, std::move(t));
    }

    SlopeSeries out;
    for (std::size_t i = 0; i < ns; ++i) {
        GradedSeries f = GradedSeries::unit(q.size(), n);
        for (const auto& e : by_slope[i])
            f.set(e, s.at(e));
        out.emplace(slopes[i], std::move(f));
    }
    if (out.empty())
        out.emplace(Rational(0), GradedSeries::unit(q.size(), n));
    return out;
}

/// Ordered twisted product over decreasing slopes.
inline GradedSeries hn_product(const Quiver& q, const SlopeSeries& factors, int n)
{
    const TwistForm tw = twist_form(q);
    GradedSeries p = GradedSeries::unit(q.size(), n);
    for (const auto& [mu, f] : factors)
        p = star_mul(p, f, tw);
    return p;
}

/// The factorization reproduces stack_series exactly up to n.
inline bool hn_reassembles(const Quiver& q, const SlopeSeries& factors, int n)
{
    return hn_product(q, factors, n) == stack_series(q, n);
}

} // namespace dtq
