#pragma once

#include "dtq/error.hpp"
#include "dtq/fqcount/interpolate.hpp"
#include "dtq/lambda/lambda_ops.hpp"
#include "dtq/quiver/generating.hpp"
#include "dtq/series/ops.hpp"

#include <map>
#include <numeric>
#include <string>

namespace dtq {

/// DT values per grading, one entry for every |d| <= truncation.
struct DTResult {
    std::size_t arity = 0;
    int truncation = 0;
    std::map<DimVector, RatFunc> values;
    std::map<DimVector, bool> integral;
    std::string provenance;

    [[nodiscard]] const RatFunc& value(const DimVector& d) const
    {
        const auto it = values.find(d);
        if (it == values.end())
            fail(ErrorCode::DomainError, "no DT value at " + d.to_string());
        return it->second;
    }

    [[nodiscard]] HalfTwistPoly poly(const DimVector& d) const { return value(d).to_poly(); }

    [[nodiscard]] bool all_integral() const
    {
        for (const auto& [d, ok] : integral)
            if (!ok)
                return false;
        return true;
    }
};

namespace detail {

/// L^{1/2} - L^{-1/2} = (1 - x^2)/x
inline RatFunc dt_normalizer() { return RatFunc(HalfTwistPoly(1) - HalfTwistPoly::l_pow(1), HalfTwistPoly::x()); }

inline DTResult make_result(std::size_t arity, int n, std::map<DimVector, RatFunc> vals, std::string provenance)
{
    DTResult r;
    r.arity = arity;
    r.truncation = n;
    r.provenance = std::move(provenance);
    for (const auto& d : gradings(arity, n)) {
        RatFunc v = d.is_zero() ? RatFunc() : vals[d];
        r.integral.emplace(d, v.is_polynomial());
        r.values.emplace(d, std::move(v));
    }
    return r;
}

inline DTResult dt_from_series(const GradedSeries& a, std::string provenance)
{
    const GradedSeries s = sym_inverse(a).scaled(dt_normalizer());
    std::map<DimVector, RatFunc> vals(s.coefficients().begin(), s.coefficients().end());
    return make_result(a.arity(), a.truncation(), std::move(vals), std::move(provenance));
}

} // namespace detail

/// A = Sym(DT / (L^{1/2} - L^{-1/2})) solved for DT.
inline DTResult dt_all(const Quiver& q, int n)
{
    require_symmetric(q);
    return detail::dt_from_series(stack_series(q, n), "dt_all");
}

/// DT of a single slope, from the semistable factor of that slope.
inline DTResult dt_slope(const Quiver& q, const Stability& th, const Rational& mu, int n)
{
    const SlopeSeries factors = hn_semistable_series(q, th, n);
    std::vector<DimVector> on_slope;
    for (const auto& d : gradings(q.size(), n))
        if (!d.is_zero() && slope(th, d) == mu)
            on_slope.push_back(d);
    for (const auto& d : on_slope)
        for (const auto& e : on_slope)
            if (antisym_form(q, d, e) != 0)
                fail(ErrorCode::NotSymmetricOnSlope, "Euler form is not symmetric on " + d.to_string() + ", " + e.to_string());
    const auto it = factors.find(mu);
    const GradedSeries s = it == factors.end() ? GradedSeries::unit(q.size(), n) : it->second;
    return detail::dt_from_series(s, "dt_slope(" + mu.get_str() + ")");
}

/// Z_f = Sym(sum_d L^{1/2} [P^{f.d-1}] DT_d t^d), checked exactly up to n.
inline bool ptdt_check(const Quiver& q, const FramingVector& f, int n)
{
    require_symmetric(q);
    if (f.f.size() != q.size())
        fail(ErrorCode::ArityMismatch, "framing vector does not match the quiver");
    if (f.is_zero())
        fail(ErrorCode::ZeroFraming, "framing vector must be nonzero");
    const DTResult dt = dt_all(q, n);
    GradedSeries g(q.size(), n);
    for (const auto& [d, v] : dt.values) {
        if (d.is_zero())
            continue;
        const int fd = f.dot(d);
        g.set(d, RatFunc(HalfTwistPoly::l_half() * q_bracket(static_cast<unsigned>(fd))) * v);
    }
    return sym(g) == framed_series(q, f, n);
}

/// [P^{gcd(d)-1}], the element the DT function is unique modulo.
inline HalfTwistPoly gcd_ambiguity(const DimVector& d)
{
    if (d.is_zero())
        fail(ErrorCode::ZeroDimVector, "gcd_ambiguity of the zero dimension vector");
    return q_bracket(static_cast<unsigned>(d.gcd()));
}

/// barDT_d = sum_{k | d} x^{k-1} / (k [k]_L) psi^k(DT_{d/k})
inline DTResult joyce_song(const DTResult& dt)
{
    std::map<DimVector, RatFunc> vals;
    for (const auto& [d, v] : dt.values) {
        if (d.is_zero())
            continue;
        const int g = d.gcd();
        RatFunc acc;
        for (int k = 1; k <= g; ++k) {
            if (g % k != 0)
                continue;
            const RatFunc& base = dt.value(d.divided(k));
            if (base.is_zero())
                continue;
            const auto ku = static_cast<unsigned>(k);
            const RatFunc w(HalfTwistPoly::monomial(1, k - 1), q_bracket(ku) * HalfTwistPoly(k));
            acc += w * psi(base, ku);
        }
        vals.emplace(d, std::move(acc));
    }
    return detail::make_result(dt.arity, dt.truncation, std::move(vals), "joyce_song(" + dt.provenance + ")");
}

/// Value at L^{1/2} = -1 of every grading.  Rational values are accepted
/// when their denominator does not vanish there.
inline std::map<DimVector, Rational> euler_dt(const DTResult& dt)
{
    std::map<DimVector, Rational> out;
    for (const auto& [d, v] : dt.values) {
        const auto e = v.eval_at_one();
        if (!e)
            fail(ErrorCode::NotPolynomial, "DT value at " + d.to_string() + " has a pole at L^{1/2} = -1");
        out.emplace(d, *e);
    }
    return out;
}

/// euler(barDT)_d = sum_{k | d} euler(DT)_{d/k} / k^2
inline bool euler_divisor_sum_holds(const DTResult& dt)
{
    const auto plain = euler_dt(dt);
    const auto bar = euler_dt(joyce_song(dt));
    for (const auto& [d, v] : bar) {
        Rational want = 0;
        if (!d.is_zero())
            for (int k = 1; k <= d.gcd(); ++k)
                if (d.gcd() % k == 0)
                    want += plain.at(d.divided(k)) / Rational(Integer(k * k));
        if (v != want)
            return false;
    }
    return true;
}

/// DT of Q_base with one loop added per vertex, from point counts of the
/// relation loci on Q_base.
inline DTResult dimred_dt(const Quiver& base, const std::map<DimVector, CountPolynomial>& counts, int n)
{
    require_symmetric(base);
    GradedSeries b(base.size(), n);
    for (const auto& d : gradings(base.size(), n)) {
        HalfTwistPoly c(1);
        if (const auto it = counts.find(d); it != counts.end())
            c = to_motive(it->second);
        else if (!d.is_zero())
            fail(ErrorCode::MissingCount, "no count supplied for " + d.to_string());
        int sq = 0;
        for (int di : d.entries())
            sq += di * di;
        b.set(d, RatFunc(detail::neg_x_pow(sq + euler_form(base, d, d)) * c, gauge_class(d)));
    }
    return detail::dt_from_series(b, "dimred_dt");
}

} // namespace dtq
