#pragma once

#include "dtq/error.hpp"
#include "dtq/fqcount/count.hpp"
#include "dtq/lambda/half_twist_poly.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dtq {

/// Integer polynomial in q (ascending coefficients) with the point counts it
/// was interpolated from.
struct CountPolynomial {
    std::vector<Integer> coeffs;
    std::vector<std::pair<std::uint64_t, Integer>> samples;

    static CountPolynomial constant(const Integer& c) { return CountPolynomial{{c}, {}}; }

    [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    [[nodiscard]] Integer operator()(const Integer& q) const
    {
        Integer r = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            r = r * q + *it;
        return r;
    }

    bool operator==(const CountPolynomial& o) const { return coeffs == o.coeffs; }
};

/// Exact interpolation through the first degree_bound + 1 samples; every
/// remaining sample is a held-out check.
inline CountPolynomial interpolate(std::vector<std::pair<std::uint64_t, Integer>> samples, unsigned degree_bound)
{
    const std::size_t need = degree_bound + 1;
    if (samples.size() < need + 1)
        fail(ErrorCode::DomainError, "interpolation needs " + std::to_string(need + 1) + " samples");
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (samples[i].first == samples[j].first)
                fail(ErrorCode::DomainError, "interpolation samples must be distinct");

    // Newton divided differences
    std::vector<Rational> xs(need), dd(need);
    for (std::size_t i = 0; i < need; ++i) {
        xs[i] = Rational(Integer(static_cast<unsigned long>(samples[i].first)));
        dd[i] = Rational(samples[i].second);
    }
    for (std::size_t k = 1; k < need; ++k)
        for (std::size_t i = need - 1; i >= k; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
            dd[i].canonicalize();
        }
    std::vector<Rational> poly{dd[need - 1]};
    for (std::size_t k = need - 1; k-- > 0;) {
        // poly = poly * (q - xs[k]) + dd[k]
        std::vector<Rational> next(poly.size() + 1);
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * xs[k];
        }
        next[0] += dd[k];
        poly = std::move(next);
    }

    CountPolynomial out;
    for (auto& c : poly) {
        c.canonicalize();
        if (c.get_den() != 1)
            fail(ErrorCode::NotPolynomialCount, "interpolated counting polynomial has non-integral coefficients");
        out.coeffs.push_back(c.get_num());
    }
    while (out.coeffs.size() > 1 && out.coeffs.back() == 0)
        out.coeffs.pop_back();
    for (const auto& [p, c] : samples)
        if (out(Integer(static_cast<unsigned long>(p))) != c)
            fail(ErrorCode::NotPolynomialCount, "held-out count at q = " + std::to_string(p) + " does not match");
    out.samples = std::move(samples);
    return out;
}

/// q -> L = x^2
inline HalfTwistPoly to_motive(const CountPolynomial& p)
{
    HalfTwistPoly r;
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        r += HalfTwistPoly::monomial(p.coeffs[i], 2 * static_cast<int>(i));
    return r;
}

/// Counts at the first degree_bound + 2 primes, then interpolates.
template <class Counter>
CountPolynomial sample_and_interpolate(Counter&& count_at, unsigned degree_bound)
{
    std::vector<std::pair<std::uint64_t, Integer>> samples;
    for (std::uint32_t p : first_primes(degree_bound + 2))
        samples.emplace_back(p, count_at(p));
    return interpolate(std::move(samples), degree_bound);
}

inline CountPolynomial count_polynomial(const Quiver& q, const RelationSpec& rel, const DimVector& d, unsigned degree_bound,
                                        const CountOptions& opt = {})
{
    return sample_and_interpolate([&](std::uint64_t p) { return count_reps(q, rel, d, p, opt); }, degree_bound);
}

inline CountPolynomial semistable_count_polynomial(const Quiver& q, const Stability& th, const DimVector& d,
                                                   unsigned degree_bound, const CountOptions& opt = {})
{
    return sample_and_interpolate([&](std::uint64_t p) { return count_semistable(q, th, d, p, opt); }, degree_bound);
}

} // namespace dtq
