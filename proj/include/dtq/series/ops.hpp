#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/lambda_ops.hpp"
#include "dtq/series/graded_series.hpp"

#include <vector>

namespace dtq {

/// Integer bilinear form <d,e> = sum_ij d_i M_ij e_j.
class TwistForm {
public:
    TwistForm() = default;
    explicit TwistForm(std::size_t arity) : m_(arity, std::vector<int>(arity, 0)) {}
    explicit TwistForm(std::vector<std::vector<int>> matrix) : m_(std::move(matrix))
    {
        for (const auto& row : m_)
            if (row.size() != m_.size())
                fail(ErrorCode::ArityMismatch, "twist form must be square");
    }

    [[nodiscard]] std::size_t arity() const noexcept { return m_.size(); }
    [[nodiscard]] const std::vector<std::vector<int>>& matrix() const noexcept { return m_; }

    [[nodiscard]] bool is_zero() const
    {
        for (const auto& row : m_)
            for (int v : row)
                if (v != 0)
                    return false;
        return true;
    }

    [[nodiscard]] int operator()(const DimVector& d, const DimVector& e) const
    {
        int s = 0;
        for (std::size_t i = 0; i < m_.size(); ++i) {
            if (d[i] == 0)
                continue;
            for (std::size_t j = 0; j < m_.size(); ++j)
                s += d[i] * m_[i][j] * e[j];
        }
        return s;
    }

private:
    std::vector<std::vector<int>> m_;
};

namespace detail {

/// (-x)^k, i.e. L^{k/2}
inline HalfTwistPoly neg_x_pow(int k) { return HalfTwistPoly::monomial(k % 2 == 0 ? 1 : -1, k); }

inline void check_form(const GradedSeries& a, const TwistForm& tw)
{
    if (tw.arity() != a.arity())
        fail(ErrorCode::ArityMismatch, "twist form arity differs from series arity");
}

} // namespace detail

/// L^{k/2} = (-x)^k
inline RatFunc l_half_pow(int k) { return RatFunc(detail::neg_x_pow(k)); }

/// Twisted product: (a*b)_d = sum_{d'+d''=d} L^{<d',d''>/2} a_{d'} b_{d''}.
inline GradedSeries star_mul(const GradedSeries& a, const GradedSeries& b, const TwistForm& tw)
{
    GradedSeries::same_arity(a, b);
    detail::check_form(a, tw);
    const bool twisted = !tw.is_zero();
    GradedSeries r(a.arity(), std::min(a.truncation(), b.truncation()));
    for (const auto& [d1, v1] : a.coefficients()) {
        const int t1 = d1.total();
        if (t1 > r.truncation())
            continue;
        for (const auto& [d2, v2] : b.coefficients()) {
            if (t1 + d2.total() > r.truncation())
                continue;
            RatFunc t = v1 * v2;
            if (twisted)
                t = t * RatFunc(detail::neg_x_pow(tw(d1, d2)));
            r.add_to(d1 + d2, t);
        }
    }
    return r;
}

inline GradedSeries mul(const GradedSeries& a, const GradedSeries& b)
{
    GradedSeries::same_arity(a, b);
    return star_mul(a, b, TwistForm(a.arity()));
}

/// Right inverse for the twisted product, solved degree by degree.
inline GradedSeries star_inverse(const GradedSeries& a, const TwistForm& tw)
{
    detail::check_form(a, tw);
    const DimVector zero(a.arity());
    const RatFunc* a0 = a.find(zero);
    if (!a0)
        fail(ErrorCode::NonInvertibleConstantTerm, "constant term is zero");
    const RatFunc a0_inv = a0->inverse();
    const bool twisted = !tw.is_zero();
    GradedSeries r(a.arity(), a.truncation());
    r.set(zero, a0_inv);
    for (const auto& d : gradings(a.arity(), a.truncation())) {
        if (d.is_zero())
            continue;
        RatFunc acc;
        for (const auto& [e, ve] : a.coefficients()) {
            if (e.is_zero() || !e.le(d))
                continue;
            const DimVector rest = d - e;
            const RatFunc* rv = r.find(rest);
            if (!rv)
                continue;
            RatFunc t = ve * *rv;
            if (twisted)
                t = t * RatFunc(detail::neg_x_pow(tw(e, rest)));
            acc += t;
        }
        if (!acc.is_zero())
            r.set(d, -(a0_inv * acc));
    }
    return r;
}

/// Adams operation on coefficients with regrading d -> k d.
inline GradedSeries psi_series(const GradedSeries& a, unsigned k)
{
    if (k == 0)
        fail(ErrorCode::DomainError, "Adams operation needs k >= 1");
    GradedSeries r(a.arity(), a.truncation());
    const int kk = static_cast<int>(k);
    for (const auto& [d, v] : a.coefficients())
        if (d.total() * kk <= a.truncation())
            r.set(d.scaled(kk), psi(v, k));
    return r;
}

inline int mobius(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

/// Plethystic exponential Sym(a) = exp(sum_k psi^k(a)/k), via the Euler
/// operator recurrence |d| E_d = sum_{e != 0} |e| P_e E_{d-e}.
inline GradedSeries sym(const GradedSeries& a)
{
    const DimVector zero(a.arity());
    if (a.find(zero))
        fail(ErrorCode::NonzeroConstantTerm, "Sym needs a vanishing constant term");
    const int n = a.truncation();

    // |e| P_e with P = sum_k psi^k(a) / k
    GradedSeries weighted(a.arity(), n);
    for (const auto& [d, v] : a.coefficients())
        for (int k = 1; k * d.total() <= n; ++k)
            weighted.add_to(d.scaled(k), psi(v, static_cast<unsigned>(k)).scaled(Rational(d.total())));

    GradedSeries e = GradedSeries::unit(a.arity(), n);
    for (const auto& d : gradings(a.arity(), n)) {
        if (d.is_zero())
            continue;
        RatFunc acc;
        for (const auto& [f, wf] : weighted.coefficients()) {
            if (!f.le(d))
                continue;
            if (const RatFunc* ev = e.find(d - f))
                acc += wf * *ev;
        }
        if (!acc.is_zero())
            e.set(d, acc.scaled(Rational(Integer(1), Integer(d.total()))));
    }
    return e;
}

/// log F for F_0 = 1: L_d = F_d - (1/|d|) sum_{e != 0, d} |e| L_e F_{d-e}.
inline GradedSeries log_series(const GradedSeries& f)
{
    const DimVector zero(f.arity());
    if (!(f.coeff(zero) == RatFunc(1)))
        fail(ErrorCode::ConstantTermNotOne, "logarithm needs constant term 1");
    const int n = f.truncation();
    GradedSeries l(f.arity(), n);
    for (const auto& d : gradings(f.arity(), n)) {
        if (d.is_zero())
            continue;
        RatFunc acc;
        for (const auto& [g, fg] : f.coefficients()) {
            if (g.is_zero() || g == d || !g.le(d))
                continue;
            const DimVector e = d - g;
            if (const RatFunc* le = l.find(e))
                acc += (*le * fg).scaled(Rational(e.total()));
        }
        RatFunc v = f.coeff(d);
        if (!acc.is_zero())
            v -= acc.scaled(Rational(Integer(1), Integer(d.total())));
        l.set(d, v);
    }
    return l;
}

/// Inverse of Sym: sum_k mu(k)/k psi^k(log F).
inline GradedSeries sym_inverse(const GradedSeries& f)
{
    const GradedSeries lg = log_series(f);
    GradedSeries r(f.arity(), f.truncation());
    for (const auto& [d, v] : lg.coefficients())
        for (int k = 1; k * d.total() <= f.truncation(); ++k) {
            const int mu = mobius(k);
            if (mu != 0)
                r.add_to(d.scaled(k), psi(v, static_cast<unsigned>(k)).scaled(Rational(Integer(mu), Integer(k))));
        }
    return r;
}

} // namespace dtq
