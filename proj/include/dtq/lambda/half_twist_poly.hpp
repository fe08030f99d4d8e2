#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/upoly.hpp"

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace dtq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Integer Laurent polynomial in x = -L^{1/2}.
///
/// The monomial c*x^n stands for c*(-1)^n*(L^{1/2})^n, so x^2 = L and the
/// Adams operations act by x -> x^k without signs.  Storage is dense from the
/// lowest to the highest non-zero exponent; the zero polynomial is empty.
class HalfTwistPoly {
public:
    HalfTwistPoly() = default;
    HalfTwistPoly(long c) { set_constant(Integer(c)); } // NOLINT(google-explicit-constructor)
    HalfTwistPoly(const Integer& c) { set_constant(c); } // NOLINT(google-explicit-constructor)

    static HalfTwistPoly monomial(const Integer& c, int exponent)
    {
        HalfTwistPoly p(c);
        if (!p.is_zero())
            p.low_ = exponent;
        return p;
    }
    /// x = -L^{1/2}
    static HalfTwistPoly x() { return monomial(1, 1); }
    /// L^{1/2} = -x
    static HalfTwistPoly l_half() { return monomial(-1, 1); }
    /// L^k = x^{2k}
    static HalfTwistPoly l_pow(int k) { return monomial(1, 2 * k); }

    static HalfTwistPoly from_dense(int low, std::vector<Integer> coeffs)
    {
        HalfTwistPoly p;
        p.low_ = low;
        p.c_ = std::move(coeffs);
        p.normalize();
        return p;
    }

    /// Builds from (exponent in x, coefficient) pairs; repeated exponents add up.
    static HalfTwistPoly from_terms(std::span<const std::pair<int, Integer>> terms)
    {
        HalfTwistPoly p;
        for (const auto& [e, c] : terms)
            p += monomial(c, e);
        return p;
    }

    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
    [[nodiscard]] int low_exponent() const noexcept { return low_; }
    [[nodiscard]] int high_exponent() const noexcept { return low_ + static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] const std::vector<Integer>& dense() const noexcept { return c_; }

    [[nodiscard]] Integer coeff(int e) const
    {
        if (is_zero() || e < low_ || e > high_exponent())
            return 0;
        return c_[static_cast<std::size_t>(e - low_)];
    }

    [[nodiscard]] const Integer& leading_coefficient() const { return c_.back(); }

    [[nodiscard]] bool is_constant() const noexcept { return is_zero() || (c_.size() == 1 && low_ == 0); }
    [[nodiscard]] bool is_monomial() const noexcept { return c_.size() == 1; }

    /// Non-zero terms in ascending exponent order.
    [[nodiscard]] std::vector<std::pair<int, Integer>> terms() const
    {
        std::vector<std::pair<int, Integer>> out;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (c_[i] != 0)
                out.emplace_back(low_ + static_cast<int>(i), c_[i]);
        return out;
    }

    [[nodiscard]] bool only_even_exponents() const
    {
        for (const auto& [e, c] : terms())
            if (e % 2 != 0)
                return false;
        return true;
    }

    [[nodiscard]] HalfTwistPoly shifted(int k) const
    {
        HalfTwistPoly p = *this;
        if (!p.is_zero())
            p.low_ += k;
        return p;
    }

    /// Adams operation psi^k: x -> x^k.
    [[nodiscard]] HalfTwistPoly adams(unsigned k) const
    {
        if (k == 1 || is_zero())
            return *this;
        HalfTwistPoly p;
        const int kk = static_cast<int>(k);
        p.low_ = low_ * kk;
        p.c_.assign((c_.size() - 1) * k + 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            p.c_[i * k] = c_[i];
        return p;
    }

    /// Value at x = 1, i.e. L^{1/2} -> -1.
    [[nodiscard]] Integer eval_at_one() const
    {
        Integer s = 0;
        for (const auto& c : c_)
            s += c;
        return s;
    }

    /// Value at L = q for an even-exponent polynomial.
    [[nodiscard]] Rational eval_at_L(const Rational& q) const
    {
        if (!only_even_exponents())
            fail(ErrorCode::DomainError, "eval_at_L needs even exponents in x");
        Rational s = 0;
        for (const auto& [e, c] : terms()) {
            Rational pw = 1;
            const int k = e / 2;
            for (int i = 0; i < (k < 0 ? -k : k); ++i)
                pw *= q;
            if (k < 0)
                pw = 1 / pw;
            s += Rational(c) * pw;
        }
        return s;
    }

    [[nodiscard]] Integer content() const { return detail::content(c_); }

    HalfTwistPoly operator-() const
    {
        HalfTwistPoly p = *this;
        for (auto& c : p.c_)
            c = -c;
        return p;
    }

    HalfTwistPoly& operator+=(const HalfTwistPoly& o) { return add(o, false); }
    HalfTwistPoly& operator-=(const HalfTwistPoly& o) { return add(o, true); }
    HalfTwistPoly& operator*=(const HalfTwistPoly& o)
    {
        *this = *this * o;
        return *this;
    }

    friend HalfTwistPoly operator+(HalfTwistPoly a, const HalfTwistPoly& b) { return a += b; }
    friend HalfTwistPoly operator-(HalfTwistPoly a, const HalfTwistPoly& b) { return a -= b; }
    friend HalfTwistPoly operator*(const HalfTwistPoly& a, const HalfTwistPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        HalfTwistPoly p;
        p.low_ = a.low_ + b.low_;
        p.c_ = detail::mul(a.c_, b.c_);
        p.normalize();
        return p;
    }

    friend bool operator==(const HalfTwistPoly& a, const HalfTwistPoly& b)
    {
        return a.c_ == b.c_ && (a.is_zero() || a.low_ == b.low_);
    }

    /// Total order used for map keys and canonical output; not a ring order.
    friend std::strong_ordering operator<=>(const HalfTwistPoly& a, const HalfTwistPoly& b)
    {
        if (auto c = a.c_.size() <=> b.c_.size(); c != 0)
            return c;
        if (a.is_zero())
            return std::strong_ordering::equal;
        if (auto c = a.low_ <=> b.low_; c != 0)
            return c;
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            const int r = cmp(a.c_[i], b.c_[i]);
            if (r != 0)
                return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    /// Exact quotient in Z[x, x^{-1}], or nullopt when b does not divide a.
    friend std::optional<HalfTwistPoly> divide_exact(const HalfTwistPoly& a, const HalfTwistPoly& b)
    {
        if (b.is_zero())
            fail(ErrorCode::DomainError, "division by zero polynomial");
        if (a.is_zero())
            return HalfTwistPoly{};
        auto q = detail::divide_exact(a.c_, b.c_);
        if (!q)
            return std::nullopt;
        return from_dense(a.low_ - b.low_, std::move(*q));
    }

    /// gcd in Z[x, x^{-1}], normalized to a genuine polynomial with non-zero
    /// constant term and positive leading coefficient (monomials are units).
    friend HalfTwistPoly gcd(const HalfTwistPoly& a, const HalfTwistPoly& b)
    {
        return from_dense(0, detail::gcd(a.c_, b.c_));
    }

private:
    int low_ = 0;
    std::vector<Integer> c_;

    void set_constant(const Integer& c)
    {
        if (c != 0)
            c_.push_back(c);
    }

    void normalize()
    {
        detail::trim(c_);
        std::size_t lead_zeros = 0;
        while (lead_zeros < c_.size() && c_[lead_zeros] == 0)
            ++lead_zeros;
        if (lead_zeros > 0) {
            c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead_zeros));
            low_ += static_cast<int>(lead_zeros);
        }
        if (c_.empty())
            low_ = 0;
    }

    HalfTwistPoly& add(const HalfTwistPoly& o, bool subtract)
    {
        if (o.is_zero())
            return *this;
        if (is_zero()) {
            *this = subtract ? -o : o;
            return *this;
        }
        const int lo = std::min(low_, o.low_);
        const int hi = std::max(high_exponent(), o.high_exponent());
        if (lo < low_) {
            c_.insert(c_.begin(), static_cast<std::size_t>(low_ - lo), Integer(0));
            low_ = lo;
        }
        c_.resize(static_cast<std::size_t>(hi - lo + 1), Integer(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            auto& dst = c_[static_cast<std::size_t>(o.low_ - lo) + i];
            if (subtract)
                dst -= o.c_[i];
            else
                dst += o.c_[i];
        }
        normalize();
        return *this;
    }
};

} // namespace dtq
