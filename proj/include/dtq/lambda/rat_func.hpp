#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/half_twist_poly.hpp"

#include <optional>
#include <utility>

namespace dtq {

/// Reduced fraction num/den of HalfTwistPoly values.
///
/// Normal form: den is an ordinary polynomial in x with non-zero constant
/// term (powers of x live in the numerator), den has a positive leading
/// coefficient, and num/den share no common factor, integer content
/// included.  Equal values therefore have identical representations.
class RatFunc {
public:
    RatFunc() : den_(1) {}
    RatFunc(long c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    RatFunc(const Integer& c) : num_(c), den_(1) {} // NOLINT(google-explicit-constructor)
    RatFunc(HalfTwistPoly p) : num_(std::move(p)), den_(1) {} // NOLINT(google-explicit-constructor)
    RatFunc(const Rational& r) : num_(r.get_num()), den_(r.get_den()) {} // NOLINT(google-explicit-constructor)

    RatFunc(HalfTwistPoly num, HalfTwistPoly den)
    {
        if (den.is_zero())
            fail(ErrorCode::DomainError, "zero denominator");
        num_ = std::move(num);
        den_ = std::move(den);
        normalize();
    }

    [[nodiscard]] const HalfTwistPoly& num() const noexcept { return num_; }
    [[nodiscard]] const HalfTwistPoly& den() const noexcept { return den_; }

    [[nodiscard]] bool is_zero() const noexcept { return num_.is_zero(); }
    [[nodiscard]] bool is_one() const { return den_ == HalfTwistPoly(1) && num_ == HalfTwistPoly(1); }
    [[nodiscard]] bool is_polynomial() const { return den_ == HalfTwistPoly(1); }
    /// Polynomial with rational coefficients (denominator a constant).
    [[nodiscard]] bool has_constant_den() const noexcept { return den_.is_constant(); }

    [[nodiscard]] HalfTwistPoly to_poly() const
    {
        if (!is_polynomial())
            fail(ErrorCode::NotPolynomial, "value is not a Laurent polynomial");
        return num_;
    }

    /// Value at x = 1 when the denominator does not vanish there.
    [[nodiscard]] std::optional<Rational> eval_at_one() const
    {
        Integer d = den_.eval_at_one();
        if (d == 0)
            return std::nullopt;
        Rational r(num_.eval_at_one(), d);
        r.canonicalize();
        return r;
    }

    [[nodiscard]] RatFunc adams(unsigned k) const
    {
        // x -> x^k preserves coprimality, content, valuation and leading sign
        RatFunc r;
        r.num_ = num_.adams(k);
        r.den_ = den_.adams(k);
        return r;
    }

    [[nodiscard]] RatFunc shifted(int k) const
    {
        RatFunc r = *this;
        r.num_ = num_.shifted(k);
        return r;
    }

    [[nodiscard]] RatFunc inverse() const
    {
        if (is_zero())
            fail(ErrorCode::DomainError, "inverse of zero");
        RatFunc r;
        const int v = num_.low_exponent();
        r.num_ = den_.shifted(-v);
        r.den_ = num_.shifted(-v);
        if (r.den_.leading_coefficient() < 0) {
            r.num_ = -r.num_;
            r.den_ = -r.den_;
        }
        return r;
    }

    [[nodiscard]] RatFunc scaled(const Rational& s) const
    {
        if (s == 0 || is_zero())
            return {};
        RatFunc r;
        r.num_ = num_ * HalfTwistPoly(Integer(s.get_num()));
        r.den_ = den_ * HalfTwistPoly(Integer(s.get_den()));
        r.reduce_content();
        return r;
    }

    RatFunc operator-() const
    {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        RatFunc r;
        if (a.is_polynomial() && b.is_polynomial()) {
            r.num_ = a.num_ * b.num_;
            return r;
        }
        HalfTwistPoly an = a.num_, ad = a.den_, bn = b.num_, bd = b.den_;
        cancel(an, bd);
        cancel(bn, ad);
        r.num_ = an * bn;
        r.den_ = ad * bd;
        return r;
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        RatFunc r;
        if (a.den_ == b.den_) {
            r.num_ = a.num_ + b.num_;
            r.den_ = a.den_;
            if (!r.is_polynomial())
                r.normalize();
            return r;
        }
        HalfTwistPoly g = gcd(a.den_, b.den_);
        HalfTwistPoly ad = *divide_exact(a.den_, g);
        HalfTwistPoly bd = *divide_exact(b.den_, g);
        r.num_ = a.num_ * bd + b.num_ * ad;
        if (r.num_.is_zero())
            return {};
        r.den_ = a.den_ * bd;
        if (!(g == HalfTwistPoly(1))) {
            HalfTwistPoly h = gcd(r.num_, g);
            if (!(h == HalfTwistPoly(1))) {
                r.num_ = *divide_exact(r.num_, h);
                r.den_ = *divide_exact(r.den_, h);
            }
        }
        return r;
    }

    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    HalfTwistPoly num_;
    HalfTwistPoly den_;

    static void cancel(HalfTwistPoly& n, HalfTwistPoly& d)
    {
        if (d == HalfTwistPoly(1))
            return;
        HalfTwistPoly g = gcd(n, d);
        if (g == HalfTwistPoly(1))
            return;
        n = *divide_exact(n, g);
        d = *divide_exact(d, g);
    }

    void normalize()
    {
        if (num_.is_zero()) {
            den_ = HalfTwistPoly(1);
            return;
        }
        const int v = den_.low_exponent();
        if (v != 0) {
            num_ = num_.shifted(-v);
            den_ = den_.shifted(-v);
        }
        cancel(num_, den_);
        if (den_.leading_coefficient() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    void reduce_content()
    {
        Integer g = gcd(num_.content(), den_.content());
        if (den_.leading_coefficient() < 0)
            g = -g;
        if (g != 1) {
            num_ = *divide_exact(num_, HalfTwistPoly(g));
            den_ = *divide_exact(den_, HalfTwistPoly(g));
        }
    }
};

} // namespace dtq
