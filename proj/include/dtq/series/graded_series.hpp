#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/rat_func.hpp"
#include "dtq/series/dim_vector.hpp"

#include <map>
#include <vector>

namespace dtq {

/// Truncated N^I-graded series with RatFunc coefficients.  Only gradings
/// with |d| <= truncation are meaningful; zero coefficients are not stored.
class GradedSeries {
public:
    using Map = std::map<DimVector, RatFunc>;

    GradedSeries() = default;
    GradedSeries(std::size_t arity, int truncation) : arity_(arity), trunc_(truncation)
    {
        if (truncation < 0)
            fail(ErrorCode::DomainError, "truncation must be non-negative");
    }

    static GradedSeries unit(std::size_t arity, int truncation)
    {
        GradedSeries s(arity, truncation);
        s.set(DimVector(arity), RatFunc(1));
        return s;
    }

    [[nodiscard]] std::size_t arity() const noexcept { return arity_; }
    [[nodiscard]] int truncation() const noexcept { return trunc_; }
    [[nodiscard]] const Map& coefficients() const noexcept { return c_; }
    [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }

    [[nodiscard]] RatFunc coeff(const DimVector& d) const
    {
        check(d);
        auto it = c_.find(d);
        return it == c_.end() ? RatFunc() : it->second;
    }

    [[nodiscard]] const RatFunc* find(const DimVector& d) const
    {
        auto it = c_.find(d);
        return it == c_.end() ? nullptr : &it->second;
    }

    void set(const DimVector& d, RatFunc v)
    {
        check(d);
        if (v.is_zero())
            c_.erase(d);
        else
            c_.insert_or_assign(d, std::move(v));
    }

    void add_to(const DimVector& d, const RatFunc& v)
    {
        check(d);
        if (v.is_zero())
            return;
        auto [it, inserted] = c_.try_emplace(d, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero())
                c_.erase(it);
        }
    }

    [[nodiscard]] GradedSeries truncated(int n) const
    {
        GradedSeries s(arity_, std::min(n, trunc_));
        for (const auto& [d, v] : c_)
            if (d.total() <= s.trunc_)
                s.c_.emplace(d, v);
        return s;
    }

    /// Same coefficients, higher truncation (new gradings are zero).
    [[nodiscard]] GradedSeries extended(int n) const
    {
        GradedSeries s = *this;
        s.trunc_ = std::max(n, trunc_);
        return s;
    }

    template <class F>
    [[nodiscard]] GradedSeries map_coefficients(F f) const
    {
        GradedSeries s(arity_, trunc_);
        for (const auto& [d, v] : c_)
            s.set(d, f(d, v));
        return s;
    }

    [[nodiscard]] GradedSeries scaled(const RatFunc& k) const
    {
        return map_coefficients([&](const DimVector&, const RatFunc& v) { return k * v; });
    }

    GradedSeries operator-() const
    {
        return map_coefficients([](const DimVector&, const RatFunc& v) { return -v; });
    }

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b)
    {
        same_arity(a, b);
        GradedSeries s = a.truncated(b.trunc_);
        for (const auto& [d, v] : b.c_)
            if (d.total() <= s.trunc_)
                s.add_to(d, v);
        return s;
    }

    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) { return a + (-b); }

    /// Equal arity, truncation and coefficients.
    friend bool operator==(const GradedSeries& a, const GradedSeries& b) = default;

    static void same_arity(const GradedSeries& a, const GradedSeries& b)
    {
        if (a.arity_ != b.arity_)
            fail(ErrorCode::ArityMismatch, "series of different arity");
    }

private:
    std::size_t arity_ = 0;
    int trunc_ = 0;
    Map c_;

    void check(const DimVector& d) const
    {
        if (d.arity() != arity_)
            fail(ErrorCode::ArityMismatch, "grading " + d.to_string() + " has wrong arity");
        if (d.total() > trunc_)
            fail(ErrorCode::DomainError, "grading " + d.to_string() + " beyond truncation");
    }
};

/// Coefficientwise equality on all |d| <= n.
inline bool agree_up_to(const GradedSeries& a, const GradedSeries& b, int n)
{
    return a.truncated(n).coefficients() == b.truncated(n).coefficients();
}

} // namespace dtq
