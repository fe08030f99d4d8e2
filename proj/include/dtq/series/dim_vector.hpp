#pragma once

#include "dtq/error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <string>
#include <vector>

namespace dtq {

/// Dimension vector d in N^I.  Ordering is lexicographic on entries, which
/// is also the serialization order.
class DimVector {
public:
    DimVector() = default;
    explicit DimVector(std::size_t arity) : v_(arity, 0) {}
    DimVector(std::initializer_list<int> entries) : v_(entries) { check(); }
    explicit DimVector(std::vector<int> entries) : v_(std::move(entries)) { check(); }

    [[nodiscard]] std::size_t arity() const noexcept { return v_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return v_[i]; }
    [[nodiscard]] const std::vector<int>& entries() const noexcept { return v_; }

    [[nodiscard]] int total() const { return std::accumulate(v_.begin(), v_.end(), 0); }
    [[nodiscard]] bool is_zero() const
    {
        for (int x : v_)
            if (x != 0)
                return false;
        return true;
    }

    /// gcd of the entries; 0 for the zero vector.
    [[nodiscard]] int gcd() const
    {
        int g = 0;
        for (int x : v_)
            g = std::gcd(g, x);
        return g;
    }

    [[nodiscard]] bool divisible_by(int k) const
    {
        for (int x : v_)
            if (x % k != 0)
                return false;
        return true;
    }

    [[nodiscard]] DimVector scaled(int k) const
    {
        DimVector r = *this;
        for (int& x : r.v_)
            x *= k;
        return r;
    }

    [[nodiscard]] DimVector divided(int k) const
    {
        DimVector r = *this;
        for (int& x : r.v_)
            x /= k;
        return r;
    }

    /// Componentwise d <= e.
    [[nodiscard]] bool le(const DimVector& e) const
    {
        for (std::size_t i = 0; i < v_.size(); ++i)
            if (v_[i] > e.v_[i])
                return false;
        return true;
    }

    friend DimVector operator+(DimVector a, const DimVector& b)
    {
        same_arity(a, b);
        for (std::size_t i = 0; i < a.v_.size(); ++i)
            a.v_[i] += b.v_[i];
        return a;
    }

    /// Requires b <= a componentwise.
    friend DimVector operator-(DimVector a, const DimVector& b)
    {
        same_arity(a, b);
        for (std::size_t i = 0; i < a.v_.size(); ++i) {
            a.v_[i] -= b.v_[i];
            if (a.v_[i] < 0)
                fail(ErrorCode::DomainError, "dimension vector difference is negative");
        }
        return a;
    }

    friend auto operator<=>(const DimVector&, const DimVector&) = default;
    friend bool operator==(const DimVector&, const DimVector&) = default;

    [[nodiscard]] std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (i)
                s += ',';
            s += std::to_string(v_[i]);
        }
        return s + ")";
    }

    static void same_arity(const DimVector& a, const DimVector& b)
    {
        if (a.arity() != b.arity())
            fail(ErrorCode::ArityMismatch, "dimension vectors of different arity");
    }

private:
    std::vector<int> v_;

    void check() const
    {
        for (int x : v_)
            if (x < 0)
                fail(ErrorCode::DomainError, "dimension vector entries must be non-negative");
    }
};

/// All d with |d| <= n, ordered by total degree and then lexicographically.
inline std::vector<DimVector> gradings(std::size_t arity, int n)
{
    std::vector<DimVector> out;
    std::vector<int> cur(arity, 0);
    for (int t = 0; t <= n; ++t) {
        std::vector<DimVector> level;
        auto rec = [&](auto&& self, std::size_t i, int left) -> void {
            if (i + 1 == arity) {
                cur[i] = left;
                level.emplace_back(cur);
                return;
            }
            for (int a = 0; a <= left; ++a) {
                cur[i] = a;
                self(self, i + 1, left - a);
            }
        };
        if (arity == 0) {
            if (t == 0)
                out.emplace_back(std::vector<int>{});
            continue;
        }
        rec(rec, 0, t);
        std::sort(level.begin(), level.end());
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace dtq
