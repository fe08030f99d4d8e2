#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/half_twist_poly.hpp"
#include "dtq/series/dim_vector.hpp"
#include "dtq/series/ops.hpp"

#include <string>
#include <vector>

namespace dtq {

struct Arrow {
    std::string label;
    std::size_t source = 0;
    std::size_t target = 0;
};

/// a, b, ..., z, aa, ab, ...
inline std::string default_arrow_label(std::size_t k)
{
    std::string s;
    ++k;
    while (k > 0) {
        --k;
        s.insert(s.begin(), static_cast<char>('a' + k % 26));
        k /= 26;
    }
    return s;
}

/// Finite quiver given by vertex labels and the arrow-count matrix
/// a[i][j] = #arrows i -> j (loops allowed).
class Quiver {
public:
    Quiver() = default;
    Quiver(std::vector<std::string> labels, std::vector<std::vector<int>> arrows)
        : labels_(std::move(labels)), a_(std::move(arrows))
    {
        if (a_.size() != labels_.size())
            fail(ErrorCode::ArityMismatch, "arrow matrix does not match vertex count");
        for (const auto& row : a_) {
            if (row.size() != labels_.size())
                fail(ErrorCode::ArityMismatch, "arrow matrix must be square");
            for (int v : row)
                if (v < 0)
                    fail(ErrorCode::DomainError, "arrow counts must be non-negative");
        }
    }

    static Quiver point() { return Quiver({"1"}, {{0}}); }
    static Quiver loops(int m) { return Quiver({"1"}, {{m}}); }
    static Quiver jordan() { return loops(1); }
    /// One arrow 1 -> 2.
    static Quiver k1() { return Quiver({"1", "2"}, {{0, 1}, {0, 0}}); }

    [[nodiscard]] std::size_t size() const noexcept { return labels_.size(); }
    [[nodiscard]] const std::vector<std::string>& labels() const noexcept { return labels_; }
    [[nodiscard]] const std::vector<std::vector<int>>& arrows() const noexcept { return a_; }
    [[nodiscard]] int arrows(std::size_t i, std::size_t j) const { return a_[i][j]; }

    [[nodiscard]] std::size_t arrow_count() const
    {
        std::size_t n = 0;
        for (const auto& row : a_)
            for (int v : row)
                n += static_cast<std::size_t>(v);
        return n;
    }

    /// Individual arrows, expanded row by row from the count matrix.  Labels
    /// default to a, b, c, ... unless set explicitly.
    [[nodiscard]] std::vector<Arrow> arrow_list() const
    {
        std::vector<Arrow> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                for (int k = 0; k < a_[i][j]; ++k) {
                    const std::size_t idx = out.size();
                    out.push_back({idx < arrow_labels_.size() ? arrow_labels_[idx] : default_arrow_label(idx), i, j});
                }
        return out;
    }

    void set_arrow_labels(std::vector<std::string> labels)
    {
        if (labels.size() != arrow_count())
            fail(ErrorCode::ArityMismatch, "arrow label count does not match the arrows");
        arrow_labels_ = std::move(labels);
    }

    /// Same quiver with `extra` loops added at every vertex.
    [[nodiscard]] Quiver with_loops(int extra) const
    {
        Quiver q = *this;
        q.arrow_labels_.clear();
        for (std::size_t i = 0; i < size(); ++i)
            q.a_[i][i] += extra;
        return q;
    }

    /// dim R_d = sum_ij a_ij d_i d_j
    [[nodiscard]] int rep_dimension(const DimVector& d) const
    {
        check(d);
        int s = 0;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                s += a_[i][j] * d[i] * d[j];
        return s;
    }

    void check(const DimVector& d) const
    {
        if (d.arity() != size())
            fail(ErrorCode::ArityMismatch, "dimension vector " + d.to_string() + " does not match the quiver");
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<int>> a_;
    std::vector<std::string> arrow_labels_;
};

/// chi(d,e) = sum_i d_i e_i - sum_ij a_ij d_i e_j
inline int euler_form(const Quiver& q, const DimVector& d, const DimVector& e)
{
    q.check(d);
    q.check(e);
    int s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        s += d[i] * e[i];
        for (std::size_t j = 0; j < q.size(); ++j)
            s -= q.arrows(i, j) * d[i] * e[j];
    }
    return s;
}

/// <d,e> = chi(d,e) - chi(e,d)
inline int antisym_form(const Quiver& q, const DimVector& d, const DimVector& e)
{
    return euler_form(q, d, e) - euler_form(q, e, d);
}

inline bool is_symmetric(const Quiver& q)
{
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (q.arrows(i, j) != q.arrows(j, i))
                return false;
    return true;
}

/// The antisymmetrized Euler form as a TwistForm.
inline TwistForm twist_form(const Quiver& q)
{
    std::vector<std::vector<int>> m(q.size(), std::vector<int>(q.size(), 0));
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j)
            m[i][j] = q.arrows(j, i) - q.arrows(i, j);
    return TwistForm(std::move(m));
}

struct Stability {
    std::vector<int> theta;
};

struct FramingVector {
    std::vector<int> f;

    [[nodiscard]] bool is_zero() const
    {
        for (int v : f)
            if (v != 0)
                return false;
        return true;
    }

    [[nodiscard]] int dot(const DimVector& d) const
    {
        if (d.arity() != f.size())
            fail(ErrorCode::ArityMismatch, "framing vector does not match dimension vector");
        int s = 0;
        for (std::size_t i = 0; i < f.size(); ++i)
            s += f[i] * d[i];
        return s;
    }
};

/// mu(d) = theta.d / |d|
inline Rational slope(const Stability& th, const DimVector& d)
{
    if (d.arity() != th.theta.size())
        fail(ErrorCode::ArityMismatch, "stability does not match dimension vector");
    if (d.is_zero())
        fail(ErrorCode::ZeroDimVector, "slope of the zero dimension vector");
    long s = 0;
    for (std::size_t i = 0; i < d.arity(); ++i)
        s += static_cast<long>(th.theta[i]) * d[i];
    Rational r(Integer(s), Integer(d.total()));
    r.canonicalize();
    return r;
}

} // namespace dtq
