#pragma once

#include "dtq/error.hpp"

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace dtq {

/// Sparse multivariate polynomial over Z with a fixed number of variables.
/// Keys are exponent vectors; std::map order is lex with variable 0 most
/// significant, so rbegin() is the lex-leading term.
class MultiPoly {
public:
    using Exponent = std::vector<int>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const mpz_class& c)
    {
        MultiPoly p(nvars);
        if (c != 0)
            p.terms_[Exponent(nvars, 0)] = c;
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t i)
    {
        MultiPoly p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    [[nodiscard]] std::size_t nvars() const noexcept { return nvars_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] const std::map<Exponent, mpz_class>& terms() const noexcept { return terms_; }

    void add_term(const Exponent& e, const mpz_class& c)
    {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        } else if (c == 0) {
            terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o)
    {
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        MultiPoly r(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }

    friend MultiPoly operator*(const mpz_class& s, MultiPoly p)
    {
        if (s == 0)
            return MultiPoly(p.nvars_);
        for (auto& [e, c] : p.terms_)
            c *= s;
        return p;
    }

    [[nodiscard]] MultiPoly pow(unsigned k) const
    {
        MultiPoly r = constant(nvars_, 1);
        for (unsigned i = 0; i < k; ++i)
            r = r * *this;
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) = default;

private:
    std::size_t nvars_ = 0;
    std::map<Exponent, mpz_class> terms_;
};

namespace detail {

/// h_k or e_k in variables [first, first + count) of an nvars-variable ring.
inline MultiPoly symmetric_basis(bool complete, unsigned k, std::size_t first, std::size_t count, std::size_t nvars)
{
    MultiPoly r(nvars);
    MultiPoly::Exponent e(nvars, 0);
    // enumerate exponent vectors on the block with total k
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == count) {
            if (left == 0)
                r.add_term(e, 1);
            return;
        }
        const unsigned cap = complete ? left : std::min(left, 1u);
        for (unsigned a = 0; a <= cap; ++a) {
            e[first + i] = static_cast<int>(a);
            self(self, i + 1, left - a);
        }
        e[first + i] = 0;
    };
    rec(rec, 0, k);
    return r;
}

} // namespace detail

/// Polynomial in h_1(y)..h_m(y), h_1(x)..h_{mn}(x).  Generator i < m is
/// h_{i+1}(y); generator m + j is h_{j+1}(x).
struct SymExpr {
    unsigned m = 0;
    unsigned n = 0;
    MultiPoly poly;

    [[nodiscard]] std::size_t y_count() const { return m; }
    [[nodiscard]] std::size_t x_count() const { return static_cast<std::size_t>(m) * n; }

    /// Substitutes complete homogeneous polynomials in y_1..y_m, x_1..x_{mn}.
    [[nodiscard]] MultiPoly expand() const
    {
        const std::size_t nv = y_count() + x_count();
        std::vector<MultiPoly> gen;
        for (unsigned k = 1; k <= y_count(); ++k)
            gen.push_back(detail::symmetric_basis(true, k, 0, y_count(), nv));
        for (unsigned k = 1; k <= x_count(); ++k)
            gen.push_back(detail::symmetric_basis(true, k, y_count(), x_count(), nv));
        MultiPoly out(nv);
        for (const auto& [e, c] : poly.terms()) {
            MultiPoly t = MultiPoly::constant(nv, c);
            for (std::size_t i = 0; i < e.size(); ++i)
                if (e[i] > 0)
                    t = t * gen[i].pow(static_cast<unsigned>(e[i]));
            out += t;
        }
        return out;
    }

    [[nodiscard]] std::string to_string() const
    {
        if (poly.is_zero())
            return "0";
        std::string s;
        for (auto it = poly.terms().rbegin(); it != poly.terms().rend(); ++it) {
            const auto& [e, c] = *it;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0)
                    continue;
                if (!mono.empty())
                    mono += '*';
                mono += i < m ? "h" + std::to_string(i + 1) + "(y)" : "h" + std::to_string(i - m + 1) + "(x)";
                if (e[i] > 1)
                    mono += "^" + std::to_string(e[i]);
            }
            mpz_class a = abs(c);
            if (s.empty())
                s += c < 0 ? "-" : "";
            else
                s += c < 0 ? " - " : " + ";
            if (mono.empty())
                s += a.get_str();
            else if (a != 1)
                s += a.get_str() + "*" + mono;
            else
                s += mono;
        }
        return s;
    }
};

/// h_m of the multiset { y_j * x^alpha : 1 <= j <= m, |alpha| = n } in
/// variables y_1..y_m, x_1..x_{mn}.
inline MultiPoly pmn_target(unsigned m, unsigned n)
{
    const std::size_t ny = m;
    const std::size_t nx = static_cast<std::size_t>(m) * n;
    const std::size_t nv = ny + nx;
    MultiPoly xs = detail::symmetric_basis(true, n, ny, nx, nv);
    std::vector<MultiPoly> items;
    for (std::size_t j = 0; j < ny; ++j) {
        MultiPoly y = MultiPoly::variable(nv, j);
        for (const auto& [e, c] : xs.terms()) {
            MultiPoly mono(nv);
            mono.add_term(e, 1);
            items.push_back(y * mono);
        }
    }
    // coefficient of t^m in prod 1/(1 - u t)
    std::vector<MultiPoly> h(m + 1, MultiPoly(nv));
    h[0] = MultiPoly::constant(nv, 1);
    for (const auto& u : items)
        for (unsigned k = 1; k <= m; ++k)
            h[k] += u * h[k - 1];
    return h[m];
}

/// P^{m,n}: the expression of pmn_target(m, n) in the complete homogeneous
/// generators, found by leading-term elimination in elementary symmetric
/// polynomials (lex, y before x) followed by the Newton-type change of basis
/// e_k = sum_{i=1..k} (-1)^{i-1} h_i e_{k-i}.
inline SymExpr compute_Pmn(unsigned m, unsigned n)
{
    if (m == 0 || n == 0)
        fail(ErrorCode::DomainError, "compute_Pmn needs m, n >= 1");
    if (m * n > 4)
        fail(ErrorCode::BudgetExceeded, "compute_Pmn is limited to m*n <= 4");

    const std::size_t ny = m;
    const std::size_t nx = static_cast<std::size_t>(m) * n;
    const std::size_t nv = ny + nx;

    std::vector<MultiPoly> ey(ny + 1), ex(nx + 1);
    for (unsigned k = 0; k <= ny; ++k)
        ey[k] = detail::symmetric_basis(false, k, 0, ny, nv);
    for (unsigned k = 0; k <= nx; ++k)
        ex[k] = detail::symmetric_basis(false, k, ny, nx, nv);

    MultiPoly rest = pmn_target(m, n);
    MultiPoly in_e(nv); // generator i < m is e_{i+1}(y), m + j is e_{j+1}(x)
    while (!rest.is_zero()) {
        const auto leading = *rest.terms().rbegin();
        const auto& lead = leading.first;
        const auto& c = leading.second;
        MultiPoly::Exponent ge(nv, 0);
        MultiPoly term = MultiPoly::constant(nv, c);
        auto block = [&](std::size_t first, std::size_t count, const std::vector<MultiPoly>& e) {
            for (std::size_t k = 0; k < count; ++k) {
                const int next = k + 1 < count ? lead[first + k + 1] : 0;
                const int pw = lead[first + k] - next;
                if (pw < 0)
                    fail(ErrorCode::InternalIntegralityViolation, "target is not bisymmetric");
                ge[first + k] = pw;
                if (pw > 0)
                    term = term * e[k + 1].pow(static_cast<unsigned>(pw));
            }
        };
        block(0, ny, ey);
        block(ny, nx, ex);
        rest -= term;
        in_e.add_term(ge, c);
    }

    // e_k in terms of h generators, per block
    auto e_in_h = [&](std::size_t first, std::size_t count) {
        std::vector<MultiPoly> e(count + 1, MultiPoly(nv));
        e[0] = MultiPoly::constant(nv, 1);
        for (std::size_t k = 1; k <= count; ++k)
            for (std::size_t i = 1; i <= k; ++i) {
                MultiPoly t = MultiPoly::variable(nv, first + i - 1) * e[k - i];
                if (i % 2 == 1)
                    e[k] += t;
                else
                    e[k] -= t;
            }
        return e;
    };
    const auto hy = e_in_h(0, ny);
    const auto hx = e_in_h(ny, nx);

    SymExpr out{m, n, MultiPoly(nv)};
    for (const auto& [ge, c] : in_e.terms()) {
        MultiPoly t = MultiPoly::constant(nv, c);
        for (std::size_t k = 0; k < ny; ++k)
            if (ge[k] > 0)
                t = t * hy[k + 1].pow(static_cast<unsigned>(ge[k]));
        for (std::size_t k = 0; k < nx; ++k)
            if (ge[ny + k] > 0)
                t = t * hx[k + 1].pow(static_cast<unsigned>(ge[ny + k]));
        out.poly += t;
    }
    return out;
}

inline bool verify_Pmn(const SymExpr& p) { return p.expand() == pmn_target(p.m, p.n); }

} // namespace dtq
