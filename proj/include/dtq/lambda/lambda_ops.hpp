#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/half_twist_poly.hpp"
#include "dtq/lambda/rat_func.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dtq {

inline RatFunc psi(const RatFunc& a, unsigned k)
{
    if (k == 0)
        fail(ErrorCode::DomainError, "Adams operation needs k >= 1");
    return a.adams(k);
}

inline HalfTwistPoly psi(const HalfTwistPoly& a, unsigned k)
{
    if (k == 0)
        fail(ErrorCode::DomainError, "Adams operation needs k >= 1");
    return a.adams(k);
}

/// sigma^0(a), ..., sigma^n(a) from n sigma^n = sum_{k=1..n} psi^k(a) sigma^{n-k}(a).
inline std::vector<RatFunc> sigma_list(const RatFunc& a, unsigned n)
{
    std::vector<RatFunc> s{RatFunc(1)};
    s.reserve(n + 1);
    std::vector<RatFunc> powers; // psi^k(a)
    powers.reserve(n);
    for (unsigned m = 1; m <= n; ++m) {
        powers.push_back(a.adams(m));
        RatFunc acc;
        for (unsigned k = 1; k <= m; ++k)
            acc += powers[k - 1] * s[m - k];
        s.push_back(acc.scaled(Rational(Integer(1), Integer(m))));
        if (a.is_polynomial() && !s.back().is_polynomial())
            fail(ErrorCode::InternalIntegralityViolation,
                 "sigma^" + std::to_string(m) + " of a polynomial is not polynomial");
    }
    return s;
}

inline RatFunc sigma(const RatFunc& a, unsigned n) { return sigma_list(a, n).back(); }

inline HalfTwistPoly sigma(const HalfTwistPoly& a, unsigned n) { return sigma_list(a, n).back().to_poly(); }

/// [n]_L = 1 + L + ... + L^{n-1}
inline HalfTwistPoly q_bracket(unsigned n)
{
    std::vector<Integer> c(n == 0 ? 0 : 2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i)
        c[2 * i] = 1;
    return HalfTwistPoly::from_dense(0, std::move(c));
}

/// [n]_{L^m} = 1 + L^m + ... + L^{m(n-1)}
inline HalfTwistPoly q_bracket_power(unsigned n, unsigned m) { return q_bracket(n).adams(m); }

inline HalfTwistPoly q_factorial(unsigned n)
{
    HalfTwistPoly p(1);
    for (unsigned k = 2; k <= n; ++k)
        p *= q_bracket(k);
    return p;
}

inline HalfTwistPoly gauss_binomial(unsigned f, unsigned d)
{
    if (d > f)
        fail(ErrorCode::DomainError, "gauss_binomial needs d <= f");
    auto q = divide_exact(q_factorial(f), q_factorial(d) * q_factorial(f - d));
    if (!q)
        fail(ErrorCode::InternalIntegralityViolation, "Gaussian binomial division not exact");
    return *q;
}

/// [GL(n)] = prod_{k<n} (L^n - L^k)
inline HalfTwistPoly gl_class(unsigned n)
{
    HalfTwistPoly p(1);
    const int top = 2 * static_cast<int>(n);
    for (unsigned k = 0; k < n; ++k)
        p *= HalfTwistPoly::monomial(1, top) - HalfTwistPoly::monomial(1, 2 * static_cast<int>(k));
    return p;
}

/// L^{1/2} -> -1, i.e. x -> 1.
inline Rational euler_specialize(const HalfTwistPoly& a) { return Rational(a.eval_at_one()); }

inline Rational euler_specialize(const RatFunc& a)
{
    if (!a.has_constant_den())
        fail(ErrorCode::NotPolynomial, "euler_specialize needs a polynomial value");
    return *a.eval_at_one();
}

/// psi^m(psi^n(a) b) == psi^{mn}(a) psi^m(b)
inline bool adams_special_check(const RatFunc& a, const RatFunc& b, unsigned m, unsigned n)
{
    return psi(psi(a, n) * b, m) == psi(a, m * n) * psi(b, m);
}

// --- named identities -------------------------------------------------------

enum class Identity { BracketSplit, Eq1Localization, SigmaGroupHom };

inline Identity identity_from_name(std::string_view name)
{
    if (name == "equation_2" || name == "bracket_split")
        return Identity::BracketSplit;
    if (name == "eq1")
        return Identity::Eq1Localization;
    if (name == "sigma_group_hom")
        return Identity::SigmaGroupHom;
    fail(ErrorCode::UnknownIdentity, "unknown identity '" + std::string(name) + "'");
}

/// [n]_L == L^r [p]_{L^m} [m]_L + [r]_L with n = p m + r.
inline bool check_bracket_split(unsigned m, unsigned p, unsigned r)
{
    if (m == 0)
        fail(ErrorCode::DomainError, "bracket split needs m >= 1");
    const unsigned n = p * m + r;
    if (n > 200)
        fail(ErrorCode::DomainError, "bracket split supports n <= 200");
    return q_bracket(n) == HalfTwistPoly::l_pow(static_cast<int>(r)) * q_bracket_power(p, m) * q_bracket(m) + q_bracket(r);
}

/// T_m = (L^m - 1)^{-1}
inline RatFunc t_m(unsigned m)
{
    return RatFunc(HalfTwistPoly(1), HalfTwistPoly::l_pow(static_cast<int>(m)) - HalfTwistPoly(1));
}

/// (L^{mn} - 1) sigma^n(T_m) == sum_{j<n} sigma^j(T_m)
inline bool check_eq1(unsigned m, unsigned n)
{
    if (m == 0 || m > 3 || n > 3)
        fail(ErrorCode::DomainError, "eq1 is checked for 1 <= m <= 3, n <= 3");
    auto s = sigma_list(t_m(m), n);
    RatFunc rhs;
    for (unsigned j = 0; j < n; ++j)
        rhs += s[j];
    RatFunc lhs = RatFunc(HalfTwistPoly::l_pow(static_cast<int>(m * n)) - HalfTwistPoly(1)) * s[n];
    return lhs == rhs;
}

/// sigma^n(a + b) == sum_{i+j=n} sigma^i(a) sigma^j(b) for all n <= order.
inline bool check_sigma_group_hom(const RatFunc& a, const RatFunc& b, unsigned order)
{
    if (order > 8)
        fail(ErrorCode::DomainError, "group-homomorphism check supports order <= 8");
    auto sa = sigma_list(a, order);
    auto sb = sigma_list(b, order);
    auto sab = sigma_list(a + b, order);
    for (unsigned n = 0; n <= order; ++n) {
        RatFunc conv;
        for (unsigned i = 0; i <= n; ++i)
            conv += sa[i] * sb[n - i];
        if (!(conv == sab[n]))
            return false;
    }
    return true;
}

struct IdentityArgs {
    unsigned n = 0;
    unsigned m = 1;
    /// bracket_split only; default p = n / m
    std::optional<unsigned> p;
    RatFunc a;
    RatFunc b;
};

inline bool verify_identity(Identity id, const IdentityArgs& args)
{
    switch (id) {
    case Identity::BracketSplit: {
        if (args.m == 0)
            fail(ErrorCode::DomainError, "bracket split needs m >= 1");
        const unsigned p = args.p.value_or(args.n / args.m);
        if (p * args.m > args.n)
            fail(ErrorCode::DomainError, "bracket split needs p m <= n");
        return check_bracket_split(args.m, p, args.n - p * args.m);
    }
    case Identity::Eq1Localization:
        return check_eq1(args.m, args.n);
    case Identity::SigmaGroupHom:
        return check_sigma_group_hom(args.a, args.b, args.n);
    }
    return false;
}

inline bool verify_identity(std::string_view name, const IdentityArgs& args)
{
    return verify_identity(identity_from_name(name), args);
}

} // namespace dtq
