#pragma once

// Dense univariate polynomials over Z, stored as ascending coefficient
// vectors with no trailing zeros.  This is the arithmetic kernel underneath
// HalfTwistPoly and RatFunc: multiplication, exact division and a modular
// (Brown-style) gcd with trial-division verification.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dtq::detail {

using Integer = mpz_class;
using Upoly = std::vector<Integer>;

inline void trim(Upoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline int degree(const Upoly& p) { return static_cast<int>(p.size()) - 1; }

inline const Integer& lead(const Upoly& p) { return p.back(); }

inline Upoly mul(const Upoly& a, const Upoly& b)
{
    if (a.empty() || b.empty())
        return {};
    Upoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    trim(r);
    return r;
}

inline Integer content(const Upoly& p)
{
    Integer g = 0;
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

inline void divexact_scalar(Upoly& p, const Integer& s)
{
    if (s == 1)
        return;
    for (auto& c : p)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), s.get_mpz_t());
}

/// Exact quotient a / b over Z, or nullopt if b does not divide a.
inline std::optional<Upoly> divide_exact(const Upoly& a, const Upoly& b)
{
    if (b.empty())
        return std::nullopt;
    if (a.empty())
        return Upoly{};
    if (a.size() < b.size())
        return std::nullopt;
    if (b.size() == 1) {
        Upoly q = a;
        for (auto& c : q) {
            if (!mpz_divisible_p(c.get_mpz_t(), b[0].get_mpz_t()))
                return std::nullopt;
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), b[0].get_mpz_t());
        }
        return q;
    }
    Upoly r = a;
    const std::size_t db = b.size() - 1;
    Upoly q(a.size() - db);
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer& top = r[k + db];
        if (top == 0)
            continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead(b).get_mpz_t()))
            return std::nullopt;
        mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lead(b).get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j)
            mpz_submul(r[k + j].get_mpz_t(), q[k].get_mpz_t(), b[j].get_mpz_t());
    }
    for (std::size_t i = 0; i < db; ++i)
        if (r[i] != 0)
            return std::nullopt;
    trim(q);
    return q;
}

// --- arithmetic modulo a word-size prime -----------------------------------

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1;
    b %= p;
    while (e) {
        if (e & 1)
            r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return pow_mod(a, p - 2, p); }

using ModPoly = std::vector<std::uint64_t>;

inline void trim(ModPoly& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

inline ModPoly reduce_mod(const Upoly& a, std::uint64_t p)
{
    ModPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
    trim(r);
    return r;
}

/// Monic gcd over F_p.
inline ModPoly gcd_mod(ModPoly a, ModPoly b, std::uint64_t p)
{
    while (!b.empty()) {
        // a <- a mod b
        const std::uint64_t inv = inv_mod(b.back(), p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = a.back() * inv % p;
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + p - f * b[j] % p) % p;
            trim(a);
            if (a.empty())
                break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        const std::uint64_t inv = inv_mod(a.back(), p);
        for (auto& c : a)
            c = c * inv % p;
    }
    return a;
}

inline bool is_prime_u32(std::uint32_t n)
{
    if (n < 2)
        return false;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

/// Primes just below 2^31, largest first.
class PrimeSource {
public:
    std::uint32_t next()
    {
        do {
            cur_ -= 2;
        } while (!is_prime_u32(cur_));
        return cur_;
    }

private:
    std::uint32_t cur_ = 2147483649u; // 2^31 + 1; first call yields 2^31 - 1
};

inline void symmetric_mod(Integer& c, const Integer& m, const Integer& half)
{
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half)
        c -= m;
}

/// gcd of two primitive polynomials with positive leading coefficients.
inline Upoly gcd_primitive(const Upoly& a0, const Upoly& b0)
{
    const Upoly* a = &a0;
    const Upoly* b = &b0;
    if (a->size() < b->size())
        std::swap(a, b);
    if (b->size() == 1)
        return Upoly{1};
    if (*a == *b)
        return *a;
    if (divide_exact(*a, *b))
        return *b;

    Integer lc_gcd;
    mpz_gcd(lc_gcd.get_mpz_t(), lead(*a).get_mpz_t(), lead(*b).get_mpz_t());

    PrimeSource primes;
    Upoly image;    // symmetric representative modulo `modulus`
    Integer modulus = 0;
    int image_degree = degree(*b) + 1;
    for (;;) {
        const std::uint64_t p = primes.next();
        if (mpz_fdiv_ui(lead(*a).get_mpz_t(), p) == 0 || mpz_fdiv_ui(lead(*b).get_mpz_t(), p) == 0)
            continue;
        ModPoly g = gcd_mod(reduce_mod(*a, p), reduce_mod(*b, p), p);
        const int dg = static_cast<int>(g.size()) - 1;
        if (dg == 0)
            return Upoly{1};
        if (dg > image_degree)
            continue; // unlucky prime
        const std::uint64_t scale = mpz_fdiv_ui(lc_gcd.get_mpz_t(), p);
        for (auto& c : g)
            c = c * scale % p;

        bool stable = false;
        if (dg < image_degree) {
            image_degree = dg;
            image.assign(g.size(), 0);
            for (std::size_t i = 0; i < g.size(); ++i)
                image[i] = static_cast<unsigned long>(g[i]);
            modulus = static_cast<unsigned long>(p);
            Integer half = modulus / 2;
            for (auto& c : image)
                symmetric_mod(c, modulus, half);
        } else {
            // Chinese remaindering: c' = c + M * ((r - c) * M^{-1} mod p)
            const std::uint64_t m_inv = inv_mod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
            Integer new_modulus = modulus * static_cast<unsigned long>(p);
            Integer half = new_modulus / 2;
            stable = true;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const std::uint64_t c_mod = mpz_fdiv_ui(image[i].get_mpz_t(), p);
                const std::uint64_t delta = (g[i] + p - c_mod) % p * m_inv % p;
                if (delta != 0) {
                    stable = false;
                    image[i] += modulus * static_cast<unsigned long>(delta);
                    symmetric_mod(image[i], new_modulus, half);
                }
            }
            modulus = std::move(new_modulus);
        }
        if (stable) {
            Upoly cand = image;
            trim(cand);
            divexact_scalar(cand, content(cand));
            if (lead(cand) < 0)
                for (auto& c : cand)
                    c = -c;
            if (divide_exact(*a, cand) && divide_exact(*b, cand))
                return cand;
        }
    }
}

/// Full gcd over Z (content included), normalized to a positive leading
/// coefficient.  gcd(0, b) = normalized b.
inline Upoly gcd(const Upoly& a, const Upoly& b)
{
    auto normalized = [](Upoly p) {
        if (!p.empty() && lead(p) < 0)
            for (auto& c : p)
                c = -c;
        return p;
    };
    if (a.empty())
        return normalized(b);
    if (b.empty())
        return normalized(a);
    Integer ca = content(a);
    Integer cb = content(b);
    Integer cg;
    mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    if (a.size() == 1 || b.size() == 1)
        return Upoly{cg};
    Upoly pa = a, pb = b;
    divexact_scalar(pa, ca);
    divexact_scalar(pb, cb);
    pa = normalized(std::move(pa));
    pb = normalized(std::move(pb));
    Upoly g = gcd_primitive(pa, pb);
    for (auto& c : g)
        c *= cg;
    return g;
}

} // namespace dtq::detail
