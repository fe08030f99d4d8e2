#pragma once

#include "dtq/error.hpp"
#include "dtq/fqcount/relations.hpp"
#include "dtq/quiver/quiver.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace dtq {

struct CountOptions {
    /// Maximal number of enumerated configurations.
    std::uint64_t budget = 100'000'000;
    /// Worker threads; 0 means hardware concurrency.
    unsigned threads = 1;
};

inline bool is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t k = 2; k * k <= n; ++k)
        if (n % k == 0)
            return false;
    return true;
}

/// The first n primes.
inline std::vector<std::uint32_t> first_primes(std::size_t n)
{
    std::vector<std::uint32_t> out;
    for (std::uint32_t k = 2; out.size() < n; ++k)
        if (is_prime(k))
            out.push_back(k);
    return out;
}

namespace detail {

/// p^e, or nullopt once it exceeds `cap`.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t p, std::size_t e, std::uint64_t cap)
{
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < e; ++i) {
        if (r > cap / p)
            return std::nullopt;
        r *= p;
    }
    return r <= cap ? std::optional<std::uint64_t>(r) : std::nullopt;
}

struct ModMat {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint64_t> a;

    ModMat() = default;
    ModMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    static ModMat identity(std::size_t n)
    {
        ModMat m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m.a[i * n + i] = 1;
        return m;
    }

    std::uint64_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    [[nodiscard]] std::uint64_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

inline ModMat mat_mul(const ModMat& x, const ModMat& y, std::uint64_t p)
{
    ModMat r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const std::uint64_t v = x.at(i, k);
            if (v == 0)
                continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % p;
        }
    return r;
}

inline std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p)
{
    std::uint64_t r = 1, e = p - 2;
    a %= p;
    while (e) {
        if (e & 1)
            r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

/// Row-reduces an augmented system [A | b] (ncols unknowns plus the constant
/// column) in place.  Returns the rank of A, or -1 if inconsistent.
inline int solve_rank(std::vector<std::uint64_t>& m, std::size_t nrows, std::size_t nvars, std::uint64_t p)
{
    const std::size_t w = nvars + 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < nvars && rank < nrows; ++c) {
        std::size_t piv = rank;
        while (piv < nrows && m[piv * w + c] == 0)
            ++piv;
        if (piv == nrows)
            continue;
        if (piv != rank)
            for (std::size_t j = 0; j < w; ++j)
                std::swap(m[piv * w + j], m[rank * w + j]);
        const std::uint64_t inv = inv_mod_p(m[rank * w + c], p);
        for (std::size_t j = c; j < w; ++j)
            m[rank * w + j] = m[rank * w + j] * inv % p;
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == rank || m[i * w + c] == 0)
                continue;
            const std::uint64_t f = m[i * w + c];
            for (std::size_t j = c; j < w; ++j)
                m[i * w + j] = (m[i * w + j] + (p - f) * m[rank * w + j]) % p;
        }
        ++rank;
    }
    for (std::size_t i = rank; i < nrows; ++i)
        if (m[i * w + nvars] != 0)
            return -1;
    return static_cast<int>(rank);
}

inline unsigned worker_count(unsigned requested)
{
    if (requested == 0)
        requested = std::max(1u, std::thread::hardware_concurrency());
    return requested;
}

/// Runs body(begin, end, hist) over [0, total) split into chunks, summing
/// per-chunk histograms.  The merge is a plain sum, so the result does not
/// depend on the schedule.
inline std::vector<std::uint64_t> run_chunked(std::uint64_t total, std::size_t hist_size, unsigned threads,
                                              const std::function<void(std::uint64_t, std::uint64_t, std::vector<std::uint64_t>&)>& body)
{
    threads = worker_count(threads);
    std::vector<std::uint64_t> hist(hist_size, 0);
    if (threads <= 1 || total < 1024) {
        body(0, total, hist);
        return hist;
    }
    const std::uint64_t nchunks = std::min<std::uint64_t>(total, std::uint64_t{threads} * 8);
    const std::uint64_t step = (total + nchunks - 1) / nchunks;
    std::atomic<std::uint64_t> next{0};
    std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(hist_size, 0));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= nchunks)
                    break;
                const std::uint64_t b = c * step;
                const std::uint64_t e = std::min(total, b + step);
                if (b < e)
                    body(b, e, partial[t]);
            }
        });
    for (auto& th : pool)
        th.join();
    for (const auto& part : partial)
        for (std::size_t i = 0; i < hist_size; ++i)
            hist[i] += part[i];
    return hist;
}

/// Matrix slots for every arrow of a representation of dimension d.
struct RepLayout {
    std::vector<Arrow> arrows;
    std::vector<std::size_t> rows, cols;

    RepLayout(const Quiver& q, const DimVector& d) : arrows(q.arrow_list())
    {
        for (const auto& a : arrows) {
            rows.push_back(static_cast<std::size_t>(d[a.target]));
            cols.push_back(static_cast<std::size_t>(d[a.source]));
        }
    }

    [[nodiscard]] std::size_t entries(std::size_t a) const { return rows[a] * cols[a]; }
};

/// Odometer over all matrix tuples for a subset of arrows.
class Odometer {
public:
    Odometer(const RepLayout& lay, std::vector<std::size_t> which, std::uint64_t p)
        : p_(p), which_(std::move(which))
    {
        mats_.resize(lay.arrows.size());
        for (std::size_t a = 0; a < lay.arrows.size(); ++a)
            mats_[a] = ModMat(lay.rows[a], lay.cols[a]);
        for (std::size_t a : which_)
            width_ += lay.entries(a);
    }

    [[nodiscard]] std::size_t width() const noexcept { return width_; }
    [[nodiscard]] const std::vector<ModMat>& mats() const noexcept { return mats_; }

    void seek(std::uint64_t index)
    {
        for (std::size_t a : which_)
            for (auto& v : mats_[a].a) {
                v = index % p_;
                index /= p_;
            }
    }

    void advance()
    {
        for (std::size_t a : which_)
            for (auto& v : mats_[a].a) {
                if (++v < p_)
                    return;
                v = 0;
            }
    }

private:
    std::uint64_t p_;
    std::vector<std::size_t> which_;
    std::vector<ModMat> mats_;
    std::size_t width_ = 0;
};

inline ModMat path_product(const std::vector<std::size_t>& path, std::size_t from, std::size_t to,
                           const std::vector<ModMat>& mats, std::size_t dim_if_empty, std::uint64_t p)
{
    if (from >= to)
        return ModMat::identity(dim_if_empty);
    ModMat r = mats[path[from]];
    for (std::size_t k = from + 1; k < to; ++k)
        r = mat_mul(r, mats[path[k]], p);
    return r;
}

inline std::uint64_t mod_coeff(long c, std::uint64_t p)
{
    const long r = c % static_cast<long>(p);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<long>(p) : r);
}

} // namespace detail

/// Number of arrow-matrix tuples over F_p of dimension d satisfying `rel`.
///
/// If some arrow s occurs at most once in every relation term, the relations
/// are affine in the entries of M_s; those entries are then counted by linear
/// algebra (p^{#free}) instead of enumerated, and the budget applies to the
/// remaining arrows only.
inline Integer count_reps(const Quiver& q, const RelationSpec& rel, const DimVector& d, std::uint64_t p,
                          const CountOptions& opt = {})
{
    q.check(d);
    if (!is_prime(p))
        fail(ErrorCode::DomainError, "count_reps needs a prime field size");
    const detail::RepLayout lay(q, d);
    const std::size_t na = lay.arrows.size();
    std::size_t total_entries = 0;
    for (std::size_t a = 0; a < na; ++a)
        total_entries += lay.entries(a);

    Integer pz(static_cast<unsigned long>(p));
    if (rel.empty()) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), pz.get_mpz_t(), total_entries);
        return r;
    }
    for (const auto& r : rel.relations)
        for (const auto& t : r.terms)
            for (std::size_t a : t.arrows)
                if (a >= na)
                    fail(ErrorCode::MalformedRelation, "relation refers to an arrow outside the quiver");

    // pick the solve arrow
    std::optional<std::size_t> solve;
    for (std::size_t a = 0; a < na; ++a) {
        if (lay.entries(a) == 0)
            continue;
        bool linear = true;
        for (const auto& r : rel.relations)
            for (const auto& t : r.terms)
                if (std::count(t.arrows.begin(), t.arrows.end(), a) > 1)
                    linear = false;
        if (linear && (!solve || lay.entries(a) > lay.entries(*solve)))
            solve = a;
    }

    std::vector<std::size_t> enumerated;
    for (std::size_t a = 0; a < na; ++a)
        if (lay.entries(a) > 0 && (!solve || a != *solve))
            enumerated.push_back(a);
    detail::Odometer probe(lay, enumerated, p);
    const auto space = detail::bounded_pow(p, probe.width(), opt.budget);
    if (!space)
        fail(ErrorCode::BudgetExceeded, "enumeration of " + std::to_string(p) + "^" + std::to_string(probe.width()) + " tuples exceeds the budget");

    const std::size_t nvars = solve ? lay.entries(*solve) : 0;
    std::size_t neq = 0;
    for (const auto& r : rel.relations)
        neq += static_cast<std::size_t>(d[r.target]) * static_cast<std::size_t>(d[r.source]);

    auto body = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hist) {
        detail::Odometer od(lay, enumerated, p);
        od.seek(begin);
        std::vector<std::uint64_t> sys;
        for (std::uint64_t idx = begin; idx < end; ++idx, od.advance()) {
            const auto& mats = od.mats();
            sys.assign(neq * (nvars + 1), 0);
            std::size_t row0 = 0;
            bool ok = true;
            for (const auto& r : rel.relations) {
                const std::size_t tr = static_cast<std::size_t>(d[r.target]);
                const std::size_t sc = static_cast<std::size_t>(d[r.source]);
                if (tr * sc == 0)
                    continue;
                for (const auto& t : r.terms) {
                    const std::uint64_t c = detail::mod_coeff(t.coeff, p);
                    if (c == 0)
                        continue;
                    std::size_t pos = t.arrows.size();
                    if (solve)
                        for (std::size_t k = 0; k < t.arrows.size(); ++k)
                            if (t.arrows[k] == *solve)
                                pos = k;
                    if (pos == t.arrows.size()) {
                        const auto m = detail::path_product(t.arrows, 0, t.arrows.size(), mats, tr, p);
                        for (std::size_t i = 0; i < tr; ++i)
                            for (std::size_t j = 0; j < sc; ++j) {
                                auto& cell = sys[(row0 + i * sc + j) * (nvars + 1) + nvars];
                                cell = (cell + c * m.at(i, j)) % p;
                            }
                    } else {
                        const std::size_t sr = lay.rows[*solve], scs = lay.cols[*solve];
                        const auto left = detail::path_product(t.arrows, 0, pos, mats, tr, p);
                        const auto right = detail::path_product(t.arrows, pos + 1, t.arrows.size(), mats, sc, p);
                        for (std::size_t i = 0; i < tr; ++i)
                            for (std::size_t j = 0; j < sc; ++j) {
                                const std::size_t row = (row0 + i * sc + j) * (nvars + 1);
                                for (std::size_t k = 0; k < sr; ++k) {
                                    const std::uint64_t lk = left.at(i, k);
                                    if (lk == 0)
                                        continue;
                                    for (std::size_t l = 0; l < scs; ++l) {
                                        const std::uint64_t v = c * lk % p * right.at(l, j) % p;
                                        auto& cell = sys[row + k * scs + l];
                                        cell = (cell + v) % p;
                                    }
                                }
                            }
                    }
                }
                row0 += tr * sc;
            }
            if (nvars == 0) {
                for (std::size_t i = 0; i < neq && ok; ++i)
                    ok = sys[i * (nvars + 1)] == 0;
                if (ok)
                    ++hist[0];
                continue;
            }
            // constant column holds +const; the system is A x + b = 0
            for (std::size_t i = 0; i < neq; ++i) {
                auto& b = sys[i * (nvars + 1) + nvars];
                b = (p - b) % p;
            }
            const int rank = detail::solve_rank(sys, neq, nvars, p);
            if (rank >= 0)
                ++hist[nvars - static_cast<std::size_t>(rank)];
        }
    };

    const auto hist = detail::run_chunked(*space, nvars + 1, opt.threads, body);
    Integer total = 0;
    for (std::size_t k = 0; k < hist.size(); ++k) {
        if (hist[k] == 0)
            continue;
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), pz.get_mpz_t(), k);
        total += pk * Integer(static_cast<unsigned long>(hist[k]));
    }
    return total;
}

namespace detail {

/// A subspace of F_p^n given by its reduced row-echelon basis.
struct Subspace {
    std::vector<std::vector<std::uint64_t>> basis;
    std::vector<std::size_t> pivots;
};

inline std::vector<Subspace> all_subspaces(std::size_t n, std::uint64_t p)
{
    std::vector<Subspace> out;
    for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::size_t> piv(k);
        auto choose = [&](auto&& self, std::size_t i, std::size_t from) -> void {
            if (i == k) {
                // free slots: row r, columns c > piv[r] that are not pivots
                std::vector<std::pair<std::size_t, std::size_t>> free;
                for (std::size_t r = 0; r < k; ++r)
                    for (std::size_t c = piv[r] + 1; c < n; ++c)
                        if (std::find(piv.begin(), piv.end(), c) == piv.end())
                            free.emplace_back(r, c);
                std::vector<std::uint64_t> vals(free.size(), 0);
                for (;;) {
                    Subspace s;
                    s.pivots = piv;
                    s.basis.assign(k, std::vector<std::uint64_t>(n, 0));
                    for (std::size_t r = 0; r < k; ++r)
                        s.basis[r][piv[r]] = 1;
                    for (std::size_t f = 0; f < free.size(); ++f)
                        s.basis[free[f].first][free[f].second] = vals[f];
                    out.push_back(std::move(s));
                    std::size_t f = 0;
                    while (f < vals.size() && ++vals[f] == p)
                        vals[f++] = 0;
                    if (f == vals.size())
                        break;
                }
                return;
            }
            for (std::size_t c = from; c + (k - i) <= n; ++c) {
                piv[i] = c;
                self(self, i + 1, c + 1);
            }
        };
        choose(choose, 0, 0);
    }
    return out;
}

inline bool in_span(std::vector<std::uint64_t> v, const Subspace& s, std::uint64_t p)
{
    for (std::size_t r = 0; r < s.basis.size(); ++r) {
        const std::uint64_t f = v[s.pivots[r]];
        if (f == 0)
            continue;
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = (v[j] + (p - f) * s.basis[r][j]) % p;
    }
    for (auto x : v)
        if (x != 0)
            return false;
    return true;
}

} // namespace detail

/// Number of theta-semistable representations of dimension d over F_p: no
/// subrepresentation of strictly larger slope.
inline Integer count_semistable(const Quiver& q, const Stability& th, const DimVector& d, std::uint64_t p,
                                const CountOptions& opt = {})
{
    q.check(d);
    if (th.theta.size() != q.size())
        fail(ErrorCode::ArityMismatch, "stability does not match the quiver");
    if (!is_prime(p))
        fail(ErrorCode::DomainError, "count_semistable needs a prime field size");
    const detail::RepLayout lay(q, d);
    std::vector<std::size_t> all;
    for (std::size_t a = 0; a < lay.arrows.size(); ++a)
        if (lay.entries(a) > 0)
            all.push_back(a);
    detail::Odometer probe(lay, all, p);
    const auto space = detail::bounded_pow(p, probe.width(), opt.budget);
    if (!space)
        fail(ErrorCode::BudgetExceeded, "representation space too large for the budget");
    if (d.is_zero())
        return 1;

    std::vector<std::vector<detail::Subspace>> subs(q.size());
    std::uint64_t tuples = 1;
    for (std::size_t i = 0; i < q.size(); ++i) {
        subs[i] = detail::all_subspaces(static_cast<std::size_t>(d[i]), p);
        if (tuples > opt.budget / subs[i].size())
            fail(ErrorCode::BudgetExceeded, "subspace enumeration exceeds the budget");
        tuples *= subs[i].size();
    }

    auto theta_dot = [&](const std::vector<int>& e) {
        long s = 0;
        for (std::size_t i = 0; i < e.size(); ++i)
            s += static_cast<long>(th.theta[i]) * e[i];
        return s;
    };
    const long td = theta_dot(d.entries());
    const long nd = d.total();

    // subspace tuples whose dimension vector has strictly larger slope
    std::vector<std::vector<std::size_t>> candidates;
    std::vector<std::size_t> pick(q.size(), 0);
    for (std::uint64_t t = 0; t < tuples; ++t) {
        std::uint64_t rest = t;
        std::vector<int> e(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) {
            pick[i] = static_cast<std::size_t>(rest % subs[i].size());
            rest /= subs[i].size();
            e[i] = static_cast<int>(subs[i][pick[i]].basis.size());
        }
        long ne = 0;
        for (int v : e)
            ne += v;
        if (ne == 0)
            continue;
        if (theta_dot(e) * nd > td * ne)
            candidates.push_back(pick);
    }

    auto body = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hist) {
        detail::Odometer od(lay, all, p);
        od.seek(begin);
        for (std::uint64_t idx = begin; idx < end; ++idx, od.advance()) {
            const auto& mats = od.mats();
            bool semistable = true;
            for (const auto& cand : candidates) {
                bool sub = true;
                for (std::size_t a : all) {
                    const auto& src = subs[lay.arrows[a].source][cand[lay.arrows[a].source]];
                    const auto& tgt = subs[lay.arrows[a].target][cand[lay.arrows[a].target]];
                    const auto& m = mats[a];
                    for (const auto& u : src.basis) {
                        std::vector<std::uint64_t> v(m.rows, 0);
                        for (std::size_t i = 0; i < m.rows; ++i)
                            for (std::size_t j = 0; j < m.cols; ++j)
                                v[i] = (v[i] + m.at(i, j) * u[j]) % p;
                        if (!detail::in_span(std::move(v), tgt, p)) {
                            sub = false;
                            break;
                        }
                    }
                    if (!sub)
                        break;
                }
                if (sub) {
                    semistable = false;
                    break;
                }
            }
            if (semistable)
                ++hist[0];
        }
    };
    const auto hist = detail::run_chunked(*space, 1, opt.threads, body);
    return Integer(static_cast<unsigned long>(hist[0]));
}

/// Brute-force count of invertible n x n matrices over F_p.
inline Integer count_invertible_matrices(std::size_t n, std::uint64_t p, const CountOptions& opt = {})
{
    if (!is_prime(p))
        fail(ErrorCode::DomainError, "count_invertible_matrices needs a prime");
    const auto space = detail::bounded_pow(p, n * n, opt.budget);
    if (!space)
        fail(ErrorCode::BudgetExceeded, "matrix enumeration exceeds the budget");
    auto body = [&](std::uint64_t begin, std::uint64_t end, std::vector<std::uint64_t>& hist) {
        std::vector<std::uint64_t> m(n * n), work;
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            std::uint64_t rest = idx;
            for (auto& v : m) {
                v = rest % p;
                rest /= p;
            }
            // rank via the augmented solver with a zero right-hand side
            work.assign(n * (n + 1), 0);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    work[i * (n + 1) + j] = m[i * n + j];
            if (detail::solve_rank(work, n, n, p) == static_cast<int>(n))
                ++hist[0];
        }
    };
    const auto hist = detail::run_chunked(*space, 1, opt.threads, body);
    return Integer(static_cast<unsigned long>(hist[0]));
}

} // namespace dtq
