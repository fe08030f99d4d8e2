#pragma once

#include "dtq/dt/dt.hpp"
#include "dtq/error.hpp"
#include "dtq/fqcount/interpolate.hpp"
#include "dtq/io/display.hpp"
#include "dtq/io/json.hpp"
#include "dtq/lambda/symexpr.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace dtq::cli {

enum class Command { Dt, Framed, Hilb, Wallcross, Dimred, Count, Selfcheck };
enum class Format { Table, Json };

inline Command parse_command(std::string_view s)
{
    static const std::pair<const char*, Command> names[] = {{"dt", Command::Dt},         {"framed", Command::Framed},
                                                            {"hilb", Command::Hilb},     {"wallcross", Command::Wallcross},
                                                            {"dimred", Command::Dimred}, {"count", Command::Count},
                                                            {"selfcheck", Command::Selfcheck}};
    for (const auto& [n, c] : names)
        if (s == n)
            return c;
    fail(ErrorCode::ParseError, "unknown command '" + std::string(s) + "'");
}

inline std::string to_string(Command c)
{
    switch (c) {
    case Command::Dt:
        return "dt";
    case Command::Framed:
        return "framed";
    case Command::Hilb:
        return "hilb";
    case Command::Wallcross:
        return "wallcross";
    case Command::Dimred:
        return "dimred";
    case Command::Count:
        return "count";
    case Command::Selfcheck:
        return "selfcheck";
    }
    return "";
}

inline Format parse_format(std::string_view s)
{
    if (s == "table")
        return Format::Table;
    if (s == "json")
        return Format::Json;
    fail(ErrorCode::ParseError, "unknown format '" + std::string(s) + "'");
}

/// "1,-1" -> {1, -1}
inline std::vector<int> parse_int_list(const std::string& s)
{
    std::vector<int> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(item, &used);
        } catch (const std::exception&) {
            fail(ErrorCode::ParseError, "not an integer list: '" + s + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos)
            fail(ErrorCode::ParseError, "not an integer list: '" + s + "'");
        out.push_back(v);
    }
    if (out.empty())
        fail(ErrorCode::ParseError, "empty integer list");
    return out;
}

struct JobSpec {
    Command command = Command::Dt;
    std::optional<io::QuiverInput> input;
    int truncation = 4;
    std::optional<Stability> theta;
    std::optional<FramingVector> framing;
    std::vector<std::string> relations;
    Format format = Format::Table;
    io::VarMode var = io::VarMode::Lhalf;
    CountOptions count;
};

/// 0 ok, 2 parse, 3 precondition, 4 failed check, 5 budget
inline int exit_code(ErrorCode c)
{
    switch (c) {
    case ErrorCode::ParseError:
        return 2;
    case ErrorCode::BudgetExceeded:
        return 5;
    case ErrorCode::IntegralityFailure:
    case ErrorCode::NotPolynomialCount:
    case ErrorCode::InternalIntegralityViolation:
        return 4;
    default:
        return 3;
    }
}

namespace detail {

using io::Json;

class Table {
public:
    explicit Table(std::vector<std::string> head) : head_(std::move(head)) {}

    void row(std::vector<std::string> r) { rows_.push_back(std::move(r)); }

    [[nodiscard]] std::string render() const
    {
        std::vector<std::size_t> w(head_.size(), 0);
        for (std::size_t i = 0; i < head_.size(); ++i)
            w[i] = head_[i].size();
        for (const auto& r : rows_)
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i)
                w[i] = std::max(w[i], r[i].size());
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t i = 0; i < w.size(); ++i) {
                const std::string cell = i < r.size() ? r[i] : "";
                out << cell;
                if (i + 1 < w.size())
                    out << std::string(w[i] - cell.size() + 2, ' ');
            }
            out << '\n';
        };
        line(head_);
        std::size_t total = 0;
        for (auto x : w)
            total += x + 2;
        out << std::string(total - 2, '-') << '\n';
        for (const auto& r : rows_)
            line(r);
        return out.str();
    }

private:
    std::vector<std::string> head_;
    std::vector<std::vector<std::string>> rows_;
};

struct Report {
    Json results = Json::object();
    std::string text;
    std::vector<std::pair<std::string, bool>> checks;

    void check(std::string name, bool ok) { checks.emplace_back(std::move(name), ok); }
    void section(const std::string& title, const Table& t) { text += title + "\n" + t.render() + "\n"; }
};

inline std::string show(const RatFunc& v, io::VarMode m)
{
    if (m == io::VarMode::Q && !(v.num().only_even_exponents() && v.den().only_even_exponents()))
        return io::format_value(v, io::VarMode::Lhalf);
    return io::format_value(v, m);
}

inline std::string show(const Rational& r) { return r.get_str(); }

inline std::string show_count(const CountPolynomial& p)
{
    return io::format_poly(to_motive(p), io::VarMode::Q);
}

inline const Quiver& need_quiver(const JobSpec& job)
{
    if (!job.input)
        fail(ErrorCode::ParseError, to_string(job.command) + " needs a quiver file");
    return job.input->quiver;
}

inline const Stability& need_theta(const JobSpec& job)
{
    if (!job.theta)
        fail(ErrorCode::DomainError, to_string(job.command) + " needs a stability (--theta or \"theta\")");
    return *job.theta;
}

inline const FramingVector& need_framing(const JobSpec& job)
{
    if (!job.framing)
        fail(ErrorCode::DomainError, to_string(job.command) + " needs a framing (--framing or \"framing\")");
    return *job.framing;
}

inline void add_dt_section(Report& rep, const std::string& title, const DTResult& r, io::VarMode var, Json& into,
                           const std::function<bool(const DimVector&)>& keep = {})
{
    Table t({"dim", "DT", "integral", "euler"});
    Json vals = Json::array();
    for (const auto& d : gradings(r.arity, r.truncation)) {
        if (keep && !keep(d))
            continue;
        const RatFunc& v = r.values.at(d);
        const auto e = v.eval_at_one();
        t.row({d.to_string(), show(v, var), r.integral.at(d) ? "yes" : "no", e ? show(*e) : "-"});
        Json entry = io::dt_entry_to_json(d, v, r.integral.at(d));
        entry["display"] = show(v, var);
        vals.push_back(entry);
    }
    into = Json{{"provenance", r.provenance}, {"integral", r.all_integral()}, {"values", vals}};
    rep.section(title, t);
}

inline void run_dt(const JobSpec& job, Report& rep)
{
    const Quiver& q = need_quiver(job);
    const DTResult r = dt_all(q, job.truncation);
    add_dt_section(rep, "DT functions", r, job.var, rep.results["dt"]);
    rep.check("integrality", r.all_integral());
    if (job.framing)
        rep.check("ptdt", ptdt_check(q, *job.framing, job.truncation));
}

inline void run_framed(const JobSpec& job, Report& rep, bool motives_only)
{
    const Quiver& q = need_quiver(job);
    const FramingVector& f = need_framing(job);
    const GradedSeries z = framed_series(q, f, job.truncation);
    Table t(motives_only ? std::vector<std::string>{"dim", "[M_f,d]", "euler"} : std::vector<std::string>{"dim", "Z_f", "[M_f,d]"});
    Json rows = Json::array();
    bool integral = true;
    for (const auto& d : gradings(q.size(), job.truncation)) {
        const RatFunc zd = z.coeff(d);
        const RatFunc m = zd * RatFunc(dtq::detail::neg_x_pow(-euler_form(q, d, d)));
        integral = integral && m.is_polynomial();
        const std::string ms = show(m, job.var);
        Json row{{"dim", io::dim_to_json(d)}};
        if (motives_only) {
            const auto e = m.eval_at_one();
            t.row({d.to_string(), ms, e ? show(*e) : "-"});
        } else {
            t.row({d.to_string(), show(zd, job.var), ms});
            row["framed"] = io::ratfunc_to_json(zd);
        }
        row["motive"] = io::ratfunc_to_json(m);
        row["display"] = ms;
        rows.push_back(row);
    }
    rep.results[motives_only ? "motives" : "framed"] = rows;
    rep.section(motives_only ? "framed moduli classes" : "framed series", t);
    rep.check("hilbert integrality", integral);
    if (!motives_only)
        rep.check("ptdt", ptdt_check(q, f, job.truncation));
}

inline void run_wallcross(const JobSpec& job, Report& rep)
{
    const Quiver& q = need_quiver(job);
    const Stability& th = need_theta(job);
    const SlopeSeries s = hn_semistable_series(q, th, job.truncation);
    Table t({"slope", "dim", "semistable class", "count"});
    Json slopes = Json::array();
    for (const auto& [mu, f] : s) {
        Json entries = Json::array();
        for (const auto& d : gradings(q.size(), job.truncation)) {
            const RatFunc* v = f.find(d);
            if (d.is_zero() || !v)
                continue;
            const RatFunc c = *v * RatFunc(gauge_class(d)) * RatFunc(dtq::detail::neg_x_pow(-euler_form(q, d, d)));
            t.row({mu.get_str(), d.to_string(), show(*v, job.var), show(c, io::VarMode::Q)});
            entries.push_back(Json{{"dim", io::dim_to_json(d)}, {"value", io::ratfunc_to_json(*v)}, {"count", io::ratfunc_to_json(c)}});
        }
        Json rec{{"slope", mu.get_str()}, {"classes", entries}};
        try {
            const DTResult r = dt_slope(q, th, mu, job.truncation);
            Json dt;
            add_dt_section(rep, "DT at slope " + mu.get_str(), r, job.var, dt,
                           [&](const DimVector& d) { return !d.is_zero() && slope(th, d) == mu; });
            rec["dt"] = dt;
        } catch (const Error& e) {
            if (e.code() != ErrorCode::NotSymmetricOnSlope)
                throw;
            rec["dt"] = nullptr;
        }
        slopes.push_back(rec);
    }
    rep.results["slopes"] = slopes;
    rep.text = "semistable classes\n" + t.render() + "\n" + rep.text;
    rep.check("reassembly", hn_reassembles(q, s, job.truncation));
}

inline unsigned degree_bound(const Quiver& q, const DimVector& d) { return static_cast<unsigned>(q.rep_dimension(d)); }

inline void run_count(const JobSpec& job, Report& rep)
{
    const Quiver& q = need_quiver(job);
    const RelationSpec rel = parse_relations(job.relations, q);
    Table t({"dim", job.theta ? "semistable count" : "count", "samples"});
    Json rows = Json::array();
    for (const auto& d : gradings(q.size(), job.truncation)) {
        if (d.is_zero())
            continue;
        const CountPolynomial p = job.theta ? semistable_count_polynomial(q, *job.theta, d, degree_bound(q, d), job.count)
                                            : count_polynomial(q, rel, d, degree_bound(q, d), job.count);
        std::string samples;
        for (const auto& [prime, n] : p.samples)
            samples += (samples.empty() ? "" : " ") + std::to_string(prime) + ":" + n.get_str();
        t.row({d.to_string(), show_count(p), samples});
        rows.push_back(Json{{"dim", io::dim_to_json(d)}, {"polynomial", io::count_to_json(p)}, {"display", show_count(p)}});
    }
    rep.results["counts"] = rows;
    rep.section(job.theta ? "semistable point counts" : "point counts", t);
}

inline void run_dimred(const JobSpec& job, Report& rep)
{
    const Quiver& q = need_quiver(job);
    require_symmetric(q);
    const RelationSpec rel = parse_relations(job.relations, q);
    std::map<DimVector, CountPolynomial> counts;
    Table ct({"dim", "count"});
    Json crow = Json::array();
    for (const auto& d : gradings(q.size(), job.truncation)) {
        if (d.is_zero())
            continue;
        auto p = count_polynomial(q, rel, d, degree_bound(q, d), job.count);
        ct.row({d.to_string(), show_count(p)});
        crow.push_back(Json{{"dim", io::dim_to_json(d)}, {"polynomial", io::count_to_json(p)}});
        counts.emplace(d, std::move(p));
    }
    rep.results["counts"] = crow;
    rep.section("relation locus counts", ct);
    const DTResult r = dimred_dt(q, counts, job.truncation);
    add_dt_section(rep, "DT functions (dimension reduction)", r, job.var, rep.results["dt"]);
    rep.check("integrality", r.all_integral());
}

inline RatFunc random_ratfunc(std::mt19937& g)
{
    auto poly = [&](int lo) {
        HalfTwistPoly p;
        std::uniform_int_distribution<int> coeff(-3, 3), exp(lo, lo + 4);
        for (int i = 0; i < 3; ++i)
            p += HalfTwistPoly::monomial(coeff(g), exp(g));
        return p;
    };
    HalfTwistPoly den;
    while (den.is_zero())
        den = poly(0);
    return RatFunc(poly(-2), den);
}

inline void run_selfcheck(Report& rep)
{
    auto single = [](const DTResult& r, const HalfTwistPoly& dt1) {
        if (!r.all_integral() || r.poly(DimVector{1}) != dt1)
            return false;
        for (const auto& [d, v] : r.values)
            if (d.total() >= 2 && !v.is_zero())
                return false;
        return true;
    };
    std::vector<std::pair<std::string, std::function<bool()>>> checks{
        {"point quiver DT", [&] { return single(dt_all(Quiver::point(), 6), HalfTwistPoly(1)); }},
        {"Jordan quiver DT", [&] { return single(dt_all(Quiver::jordan(), 6), HalfTwistPoly::l_half()); }},
        {"2-loop integrality", [] { return dt_all(Quiver::loops(2), 4).all_integral(); }},
        {"PT-DT point f<=3",
         [] { return ptdt_check(Quiver::point(), {{1}}, 5) && ptdt_check(Quiver::point(), {{2}}, 5) && ptdt_check(Quiver::point(), {{3}}, 5); }},
        {"PT-DT Jordan f=1", [] { return ptdt_check(Quiver::jordan(), {{1}}, 5); }},
        {"K1 reassembly", [] { return hn_reassembles(Quiver::k1(), hn_semistable_series(Quiver::k1(), {{1, -1}}, 4), 4); }},
        {"K1 semistable counts",
         [] {
             const Quiver q = Quiver::k1();
             const Stability th{{1, -1}};
             const auto s = hn_semistable_series(q, th, 3);
             for (const auto& d : gradings(2, 3)) {
                 if (d.is_zero())
                     continue;
                 const RatFunc c = s.at(slope(th, d)).coeff(d) * RatFunc(gauge_class(d)) * RatFunc(dtq::detail::neg_x_pow(-euler_form(q, d, d)));
                 if (!c.is_polynomial())
                     return false;
                 for (std::uint64_t p : {2u, 3u})
                     if (c.num().eval_at_L(Rational(Integer(static_cast<unsigned long>(p)))) != Rational(count_semistable(q, th, d, p)))
                         return false;
             }
             return true;
         }},
        {"K1 slope DT",
         [] {
             const auto r = dt_slope(Quiver::k1(), {{1, -1}}, Rational(0), 4);
             return r.value(DimVector{1, 1}) == RatFunc(1) && r.value(DimVector{2, 2}).is_zero();
         }},
        {"Adams sign law",
         [] {
             for (unsigned k = 1; k <= 8; ++k)
                 if (psi(HalfTwistPoly::l_half(), k) != HalfTwistPoly::monomial(k % 2 == 1 ? 1 : -1, 0) * dtq::detail::neg_x_pow(static_cast<int>(k)))
                     return false;
             return true;
         }},
        {"bracket split n<=20",
         [] {
             for (unsigned m = 1; m <= 20; ++m)
                 for (unsigned p = 0; p * m <= 20; ++p)
                     for (unsigned r = 0; p * m + r <= 20; ++r)
                         if (!check_bracket_split(m, p, r))
                             return false;
             return true;
         }},
        {"eq1 m,n<=3",
         [] {
             for (unsigned m = 1; m <= 3; ++m)
                 for (unsigned n = 0; n <= 3; ++n)
                     if (!check_eq1(m, n))
                         return false;
             return true;
         }},
        {"sigma group law",
         [] {
             std::mt19937 g(7);
             for (int i = 0; i < 10; ++i)
                 if (!check_sigma_group_hom(random_ratfunc(g), random_ratfunc(g), 4))
                     return false;
             return true;
         }},
        {"P^{m,n} expansion",
         [] {
             for (unsigned m = 1; m <= 4; ++m)
                 for (unsigned n = 1; m * n <= 4; ++n)
                     if (!verify_Pmn(compute_Pmn(m, n)))
                         return false;
             return true;
         }},
        {"GL(n) point counts",
         [] {
             for (unsigned n = 0; n <= 2; ++n)
                 for (std::uint64_t p : {2u, 3u})
                     if (Rational(count_invertible_matrices(n, p)) != gl_class(n).eval_at_L(Rational(Integer(static_cast<unsigned long>(p)))))
                         return false;
             return true;
         }},
        {"Joyce-Song Jordan",
         [] {
             const auto e = euler_dt(joyce_song(dt_all(Quiver::jordan(), 6)));
             for (int d = 1; d <= 6; ++d)
                 if (e.at(DimVector{d}) != Rational(Integer(-1), Integer(d * d)))
                     return false;
             return euler_divisor_sum_holds(dt_all(Quiver::loops(2), 4));
         }},
        {"dimension reduction point->Jordan",
         [] {
             std::map<DimVector, CountPolynomial> ones;
             for (int d = 1; d <= 5; ++d)
                 ones.emplace(DimVector{d}, CountPolynomial::constant(1));
             return dimred_dt(Quiver::point(), ones, 5).values == dt_all(Quiver::jordan(), 5).values;
         }},
        {"display round trip",
         [] {
             std::mt19937 g(3);
             for (int i = 0; i < 20; ++i) {
                 const RatFunc v = random_ratfunc(g);
                 for (auto m : {io::VarMode::Lhalf, io::VarMode::X})
                     if (io::parse_value(io::format_value(v, m), m) != v)
                         return false;
             }
             return true;
         }},
    };
    for (const auto& [name, f] : checks) {
        bool ok = false;
        try {
            ok = f();
        } catch (const Error&) {
            ok = false;
        }
        rep.check(name, ok);
    }
}

} // namespace detail

/// Runs one job and writes its report to `out`; diagnostics go to `err`.
inline int run(const JobSpec& job, std::ostream& out, std::ostream& err)
{
    using detail::Json;
    const auto start = std::chrono::steady_clock::now();
    detail::Report rep;
    try {
        if (job.truncation < 0)
            fail(ErrorCode::DomainError, "truncation must be non-negative");
        if (job.input) {
            const std::size_t n = job.input->quiver.size();
            if (job.theta && job.theta->theta.size() != n)
                fail(ErrorCode::ArityMismatch, "theta has the wrong number of entries");
            if (job.framing && job.framing->f.size() != n)
                fail(ErrorCode::ArityMismatch, "framing has the wrong number of entries");
        }
        switch (job.command) {
        case Command::Dt:
            detail::run_dt(job, rep);
            break;
        case Command::Framed:
            detail::run_framed(job, rep, false);
            break;
        case Command::Hilb:
            detail::run_framed(job, rep, true);
            break;
        case Command::Wallcross:
            detail::run_wallcross(job, rep);
            break;
        case Command::Dimred:
            detail::run_dimred(job, rep);
            break;
        case Command::Count:
            detail::run_count(job, rep);
            break;
        case Command::Selfcheck:
            detail::run_selfcheck(rep);
            break;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (job.format == Format::Json)
            out << Json{{"command", to_string(job.command)}, {"error", {{"code", std::string(to_string(e.code()))}, {"message", e.what()}}}}.dump(2)
                << '\n';
        return exit_code(e.code());
    }

    bool all_ok = true;
    for (const auto& [name, ok] : rep.checks)
        all_ok = all_ok && ok;

    if (job.format == Format::Json) {
        Json inputs{{"command", to_string(job.command)}, {"truncation", job.truncation}, {"var", io::to_string(job.var)}};
        if (job.input)
            inputs["quiver"] = io::quiver_to_json(job.input->quiver);
        if (job.theta)
            inputs["theta"] = job.theta->theta;
        if (job.framing)
            inputs["framing"] = job.framing->f;
        if (!job.relations.empty())
            inputs["relations"] = job.relations;
        Json checks = Json::array();
        for (const auto& [name, ok] : rep.checks)
            checks.push_back(Json{{"name", name}, {"passed", ok}});
        out << Json{{"inputs", inputs}, {"results", rep.results}, {"checks", checks}, {"status", all_ok ? "ok" : "check failed"}}.dump(2)
            << '\n';
    } else {
        out << rep.text;
        if (!rep.checks.empty()) {
            detail::Table t({"check", "result"});
            for (const auto& [name, ok] : rep.checks)
                t.row({name, ok ? "PASS" : "FAIL"});
            out << t.render();
        }
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        out << "time: " << std::fixed << std::setprecision(1) << ms << " ms\n";
    }
    return all_ok ? 0 : 4;
}

} // namespace dtq::cli
