#pragma once

#include "dtq/dt/dt.hpp"
#include "dtq/error.hpp"
#include "dtq/fqcount/interpolate.hpp"
#include "dtq/fqcount/relations.hpp"
#include "dtq/quiver/quiver.hpp"

#include <json.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dtq::io {

using Json = nlohmann::ordered_json;

/// Integers that fit in 64 bits are JSON numbers, larger ones are strings.
inline Json integer_to_json(const Integer& v)
{
    if (v.fits_slong_p())
        return v.get_si();
    return v.get_str();
}

inline Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(j.get<long>());
    if (j.is_string()) {
        Integer v;
        if (v.set_str(j.get<std::string>(), 10) != 0)
            fail(ErrorCode::ParseError, "not an integer: " + j.dump());
        return v;
    }
    fail(ErrorCode::ParseError, "not an integer: " + j.dump());
}

/// [[exponent of x, coefficient], ...] ascending
inline Json poly_to_json(const HalfTwistPoly& p)
{
    Json a = Json::array();
    for (const auto& [e, c] : p.terms())
        a.push_back(Json::array({e, integer_to_json(c)}));
    return a;
}

inline HalfTwistPoly poly_from_json(const Json& j)
{
    if (!j.is_array())
        fail(ErrorCode::ParseError, "polynomial must be a list of [exponent, coefficient] pairs");
    HalfTwistPoly p;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer())
            fail(ErrorCode::ParseError, "bad polynomial term " + t.dump());
        p += HalfTwistPoly::monomial(integer_from_json(t[1]), t[0].get<int>());
    }
    return p;
}

/// Same terms in powers of L^{1/2}: c x^n is (-1)^n c (L^{1/2})^n.
inline Json poly_to_json_lhalf(const HalfTwistPoly& p)
{
    Json a = Json::array();
    for (const auto& [e, c] : p.terms())
        a.push_back(Json::array({e, integer_to_json(e % 2 == 0 ? c : Integer(-c))}));
    return a;
}

inline HalfTwistPoly poly_from_json_lhalf(const Json& j)
{
    HalfTwistPoly p = poly_from_json(j);
    HalfTwistPoly r;
    for (const auto& [e, c] : p.terms())
        r += HalfTwistPoly::monomial(e % 2 == 0 ? c : Integer(-c), e);
    return r;
}

inline Json ratfunc_to_json(const RatFunc& v) { return Json{{"num", poly_to_json(v.num())}, {"den", poly_to_json(v.den())}}; }

inline RatFunc ratfunc_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        fail(ErrorCode::ParseError, "rational function needs num and den");
    const HalfTwistPoly den = poly_from_json(j.at("den"));
    if (den.is_zero())
        fail(ErrorCode::ParseError, "zero denominator");
    return RatFunc(poly_from_json(j.at("num")), den);
}

inline Json dim_to_json(const DimVector& d) { return Json(d.entries()); }

inline DimVector dim_from_json(const Json& j)
{
    if (!j.is_array())
        fail(ErrorCode::ParseError, "dimension vector must be a list");
    std::vector<int> v;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<long>() < 0)
            fail(ErrorCode::ParseError, "dimension vector entries must be natural numbers");
        v.push_back(e.get<int>());
    }
    return DimVector(std::move(v));
}

/// Records sorted by dimension vector.
inline Json series_to_json(const GradedSeries& s)
{
    Json a = Json::array();
    for (const auto& d : gradings(s.arity(), s.truncation()))
        if (const RatFunc* v = s.find(d))
            a.push_back(Json{{"dim", dim_to_json(d)}, {"value", ratfunc_to_json(*v)}});
    return a;
}

inline Json dt_entry_to_json(const DimVector& d, const RatFunc& v, bool integral)
{
    Json e{{"dim", dim_to_json(d)}};
    if (integral) {
        e["value_Lhalf"] = poly_to_json_lhalf(v.num());
    } else {
        e["value_Lhalf"] = nullptr;
        e["num_Lhalf"] = poly_to_json_lhalf(v.num());
        e["den_Lhalf"] = poly_to_json_lhalf(v.den());
    }
    e["integral"] = integral;
    return e;
}

inline Json dt_to_json(const DTResult& r)
{
    Json vals = Json::array();
    for (const auto& d : gradings(r.arity, r.truncation))
        vals.push_back(dt_entry_to_json(d, r.values.at(d), r.integral.at(d)));
    return Json{{"provenance", r.provenance}, {"truncation", r.truncation}, {"integral", r.all_integral()}, {"values", vals}};
}

inline DTResult dt_from_json(const Json& j)
{
    DTResult r;
    try {
        r.provenance = j.at("provenance").get<std::string>();
        r.truncation = j.at("truncation").get<int>();
        for (const auto& e : j.at("values")) {
            const DimVector d = dim_from_json(e.at("dim"));
            r.arity = d.arity();
            const bool integral = e.at("integral").get<bool>();
            RatFunc v = integral ? RatFunc(poly_from_json_lhalf(e.at("value_Lhalf")))
                                 : RatFunc(poly_from_json_lhalf(e.at("num_Lhalf")), poly_from_json_lhalf(e.at("den_Lhalf")));
            r.integral.emplace(d, integral);
            r.values.emplace(d, std::move(v));
        }
    } catch (const nlohmann::json::exception& ex) {
        fail(ErrorCode::ParseError, std::string("malformed DT record: ") + ex.what());
    }
    return r;
}

inline Json count_to_json(const CountPolynomial& p)
{
    Json c = Json::array();
    for (const auto& v : p.coeffs)
        c.push_back(integer_to_json(v));
    Json s = Json::array();
    for (const auto& [prime, n] : p.samples)
        s.push_back(Json::array({prime, integer_to_json(n)}));
    return Json{{"coeffs", c}, {"samples", s}};
}

inline CountPolynomial count_from_json(const Json& j)
{
    CountPolynomial p;
    const Json& c = j.is_object() ? j.at("coeffs") : j;
    if (!c.is_array() || c.empty())
        fail(ErrorCode::ParseError, "count polynomial needs a nonempty coefficient list");
    for (const auto& v : c)
        p.coeffs.push_back(integer_from_json(v));
    if (j.is_object() && j.contains("samples"))
        for (const auto& s : j.at("samples"))
            p.samples.emplace_back(s.at(0).get<std::uint64_t>(), integer_from_json(s.at(1)));
    return p;
}

/// Quiver input file: {"vertices": [...], "arrows": [[from, to, count(, labels)]...],
/// "theta": [...], "framing": [...]}.  Endpoints are vertex labels or indices.
struct QuiverInput {
    Quiver quiver;
    std::optional<Stability> theta;
    std::optional<FramingVector> framing;
};

namespace detail {

inline std::vector<int> int_list(const Json& j, const char* what, bool natural)
{
    if (!j.is_array())
        fail(ErrorCode::ParseError, std::string(what) + " must be a list of integers");
    std::vector<int> v;
    for (const auto& e : j) {
        if (!e.is_number_integer() || (natural && e.get<long>() < 0))
            fail(ErrorCode::ParseError, std::string(what) + " entries must be " + (natural ? "natural numbers" : "integers"));
        v.push_back(e.get<int>());
    }
    return v;
}

} // namespace detail

inline QuiverInput quiver_from_json(const Json& j)
{
    if (!j.is_object())
        fail(ErrorCode::ParseError, "quiver description must be a JSON object");
    if (!j.contains("vertices") || !j.at("vertices").is_array() || j.at("vertices").empty())
        fail(ErrorCode::ParseError, "quiver needs a nonempty 'vertices' list");
    std::vector<std::string> labels;
    for (const auto& v : j.at("vertices")) {
        if (v.is_string())
            labels.push_back(v.get<std::string>());
        else if (v.is_number_integer())
            labels.push_back(std::to_string(v.get<long>()));
        else
            fail(ErrorCode::ParseError, "vertex labels must be strings or integers");
    }
    if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size())
        fail(ErrorCode::ParseError, "duplicate vertex label");
    const std::size_t n = labels.size();
    auto vertex = [&](const Json& v) -> std::size_t {
        if (v.is_string()) {
            for (std::size_t i = 0; i < n; ++i)
                if (labels[i] == v.get<std::string>())
                    return i;
        } else if (v.is_number_integer()) {
            // integers name a vertex label first, then an index
            for (std::size_t i = 0; i < n; ++i)
                if (labels[i] == std::to_string(v.get<long>()))
                    return i;
            if (v.get<long>() >= 0 && static_cast<std::size_t>(v.get<long>()) < n)
                return static_cast<std::size_t>(v.get<long>());
        }
        fail(ErrorCode::ParseError, "unknown vertex " + v.dump());
    };

    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    std::vector<std::vector<std::vector<std::string>>> named(n, std::vector<std::vector<std::string>>(n));
    bool any_named = false;
    const Json arrows = j.value("arrows", Json::array());
    if (!arrows.is_array())
        fail(ErrorCode::ParseError, "'arrows' must be a list");
    for (const auto& e : arrows) {
        if (!e.is_array() || e.size() < 3 || e.size() > 4 || !e[2].is_number_integer() || e[2].get<long>() < 0)
            fail(ErrorCode::ParseError, "arrow entries are [from, to, count] or [from, to, count, labels]: " + e.dump());
        const std::size_t s = vertex(e[0]), t = vertex(e[1]);
        const int c = e[2].get<int>();
        a[s][t] += c;
        if (e.size() == 4) {
            if (!e[3].is_array() || e[3].size() != static_cast<std::size_t>(c))
                fail(ErrorCode::ParseError, "arrow label list must have one label per arrow: " + e.dump());
            for (const auto& l : e[3]) {
                if (!l.is_string() || l.get<std::string>().empty())
                    fail(ErrorCode::ParseError, "arrow labels must be nonempty strings");
                named[s][t].push_back(l.get<std::string>());
            }
            any_named = true;
        } else {
            for (int k = 0; k < c; ++k)
                named[s][t].emplace_back();
        }
    }

    QuiverInput in{Quiver(labels, a), std::nullopt, std::nullopt};
    if (any_named) {
        std::vector<std::string> all;
        std::size_t idx = 0;
        for (std::size_t s = 0; s < n; ++s)
            for (std::size_t t = 0; t < n; ++t)
                for (const auto& l : named[s][t]) {
                    all.push_back(l.empty() ? default_arrow_label(idx) : l);
                    ++idx;
                }
        if (std::set<std::string>(all.begin(), all.end()).size() != all.size())
            fail(ErrorCode::ParseError, "duplicate arrow label");
        for (const auto& l : all)
            for (char ch : l)
                if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '\'')
                    fail(ErrorCode::ParseError, "arrow label '" + l + "' must be alphanumeric");
        in.quiver.set_arrow_labels(std::move(all));
    }
    if (j.contains("theta")) {
        auto th = detail::int_list(j.at("theta"), "theta", false);
        if (th.size() != n)
            fail(ErrorCode::ParseError, "theta must have one entry per vertex");
        in.theta = Stability{std::move(th)};
    }
    if (j.contains("framing")) {
        auto f = detail::int_list(j.at("framing"), "framing", true);
        if (f.size() != n)
            fail(ErrorCode::ParseError, "framing must have one entry per vertex");
        in.framing = FramingVector{std::move(f)};
    }
    return in;
}

inline Json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        fail(ErrorCode::ParseError, what + " is not valid JSON: " + ex.what());
    }
}

inline QuiverInput quiver_from_text(const std::string& text) { return quiver_from_json(parse_json_text(text, "quiver file")); }

inline Json quiver_to_json(const Quiver& q)
{
    Json arrows = Json::array();
    const auto list = q.arrow_list();
    std::size_t idx = 0;
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            const int c = q.arrows(i, j);
            if (c == 0)
                continue;
            Json names = Json::array();
            for (int k = 0; k < c; ++k)
                names.push_back(list[idx++].label);
            arrows.push_back(Json::array({q.labels()[i], q.labels()[j], c, names}));
        }
    return Json{{"vertices", q.labels()}, {"arrows", arrows}};
}

/// Relations file: a JSON list of strings, or one relation per line
/// (blank lines and lines starting with '#' are skipped).
inline std::vector<std::string> relation_lines(const std::string& text)
{
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        const Json j = parse_json_text(text, "relations file");
        std::vector<std::string> out;
        for (const auto& r : j) {
            if (!r.is_string())
                fail(ErrorCode::ParseError, "relations list must contain strings");
            out.push_back(r.get<std::string>());
        }
        return out;
    }
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#')
            continue;
        const std::size_t e = line.find_last_not_of(" \t\r");
        out.push_back(line.substr(b, e - b + 1));
    }
    return out;
}

} // namespace dtq::io
