#pragma once

#include "dtq/error.hpp"
#include "dtq/lambda/half_twist_poly.hpp"
#include "dtq/lambda/rat_func.hpp"

#include <cctype>
#include <string>
#include <string_view>

namespace dtq::io {

/// How values are printed: in powers of L^{1/2}, of the internal x = -L^{1/2},
/// or of q = L (even exponents only).
enum class VarMode { Lhalf, X, Q };

inline VarMode parse_var_mode(std::string_view s)
{
    if (s == "Lhalf")
        return VarMode::Lhalf;
    if (s == "x")
        return VarMode::X;
    if (s == "q")
        return VarMode::Q;
    fail(ErrorCode::ParseError, "unknown variable mode '" + std::string(s) + "'");
}

inline std::string to_string(VarMode m)
{
    switch (m) {
    case VarMode::Lhalf:
        return "Lhalf";
    case VarMode::X:
        return "x";
    case VarMode::Q:
        return "q";
    }
    return "";
}

namespace detail {

/// Exponent of the display symbol, as text; empty for the power 1.
inline std::string exponent_text(int xexp, VarMode m)
{
    if (m == VarMode::Lhalf) {
        if (xexp % 2 != 0)
            return "^(" + std::to_string(xexp) + "/2)";
        const int k = xexp / 2;
        return k == 1 ? "" : "^" + std::to_string(k);
    }
    const int k = m == VarMode::Q ? xexp / 2 : xexp;
    return k == 1 ? "" : "^" + std::to_string(k);
}

inline char symbol(VarMode m)
{
    switch (m) {
    case VarMode::Lhalf:
        return 'L';
    case VarMode::X:
        return 'x';
    case VarMode::Q:
        return 'q';
    }
    return '?';
}

class PolyReader {
public:
    PolyReader(std::string_view s, VarMode m) : s_(s), m_(m) {}

    HalfTwistPoly read_all()
    {
        HalfTwistPoly p = read_poly();
        skip_ws();
        if (pos_ != s_.size())
            bad("trailing characters");
        return p;
    }

    RatFunc read_ratfunc()
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            const std::size_t save = pos_;
            ++pos_;
            HalfTwistPoly num = read_poly();
            expect(')');
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip_ws();
                expect('(');
                HalfTwistPoly den = read_poly();
                expect(')');
                skip_ws();
                if (pos_ != s_.size())
                    bad("trailing characters");
                if (den.is_zero())
                    bad("zero denominator");
                return RatFunc(std::move(num), std::move(den));
            }
            pos_ = save;
        }
        return RatFunc(read_all());
    }

private:
    std::string_view s_;
    VarMode m_;
    std::size_t pos_ = 0;

    [[noreturn]] void bad(const std::string& msg) const
    {
        fail(ErrorCode::ParseError, "cannot read '" + std::string(s_) + "' as a " + to_string(m_) + " value: " + msg);
    }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            bad(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool digit() const { return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])); }

    Integer integer()
    {
        const std::size_t start = pos_;
        while (digit())
            ++pos_;
        if (start == pos_)
            bad("expected a number");
        return Integer(std::string(s_.substr(start, pos_ - start)));
    }

    int small_int()
    {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        const Integer v = integer();
        if (!v.fits_sint_p())
            bad("exponent out of range");
        return neg ? -static_cast<int>(v.get_si()) : static_cast<int>(v.get_si());
    }

    /// Exponent of x for symbol^e.
    int exponent()
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != '^')
            return m_ == VarMode::X ? 1 : 2;
        ++pos_;
        skip_ws();
        int num = 0, den = 1;
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            num = small_int();
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                den = small_int();
            }
            expect(')');
        } else {
            num = small_int();
        }
        if (m_ == VarMode::Lhalf) {
            if (den == 2)
                return num;
            if (den == 1)
                return 2 * num;
            bad("L exponents are multiples of 1/2");
        }
        if (den != 1)
            bad("fractional exponent");
        return m_ == VarMode::Q ? 2 * num : num;
    }

    HalfTwistPoly read_poly()
    {
        HalfTwistPoly p;
        skip_ws();
        bool first = true;
        for (;;) {
            skip_ws();
            int sign = 1;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                break;
            }
            Integer c = 1;
            bool have_coeff = false;
            if (digit()) {
                c = integer();
                have_coeff = true;
                skip_ws();
                if (pos_ < s_.size() && s_[pos_] == '*') {
                    ++pos_;
                    skip_ws();
                    if (pos_ >= s_.size() || s_[pos_] != symbol(m_))
                        bad("expected the variable after '*'");
                }
            }
            int e = 0;
            if (pos_ < s_.size() && s_[pos_] == symbol(m_)) {
                ++pos_;
                e = exponent();
            } else if (!have_coeff) {
                bad("expected a term");
            }
            Integer coeff = sign * c;
            // c (L^{1/2})^n = c (-1)^n x^n
            if (m_ != VarMode::X && e % 2 != 0)
                coeff = -coeff;
            p += HalfTwistPoly::monomial(coeff, e);
            first = false;
        }
        return p;
    }
};

} // namespace detail

/// Human-readable polynomial, highest power first.  Q mode requires even
/// exponents.
inline std::string format_poly(const HalfTwistPoly& p, VarMode m)
{
    if (m == VarMode::Q && !p.only_even_exponents())
        fail(ErrorCode::DomainError, "value has odd powers of L^{1/2}; not expressible in q");
    const auto terms = p.terms();
    if (terms.empty())
        return "0";
    std::string out;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const int e = it->first;
        Integer c = it->second;
        if (m != VarMode::X && e % 2 != 0)
            c = -c;
        const bool neg = c < 0;
        if (neg)
            c = -c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (e == 0) {
            out += c.get_str();
            continue;
        }
        if (c != 1)
            out += c.get_str() + "*";
        out += detail::symbol(m);
        out += detail::exponent_text(e, m);
    }
    return out;
}

inline std::string format_value(const RatFunc& v, VarMode m)
{
    if (v.is_polynomial())
        return format_poly(v.num(), m);
    return "(" + format_poly(v.num(), m) + ")/(" + format_poly(v.den(), m) + ")";
}

inline HalfTwistPoly parse_poly(std::string_view s, VarMode m) { return detail::PolyReader(s, m).read_all(); }

inline RatFunc parse_value(std::string_view s, VarMode m) { return detail::PolyReader(s, m).read_ratfunc(); }

} // namespace dtq::io
