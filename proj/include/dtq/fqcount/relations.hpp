#pragma once

#include "dtq/error.hpp"
#include "dtq/quiver/quiver.hpp"

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace dtq {

/// One summand c * (a_1 * a_2 * ... * a_k).  The path is stored as written;
/// it acts as the matrix product M_{a_1} ... M_{a_k}, so a_k is applied first.
struct PathTerm {
    long coeff = 1;
    std::vector<std::size_t> arrows;
};

struct Relation {
    std::vector<PathTerm> terms;
    std::size_t source = 0;
    std::size_t target = 0;
    std::string text;
};

struct RelationSpec {
    std::vector<Relation> relations;

    [[nodiscard]] bool empty() const noexcept { return relations.empty(); }
};

namespace detail {

class RelationParser {
public:
    RelationParser(std::string text, const std::vector<Arrow>& arrows) : s_(normalize(text)), arrows_(arrows), text_(std::move(text)) {}

    Relation parse()
    {
        Relation r;
        r.text = text_;
        skip_ws();
        if (at_end())
            syntax("empty relation");
        bool first = true;
        while (!at_end()) {
            long sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                syntax("expected '+' or '-'");
            }
            PathTerm t = term();
            t.coeff *= sign;
            add_term(r, std::move(t), first);
            first = false;
            skip_ws();
        }
        // drop cancelled terms
        std::vector<PathTerm> kept;
        for (auto& t : r.terms)
            if (t.coeff != 0)
                kept.push_back(std::move(t));
        r.terms = std::move(kept);
        return r;
    }

private:
    std::string s_;
    const std::vector<Arrow>& arrows_;
    std::string text_;
    std::size_t pos_ = 0;

    static std::string normalize(std::string_view in)
    {
        std::string out;
        for (std::size_t i = 0; i < in.size(); ++i) {
            if (i + 2 < in.size() && static_cast<unsigned char>(in[i]) == 0xE2 && static_cast<unsigned char>(in[i + 1]) == 0x88
                && static_cast<unsigned char>(in[i + 2]) == 0x92) {
                out += '-';
                i += 2;
            } else {
                out += in[i];
            }
        }
        return out;
    }

    [[nodiscard]] bool at_end() const { return pos_ >= s_.size(); }
    [[nodiscard]] char peek() const { return s_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    [[noreturn]] void syntax(const std::string& msg) const
    {
        fail(ErrorCode::ParseError, "relation '" + text_ + "': " + msg + " at offset " + std::to_string(pos_));
    }

    [[noreturn]] void malformed(const std::string& msg) const
    {
        fail(ErrorCode::MalformedRelation, "relation '" + text_ + "': " + msg);
    }

    long number()
    {
        long v = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000000L)
                syntax("coefficient too large");
            ++pos_;
        }
        return v;
    }

    std::size_t arrow()
    {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\''))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name.empty())
            syntax("expected an arrow label");
        for (std::size_t i = 0; i < arrows_.size(); ++i)
            if (arrows_[i].label == name)
                return i;
        malformed("unknown arrow '" + name + "'");
    }

    PathTerm term()
    {
        PathTerm t;
        bool need_factor = true;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            t.coeff = number();
            skip_ws();
            need_factor = false;
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
                need_factor = true;
            } else if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_')) {
                need_factor = true; // "2a"
            }
        }
        if (!need_factor)
            syntax("a relation term needs at least one arrow");
        for (;;) {
            const std::size_t a = arrow();
            int times = 1;
            skip_ws();
            if (!at_end() && peek() == '^') {
                ++pos_;
                skip_ws();
                if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
                    syntax("expected an exponent");
                times = static_cast<int>(number());
                if (times < 1)
                    syntax("exponent must be positive");
                skip_ws();
            }
            for (int i = 0; i < times; ++i)
                t.arrows.push_back(a);
            if (!at_end() && peek() == '*') {
                ++pos_;
                skip_ws();
                continue;
            }
            break;
        }
        return t;
    }

    void add_term(Relation& r, PathTerm t, bool first)
    {
        // composability: M_{a_k} acts first, so t(a_{k+1}) = s(a_k)
        for (std::size_t k = 0; k + 1 < t.arrows.size(); ++k)
            if (arrows_[t.arrows[k + 1]].target != arrows_[t.arrows[k]].source)
                malformed("arrows '" + arrows_[t.arrows[k]].label + "' and '" + arrows_[t.arrows[k + 1]].label + "' do not compose");
        const std::size_t src = arrows_[t.arrows.back()].source;
        const std::size_t tgt = arrows_[t.arrows.front()].target;
        if (first) {
            r.source = src;
            r.target = tgt;
        } else if (src != r.source || tgt != r.target) {
            malformed("terms have different endpoints");
        }
        for (auto& existing : r.terms)
            if (existing.arrows == t.arrows) {
                existing.coeff += t.coeff;
                return;
            }
        r.terms.push_back(std::move(t));
    }
};

} // namespace detail

inline Relation parse_relation(const std::string& text, const Quiver& q)
{
    const auto arrows = q.arrow_list();
    return detail::RelationParser(text, arrows).parse();
}

inline RelationSpec parse_relations(const std::vector<std::string>& texts, const Quiver& q)
{
    RelationSpec spec;
    const auto arrows = q.arrow_list();
    for (const auto& t : texts)
        spec.relations.push_back(detail::RelationParser(t, arrows).parse());
    return spec;
}

} // namespace dtq
