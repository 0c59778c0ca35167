#pragma once

#include "coflow/coframe.hpp"

#include <cctype>
#include <string>

namespace coflow {

/// Syntax error with the byte offset into the input text.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t at)
        : std::runtime_error(message + " (at byte " + std::to_string(at) + ")"), offset(at) {}
    std::size_t offset;
};

/// Parser for structure equations in tuple notation, e.g.
///
///     (0,0,-h14,-h13,h25,-h26)
///     (0,0,0,0,2h12+(2r2-2)h13+(-2-2r2)h24-2h34,4r2h12+4r2h23-4r2h34)
///
/// Entries are sums of terms [coeff]h<i><j> with single-digit indices and
/// coefficients rational, rational*radical (r2, r3, r6) or a parenthesized
/// sum of those.  Whitespace is ignored.
class StructureParser {
public:
    StructureParser(std::string text, int dim) : text_(std::move(text)), dim_(dim) {}

    Coframe parse() {
        Coframe frame;
        frame.dim = dim_;
        expect('(');
        for (int i = 0; i < dim_; ++i) {
            if (i > 0) expect(',');
            frame.d_table.push_back(parse_entry());
        }
        expect(')');
        skip_ws();
        if (pos_ < text_.size()) fail("trailing input after structure tuple");
        return frame;
    }

private:
    Form<FieldElem> parse_entry() {
        skip_ws();
        if (peek() == '0' && !std::isdigit(peek_at(pos_ + 1)) && peek_at(pos_ + 1) != '/') {
            ++pos_;
            return Form<FieldElem>(dim_, 2);
        }
        Form<FieldElem> sum(dim_, 2);
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                break;
            }
            sum += parse_term(sign);
            first = false;
            skip_ws();
            if (peek() != '+' && peek() != '-') break;
        }
        return sum;
    }

    Form<FieldElem> parse_term(int sign) {
        skip_ws();
        FieldElem coeff = 1;
        if (peek() == '(') {
            coeff = parse_paren_coeff();
            skip_ws();
            if (peek() == '*') ++pos_;
        } else if (std::isdigit(peek()) || peek() == 'r') {
            coeff = parse_simple_coeff();
            skip_ws();
            if (peek() == '*') ++pos_;
        }
        skip_ws();
        if (peek() != 'h') fail("expected generator 'h'");
        ++pos_;
        int i = parse_index();
        int j = parse_index();
        if (sign < 0) coeff = -coeff;
        return Form<FieldElem>::term(dim_, {i, j}, coeff);
    }

    int parse_index() {
        if (!std::isdigit(peek())) fail("expected index digit");
        int idx = peek() - '0';
        if (idx < 1 || idx > dim_)
            fail("index out of range for dimension " + std::to_string(dim_));
        ++pos_;
        return idx;
    }

    // rational, radical, or rational*radical (no sign; signs live in sums)
    FieldElem parse_simple_coeff() {
        Rational r = 1;
        bool have_rational = false;
        if (std::isdigit(peek())) {
            r = parse_rational();
            have_rational = true;
        }
        skip_ws();
        if (peek() == '*' && peek_at(pos_ + 1) == 'r') ++pos_;
        if (peek() == 'r') {
            FieldElem radical = parse_radical();
            return FieldElem(r) * radical;
        }
        if (!have_rational) fail("expected coefficient");
        return FieldElem(r);
    }

    FieldElem parse_paren_coeff() {
        expect('(');
        FieldElem acc;
        bool first = true;
        while (true) {
            skip_ws();
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                if (peek() == '-') sign = -1;
                ++pos_;
            } else if (!first) {
                fail("expected '+', '-' or ')' in coefficient");
            }
            skip_ws();
            FieldElem piece = parse_simple_coeff();
            acc += (sign < 0) ? -piece : piece;
            first = false;
            skip_ws();
            if (peek() == ')') {
                ++pos_;
                return acc;
            }
        }
    }

    FieldElem parse_radical() {
        expect('r');
        char c = peek();
        ++pos_;
        switch (c) {
            case '2': return FieldElem::sqrt2();
            case '3': return FieldElem::sqrt3();
            case '6': return FieldElem::sqrt6();
            default: fail("unknown radical (expected r2, r3 or r6)");
        }
        return {};
    }

    Rational parse_rational() {
        std::size_t start = pos_;
        while (std::isdigit(peek())) ++pos_;
        if (start == pos_) fail("expected number");
        std::string num = text_.substr(start, pos_ - start);
        if (peek() == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (std::isdigit(peek())) ++pos_;
            if (dstart == pos_) fail("expected denominator digits");
            std::string den = text_.substr(dstart, pos_ - dstart);
            return rational_from_string(num + "/" + den);
        }
        return rational_from_string(num);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() const { return peek_at(pos_); }
    char peek_at(std::size_t p) const { return p < text_.size() ? text_[p] : '\0'; }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

    std::string text_;
    int dim_;
    std::size_t pos_ = 0;
};

inline Coframe parse_structure_equations(const std::string& text, int dim) {
    return StructureParser(text, dim).parse();
}

/// Inverse of the parser, in the same grammar; parse(render(f)) == f.
inline std::string render_structure_equations(const Coframe& frame) {
    std::string out = "(";
    for (int i = 1; i <= frame.dim; ++i) {
        if (i > 1) out += ",";
        const auto& dh = frame.dh(i);
        if (dh.is_zero()) {
            out += "0";
            continue;
        }
        bool first = true;
        for (const auto& [b, c] : dh.terms()) {
            std::string cs = c.to_string();
            bool negated = false;
            if (!cs.empty() && cs[0] == '-' && cs[1] != '(' && cs.find('(') == std::string::npos) {
                cs = cs.substr(1);
                negated = true;
            }
            if (cs == "1") cs.clear();
            out += first ? (negated ? "-" : "") : (negated ? "-" : "+");
            out += cs + "h";
            for (int idx : blades::indices(b)) out += std::to_string(idx);
            first = false;
        }
    }
    out += ")";
    return out;
}

}  // namespace coflow
