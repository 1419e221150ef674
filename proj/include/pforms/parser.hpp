#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "pforms/errors.hpp"
#include "pforms/form.hpp"
#include "pforms/polynomial.hpp"

// Text format for polynomials and forms.
//
//   form      := [ "vars" N ";" ] expr
//   expr      := [-] term ((+|-) term)*
//   term      := coeff? atoms? (at least one part)
//   coeff     := factor (* factor)*
//   factor    := number [/ number] | var [^ number] | ( expr-without-atoms )
//   atoms     := dvar (^ dvar)*
//   var       := z1..zN      dvar := dz1..dzN
//
// The coefficient is juxtaposed before the differential atoms:
// "(z1 + 3/2*z2) dz1 ^ dz3". `^` binds exponents on variables and wedges
// between differential atoms; which one is meant is decided by the operand.
// Whitespace is insignificant. Every term must carry the same number of
// differential atoms.

namespace pforms {

namespace parse_detail {

enum class Tok { number, var, dvar, plus, minus, star, slash, caret, lparen, rparen, semi, vars_kw, end };

struct Token {
    Tok kind;
    std::string text;
    int value = 0; // variable index (1-based) for var/dvar
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) {}

    Token next() {
        skip_ws();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::end;
            return t;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Tok::number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                t.text += take();
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_])))
                word += take();
            if (word == "vars") {
                t.kind = Tok::vars_kw;
                return t;
            }
            auto var_index = [&](const std::string& w, size_t digits_from) -> std::optional<int> {
                if (w.size() <= digits_from) return std::nullopt;
                int v = 0;
                for (size_t i = digits_from; i < w.size(); ++i) {
                    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return std::nullopt;
                    v = v * 10 + (w[i] - '0');
                }
                return v;
            };
            if (w_starts(word, "dz")) {
                if (auto v = var_index(word, 2)) {
                    t.kind = Tok::dvar;
                    t.value = *v;
                    return t;
                }
            }
            if (word[0] == 'z') {
                if (auto v = var_index(word, 1)) {
                    t.kind = Tok::var;
                    t.value = *v;
                    return t;
                }
            }
            throw ParseError("unknown identifier '" + word + "'", t.line, t.col);
        }
        switch (c) {
            case '+': t.kind = Tok::plus; break;
            case '-': t.kind = Tok::minus; break;
            case '*': t.kind = Tok::star; break;
            case '/': t.kind = Tok::slash; break;
            case '^': t.kind = Tok::caret; break;
            case '(': t.kind = Tok::lparen; break;
            case ')': t.kind = Tok::rparen; break;
            case ';': t.kind = Tok::semi; break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
        }
        t.text = take();
        return t;
    }

private:
    static bool w_starts(const std::string& w, const char* p) { return w.rfind(p, 0) == 0; }

    char take() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) take();
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

class Parser {
public:
    Parser(const std::string& src, std::optional<int> declared_vars)
        : lex_(src), n_flag_(declared_vars) {
        advance();
    }

    DifferentialForm parse_form() {
        if (cur_.kind == Tok::vars_kw) {
            advance();
            if (cur_.kind != Tok::number)
                throw ParseError("expected variable count after 'vars'", cur_.line, cur_.col);
            int n = std::stoi(cur_.text);
            if (n < 1) throw ParseError("variable count must be positive", cur_.line, cur_.col);
            advance();
            expect(Tok::semi, "';'");
            if (n_flag_ && *n_flag_ != n)
                throw ParseError("declared variable count disagrees with the header", cur_.line,
                                 cur_.col);
            n_ = n;
        } else if (n_flag_) {
            n_ = *n_flag_;
        } else {
            throw ParseError("variable count not declared (use a 'vars N;' header)", cur_.line,
                             cur_.col);
        }

        DifferentialForm out = parse_expr(false);
        if (cur_.kind != Tok::end)
            throw ParseError("trailing input after expression", cur_.line, cur_.col);
        return out;
    }

private:
    void advance() { cur_ = lex_.next(); }
    void expect(Tok k, const char* what) {
        if (cur_.kind != k) throw ParseError(std::string("expected ") + what, cur_.line, cur_.col);
        advance();
    }

    // inside_coeff: differential atoms are not allowed (coefficient context)
    DifferentialForm parse_expr(bool inside_coeff) {
        std::optional<DifferentialForm> acc;
        bool negate = false;
        if (cur_.kind == Tok::minus) {
            negate = true;
            advance();
        } else if (cur_.kind == Tok::plus) {
            advance();
        }
        while (true) {
            DifferentialForm term = parse_term(inside_coeff);
            if (negate) term = -term;
            if (!acc) {
                acc = std::move(term);
            } else {
                if (acc->form_degree() != term.form_degree())
                    throw ParseError("mixed form degrees in one expression", cur_.line, cur_.col);
                *acc += term;
            }
            if (cur_.kind == Tok::plus) {
                negate = false;
                advance();
            } else if (cur_.kind == Tok::minus) {
                negate = true;
                advance();
            } else {
                break;
            }
        }
        return *acc;
    }

    DifferentialForm parse_term(bool inside_coeff) {
        std::optional<Polynomial> coeff;
        // coefficient factors joined by '*'
        while (is_factor_start(cur_.kind)) {
            Polynomial f = parse_factor();
            coeff = coeff ? *coeff * f : f;
            if (cur_.kind == Tok::star) {
                advance();
                if (!is_factor_start(cur_.kind))
                    throw ParseError("expected a factor after '*'", cur_.line, cur_.col);
            } else {
                break;
            }
        }
        // differential atoms
        std::vector<std::pair<int, Token>> atoms;
        while (cur_.kind == Tok::dvar) {
            if (inside_coeff)
                throw ParseError("differential inside a coefficient", cur_.line, cur_.col);
            atoms.emplace_back(cur_.value, cur_);
            advance();
            if (cur_.kind == Tok::caret) {
                Token caret = cur_;
                advance();
                if (cur_.kind != Tok::dvar)
                    throw ParseError("wedge '^' needs a differential on both sides", caret.line,
                                     caret.col);
            } else {
                break;
            }
        }
        if (!coeff && atoms.empty())
            throw ParseError("expected a term", cur_.line, cur_.col);

        Polynomial c = coeff ? *coeff : Polynomial::constant(n_, 1);
        DifferentialForm f = DifferentialForm::from_polynomial(c);
        for (const auto& [index, tok] : atoms) {
            if (index < 1 || index > n_)
                throw ParseError("differential index out of range", tok.line, tok.col);
            f = wedge(f, DifferentialForm::basis_one_form(n_, index - 1));
        }
        return f;
    }

    static bool is_factor_start(Tok k) {
        return k == Tok::number || k == Tok::var || k == Tok::lparen;
    }

    Polynomial parse_factor() {
        if (cur_.kind == Tok::number) {
            Rational q = rational_from_string(cur_.text);
            Token first = cur_;
            advance();
            if (cur_.kind == Tok::slash) {
                advance();
                if (cur_.kind != Tok::number)
                    throw ParseError("expected a denominator", cur_.line, cur_.col);
                Rational den = rational_from_string(cur_.text);
                if (is_zero(den)) throw ParseError("zero denominator", cur_.line, cur_.col);
                q /= den;
                advance();
            }
            (void)first;
            return Polynomial::constant(n_, q);
        }
        if (cur_.kind == Tok::var) {
            if (cur_.value < 1 || cur_.value > n_)
                throw ParseError("variable index out of range", cur_.line, cur_.col);
            int index = cur_.value - 1;
            advance();
            int exp = 1;
            if (cur_.kind == Tok::caret) {
                advance();
                if (cur_.kind != Tok::number)
                    throw ParseError("exponent must be a non-negative integer", cur_.line,
                                     cur_.col);
                exp = std::stoi(cur_.text);
                advance();
            }
            Polynomial v = Polynomial::variable(n_, index);
            return v.pow(exp);
        }
        if (cur_.kind == Tok::lparen) {
            advance();
            DifferentialForm inner = parse_expr(true);
            expect(Tok::rparen, "')'");
            if (cur_.kind == Tok::caret)
                throw ParseError("'^' exponent applies to variables only", cur_.line, cur_.col);
            return inner.coefficient(MultiIndex{});
        }
        throw ParseError("expected a factor", cur_.line, cur_.col);
    }

    Lexer lex_;
    Token cur_;
    std::optional<int> n_flag_;
    int n_ = 0;
};

} // namespace parse_detail

// Parses the text format. `declared_vars` carries a -n style declaration;
// the text may carry its own `vars N;` header instead (they must agree when
// both are present).
inline DifferentialForm parse_form(const std::string& text, std::optional<int> declared_vars = {}) {
    parse_detail::Parser p(text, declared_vars);
    return p.parse_form();
}

inline Polynomial parse_polynomial(const std::string& text, std::optional<int> declared_vars = {}) {
    DifferentialForm f = parse_form(text, declared_vars);
    if (f.form_degree() != 0)
        fail(errc::parse_error, "expected a polynomial, found a form of positive degree");
    return f.coefficient(MultiIndex{});
}

} // namespace pforms
