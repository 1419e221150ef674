#pragma once

#include <string>

#include "pforms/form.hpp"
#include "pforms/polynomial.hpp"
#include "pforms/rational.hpp"

// Canonical text output: terms in graded-lex order, multi-indices sorted,
// output re-parses to an equal value.

namespace pforms {

namespace print_detail {

// one monomial with its coefficient, without a leading sign
inline std::string monomial_body(const Monomial& m, const Rational& abs_coeff) {
    std::string vars;
    for (int i = 0; i < m.vars(); ++i) {
        if (m.e[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "z" + std::to_string(i + 1);
        if (m.e[i] > 1) vars += "^" + std::to_string(m.e[i]);
    }
    if (vars.empty()) return rational_to_string(abs_coeff);
    if (abs_coeff == Rational(1)) return vars;
    return rational_to_string(abs_coeff) + "*" + vars;
}

} // namespace print_detail

inline std::string print_polynomial(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool neg = sgn(c) < 0;
        Rational a = neg ? Rational(-c) : c;
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += print_detail::monomial_body(m, a);
        first = false;
    }
    return out;
}

inline std::string print_multi_index(const MultiIndex& I) {
    std::string out;
    for (size_t t = 0; t < I.idx.size(); ++t) {
        if (t > 0) out += "^";
        out += "dz" + std::to_string(I.idx[t] + 1);
    }
    return out;
}

inline std::string print_form(const DifferentialForm& f) {
    if (f.form_degree() == 0) {
        return print_polynomial(f.coefficient(MultiIndex{}));
    }
    if (f.is_zero()) {
        // keep the degree readable and round-trippable
        std::string out = "0 ";
        for (int i = 0; i < f.form_degree(); ++i) {
            if (i > 0) out += "^";
            out += "dz" + std::to_string(std::min(i, f.vars() - 1) + 1);
        }
        return out;
    }
    std::string out;
    bool first = true;
    for (const auto& [I, p] : f.terms()) {
        std::string coeff;
        bool neg = false;
        if (p.term_count() == 1) {
            const auto& [m, c] = *p.terms().begin();
            neg = sgn(c) < 0;
            Rational a = neg ? Rational(-c) : c;
            if (m.is_one() && a == Rational(1)) {
                coeff = "";
            } else {
                coeff = print_detail::monomial_body(m, a) + " ";
            }
        } else {
            coeff = "(" + print_polynomial(p) + ") ";
        }
        if (first) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        out += coeff + print_multi_index(I);
        first = false;
    }
    return out;
}

// self-contained document with the variable count header
inline std::string print_form_document(const DifferentialForm& f) {
    return "vars " + std::to_string(f.vars()) + ";\n" + print_form(f) + "\n";
}

} // namespace pforms
