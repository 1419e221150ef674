#pragma once

#include <random>
#include <string>
#include <vector>

#include "pforms/form.hpp"
#include "pforms/polynomial.hpp"

// Shared helpers for building hand-written expected values in tests. These
// deliberately avoid the library's higher-level routines so that expected
// values come from an independent path.
namespace testsup {

using pforms::DifferentialForm;
using pforms::Monomial;
using pforms::MultiIndex;
using pforms::Polynomial;
using pforms::Rational;

// z_{i} with 1-based i, matching the written examples
inline Polynomial z(int n, int i) { return Polynomial::variable(n, i - 1); }

inline Polynomial c(int n, long num, long den = 1) {
    return Polynomial::constant(n, pforms::rat(num, den));
}

// monomial z1^e1 * ... from an exponent list
inline Polynomial mono(int n, std::vector<int> exps, long num = 1, long den = 1) {
    Polynomial p(n);
    p.add_term(Monomial(std::move(exps)), pforms::rat(num, den));
    return p;
}

// form term p dz_{i1} ^ dz_{i2} ... with 1-based indices already increasing
inline DifferentialForm term(const Polynomial& p, std::vector<int> idx) {
    for (auto& i : idx) --i;
    DifferentialForm f(p.vars(), int(idx.size()));
    f.add_term(MultiIndex(std::move(idx)), p);
    return f;
}

inline DifferentialForm dz(int n, int i) {
    return DifferentialForm::basis_one_form(n, i - 1);
}

} // namespace testsup
