#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "pforms/darboux.hpp"
#include "pforms/errors.hpp"
#include "pforms/form.hpp"
#include "pforms/matrix.hpp"
#include "pforms/polynomial.hpp"
#include "pforms/projective.hpp"

// JSON encoding. Rationals are "num/den" strings throughout so exactness
// survives serialization; polynomials are [exponent-vector, "num/den"]
// pairs; forms are [index-tuple, polynomial] pairs with 1-based indices;
// matrices are row-major "num/den" arrays.

namespace pforms {

using Json = nlohmann::json;

inline Json to_json(const Rational& q) { return rational_to_fraction_string(q); }

inline Rational rational_from_json(const Json& j) {
    if (!j.is_string()) fail(errc::bad_argument, "rational must be a string");
    return rational_from_string(j.get<std::string>());
}

inline Json to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back(Json::array({m.e, to_json(c)}));
    return terms;
}

inline Polynomial polynomial_from_json(const Json& j, int n) {
    Polynomial p(n);
    if (!j.is_array()) fail(errc::bad_argument, "polynomial must be an array of terms");
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) fail(errc::bad_argument, "bad polynomial term");
        std::vector<int> e = t[0].get<std::vector<int>>();
        if (int(e.size()) != n) fail(errc::bad_argument, "exponent vector length");
        p.add_term(Monomial(std::move(e)), rational_from_json(t[1]));
    }
    return p;
}

inline Json to_json(const DifferentialForm& f) {
    Json terms = Json::array();
    for (const auto& [I, p] : f.terms()) {
        std::vector<int> one_based;
        for (int i : I.idx) one_based.push_back(i + 1);
        terms.push_back(Json::array({one_based, to_json(p)}));
    }
    return Json{{"n", f.vars()}, {"r", f.form_degree()}, {"terms", terms}};
}

inline DifferentialForm form_from_json(const Json& j) {
    if (!j.contains("n") || !j.contains("r") || !j.contains("terms"))
        fail(errc::bad_argument, "form needs n, r and terms");
    DifferentialForm f(j["n"].get<int>(), j["r"].get<int>());
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 2) fail(errc::bad_argument, "bad form term");
        std::vector<int> idx = t[0].get<std::vector<int>>();
        for (int& i : idx) --i;
        f.add_term(MultiIndex(std::move(idx)), polynomial_from_json(t[1], f.vars()));
    }
    return f;
}

inline Json to_json(const RatMatrix& m) {
    Json data = Json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) data.push_back(to_json(m.at(i, j)));
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline RatMatrix matrix_from_json(const Json& j) {
    RatMatrix m(j["rows"].get<int>(), j["cols"].get<int>());
    const Json& data = j["data"];
    if (int(data.size()) != m.rows() * m.cols()) fail(errc::bad_argument, "matrix data length");
    int t = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int c = 0; c < m.cols(); ++c) m.at(i, c) = rational_from_json(data[t++]);
    return m;
}

inline Json to_json(const DarbouxNormalForm& nf) {
    Json out{{"variant", nf.variant == DarbouxVariant::linear_pullback ? "LinearPullback"
                                                                       : "ContactSum"},
             {"k", nf.k},
             {"change", to_json(nf.change.matrix())}};
    if (nf.eta) out["eta"] = to_json(*nf.eta);
    if (nf.zeta) out["zeta"] = to_json(*nf.zeta);
    if (!nf.t.empty()) {
        out["t"] = Json::array();
        out["h"] = Json::array();
        for (const auto& t : nf.t) out["t"].push_back(to_json(t));
        for (const auto& h : nf.h) out["h"].push_back(to_json(h));
    }
    return out;
}

inline DarbouxNormalForm darboux_from_json(const Json& j) {
    LinearChange change(matrix_from_json(j.at("change")));
    DarbouxVariant variant = j.at("variant").get<std::string>() == "LinearPullback"
                                 ? DarbouxVariant::linear_pullback
                                 : DarbouxVariant::contact_sum;
    DarbouxNormalForm nf{variant, std::move(change), j.at("k").get<int>(),
                         std::nullopt, std::nullopt, {}, {}};
    int n = nf.change.vars();
    if (j.contains("eta")) nf.eta = form_from_json(j["eta"]);
    if (j.contains("zeta")) nf.zeta = form_from_json(j["zeta"]);
    if (j.contains("t"))
        for (const auto& t : j["t"]) nf.t.push_back(polynomial_from_json(t, n));
    if (j.contains("h"))
        for (const auto& h : j["h"]) nf.h.push_back(polynomial_from_json(h, n));
    return nf;
}

inline Json to_json(const DarbouxTrace& tr) {
    auto forms = [](const std::vector<DifferentialForm>& fs) {
        Json a = Json::array();
        for (const auto& f : fs) a.push_back(to_json(f));
        return a;
    };
    Json out{{"p0", Json::array()},
             {"k", tr.k},
             {"change", to_json(tr.change.matrix())},
             {"eta", forms(tr.eta)},
             {"pi", forms(tr.pi)},
             {"eta_bar", forms(tr.eta_bar)},
             {"pi_bar", forms(tr.pi_bar)},
             {"beta", forms(tr.beta)},
             {"mu", forms(tr.mu)},
             {"gamma", forms(tr.gamma)},
             {"delta", forms(tr.delta)},
             {"swapped_roles", tr.swapped_roles}};
    for (const auto& c : tr.p0) out["p0"].push_back(to_json(c));
    if (tr.coupling) out["coupling"] = to_json(*tr.coupling);
    Json fs = Json::array();
    for (const auto& f : tr.f) fs.push_back(to_json(f));
    out["f"] = fs;
    return out;
}

inline Json to_json(const Classification& c) {
    Json out{{"case", c.variant == ClassificationCase::pullback ? "PullbackCaseI"
                                                                : "ContactCaseII"},
             {"k", c.class_k},
             {"change", to_json(c.change.matrix())}};
    if (c.rho) out["rho"] = to_json(*c.rho);
    if (c.g_form) out["g_form"] = to_json(*c.g_form);
    if (c.alpha) out["alpha"] = to_json(*c.alpha);
    if (!c.t.empty()) {
        out["t"] = Json::array();
        out["h"] = Json::array();
        for (const auto& t : c.t) out["t"].push_back(to_json(t));
        for (const auto& h : c.h) out["h"].push_back(to_json(h));
        out["pure_contact"] = c.pure_contact;
    }
    return out;
}

inline Classification classification_from_json(const Json& j) {
    LinearChange change(matrix_from_json(j.at("change")));
    Classification c{j.at("case").get<std::string>() == "PullbackCaseI"
                         ? ClassificationCase::pullback
                         : ClassificationCase::contact,
                     std::move(change),
                     j.at("k").get<int>(),
                     std::nullopt,
                     std::nullopt,
                     std::nullopt,
                     {},
                     {},
                     false};
    int n = c.change.vars();
    if (j.contains("rho")) c.rho = matrix_from_json(j["rho"]);
    if (j.contains("g_form")) c.g_form = form_from_json(j["g_form"]);
    if (j.contains("alpha")) c.alpha = form_from_json(j["alpha"]);
    if (j.contains("t"))
        for (const auto& t : j["t"]) c.t.push_back(polynomial_from_json(t, n));
    if (j.contains("h"))
        for (const auto& h : j["h"]) c.h.push_back(polynomial_from_json(h, n));
    if (j.contains("pure_contact")) c.pure_contact = j["pure_contact"].get<bool>();
    return c;
}

} // namespace pforms
