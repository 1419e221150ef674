#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pforms/darboux.hpp"
#include "pforms/errors.hpp"
#include "pforms/json_io.hpp"
#include "pforms/parser.hpp"
#include "pforms/printer.hpp"
#include "pforms/projective.hpp"
#include "pforms/random_gen.hpp"
#include "pforms/selfcheck.hpp"

// Command-line front end.
//
// Exit codes: 0 success, 1 invalid input (syntax errors, violated
// preconditions), 2 internal assertion failure (NonzeroPureZBlock,
// NoCoupling, ZetaNotReduced), 64 unknown subcommand.

namespace pforms::cli {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_internal = 2;
constexpr int exit_usage = 64;

namespace detail {

struct FormInput {
    std::string file;
    std::string expr;
    int declared_n = 0;
    std::string text; // raw source, echoed in documents
};

inline void add_input_options(CLI::App* cmd, FormInput& in) {
    cmd->add_option("-f,--file", in.file, "read the input form from this file");
    cmd->add_option("-e,--expr", in.expr, "input form as an inline expression");
    cmd->add_option("-n,--vars", in.declared_n, "ambient variable count (or use a 'vars N;' header)");
}

inline DifferentialForm load_form(FormInput& in) {
    if (!in.file.empty() && !in.expr.empty())
        fail(errc::bad_argument, "give either --file or --expr, not both");
    if (!in.file.empty()) {
        std::ifstream f(in.file);
        if (!f) fail(errc::bad_argument, "cannot open '" + in.file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        in.text = ss.str();
    } else if (!in.expr.empty()) {
        in.text = in.expr;
    } else {
        fail(errc::bad_argument, "no input form (use --file or --expr)");
    }
    std::optional<int> n;
    if (in.declared_n > 0) n = in.declared_n;
    return parse_form(in.text, n);
}

struct DocumentOut {
    bool json = false;
    Json doc;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish(std::ostream& out) {
        if (!json) return;
        doc["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
        out << doc.dump(2) << "\n";
    }
};

inline std::string degree_string(const std::optional<int>& d) {
    return d ? std::to_string(*d) : std::string("-inf");
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using namespace detail;

    CLI::App app{"exact calculus for polynomial differential forms: Darboux-type normal forms "
                 "for degree-one closed 2-forms and the classifier for degree-one projective "
                 "distributions"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "emit one machine-readable JSON document");

    FormInput in;
    bool want_trace = false;
    unsigned long seed = 1;
    int cases = 100;
    int gen_k = 1, gen_n = 3;
    std::string gen_case = "ii";
    std::string gen_kind;

    CLI::App* c_degree = app.add_subcommand("degree", "form degree and coefficient degree");
    CLI::App* c_class = app.add_subcommand("class", "class of a 2-form or of a distribution 1-form");
    CLI::App* c_closed = app.add_subcommand("closed", "test d(omega) = 0");
    CLI::App* c_jou = app.add_subcommand("jouanolou", "check the homogeneity identity on the input");
    CLI::App* c_darboux = app.add_subcommand("darboux", "normal form of a closed degree-one 2-form");
    CLI::App* c_medeiros = app.add_subcommand("medeiros", "write a decomposable form as dq ^ dt");
    CLI::App* c_classify = app.add_subcommand("classify", "classify a degree-one distribution");
    CLI::App* c_random = app.add_subcommand("random", "generate a seeded random instance");
    CLI::App* c_verify = app.add_subcommand("verify", "re-check a previously emitted JSON document");
    CLI::App* c_self = app.add_subcommand("selfcheck", "run the seeded invariant suites");

    for (CLI::App* cmd : {c_degree, c_class, c_closed, c_jou, c_darboux, c_medeiros, c_classify})
        add_input_options(cmd, in);
    c_darboux->add_flag("--trace", want_trace, "include the full reduction trace");
    c_random->add_option("kind", gen_kind, "what to generate: darboux | distribution")->required();
    c_random->add_option("-k,--class", gen_k, "target class");
    c_random->add_option("-n,--dim", gen_n, "ambient variables (darboux) or projective dimension");
    c_random->add_option("--case", gen_case, "distribution case: i | ii");
    c_random->add_option("--seed", seed, "generator seed");
    c_verify->add_option("-f,--file", in.file, "JSON document to re-check")->required();
    c_self->add_option("--seed", seed, "suite seed");
    c_self->add_option("--cases", cases, "cases per suite (scaled down for heavy suites)");

    // unknown subcommands are a usage error, distinct from bad input
    static const std::vector<std::string> known = {
        "degree", "class", "closed", "jouanolou", "darboux",  "medeiros",
        "classify", "random", "verify", "selfcheck", "-h", "--help"};
    if (!args.empty() && std::find(known.begin(), known.end(), args[0]) == known.end() &&
        args[0][0] != '-') {
        err << "unknown subcommand '" << args[0] << "'\n";
        return exit_usage;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return args.empty() ? exit_usage : exit_input;
    }

    DocumentOut doc;
    doc.json = json;

    auto finish_ok = [&](int code = exit_ok) {
        doc.finish(out);
        return code;
    };

    try {
        if (app.got_subcommand(c_degree)) {
            DifferentialForm f = load_form(in);
            doc.doc = Json{{"command", "degree"}, {"n", f.vars()}, {"input", in.text}};
            auto d = f.degree();
            Json result{{"form_degree", f.form_degree()},
                        {"coefficient_degree", d ? Json(*d) : Json(nullptr)}};
            if (!json) {
                out << "form degree: " << f.form_degree() << "\n";
                out << "coefficient degree: " << degree_string(d) << "\n";
            }
            if (f.form_degree() == 1 && !f.is_zero()) {
                auto s = f.homogeneous_degree();
                if (s && *s >= 1 &&
                    interior_product(radial_field(f.vars()), f).is_zero()) {
                    result["distribution_degree"] = *s - 1;
                    if (!json) out << "distribution degree: d = " << *s - 1 << "\n";
                }
            }
            doc.doc["result"] = result;
            doc.doc["verified"] = true;
            return finish_ok();
        }

        if (app.got_subcommand(c_class)) {
            DifferentialForm f = load_form(in);
            doc.doc = Json{{"command", "class"}, {"n", f.vars()}, {"input", in.text}};
            int k;
            if (f.form_degree() == 2) {
                k = class_of_two_form(f);
            } else if (f.form_degree() == 1) {
                k = validate(f).class_k;
            } else {
                fail(errc::bad_argument, "class is defined for 1-forms and 2-forms here");
            }
            doc.doc["result"] = Json{{"class", k}};
            doc.doc["verified"] = true;
            if (!json) out << "class k = " << k << "\n";
            return finish_ok();
        }

        if (app.got_subcommand(c_closed)) {
            DifferentialForm f = load_form(in);
            bool closed = is_closed(f);
            doc.doc = Json{{"command", "closed"},
                           {"n", f.vars()},
                           {"input", in.text},
                           {"result", Json{{"closed", closed}}},
                           {"verified", true}};
            if (!json) out << "closed: " << (closed ? "yes" : "no") << "\n";
            return finish_ok();
        }

        if (app.got_subcommand(c_jou)) {
            DifferentialForm f = load_form(in);
            auto s = f.homogeneous_degree();
            if (!s) fail(errc::not_homogeneous, "input is not coefficient-homogeneous");
            bool holds = jouanolou_identity_holds(f);
            doc.doc = Json{{"command", "jouanolou"},
                           {"n", f.vars()},
                           {"input", in.text},
                           {"result", Json{{"q", f.form_degree()}, {"s", *s}, {"holds", holds}}},
                           {"verified", holds}};
            if (!json)
                out << "i_R d(eta) + d(i_R eta) = (q+s) eta with q=" << f.form_degree()
                    << ", s=" << *s << ": " << (holds ? "holds" : "FAILS") << "\n";
            return holds ? finish_ok() : finish_ok(exit_internal);
        }

        if (app.got_subcommand(c_darboux)) {
            DifferentialForm w = load_form(in);
            auto [nf, trace] = normal_form(w);
            bool verified = reconstruct(nf) == w;
            doc.doc = Json{{"command", "darboux"},
                           {"n", w.vars()},
                           {"input", in.text},
                           {"result", to_json(nf)},
                           {"verified", verified}};
            if (want_trace) doc.doc["trace"] = to_json(trace);
            if (!json) {
                out << "variant: "
                    << (nf.variant == DarbouxVariant::linear_pullback ? "LinearPullback"
                                                                      : "ContactSum")
                    << "\nclass k = " << nf.k
                    << "\ncoordinates: adapted u with z = M u (matrix in the JSON output)\n";
                if (nf.variant == DarbouxVariant::linear_pullback) {
                    out << "eta (on C^" << nf.eta->vars() << "): " << print_form(*nf.eta) << "\n";
                } else {
                    out << "zeta: " << print_form(*nf.zeta) << "\n";
                    for (size_t i = 0; i < nf.t.size(); ++i)
                        out << "t_" << i + 1 << " = " << print_polynomial(nf.t[i]) << ",  h_"
                            << i + 1 << " = " << print_polynomial(nf.h[i]) << "\n";
                }
                out << "verification: " << (verified ? "exact-match" : "MISMATCH") << "\n";
            }
            if (!verified) fail(errc::internal_error, "reconstruction mismatch");
            return finish_ok();
        }

        if (app.got_subcommand(c_medeiros)) {
            DifferentialForm w = load_form(in);
            auto [q, t] = medeiros_decompose(w);
            bool verified =
                wedge(exterior_derivative(DifferentialForm::from_polynomial(q)),
                      exterior_derivative(DifferentialForm::from_polynomial(t))) == w;
            doc.doc = Json{{"command", "medeiros"},
                           {"n", w.vars()},
                           {"input", in.text},
                           {"result", Json{{"q", to_json(q)}, {"t", to_json(t)}}},
                           {"verified", verified}};
            if (!json) {
                out << "q = " << print_polynomial(q) << "\n";
                out << "t = " << print_polynomial(t) << "\n";
                out << "verification: " << (verified ? "exact-match" : "MISMATCH") << "\n";
            }
            if (!verified) fail(errc::internal_error, "dq ^ dt mismatch");
            return finish_ok();
        }

        if (app.got_subcommand(c_classify)) {
            DifferentialForm theta = load_form(in);
            Distribution dist = validate(theta);
            Classification c = classify(dist);
            bool verified = reconstruct(c) == theta;
            doc.doc = Json{{"command", "classify"},
                           {"n", theta.vars()},
                           {"input", in.text},
                           {"result", to_json(c)},
                           {"verified", verified}};
            doc.doc["result"]["degree"] = dist.degree;
            if (!json) {
                out << "distribution on P^" << dist.projective_dim << ", degree " << dist.degree
                    << ", class k = " << dist.class_k << "\n";
                if (c.variant == ClassificationCase::pullback) {
                    out << "case i: linear pullback from P^" << 2 * dist.class_k + 1 << "\n";
                    out << "g = " << print_form(*c.g_form) << "\n";
                } else {
                    out << "case ii: contact-type presentation\n";
                    out << "alpha = " << print_form(*c.alpha)
                        << (c.pure_contact ? "   (pure contact)" : "") << "\n";
                    for (size_t i = 0; i < c.t.size(); ++i)
                        out << "t_" << i + 1 << " = " << print_polynomial(c.t[i]) << ",  h_"
                            << i + 1 << " = " << print_polynomial(c.h[i]) << "\n";
                }
                out << "verification: " << (verified ? "exact-match" : "MISMATCH") << "\n";
            }
            if (!verified) fail(errc::internal_error, "classification reconstruction mismatch");
            return finish_ok();
        }

        if (app.got_subcommand(c_random)) {
            if (gen_kind == "darboux") {
                Rng rng(seed);
                DifferentialForm w = rand_darboux_instance(rng, gen_n, gen_k);
                doc.doc = Json{{"command", "random"},
                               {"n", gen_n},
                               {"result", Json{{"kind", "darboux"}, {"form", to_json(w)}}},
                               {"verified", true}};
                if (!json) out << print_form_document(w);
                return finish_ok();
            }
            if (gen_kind == "distribution") {
                auto which = gen_case == "i" ? ClassificationCase::pullback
                                             : ClassificationCase::contact;
                if (gen_case != "i" && gen_case != "ii")
                    fail(errc::bad_argument, "--case must be i or ii");
                RandomDistribution rd = random_distribution(which, gen_k, gen_n, seed);
                doc.doc = Json{{"command", "random"},
                               {"n", gen_n + 1},
                               {"result",
                                Json{{"kind", "distribution"},
                                     {"ground_truth", gen_case == "i" ? "PullbackCaseI"
                                                                      : "ContactCaseII"},
                                     {"degree", rd.dist.degree},
                                     {"class", rd.dist.class_k},
                                     {"theta", to_json(rd.dist.theta)}}},
                               {"verified", true}};
                if (!json) {
                    out << "# degree " << rd.dist.degree << ", class " << rd.dist.class_k
                        << ", ground truth case " << gen_case << "\n";
                    out << print_form_document(rd.dist.theta);
                }
                return finish_ok();
            }
            fail(errc::bad_argument, "random kind must be 'darboux' or 'distribution'");
        }

        if (app.got_subcommand(c_verify)) {
            std::ifstream f(in.file);
            if (!f) fail(errc::bad_argument, "cannot open '" + in.file + "'");
            Json document = Json::parse(f, nullptr, true, true);
            std::string command = document.at("command").get<std::string>();
            std::optional<int> n = document.at("n").get<int>();
            DifferentialForm input = parse_form(document.at("input").get<std::string>(), n);
            bool verified = false;
            if (command == "darboux") {
                DarbouxNormalForm nf = darboux_from_json(document.at("result"));
                verified = reconstruct(nf) == input;
            } else if (command == "classify") {
                Classification c = classification_from_json(document.at("result"));
                verified = reconstruct(c) == input;
            } else if (command == "medeiros") {
                Polynomial q = polynomial_from_json(document["result"]["q"], input.vars());
                Polynomial t = polynomial_from_json(document["result"]["t"], input.vars());
                verified = wedge(exterior_derivative(DifferentialForm::from_polynomial(q)),
                                 exterior_derivative(DifferentialForm::from_polynomial(t))) ==
                           input;
            } else {
                fail(errc::bad_argument, "no reconstruction check for command '" + command + "'");
            }
            doc.doc = Json{{"command", "verify"},
                           {"n", input.vars()},
                           {"input", document["input"]},
                           {"result", Json{{"checked", command}}},
                           {"verified", verified}};
            if (!json) out << "verification: " << (verified ? "exact-match" : "MISMATCH") << "\n";
            return finish_ok(verified ? exit_ok : exit_input);
        }

        if (app.got_subcommand(c_self)) {
            auto results = run_selfcheck(seed, cases);
            bool all = true;
            Json table = Json::array();
            for (const auto& r : results) {
                all = all && r.passed;
                table.push_back(Json{{"suite", r.name},
                                     {"cases", r.cases},
                                     {"passed", r.passed},
                                     {"ms", r.ms},
                                     {"detail", r.detail}});
                if (!json) {
                    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
                    for (size_t pad = r.name.size(); pad < 28; ++pad) out << ' ';
                    out << r.cases << " cases  " << r.ms << " ms";
                    if (!r.detail.empty()) out << "  " << r.detail;
                    out << "\n";
                }
            }
            doc.doc = Json{{"command", "selfcheck"},
                           {"result", table},
                           {"verified", all}};
            if (!json) out << "selfcheck: " << (all ? "PASS" : "FAIL") << "\n";
            return finish_ok(all ? exit_ok : exit_input);
        }
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return exit_input;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return is_internal(e.code()) ? exit_internal : exit_input;
    } catch (const Json::exception& e) {
        err << "bad JSON document: " << e.what() << "\n";
        return exit_input;
    }
    err << "no subcommand\n";
    return exit_usage;
}

} // namespace pforms::cli
