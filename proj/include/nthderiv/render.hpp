#pragma once

// Text, LaTeX and JSON serialization of derivative formulas.
//
// Text and LaTeX list layers in order of k and monomials in canonical order.
// Inside a term, parametric factors are printed g first then f by ascending
// order; implicit factors by ascending total order, x-heavier first on ties.

#include "algebra.hpp"
#include "errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

namespace nthderiv {

enum class Format { text, latex, json };

inline Format parse_format(const std::string& s)
{
    if (s == "text") {
        return Format::text;
    }
    if (s == "latex") {
        return Format::latex;
    }
    if (s == "json") {
        return Format::json;
    }
    throw InvalidArgument("unknown format '" + s + "' (expected text, latex or json)");
}

namespace detail {

inline std::string primes(int order) { return std::string(static_cast<std::size_t>(order), '\''); }

/// "f''" / "f^(5)" (text) or "f''" / "f^{(5)}" (latex).
inline std::string derivative_name(char fn, int order, bool latex)
{
    std::string s(1, fn);
    if (order <= 4) {
        return s + primes(order);
    }
    return s + (latex ? "^{(" + std::to_string(order) + ")}" : "^(" + std::to_string(order) + ")");
}

inline std::string partial_text(const Partial& p)
{
    if (p.order() <= 4) {
        return "F_" + std::string(static_cast<std::size_t>(p.a), 'x') + std::string(static_cast<std::size_t>(p.b), 'y');
    }
    return "F_(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

inline std::string partial_latex(const Partial& p)
{
    if (p.order() <= 4) {
        return "F_{" + std::string(static_cast<std::size_t>(p.a), 'x') + std::string(static_cast<std::size_t>(p.b), 'y') + "}";
    }
    std::string den;
    if (p.a > 0) {
        den += "\\partial x^{" + std::to_string(p.a) + "}";
    }
    if (p.b > 0) {
        den += (den.empty() ? "" : " ") + std::string("\\partial y^{") + std::to_string(p.b) + "}";
    }
    return "\\frac{\\partial^{" + std::to_string(p.order()) + "} F}{" + den + "}";
}

// (order, multiplicity) runs in display order.
inline std::vector<std::pair<int, int>> f_runs(const ParametricMonomial& m)
{
    std::vector<int> fs(m.f_orders().rbegin(), m.f_orders().rend());
    std::vector<std::pair<int, int>> runs;
    for (int j : fs) {
        if (!runs.empty() && runs.back().first == j) {
            ++runs.back().second;
        } else {
            runs.emplace_back(j, 1);
        }
    }
    return runs;
}

inline std::vector<std::pair<Partial, int>> partial_runs(const ImplicitMonomial& m)
{
    std::vector<Partial> fs = m.factors();
    std::sort(fs.begin(), fs.end(), [](const Partial& l, const Partial& r) {
        return l.order() != r.order() ? l.order() < r.order() : l.a > r.a;
    });
    std::vector<std::pair<Partial, int>> runs;
    for (const auto& p : fs) {
        if (!runs.empty() && runs.back().first == p) {
            ++runs.back().second;
        } else {
            runs.emplace_back(p, 1);
        }
    }
    return runs;
}

struct SignedTerm {
    bool negative = false;
    std::string body;
};

inline std::string join_terms(const std::vector<SignedTerm>& terms)
{
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            out += terms[i].negative ? "- " : "";
        } else {
            out += terms[i].negative ? " - " : " + ";
        }
        out += terms[i].body;
    }
    return out;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out += (i ? sep : "") + parts[i];
    }
    return out;
}

template <Monomial M, typename Body>
std::vector<SignedTerm> signed_terms(const DerivativeFormula<M>& f, Body body)
{
    std::vector<SignedTerm> terms;
    for (const auto& layer : f.layers) {
        for (const auto& m : layer.monomials) {
            const bool negative = (layer.sign < 0) != (m.coeff < 0);
            terms.push_back({negative, body(layer, m, abs(m.coeff))});
        }
    }
    return terms;
}

inline std::vector<std::string> parametric_factors_text(const ParametricMonomial& m, bool inverse)
{
    std::vector<std::string> parts;
    if (!(inverse && m.g_order() == 1)) {
        parts.push_back(derivative_name('g', m.g_order(), false) + "(t)");
    }
    for (const auto& [j, mult] : f_runs(m)) {
        const std::string name = derivative_name('f', j, false) + "(t)";
        parts.push_back(mult == 1 ? name : "[" + name + "]^" + std::to_string(mult));
    }
    return parts;
}

inline std::vector<std::string> parametric_factors_latex(const ParametricMonomial& m, bool inverse)
{
    std::vector<std::string> parts;
    if (!(inverse && m.g_order() == 1)) {
        parts.push_back(derivative_name('g', m.g_order(), true) + "(t)");
    }
    for (const auto& [j, mult] : f_runs(m)) {
        const std::string name = derivative_name('f', j, true) + "(t)";
        parts.push_back(mult == 1 ? name : "\\left[" + name + "\\right]^{" + std::to_string(mult) + "}");
    }
    return parts;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Text

inline std::string render_text(const ParametricFormula& f)
{
    const bool inverse = f.kind == FormulaKind::inverse;
    return detail::join_terms(detail::signed_terms(f, [&](const ParametricLayer& layer,
                                                          const ParametricMonomial& m,
                                                          const Integer& coeff) {
        std::vector<std::string> parts;
        if (coeff != 1) {
            parts.push_back(to_decimal(coeff));
        }
        for (auto& p : detail::parametric_factors_text(m, inverse)) {
            parts.push_back(std::move(p));
        }
        parts.push_back("[f'(t)]^" + std::to_string(layer.prefactor_exponent));
        return detail::join(parts, "*");
    }));
}

inline std::string render_text(const ImplicitFormula& f)
{
    return detail::join_terms(detail::signed_terms(f, [](const ImplicitLayer& layer,
                                                         const ImplicitMonomial& m,
                                                         const Integer& coeff) {
        std::vector<std::string> parts;
        if (coeff != 1) {
            parts.push_back(to_decimal(coeff));
        }
        for (const auto& [p, mult] : detail::partial_runs(m)) {
            const std::string name = detail::partial_text(p);
            parts.push_back(mult == 1 ? name : name + "^" + std::to_string(mult));
        }
        parts.push_back("F_y^" + std::to_string(layer.prefactor_exponent));
        return detail::join(parts, " * ");
    }));
}

/// Compact layer rendering, e.g. "10 g'f''f''' + 15 g''(f'')^2".
inline std::string render_layer_text(const ParametricLayer& layer)
{
    std::vector<detail::SignedTerm> terms;
    for (const auto& m : layer.monomials) {
        std::string body = m.coeff == 1 || m.coeff == -1 ? "" : to_decimal(abs(m.coeff)) + " ";
        body += detail::derivative_name('g', m.g_order(), false);
        for (const auto& [j, mult] : detail::f_runs(m)) {
            const std::string name = detail::derivative_name('f', j, false);
            body += mult == 1 ? name : "(" + name + ")^" + std::to_string(mult);
        }
        terms.push_back({m.coeff < 0, std::move(body)});
    }
    return detail::join_terms(terms);
}

/// Compact layer rendering, e.g. "F_x^3 F_yyy + 9 F_x^2 F_xy F_yy".
inline std::string render_layer_text(const ImplicitLayer& layer)
{
    std::vector<detail::SignedTerm> terms;
    for (const auto& m : layer.monomials) {
        std::vector<std::string> parts;
        if (m.coeff != 1 && m.coeff != -1) {
            parts.push_back(to_decimal(abs(m.coeff)));
        }
        for (const auto& [p, mult] : detail::partial_runs(m)) {
            const std::string name = detail::partial_text(p);
            parts.push_back(mult == 1 ? name : name + "^" + std::to_string(mult));
        }
        terms.push_back({m.coeff < 0, detail::join(parts, " ")});
    }
    return detail::join_terms(terms);
}

// ---------------------------------------------------------------------------
// LaTeX

inline std::string render_latex(const ParametricFormula& f)
{
    const bool inverse = f.kind == FormulaKind::inverse;
    return detail::join_terms(detail::signed_terms(f, [&](const ParametricLayer& layer,
                                                          const ParametricMonomial& m,
                                                          const Integer& coeff) {
        std::string s = coeff != 1 ? to_decimal(coeff) : "";
        for (const auto& p : detail::parametric_factors_latex(m, inverse)) {
            s += p;
        }
        return s + "\\left[f'(t)\\right]^{" + std::to_string(layer.prefactor_exponent) + "}";
    }));
}

inline std::string render_latex(const ImplicitFormula& f)
{
    return detail::join_terms(detail::signed_terms(f, [](const ImplicitLayer& layer,
                                                         const ImplicitMonomial& m,
                                                         const Integer& coeff) {
        std::string s = coeff != 1 ? to_decimal(coeff) : "";
        for (const auto& [p, mult] : detail::partial_runs(m)) {
            std::string name = detail::partial_latex(p);
            if (mult > 1) {
                name = (p.order() <= 4 ? name : "\\left(" + name + "\\right)") + "^{" + std::to_string(mult) + "}";
            }
            s += name;
        }
        return s + "F_{y}^{" + std::to_string(layer.prefactor_exponent) + "}";
    }));
}

// ---------------------------------------------------------------------------
// JSON

using Json = nlohmann::ordered_json;

inline Json to_json(const ParametricMonomial& m)
{
    return Json{{"coeff", to_decimal(m.coeff)}, {"g_order", m.g_order()}, {"f_orders", m.f_orders()}};
}

inline Json to_json(const ImplicitMonomial& m)
{
    Json factors = Json::array();
    for (const auto& p : m.factors()) {
        factors.push_back(Json::array({p.a, p.b}));
    }
    return Json{{"coeff", to_decimal(m.coeff)}, {"factors", std::move(factors)}};
}

template <Monomial M>
Json to_json(const DerivativeFormula<M>& f)
{
    Json layers = Json::array();
    for (const auto& layer : f.layers) {
        Json monomials = Json::array();
        for (const auto& m : layer.monomials) {
            monomials.push_back(to_json(m));
        }
        layers.push_back(Json{{"k", layer.k},
                              {"sign", layer.sign},
                              {"prefactor_exponent", layer.prefactor_exponent},
                              {"monomials", std::move(monomials)}});
    }
    return Json{{"n", f.n}, {"kind", to_string(f.kind)}, {"layers", std::move(layers)}};
}

using AnyFormula = std::variant<ParametricFormula, ImplicitFormula>;

namespace detail {

inline Integer parse_coeff(const Json& j)
{
    if (!j.is_string()) {
        throw InvalidArgument("coefficient must be a decimal string");
    }
    const auto s = j.get<std::string>();
    const std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
    if (s.size() == start || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                          [](char c) { return c >= '0' && c <= '9'; })) {
        throw InvalidArgument("coefficient '" + s + "' is not a decimal integer");
    }
    return Integer(s);
}

template <Monomial M, typename ParseMonomial>
DerivativeFormula<M> parse_layers(const Json& j, int n, FormulaKind kind, ParseMonomial parse_monomial)
{
    DerivativeFormula<M> f{n, kind, {}};
    for (const auto& jl : j.at("layers")) {
        FormulaLayer<M> layer{jl.at("k").get<int>(), jl.at("sign").get<int>(),
                              jl.at("prefactor_exponent").get<int>(), {}};
        for (const auto& jm : jl.at("monomials")) {
            layer.monomials.push_back(parse_monomial(jm));
        }
        f.layers.push_back(std::move(layer));
    }
    return f;
}

} // namespace detail

/// Parses and validates a formula written by to_json.
inline AnyFormula formula_from_json(const Json& j)
{
    try {
        const int n = j.at("n").get<int>();
        const FormulaKind kind = parse_kind(j.at("kind").get<std::string>());
        if (kind == FormulaKind::implicit) {
            auto f = detail::parse_layers<ImplicitMonomial>(j, n, kind, [](const Json& jm) {
                std::vector<Partial> factors;
                for (const auto& pair : jm.at("factors")) {
                    if (pair.size() != 2) {
                        throw InvalidArgument("implicit factor must be [a, b]");
                    }
                    factors.push_back({pair.at(0).get<int>(), pair.at(1).get<int>()});
                }
                ImplicitMonomial m(detail::parse_coeff(jm.at("coeff")), factors);
                if (m.factors() != factors) {
                    throw InvalidArgument("implicit factors are not in canonical order");
                }
                return m;
            });
            validate(f);
            return f;
        }
        auto f = detail::parse_layers<ParametricMonomial>(j, n, kind, [](const Json& jm) {
            const auto fs = jm.at("f_orders").get<std::vector<int>>();
            ParametricMonomial m(detail::parse_coeff(jm.at("coeff")), jm.at("g_order").get<int>(), fs);
            if (m.f_orders() != fs) {
                throw InvalidArgument("f_orders must be sorted descending");
            }
            return m;
        });
        validate(f);
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed formula JSON: ") + e.what());
    }
}

inline AnyFormula formula_from_json(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed formula JSON: ") + e.what());
    }
    return formula_from_json(j);
}

template <Monomial M>
std::string render(const DerivativeFormula<M>& f, Format fmt)
{
    switch (fmt) {
    case Format::text:
        return render_text(f);
    case Format::latex:
        return render_latex(f);
    case Format::json:
        return to_json(f).dump();
    }
    return {};
}

} // namespace nthderiv
