#pragma once

// Self-check suites: enumeration vs recurrence, partition counts vs
// coefficient sums, closed forms, symbolic oracles, numeric oracles and the
// inverse-function cross-check. The layer sources are injectable so a
// deliberately broken recurrence can be shown to be caught.

#include "implicit.hpp"
#include "oracle.hpp"
#include "parametric.hpp"
#include "partitions.hpp"
#include "render.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace nthderiv {

using ParametricSource = std::function<ParametricLayer(int n, int k)>;
using ImplicitSource = std::function<ImplicitLayer(int n, int k)>;

/// Seed of the pseudo-random tables when none is given.
inline constexpr std::uint64_t default_verify_seed = 24301;

/// Relative tolerance of the numeric suites.
inline constexpr double numeric_tolerance = 1e-9;

struct SuiteResult {
    std::string name;
    int cases = 0;
    bool pass = true;
    std::string counterexample;
};

struct VerifyOptions {
    int max_n_parametric = 6;
    int max_n_implicit = 5;
    std::uint64_t seed = default_verify_seed;
    int numeric_tables = 100;
    /// Empty means: the library recurrences.
    ParametricSource parametric;
    ImplicitSource implicit;
};

inline bool relatively_close(double a, double b, double tol = numeric_tolerance)
{
    return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// ---------------------------------------------------------------------------
// Seeded random tables

/// f' in +-[0.5, 2], every other derivative in [-2, 2].
inline ParametricTable random_parametric_table(std::mt19937_64& rng, int order)
{
    std::uniform_real_distribution<double> any(-2.0, 2.0);
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    std::bernoulli_distribution flip(0.5);
    ParametricTable t;
    t.t0 = any(rng);
    for (int i = 1; i <= order; ++i) {
        t.f.push_back(i == 1 ? (flip(rng) ? -1.0 : 1.0) * lead(rng) : any(rng));
        t.g.push_back(any(rng));
    }
    return t;
}

/// F(x0, y0) = 0, F_y in +-[0.5, 2], every other partial of total order
/// <= `order` in [-2, 2].
inline ImplicitTable random_implicit_table(std::mt19937_64& rng, int order)
{
    std::uniform_real_distribution<double> any(-2.0, 2.0);
    std::uniform_real_distribution<double> lead(0.5, 2.0);
    std::bernoulli_distribution flip(0.5);
    ImplicitTable t;
    t.x0 = any(rng);
    t.y0 = any(rng);
    for (int total = 1; total <= order; ++total) {
        for (int a = total; a >= 0; --a) {
            const int b = total - a;
            t.partials[{a, b}] = (a == 0 && b == 1) ? (flip(rng) ? -1.0 : 1.0) * lead(rng) : any(rng);
        }
    }
    return t;
}

inline Jet f_jet_of(const ParametricTable& t, double f0 = 0.0) { return Jet::from_derivatives(t.t0, f0, t.f); }
inline Jet g_jet_of(const ParametricTable& t, double g0 = 0.0) { return Jet::from_derivatives(t.t0, g0, t.g); }

inline BivariateJet jet_of(const ImplicitTable& t, int order)
{
    auto partials = t.partials;
    partials[{0, 0}] = t.value;
    return BivariateJet::from_partials(t.x0, t.y0, order, partials);
}

// ---------------------------------------------------------------------------
// Suites

namespace detail {

template <Monomial M>
std::string first_difference(const FormulaLayer<M>& expected, const FormulaLayer<M>& got)
{
    for (const auto& m : expected.monomials) {
        if (std::find(got.monomials.begin(), got.monomials.end(), m) == got.monomials.end()) {
            FormulaLayer<M> one{expected.k, 1, 0, {m}};
            return "expected " + render_layer_text(one);
        }
    }
    for (const auto& m : got.monomials) {
        if (std::find(expected.monomials.begin(), expected.monomials.end(), m) == expected.monomials.end()) {
            FormulaLayer<M> one{got.k, 1, 0, {m}};
            return "unexpected " + render_layer_text(one);
        }
    }
    return "layer headers differ";
}

inline std::string cell(int n, int k) { return "(n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")"; }

inline void fail(SuiteResult& r, std::string what)
{
    if (r.pass) {
        r.pass = false;
        r.counterexample = std::move(what);
    }
}

template <Monomial M, typename Source>
DerivativeFormula<M> formula_from(int n, FormulaKind kind, int k_first, int k_last, const Source& source)
{
    DerivativeFormula<M> f{n, kind, {}};
    for (int k = k_first; k <= k_last; ++k) {
        f.layers.push_back(source(n, k));
    }
    return f;
}

} // namespace detail

inline SuiteResult verify_parametric_enum_recur(int max_n, const ParametricSource& recur)
{
    SuiteResult r{"parametric enum vs recur"};
    for (int n = 1; n <= max_n && r.pass; ++n) {
        for (int k = 0; k <= n && r.pass; ++k) {
            ++r.cases;
            const auto e = p_enum(n, k);
            const auto g = recur(n, k);
            if (e != g) {
                detail::fail(r, "P" + detail::cell(n, k) + ": " + detail::first_difference(e, g));
            }
        }
    }
    return r;
}

inline SuiteResult verify_implicit_enum_recur(int max_n, const ImplicitSource& recur)
{
    SuiteResult r{"implicit enum vs recur"};
    for (int n = 1; n <= max_n && r.pass; ++n) {
        for (int k = 1; k <= 2 * n && r.pass; ++k) {
            ++r.cases;
            const auto e = i_enum(n, k);
            const auto g = recur(n, k);
            if (e != g) {
                detail::fail(r, "I" + detail::cell(n, k) + ": " + detail::first_difference(e, g));
            }
        }
    }
    return r;
}

inline SuiteResult verify_counts(int max_n_parametric, int max_n_implicit, const ParametricSource& p,
                                 const ImplicitSource& i)
{
    SuiteResult r{"partition counts vs coefficient sums"};
    for (int n = 1; n <= max_n_parametric && r.pass; ++n) {
        for (int k = 0; k <= n && r.pass; ++k) {
            ++r.cases;
            const auto sum = p(n, k).coefficient_sum();
            const auto count = count_parametric_partitions(n, k);
            if (sum != count) {
                detail::fail(r, "P" + detail::cell(n, k) + ": coefficient sum " + to_decimal(sum)
                                    + " != count " + to_decimal(count));
            }
        }
    }
    for (int n = 1; n <= max_n_implicit && r.pass; ++n) {
        for (int k = 1; k <= 2 * n && r.pass; ++k) {
            ++r.cases;
            const auto sum = i(n, k).coefficient_sum();
            const auto count = count_implicit_partitions(n, k);
            if (sum != count) {
                detail::fail(r, "I" + detail::cell(n, k) + ": coefficient sum " + to_decimal(sum)
                                    + " != count " + to_decimal(count));
            }
        }
    }
    return r;
}

/// Closed forms of the extreme layers. The parametric half uses the library
/// check; the implicit half checks I_{n,1} = F_{x^n} and
/// I_{n,2n-1} = (2n-3)!! F_x^n F_yy^(n-1).
inline SuiteResult verify_closed_forms(int max_n_parametric, int max_n_implicit, const ParametricSource& p,
                                       const ImplicitSource& i)
{
    SuiteResult r{"closed-form extremes"};
    for (int n = 2; n <= max_n_parametric && r.pass; ++n) {
        ParametricLayer top = empty_parametric_layer(n, n - 1);
        top.monomials = {ParametricMonomial(double_factorial(2 * n - 3), 1,
                                            std::vector<int>(static_cast<std::size_t>(n - 1), 2))};
        ++r.cases;
        if (p(n, n - 1) != top) {
            detail::fail(r, "P" + detail::cell(n, n - 1) + ": " + detail::first_difference(top, p(n, n - 1)));
            break;
        }
        std::vector<ParametricMonomial> ms{
            ParametricMonomial(double_factorial(2 * n - 3), 2, std::vector<int>(static_cast<std::size_t>(n - 2), 2))};
        if (n >= 3) {
            std::vector<int> fs(static_cast<std::size_t>(n - 3), 2);
            fs.push_back(3);
            ms.emplace_back(binomial(2 * n - 3, 3) * double_factorial(2 * n - 7), 1, std::move(fs));
        }
        ParametricLayer second = empty_parametric_layer(n, n - 2);
        second.monomials = normalize(ms);
        ++r.cases;
        if (p(n, n - 2) != second) {
            detail::fail(r, "P" + detail::cell(n, n - 2) + ": " + detail::first_difference(second, p(n, n - 2)));
        }
    }
    for (int n = 1; n <= max_n_implicit && r.pass; ++n) {
        ImplicitLayer first = empty_implicit_layer(1);
        first.monomials = {ImplicitMonomial(1, {Partial{n, 0}})};
        ++r.cases;
        if (i(n, 1) != first) {
            detail::fail(r, "I" + detail::cell(n, 1) + ": " + detail::first_difference(first, i(n, 1)));
            break;
        }
        std::vector<Partial> fs(static_cast<std::size_t>(n), Partial{1, 0});
        fs.insert(fs.end(), static_cast<std::size_t>(n - 1), Partial{0, 2});
        ImplicitLayer last = empty_implicit_layer(2 * n - 1);
        last.monomials = {ImplicitMonomial(double_factorial(2 * n - 3), fs)};
        ++r.cases;
        if (i(n, 2 * n - 1) != last) {
            detail::fail(r, "I" + detail::cell(n, 2 * n - 1) + ": "
                                + detail::first_difference(last, i(n, 2 * n - 1)));
        }
    }
    return r;
}

inline SuiteResult verify_symbolic_oracles(int max_n_parametric, int max_n_implicit, const ParametricSource& p,
                                           const ImplicitSource& i)
{
    SuiteResult r{"symbolic oracles vs formulas"};
    for (int n = 1; n <= max_n_parametric && r.pass; ++n) {
        ++r.cases;
        const auto oracle = symbolic_parametric_oracle(n);
        const auto formula = detail::formula_from<ParametricMonomial>(n, FormulaKind::parametric, 0, n - 1, p);
        for (std::size_t l = 0; l < oracle.layers.size() && r.pass; ++l) {
            if (oracle.layers[l] != formula.layers[l]) {
                detail::fail(r, "P" + detail::cell(n, static_cast<int>(l)) + ": "
                                    + detail::first_difference(oracle.layers[l], formula.layers[l]));
            }
        }
    }
    for (int n = 1; n <= max_n_implicit && r.pass; ++n) {
        ++r.cases;
        const auto oracle = symbolic_implicit_oracle(n);
        const auto formula = detail::formula_from<ImplicitMonomial>(n, FormulaKind::implicit, 1, 2 * n - 1, i);
        for (std::size_t l = 0; l < oracle.layers.size() && r.pass; ++l) {
            if (oracle.layers[l] != formula.layers[l]) {
                detail::fail(r, "I" + detail::cell(n, static_cast<int>(l) + 1) + ": "
                                    + detail::first_difference(oracle.layers[l], formula.layers[l]));
            }
        }
    }
    return r;
}

/// Formulas evaluated on seeded random tables against the series
/// oracles. Table i uses derivative order 1 + i % max_n.
inline SuiteResult verify_numeric(int max_n_parametric, int max_n_implicit, int tables, std::uint64_t seed,
                                  const ParametricSource& p, const ImplicitSource& i)
{
    SuiteResult r{"numeric oracles"};
    std::mt19937_64 rng(seed);
    std::vector<ParametricFormula> pf;
    for (int n = 1; n <= max_n_parametric; ++n) {
        pf.push_back(detail::formula_from<ParametricMonomial>(n, FormulaKind::parametric, 0, n - 1, p));
    }
    std::vector<ImplicitFormula> imf;
    for (int n = 1; n <= max_n_implicit; ++n) {
        imf.push_back(detail::formula_from<ImplicitMonomial>(n, FormulaKind::implicit, 1, 2 * n - 1, i));
    }
    std::ostringstream msg;
    msg.precision(17);
    for (int t = 0; t < tables && max_n_parametric >= 1 && r.pass; ++t) {
        const int n = 1 + t % max_n_parametric;
        const auto table = random_parametric_table(rng, n);
        const double direct = eval_parametric(pf[static_cast<std::size_t>(n - 1)], table);
        const double series = series_reversion_oracle(f_jet_of(table), g_jet_of(table), n).back();
        ++r.cases;
        if (!relatively_close(direct, series)) {
            msg << "parametric table " << t << " (n=" << n << "): formula " << direct << " vs series " << series;
            detail::fail(r, msg.str());
        }
    }
    for (int t = 0; t < tables && max_n_implicit >= 1 && r.pass; ++t) {
        const int n = 1 + t % max_n_implicit;
        const auto table = random_implicit_table(rng, n);
        const double direct = eval_implicit(imf[static_cast<std::size_t>(n - 1)], table);
        const double series = implicit_series_oracle(jet_of(table, n), n).back();
        ++r.cases;
        if (!relatively_close(direct, series)) {
            msg << "implicit table " << t << " (n=" << n << "): formula " << direct << " vs series " << series;
            detail::fail(r, msg.str());
        }
    }
    return r;
}

inline SuiteResult verify_inverse_consistency(int max_n)
{
    SuiteResult r{"inverse via implicit vs parametric"};
    for (int n = 1; n <= max_n && r.pass; ++n) {
        ++r.cases;
        const auto a = inverse_formula(n);
        const auto b = inverse_via_implicit(n);
        for (std::size_t l = 0; l < a.layers.size() && r.pass; ++l) {
            if (a.layers[l] != b.layers[l]) {
                detail::fail(r, "inverse" + detail::cell(n, static_cast<int>(l)) + ": "
                                    + detail::first_difference(a.layers[l], b.layers[l]));
            }
        }
    }
    return r;
}

inline std::vector<SuiteResult> run_verification(const VerifyOptions& opt)
{
    const int pmax = std::max(opt.max_n_parametric, 1);
    const int imax = std::max(opt.max_n_implicit, 1);
    ParametricSource p = opt.parametric;
    if (!p) {
        auto table = std::make_shared<ParametricRecurrence>(pmax);
        p = [table](int n, int k) { return table->layer(n, k); };
    }
    ImplicitSource i = opt.implicit;
    if (!i) {
        auto table = std::make_shared<ImplicitRecurrence>(imax);
        i = [table](int n, int k) {
            return k < 1 || k > 2 * n - 1 ? empty_implicit_layer(k) : table->layer(n, k);
        };
    }
    return {
        verify_parametric_enum_recur(opt.max_n_parametric, p),
        verify_implicit_enum_recur(opt.max_n_implicit, i),
        verify_counts(opt.max_n_parametric, opt.max_n_implicit, p, i),
        verify_closed_forms(opt.max_n_parametric, opt.max_n_implicit, p, i),
        verify_symbolic_oracles(opt.max_n_parametric, opt.max_n_implicit, p, i),
        verify_numeric(opt.max_n_parametric, opt.max_n_implicit, opt.numeric_tables, opt.seed, p, i),
        verify_inverse_consistency(std::min(opt.max_n_parametric, opt.max_n_implicit)),
    };
}

} // namespace nthderiv
