#pragma once

// Independent ways of getting d^n y/dx^n, used to check the partition formulas:
//  - symbolic: repeatedly apply d/dx (chain + quotient rule) to dy/dx and
//    collect terms by the power of f' (or F_y);
//  - numeric: evaluate formulas on derivative tables, and compare with Taylor
//    series reversion / order-by-order implicit solving.

#include "algebra.hpp"
#include "errors.hpp"
#include "jet.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace nthderiv {

// ---------------------------------------------------------------------------
// Symbolic oracles

namespace detail {

// Signed monomials grouped by the exponent of the prefactor (f' or F_y).
template <Monomial M>
using PrefactoredSum = std::map<int, std::vector<M>>;

// Raises each factor position in turn. Deliberately naive: one output term
// per position, duplicates are merged later by normalize.
inline std::vector<ParametricMonomial> naive_d_dt(const ParametricMonomial& m)
{
    std::vector<ParametricMonomial> out;
    out.emplace_back(m.coeff, m.g_order() + 1, m.f_orders());
    for (std::size_t i = 0; i < m.f_orders().size(); ++i) {
        auto fs = m.f_orders();
        ++fs[i];
        out.emplace_back(m.coeff, m.g_order(), std::move(fs));
    }
    return out;
}

template <typename Raise>
std::vector<ImplicitMonomial> naive_partial(const ImplicitMonomial& m, Raise raise)
{
    std::vector<ImplicitMonomial> out;
    for (std::size_t i = 0; i < m.factors().size(); ++i) {
        auto fs = m.factors();
        raise(fs[i]);
        out.emplace_back(m.coeff, std::move(fs));
    }
    return out;
}

template <Monomial M>
PrefactoredSum<M> collect(PrefactoredSum<M> sum)
{
    for (auto& [e, ms] : sum) {
        ms = normalize(ms);
    }
    return sum;
}

} // namespace detail

/// Starts from dy/dx = g' [f']^-1 and applies (1/f') d/dt n-1 times.
inline ParametricFormula symbolic_parametric_oracle(int n)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    detail::PrefactoredSum<ParametricMonomial> sum;
    sum[-1] = {ParametricMonomial(1, 1, {})};
    for (int step = 1; step < n; ++step) {
        detail::PrefactoredSum<ParametricMonomial> next;
        for (const auto& [e, ms] : sum) {
            for (const auto& m : ms) {
                // d/dt [f']^e = e [f']^(e-1) f'', then divide by f'
                auto fs = m.f_orders();
                fs.push_back(2);
                next[e - 2].emplace_back(m.coeff * e, m.g_order(), std::move(fs));
                for (auto& d : detail::naive_d_dt(m)) {
                    next[e - 1].push_back(std::move(d));
                }
            }
        }
        sum = detail::collect(std::move(next));
    }

    ParametricFormula f{n, FormulaKind::parametric, {}};
    for (int k = 0; k < n; ++k) {
        f.layers.push_back(ParametricLayer{k, layer_sign(k), -n - k, {}});
    }
    for (auto& [e, ms] : sum) {
        const int k = -n - e;
        if (ms.empty()) {
            continue;
        }
        if (k < 0 || k >= n) {
            throw InvalidArgument("oracle produced a term with prefactor exponent " + std::to_string(e));
        }
        for (auto& m : ms) {
            m.coeff *= layer_sign(k);
        }
        f.layers[static_cast<std::size_t>(k)].monomials = std::move(ms);
    }
    return f;
}

/// Starts from dy/dx = -F_x F_y^-1 and applies d/dx = dx - (F_x/F_y) dy n-1 times.
inline ImplicitFormula symbolic_implicit_oracle(int n)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    const auto raise_x = [](Partial& p) { ++p.a; };
    const auto raise_y = [](Partial& p) { ++p.b; };

    detail::PrefactoredSum<ImplicitMonomial> sum;
    sum[-1] = {ImplicitMonomial(-1, {Partial{1, 0}})};
    for (int step = 1; step < n; ++step) {
        detail::PrefactoredSum<ImplicitMonomial> next;
        for (const auto& [e, ms] : sum) {
            for (const auto& m : ms) {
                auto with_fxy = m.factors();
                with_fxy.push_back({1, 1});
                next[e - 1].emplace_back(m.coeff * e, std::move(with_fxy));
                for (auto& d : detail::naive_partial(m, raise_x)) {
                    next[e].push_back(std::move(d));
                }

                auto with_fx_fyy = m.factors();
                with_fx_fyy.push_back({1, 0});
                with_fx_fyy.push_back({0, 2});
                next[e - 2].emplace_back(-m.coeff * e, std::move(with_fx_fyy));
                for (auto& d : detail::naive_partial(m, raise_y)) {
                    auto fs = d.factors();
                    fs.push_back({1, 0});
                    next[e - 1].emplace_back(-d.coeff, std::move(fs));
                }
            }
        }
        sum = detail::collect(std::move(next));
    }

    ImplicitFormula f{n, FormulaKind::implicit, {}};
    for (int k = 1; k <= 2 * n - 1; ++k) {
        f.layers.push_back(ImplicitLayer{k, layer_sign(k), -k, {}});
    }
    for (auto& [e, ms] : sum) {
        const int k = -e;
        if (ms.empty()) {
            continue;
        }
        if (k < 1 || k > 2 * n - 1) {
            throw InvalidArgument("oracle produced a term with prefactor exponent " + std::to_string(e));
        }
        for (auto& m : ms) {
            m.coeff *= layer_sign(k);
        }
        f.layers[static_cast<std::size_t>(k - 1)].monomials = std::move(ms);
    }
    return f;
}

// ---------------------------------------------------------------------------
// Derivative tables and evaluation

/// Values of f', f'', ... and g', g'', ... at t0 (index 0 is the first derivative).
struct ParametricTable {
    double t0 = 0.0;
    std::vector<double> f;
    std::vector<double> g;

    double f_deriv(int order) const
    {
        if (order < 1 || order > static_cast<int>(f.size())) {
            throw MissingOrder("table has no f derivative of order " + std::to_string(order));
        }
        return f[static_cast<std::size_t>(order - 1)];
    }

    double g_deriv(int order) const
    {
        if (order < 1 || order > static_cast<int>(g.size())) {
            throw MissingOrder("table has no g derivative of order " + std::to_string(order));
        }
        return g[static_cast<std::size_t>(order - 1)];
    }
};

/// Partial derivatives F_{x^a y^b} at (x0, y0), plus F(x0, y0) itself.
struct ImplicitTable {
    double x0 = 0.0;
    double y0 = 0.0;
    double value = 0.0;
    std::map<std::pair<int, int>, double> partials;

    double partial(int a, int b) const
    {
        if (a == 0 && b == 0) {
            return value;
        }
        const auto it = partials.find({a, b});
        if (it == partials.end()) {
            throw MissingOrder("table has no partial F_(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        return it->second;
    }

    int max_order() const
    {
        int m = 0;
        for (const auto& [ab, v] : partials) {
            m = std::max(m, ab.first + ab.second);
        }
        return m;
    }
};

using DerivativeTable = std::variant<ParametricTable, ImplicitTable>;

/// |F(x0, y0)| above this is rejected as "not on the curve".
inline constexpr double on_curve_tolerance = 1e-9;

inline double to_double(const Integer& c) { return c.convert_to<double>(); }

/// Value of a parametric (or inverse) formula at t0. Inverse formulas read
/// g' as 1 and ignore the g column.
inline double eval_parametric(const ParametricFormula& formula, const ParametricTable& table)
{
    if (formula.kind == FormulaKind::implicit) {
        throw InvalidArgument("eval_parametric needs a parametric or inverse formula");
    }
    const double f1 = table.f_deriv(1);
    if (f1 == 0.0) {
        throw DivisionByZero("f'(t0) = 0: dy/dx is undefined at this point");
    }
    const bool inverse = formula.kind == FormulaKind::inverse;
    double total = 0.0;
    for (const auto& layer : formula.layers) {
        double layer_sum = 0.0;
        for (const auto& m : layer.monomials) {
            double term = to_double(m.coeff);
            if (!(inverse && m.g_order() == 1)) {
                term *= table.g_deriv(m.g_order());
            }
            for (int j : m.f_orders()) {
                term *= table.f_deriv(j);
            }
            layer_sum += term;
        }
        total += layer.sign * std::pow(f1, layer.prefactor_exponent) * layer_sum;
    }
    return total;
}

inline double eval_implicit(const ImplicitFormula& formula, const ImplicitTable& table)
{
    if (std::abs(table.value) > on_curve_tolerance) {
        throw NotOnCurve("F(x0, y0) = " + std::to_string(table.value) + " is not zero");
    }
    const double fy = table.partial(0, 1);
    if (fy == 0.0) {
        throw DivisionByZero("F_y(x0, y0) = 0: y is not locally a function of x");
    }
    double total = 0.0;
    for (const auto& layer : formula.layers) {
        double layer_sum = 0.0;
        for (const auto& m : layer.monomials) {
            double term = to_double(m.coeff);
            for (const auto& p : m.factors()) {
                term *= table.partial(p.a, p.b);
            }
            layer_sum += term;
        }
        total += layer.sign * std::pow(fy, layer.prefactor_exponent) * layer_sum;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Numeric series oracles

/// Derivatives d^i y/dx^i, i = 1..n, at x0 = f(t0) for x = f(t), y = g(t):
/// revert the series of f and compose the series of g with it.
inline std::vector<double> series_reversion_oracle(const Jet& f_jet, const Jet& g_jet, int n)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    if (f_jet.base_point() != g_jet.base_point()) {
        throw InvalidArgument("f and g jets must share a base point");
    }
    if (f_jet.order() < n || g_jet.order() < n) {
        throw MissingOrder("jets must have order >= n");
    }
    const Jet t_of_x = f_jet.truncated(n).revert();
    const Jet y_of_x = Jet::compose(g_jet.truncated(n), t_of_x);
    return y_of_x.derivatives();
}

/// Derivatives d^i y/dx^i, i = 1..n, of the branch through (x0, y0) of
/// F(x, y) = 0, from y(x) = y0 + sum d_i h^i substituted into the jet of F and
/// solved one power of h at a time.
inline std::vector<double> implicit_series_oracle(const BivariateJet& F, int n)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    if (F.order() < n) {
        throw MissingOrder("bivariate jet must have order >= n");
    }
    if (std::abs(F.coeff(0, 0)) > on_curve_tolerance) {
        throw NotOnCurve("F(x0, y0) is not zero");
    }
    const double fy = F.coeff(0, 1);
    if (fy == 0.0) {
        throw DivisionByZero("F_y(x0, y0) = 0: y is not locally a function of x");
    }
    const auto size = static_cast<std::size_t>(n) + 1;
    std::vector<double> d(size, 0.0);
    for (int m = 1; m <= n; ++m) {
        // coefficient of h^m in F(x0 + h, y0 + eta(h)) with d_m still zero
        const Jet eta(0.0, d);
        std::vector<double> one(size, 0.0);
        one[0] = 1.0;
        Jet power(0.0, std::move(one));
        double coeff_m = 0.0;
        for (int b = 0; b <= m; ++b) {
            for (int a = 0; a + b <= n && a <= m; ++a) {
                coeff_m += F.coeff(a, b) * power[static_cast<std::size_t>(m - a)];
            }
            power = power * eta;
        }
        d[static_cast<std::size_t>(m)] = -coeff_m / fy;
    }
    std::vector<double> out;
    for (int i = 1; i <= n; ++i) {
        out.push_back(d[static_cast<std::size_t>(i)] * factorial(i));
    }
    return out;
}

} // namespace nthderiv
