#pragma once

// Exact-coefficient monomials in derivative factors, and the layered formulas
// built from them.
//
// A parametric monomial is  c * g^(i) * prod f^(j)   (every j >= 2).
// An implicit monomial is   c * prod F_{x^a y^b}      (no bare F_y factor).
// Signs (-1)^k and the prefactor powers [f']^(-n-k) or F_y^(-k) belong to the
// layer, never to monomial coefficients.

#include "errors.hpp"
#include "integer.hpp"
#include "partitions.hpp"

#include <algorithm>
#include <compare>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace nthderiv {

class ParametricMonomial {
public:
    /// g_order, then f_orders sorted descending.
    using Support = std::pair<int, std::vector<int>>;

    Integer coeff = 1;

    ParametricMonomial() = default;
    ParametricMonomial(Integer coefficient, int g_order, std::vector<int> f_orders)
        : coeff(std::move(coefficient)), g_order_(g_order), f_orders_(std::move(f_orders))
    {
        if (g_order_ < 1) {
            throw InvalidArgument("g derivative order must be >= 1");
        }
        for (int j : f_orders_) {
            if (j < 2) {
                throw InvalidArgument("f derivative orders in a monomial must be >= 2");
            }
        }
        std::sort(f_orders_.begin(), f_orders_.end(), std::greater<>());
    }

    static ParametricMonomial from_support(Support s, Integer coefficient)
    {
        return ParametricMonomial(std::move(coefficient), s.first, std::move(s.second));
    }

    int g_order() const noexcept { return g_order_; }
    const std::vector<int>& f_orders() const noexcept { return f_orders_; }
    int f_order_sum() const { return std::accumulate(f_orders_.begin(), f_orders_.end(), 0); }
    int max_order() const { return std::max(g_order_, f_orders_.empty() ? 0 : f_orders_.front()); }

    Support support() const { return {g_order_, f_orders_}; }

    friend bool operator==(const ParametricMonomial&, const ParametricMonomial&) = default;

private:
    int g_order_ = 1;
    std::vector<int> f_orders_;
};

/// One partial derivative factor d^(a+b) F / dx^a dy^b.
struct Partial {
    int a = 0;
    int b = 0;

    int order() const noexcept { return a + b; }

    friend bool operator==(const Partial&, const Partial&) = default;
    friend auto operator<=>(const Partial& l, const Partial& r)
    {
        if (auto c = l.order() <=> r.order(); c != 0) {
            return c;
        }
        return l.a <=> r.a;
    }
};

class ImplicitMonomial {
public:
    /// Factors sorted descending by (a+b, a).
    using Support = std::vector<Partial>;

    Integer coeff = 1;

    ImplicitMonomial() = default;
    ImplicitMonomial(Integer coefficient, std::vector<Partial> factors)
        : coeff(std::move(coefficient)), factors_(std::move(factors))
    {
        for (const auto& f : factors_) {
            if (f.a < 0 || f.b < 0 || f.order() < 1) {
                throw InvalidArgument("partial factor needs a, b >= 0 and a+b >= 1");
            }
        }
        std::sort(factors_.begin(), factors_.end(), std::greater<>());
    }

    static ImplicitMonomial from_support(Support s, Integer coefficient)
    {
        return ImplicitMonomial(std::move(coefficient), std::move(s));
    }

    const std::vector<Partial>& factors() const noexcept { return factors_; }
    int x_order_sum() const
    {
        return std::accumulate(factors_.begin(), factors_.end(), 0,
                               [](int s, const Partial& p) { return s + p.a; });
    }
    int y_order_sum() const
    {
        return std::accumulate(factors_.begin(), factors_.end(), 0,
                               [](int s, const Partial& p) { return s + p.b; });
    }
    int max_order() const { return factors_.empty() ? 0 : factors_.front().order(); }

    Support support() const { return factors_; }

    friend bool operator==(const ImplicitMonomial&, const ImplicitMonomial&) = default;

private:
    std::vector<Partial> factors_;
};

template <typename M>
concept Monomial = requires(const M& m) {
    { m.coeff } -> std::convertible_to<Integer>;
    m.support();
    M::from_support(m.support(), m.coeff);
};

/// Merges equal supports, drops zero coefficients and sorts canonically
/// (descending support order). Idempotent and permutation invariant.
template <Monomial M>
std::vector<M> normalize(const std::vector<M>& ms)
{
    std::map<typename M::Support, Integer, std::greater<>> merged;
    for (const auto& m : ms) {
        merged[m.support()] += m.coeff;
    }
    std::vector<M> out;
    out.reserve(merged.size());
    for (auto& [support, coeff] : merged) {
        if (coeff != 0) {
            out.push_back(M::from_support(support, std::move(coeff)));
        }
    }
    return out;
}

/// Canonical order used by normalize: true when `a` sorts before `b`.
template <Monomial M>
bool canonical_before(const M& a, const M& b)
{
    return a.support() > b.support();
}

enum class FormulaKind { parametric, implicit, inverse };

inline std::string to_string(FormulaKind kind)
{
    switch (kind) {
    case FormulaKind::parametric:
        return "parametric";
    case FormulaKind::implicit:
        return "implicit";
    case FormulaKind::inverse:
        return "inverse";
    }
    return "?";
}

inline FormulaKind parse_kind(const std::string& s)
{
    if (s == "parametric") {
        return FormulaKind::parametric;
    }
    if (s == "implicit") {
        return FormulaKind::implicit;
    }
    if (s == "inverse") {
        return FormulaKind::inverse;
    }
    throw InvalidArgument("unknown formula kind '" + s + "'");
}

/// All terms sharing the index k: sign * prefactor^prefactor_exponent * sum(monomials).
/// The prefactor is f'(t) for parametric/inverse formulas and F_y for implicit ones.
template <Monomial M>
struct FormulaLayer {
    int k = 0;
    int sign = 1;
    int prefactor_exponent = 0;
    std::vector<M> monomials;

    bool is_zero() const noexcept { return monomials.empty(); }

    Integer coefficient_sum() const
    {
        Integer s = 0;
        for (const auto& m : monomials) {
            s += m.coeff;
        }
        return s;
    }

    friend bool operator==(const FormulaLayer&, const FormulaLayer&) = default;
};

using ParametricLayer = FormulaLayer<ParametricMonomial>;
using ImplicitLayer = FormulaLayer<ImplicitMonomial>;

template <Monomial M>
struct DerivativeFormula {
    int n = 1;
    FormulaKind kind = FormulaKind::parametric;
    std::vector<FormulaLayer<M>> layers;

    std::size_t term_count() const
    {
        std::size_t c = 0;
        for (const auto& l : layers) {
            c += l.monomials.size();
        }
        return c;
    }

    friend bool operator==(const DerivativeFormula&, const DerivativeFormula&) = default;
};

using ParametricFormula = DerivativeFormula<ParametricMonomial>;
using ImplicitFormula = DerivativeFormula<ImplicitMonomial>;

inline int layer_sign(int k) { return k % 2 == 0 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Partition -> monomial

inline ParametricMonomial monomial_from_parametric_partition(const SetPartition& p)
{
    if (!is_parametric_partition(p)) {
        throw ClassViolation("partition " + p.to_string() + " has a singleton other than {1}");
    }
    int g_order = 0;
    std::vector<int> f_orders;
    for (const auto& block : p.blocks()) {
        const int size = static_cast<int>(block.size());
        if (block.front() == 1) {
            g_order = size;
        } else {
            f_orders.push_back(size);
        }
    }
    return ParametricMonomial(1, g_order, std::move(f_orders));
}

inline ImplicitMonomial monomial_from_implicit_partition(const SetPartition& p, RoleSplit roles)
{
    if (!is_implicit_partition(p, roles)) {
        throw ClassViolation("partition " + p.to_string() + " puts a large element in a singleton");
    }
    std::vector<Partial> factors;
    for (const auto& block : p.blocks()) {
        Partial f;
        for (int e : block) {
            (roles.is_small(e) ? f.a : f.b) += 1;
        }
        factors.push_back(f);
    }
    return ImplicitMonomial(1, std::move(factors));
}

// ---------------------------------------------------------------------------
// Layer invariants

/// Throws unless every monomial of a P_{n,k} layer has k f-factors and total
/// order n+k, and the layer is normalized.
inline void check_parametric_layer(int n, const ParametricLayer& layer)
{
    const int k = layer.k;
    for (const auto& m : layer.monomials) {
        if (static_cast<int>(m.f_orders().size()) != k || m.g_order() + m.f_order_sum() != n + k) {
            throw InvalidArgument("monomial does not belong to layer (n=" + std::to_string(n)
                                  + ", k=" + std::to_string(k) + ")");
        }
        if (m.coeff == 0) {
            throw InvalidArgument("zero coefficient in a normalized layer");
        }
    }
    if (normalize(layer.monomials) != layer.monomials) {
        throw InvalidArgument("layer is not normalized");
    }
}

/// Throws unless every monomial of an I_{n,k} layer has k factors, x-orders
/// summing to n, y-orders summing to k-1 and no bare F_y.
inline void check_implicit_layer(int n, const ImplicitLayer& layer)
{
    const int k = layer.k;
    for (const auto& m : layer.monomials) {
        if (static_cast<int>(m.factors().size()) != k || m.x_order_sum() != n
            || m.y_order_sum() != k - 1) {
            throw InvalidArgument("monomial does not belong to layer (n=" + std::to_string(n)
                                  + ", k=" + std::to_string(k) + ")");
        }
        for (const auto& f : m.factors()) {
            if (f.a == 0 && f.b < 2) {
                throw InvalidArgument("bare F_y factor inside an implicit layer");
            }
        }
        if (m.coeff == 0) {
            throw InvalidArgument("zero coefficient in a normalized layer");
        }
    }
    if (normalize(layer.monomials) != layer.monomials) {
        throw InvalidArgument("layer is not normalized");
    }
}

/// Checks the layer range, signs and prefactor exponents of a formula, plus
/// every per-layer invariant.
inline void validate(const ParametricFormula& f)
{
    if (f.n < 1) {
        throw InvalidArgument("formula order must be >= 1");
    }
    if (f.kind == FormulaKind::implicit) {
        throw InvalidArgument("parametric monomials in an implicit formula");
    }
    if (static_cast<int>(f.layers.size()) != f.n) {
        throw InvalidArgument("parametric formula must carry layers k = 0..n-1");
    }
    for (int k = 0; k < f.n; ++k) {
        const auto& layer = f.layers[static_cast<std::size_t>(k)];
        if (layer.k != k || layer.sign != layer_sign(k) || layer.prefactor_exponent != -f.n - k) {
            throw InvalidArgument("bad layer header at k=" + std::to_string(k));
        }
        check_parametric_layer(f.n, layer);
        if (f.kind == FormulaKind::inverse) {
            for (const auto& m : layer.monomials) {
                if (m.g_order() != 1) {
                    throw InvalidArgument("inverse formula monomials must have g_order 1");
                }
            }
        }
    }
}

inline void validate(const ImplicitFormula& f)
{
    if (f.n < 1) {
        throw InvalidArgument("formula order must be >= 1");
    }
    if (f.kind != FormulaKind::implicit) {
        throw InvalidArgument("implicit monomials in a non-implicit formula");
    }
    if (static_cast<int>(f.layers.size()) != 2 * f.n - 1) {
        throw InvalidArgument("implicit formula must carry layers k = 1..2n-1");
    }
    for (int k = 1; k <= 2 * f.n - 1; ++k) {
        const auto& layer = f.layers[static_cast<std::size_t>(k - 1)];
        if (layer.k != k || layer.sign != layer_sign(k) || layer.prefactor_exponent != -k) {
            throw InvalidArgument("bad layer header at k=" + std::to_string(k));
        }
        check_implicit_layer(f.n, layer);
    }
}

} // namespace nthderiv
