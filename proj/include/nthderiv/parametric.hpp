#pragma once

// d^n y / dx^n for x = f(t), y = g(t):
//
//   d^n y/dx^n = sum_{k=0}^{n-1} (-1)^k [f'(t)]^(-n-k) P_{n,k}(t)
//
// P_{n,k} is computed by enumerating partitions or by the recurrence
//   P_{n+1,k} = d/dt P_{n,k} + (n+k-1) f'' P_{n,k-1}.

#include "algebra.hpp"
#include "partitions.hpp"

#include <map>
#include <string>
#include <vector>

namespace nthderiv {

enum class Method { enumeration, recurrence };

inline std::string to_string(Method m) { return m == Method::enumeration ? "enum" : "recur"; }

inline Method parse_method(const std::string& s)
{
    if (s == "enum") {
        return Method::enumeration;
    }
    if (s == "recur") {
        return Method::recurrence;
    }
    throw InvalidArgument("unknown method '" + s + "' (expected enum or recur)");
}

inline ParametricLayer empty_parametric_layer(int n, int k)
{
    return ParametricLayer{k, layer_sign(k), -n - k, {}};
}

/// P_{n,k} as a sum over the parametric partition class.
inline ParametricLayer p_enum(int n, int k)
{
    if (n < 1) {
        throw InvalidArgument("P_{n,k} needs n >= 1");
    }
    ParametricLayer layer = empty_parametric_layer(n, k);
    std::map<ParametricMonomial::Support, Integer> counts;
    for_each_parametric_partition(n, k, [&](std::span<const int> rgs) {
        std::vector<int> sizes(static_cast<std::size_t>(k) + 1, 0);
        for (int b : rgs) {
            ++sizes[static_cast<std::size_t>(b)];
        }
        // block 0 always holds element 1
        std::vector<int> f_orders(sizes.begin() + 1, sizes.end());
        std::sort(f_orders.begin(), f_orders.end(), std::greater<>());
        counts[{sizes[0], std::move(f_orders)}] += 1;
    });
    std::vector<ParametricMonomial> ms;
    for (auto& [support, c] : counts) {
        ms.push_back(ParametricMonomial::from_support(support, c));
    }
    layer.monomials = normalize(ms);
    return layer;
}

/// Leibniz action of d/dt: each factor in turn has its order raised by one.
/// Repeated f factors contribute once, weighted by their multiplicity. The
/// result is not normalized.
inline std::vector<ParametricMonomial> d_dt(const std::vector<ParametricMonomial>& ms)
{
    std::vector<ParametricMonomial> out;
    for (const auto& m : ms) {
        out.emplace_back(m.coeff, m.g_order() + 1, m.f_orders());
        const auto& fs = m.f_orders();
        for (std::size_t i = 0; i < fs.size();) {
            std::size_t j = i;
            while (j < fs.size() && fs[j] == fs[i]) {
                ++j;
            }
            auto raised = fs;
            raised[i] += 1;
            out.emplace_back(m.coeff * static_cast<long>(j - i), m.g_order(), std::move(raised));
            i = j;
        }
    }
    return out;
}

inline std::vector<ParametricMonomial> d_dt(const ParametricLayer& layer) { return d_dt(layer.monomials); }

/// Bottom-up table of P_{m,k} for 1 <= m <= max_n, starting from P_{1,0} = g'.
class ParametricRecurrence {
public:
    explicit ParametricRecurrence(int max_n) : rows_()
    {
        if (max_n < 1) {
            throw InvalidArgument("P_{n,k} needs n >= 1");
        }
        rows_.reserve(static_cast<std::size_t>(max_n));
        rows_.push_back({ParametricLayer{0, 1, -1, {ParametricMonomial(1, 1, {})}}});
        for (int m = 1; m < max_n; ++m) {
            const auto& prev = rows_.back();
            std::vector<ParametricLayer> row;
            for (int k = 0; k <= m; ++k) {
                auto terms = k < m ? d_dt(prev[static_cast<std::size_t>(k)]) : std::vector<ParametricMonomial>{};
                if (k >= 1) {
                    for (const auto& mono : prev[static_cast<std::size_t>(k - 1)].monomials) {
                        auto fs = mono.f_orders();
                        fs.push_back(2);
                        terms.emplace_back(mono.coeff * (m + k - 1), mono.g_order(), std::move(fs));
                    }
                }
                ParametricLayer layer = empty_parametric_layer(m + 1, k);
                layer.monomials = normalize(terms);
                row.push_back(std::move(layer));
            }
            rows_.push_back(std::move(row));
        }
    }

    int max_n() const noexcept { return static_cast<int>(rows_.size()); }

    ParametricLayer layer(int n, int k) const
    {
        if (n < 1 || n > max_n()) {
            throw InvalidArgument("P_{" + std::to_string(n) + ",k} outside the computed table");
        }
        if (k < 0 || k > n - 1) {
            return empty_parametric_layer(n, k);
        }
        return rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k)];
    }

private:
    std::vector<std::vector<ParametricLayer>> rows_;
};

inline ParametricLayer p_recur(int n, int k) { return ParametricRecurrence(n).layer(n, k); }

inline ParametricFormula parametric_formula(int n, Method method = Method::recurrence)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    ParametricFormula f{n, FormulaKind::parametric, {}};
    if (method == Method::recurrence) {
        const ParametricRecurrence table(n);
        for (int k = 0; k < n; ++k) {
            f.layers.push_back(table.layer(n, k));
        }
    } else {
        for (int k = 0; k < n; ++k) {
            f.layers.push_back(p_enum(n, k));
        }
    }
    return f;
}

/// Problem "derivative of an inverse function": g(t) = t, so only terms with
/// a bare g' survive and g' = 1. Monomials keep g_order 1 as a marker.
inline ParametricFormula inverse_formula(int n, Method method = Method::recurrence)
{
    ParametricFormula f = parametric_formula(n, method);
    f.kind = FormulaKind::inverse;
    for (auto& layer : f.layers) {
        std::erase_if(layer.monomials, [](const ParametricMonomial& m) { return m.g_order() != 1; });
    }
    return f;
}

struct CheckCase {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Checks P_{n,n-1} = (2n-3)!! g' (f'')^(n-1) and
/// P_{n,n-2} = (2n-3)!! g'' (f'')^(n-2) + C(2n-3,3) (2n-7)!! g' (f'')^(n-3) f'''
/// against the recurrence.
inline std::vector<CheckCase> closed_form_check(int n)
{
    if (n < 2) {
        throw InvalidArgument("closed-form check needs n >= 2");
    }
    const ParametricRecurrence table(n);
    std::vector<CheckCase> report;

    ParametricLayer top = empty_parametric_layer(n, n - 1);
    top.monomials = {ParametricMonomial(double_factorial(2 * n - 3), 1, std::vector<int>(static_cast<std::size_t>(n - 1), 2))};
    const auto got_top = table.layer(n, n - 1);
    report.push_back({"P_{" + std::to_string(n) + "," + std::to_string(n - 1) + "}", got_top == top,
                      got_top == top ? "" : "double-factorial closed form differs"});

    std::vector<ParametricMonomial> next;
    next.emplace_back(double_factorial(2 * n - 3), 2, std::vector<int>(static_cast<std::size_t>(n - 2), 2));
    if (n >= 3) {
        std::vector<int> fs(static_cast<std::size_t>(n - 3), 2);
        fs.push_back(3);
        next.emplace_back(binomial(2 * n - 3, 3) * double_factorial(2 * n - 7), 1, std::move(fs));
    }
    ParametricLayer second = empty_parametric_layer(n, n - 2);
    second.monomials = normalize(next);
    const auto got_second = table.layer(n, n - 2);
    report.push_back({"P_{" + std::to_string(n) + "," + std::to_string(n - 2) + "}", got_second == second,
                      got_second == second ? "" : "two-term closed form differs"});
    return report;
}

} // namespace nthderiv
