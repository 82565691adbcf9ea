#pragma once

// d^n y / dx^n for y(x) defined by F(x, y) = 0:
//
//   d^n y/dx^n = sum_{k=1}^{2n-1} (-1)^k F_y^(-k) I_{n,k}
//
// with I_{n,k} computed by enumerating partitions or by the recurrence
//   I_{n+1,k} = dx I_{n,k} + F_x dy I_{n,k-1} + (k-1) F_xy I_{n,k-1}
//             + (k-2) F_x F_yy I_{n,k-2}.

#include "algebra.hpp"
#include "parametric.hpp"
#include "partitions.hpp"

#include <map>
#include <string>
#include <vector>

namespace nthderiv {

inline ImplicitLayer empty_implicit_layer(int k) { return ImplicitLayer{k, layer_sign(k), -k, {}}; }

/// I_{n,k} as a sum over the implicit partition class (small = 1..n).
inline ImplicitLayer i_enum(int n, int k)
{
    if (n < 1) {
        throw InvalidArgument("I_{n,k} needs n >= 1");
    }
    ImplicitLayer layer = empty_implicit_layer(k);
    std::map<ImplicitMonomial::Support, Integer> counts;
    for_each_implicit_partition(n, k, [&](std::span<const int> rgs) {
        std::vector<Partial> factors(static_cast<std::size_t>(k));
        for (std::size_t i = 0; i < rgs.size(); ++i) {
            auto& f = factors[static_cast<std::size_t>(rgs[i])];
            (static_cast<int>(i) < n ? f.a : f.b) += 1;
        }
        std::sort(factors.begin(), factors.end(), std::greater<>());
        counts[std::move(factors)] += 1;
    });
    std::vector<ImplicitMonomial> ms;
    for (auto& [support, c] : counts) {
        ms.push_back(ImplicitMonomial::from_support(support, c));
    }
    layer.monomials = normalize(ms);
    return layer;
}

namespace detail {

template <typename Raise>
std::vector<ImplicitMonomial> leibniz(const std::vector<ImplicitMonomial>& ms, Raise raise)
{
    std::vector<ImplicitMonomial> out;
    for (const auto& m : ms) {
        const auto& fs = m.factors();
        for (std::size_t i = 0; i < fs.size();) {
            std::size_t j = i;
            while (j < fs.size() && fs[j] == fs[i]) {
                ++j;
            }
            auto raised = fs;
            raise(raised[i]);
            out.emplace_back(m.coeff * static_cast<long>(j - i), std::move(raised));
            i = j;
        }
    }
    return out;
}

} // namespace detail

/// d/dx on each factor in turn (one more small element); not normalized.
inline std::vector<ImplicitMonomial> partial_x(const std::vector<ImplicitMonomial>& ms)
{
    return detail::leibniz(ms, [](Partial& p) { ++p.a; });
}

/// d/dy on each factor in turn (one more large element); not normalized.
inline std::vector<ImplicitMonomial> partial_y(const std::vector<ImplicitMonomial>& ms)
{
    return detail::leibniz(ms, [](Partial& p) { ++p.b; });
}

/// Bottom-up table of I_{m,k} for 1 <= m <= max_n, starting from I_{1,1} = F_x.
class ImplicitRecurrence {
public:
    explicit ImplicitRecurrence(int max_n)
    {
        if (max_n < 1) {
            throw InvalidArgument("I_{n,k} needs n >= 1");
        }
        rows_.reserve(static_cast<std::size_t>(max_n));
        ImplicitLayer base = empty_implicit_layer(1);
        base.monomials = {ImplicitMonomial(1, {Partial{1, 0}})};
        rows_.push_back({std::move(base)});
        for (int m = 1; m < max_n; ++m) {
            std::vector<ImplicitLayer> row;
            for (int k = 1; k <= 2 * m + 1; ++k) {
                const auto& same = at(m, k).monomials;
                const auto& one_less = at(m, k - 1).monomials;
                const auto& two_less = at(m, k - 2).monomials;

                auto terms = partial_x(same);
                for (auto& mono : partial_y(one_less)) {
                    auto fs = mono.factors();
                    fs.push_back({1, 0});
                    terms.emplace_back(std::move(mono.coeff), std::move(fs));
                }
                for (const auto& mono : one_less) {
                    auto fs = mono.factors();
                    fs.push_back({1, 1});
                    terms.emplace_back(mono.coeff * (k - 1), std::move(fs));
                }
                for (const auto& mono : two_less) {
                    auto fs = mono.factors();
                    fs.push_back({1, 0});
                    fs.push_back({0, 2});
                    terms.emplace_back(mono.coeff * (k - 2), std::move(fs));
                }
                ImplicitLayer layer = empty_implicit_layer(k);
                layer.monomials = normalize(terms);
                row.push_back(std::move(layer));
            }
            rows_.push_back(std::move(row));
        }
    }

    int max_n() const noexcept { return static_cast<int>(rows_.size()); }

    ImplicitLayer layer(int n, int k) const
    {
        if (n < 1 || n > max_n()) {
            throw InvalidArgument("I_{" + std::to_string(n) + ",k} outside the computed table");
        }
        return at(n, k);
    }

private:
    const ImplicitLayer& at(int n, int k) const
    {
        static const ImplicitLayer zero{};
        if (k < 1 || k > 2 * n - 1) {
            return zero;
        }
        return rows_[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(k - 1)];
    }

    std::vector<std::vector<ImplicitLayer>> rows_;
};

inline ImplicitLayer i_recur(int n, int k)
{
    const ImplicitRecurrence table(n);
    if (k < 1 || k > 2 * n - 1) {
        return empty_implicit_layer(k);
    }
    return table.layer(n, k);
}

inline ImplicitFormula implicit_formula(int n, Method method = Method::recurrence)
{
    if (n < 1) {
        throw InvalidArgument("derivative order must be >= 1");
    }
    ImplicitFormula f{n, FormulaKind::implicit, {}};
    if (method == Method::recurrence) {
        const ImplicitRecurrence table(n);
        for (int k = 1; k <= 2 * n - 1; ++k) {
            f.layers.push_back(table.layer(n, k));
        }
    } else {
        for (int k = 1; k <= 2 * n - 1; ++k) {
            f.layers.push_back(i_enum(n, k));
        }
    }
    return f;
}

/// Specializes the implicit formula to F(x, y) = f(y) - x: F_x = -1, every
/// other partial with an x in it vanishes and F_{y^b} = f^(b)(y). The result
/// is expressed as an inverse-kind formula (F_y read as f') so it can be
/// compared with inverse_formula(n) directly.
inline ParametricFormula inverse_via_implicit(int n, Method method = Method::recurrence)
{
    const ImplicitFormula implicit = implicit_formula(n, method);
    std::vector<std::vector<ParametricMonomial>> terms(static_cast<std::size_t>(n));
    for (const auto& layer : implicit.layers) {
        for (const auto& m : layer.monomials) {
            int fx_count = 0;
            bool vanishes = false;
            std::vector<int> f_orders;
            for (const auto& p : m.factors()) {
                if (p.a == 1 && p.b == 0) {
                    ++fx_count;
                } else if (p.a >= 1) {
                    vanishes = true;
                    break;
                } else {
                    f_orders.push_back(p.b);
                }
            }
            if (vanishes) {
                continue;
            }
            // F_y^(-k) = [f']^(-k) = [f']^(-n-k') with k' = k - n
            const int target = layer.k - n;
            if (target < 0 || target >= n) {
                throw InvalidArgument("specialized term lands outside the inverse layers");
            }
            const int sign = layer.sign * (fx_count % 2 == 0 ? 1 : -1) * layer_sign(target);
            terms[static_cast<std::size_t>(target)].emplace_back(m.coeff * sign, 1, std::move(f_orders));
        }
    }
    ParametricFormula out{n, FormulaKind::inverse, {}};
    for (int k = 0; k < n; ++k) {
        ParametricLayer layer = empty_parametric_layer(n, k);
        layer.monomials = normalize(terms[static_cast<std::size_t>(k)]);
        out.layers.push_back(std::move(layer));
    }
    return out;
}

} // namespace nthderiv
