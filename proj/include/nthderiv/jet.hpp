#pragma once

// Truncated Taylor series in one and two variables, used by the numeric
// derivative oracles. Coefficients are c_i = (i-th derivative) / i!.

#include "errors.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace nthderiv {

inline double factorial(int m)
{
    double r = 1.0;
    for (int i = 2; i <= m; ++i) {
        r *= i;
    }
    return r;
}

class Jet {
public:
    Jet(double base_point, std::vector<double> coefficients)
        : base_(base_point), c_(std::move(coefficients))
    {
        if (c_.empty()) {
            throw InvalidArgument("a jet needs at least one coefficient");
        }
    }

    /// Jet from a value and derivatives 1..N at base_point.
    static Jet from_derivatives(double base_point, double value, const std::vector<double>& derivatives)
    {
        std::vector<double> c{value};
        for (std::size_t i = 0; i < derivatives.size(); ++i) {
            c.push_back(derivatives[i] / factorial(static_cast<int>(i) + 1));
        }
        return Jet(base_point, std::move(c));
    }

    double base_point() const noexcept { return base_; }
    int order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coefficients() const noexcept { return c_; }
    double operator[](std::size_t i) const { return c_[i]; }

    /// Derivatives 1..order at the base point.
    std::vector<double> derivatives() const
    {
        std::vector<double> d;
        for (int i = 1; i <= order(); ++i) {
            d.push_back(c_[static_cast<std::size_t>(i)] * factorial(i));
        }
        return d;
    }

    Jet truncated(int order) const
    {
        std::vector<double> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, std::ssize(c_)));
        c.resize(static_cast<std::size_t>(order) + 1, 0.0);
        return Jet(base_, std::move(c));
    }

    friend Jet operator+(const Jet& l, const Jet& r)
    {
        l.require_compatible(r);
        auto c = l.c_;
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] += r.c_[i];
        }
        return Jet(l.base_, std::move(c));
    }

    friend Jet operator-(const Jet& l, const Jet& r)
    {
        l.require_compatible(r);
        auto c = l.c_;
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] -= r.c_[i];
        }
        return Jet(l.base_, std::move(c));
    }

    friend Jet operator*(const Jet& l, const Jet& r)
    {
        l.require_compatible(r);
        std::vector<double> c(l.c_.size(), 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = 0; i + j < c.size(); ++j) {
                c[i + j] += l.c_[i] * r.c_[j];
            }
        }
        return Jet(l.base_, std::move(c));
    }

    friend Jet operator*(double s, const Jet& j)
    {
        auto c = j.c_;
        for (auto& v : c) {
            v *= s;
        }
        return Jet(j.base_, std::move(c));
    }

    /// outer(inner(t)): outer is expanded around inner's value at its base
    /// point; the result lives at inner's base point.
    static Jet compose(const Jet& outer, const Jet& inner)
    {
        if (outer.order() != inner.order()) {
            throw InvalidArgument("jet composition needs equal truncation orders");
        }
        auto shift = inner.c_;
        shift[0] = 0.0;
        const Jet step(inner.base_, std::move(shift));
        Jet acc(inner.base_, std::vector<double>(inner.c_.size(), 0.0));
        for (int i = outer.order(); i >= 0; --i) {
            acc = acc * step;
            acc.c_[0] += outer.c_[static_cast<std::size_t>(i)];
        }
        return acc;
    }

    /// Compositional inverse: for y = this(t) around t0 returns t(y) around
    /// y0 = c_0. Solved order by order; needs a nonzero linear coefficient.
    Jet revert() const
    {
        if (order() < 1 || c_[1] == 0.0) {
            throw DivisionByZero("series has no linear term and cannot be inverted");
        }
        const std::size_t size = c_.size();
        std::vector<double> b(size, 0.0);
        b[1] = 1.0 / c_[1];
        std::vector<double> a = c_;
        a[0] = 0.0;
        for (std::size_t m = 2; m < size; ++m) {
            const Jet inner(c_[0], b);
            const Jet composed = compose(Jet(base_, a), inner);
            b[m] = -composed.c_[m] / c_[1];
        }
        b[0] = base_;
        return Jet(c_[0], std::move(b));
    }

private:
    void require_compatible(const Jet& r) const
    {
        if (r.c_.size() != c_.size() || r.base_ != base_) {
            throw InvalidArgument("jet arithmetic needs equal order and base point");
        }
    }

    double base_;
    std::vector<double> c_;
};

/// Truncated Taylor series of F(x, y) around (x0, y0): coefficients c_{a,b}
/// for a + b <= order, c_{a,b} = F_{x^a y^b} / (a! b!).
class BivariateJet {
public:
    BivariateJet(double x0, double y0, int order)
        : x0_(x0), y0_(y0), order_(order), c_(static_cast<std::size_t>(order) + 1)
    {
        if (order < 1) {
            throw InvalidArgument("bivariate jet needs order >= 1");
        }
        for (int a = 0; a <= order; ++a) {
            c_[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(order - a) + 1, 0.0);
        }
    }

    /// From partial derivative values keyed by (a, b); absent entries are 0.
    static BivariateJet from_partials(double x0, double y0, int order,
                                      const std::map<std::pair<int, int>, double>& partials)
    {
        BivariateJet j(x0, y0, order);
        for (const auto& [ab, v] : partials) {
            const auto [a, b] = ab;
            if (a >= 0 && b >= 0 && a + b <= order) {
                j.coeff(a, b) = v / (factorial(a) * factorial(b));
            }
        }
        return j;
    }

    double x0() const noexcept { return x0_; }
    double y0() const noexcept { return y0_; }
    int order() const noexcept { return order_; }

    double& coeff(int a, int b) { return c_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)); }
    double coeff(int a, int b) const { return c_.at(static_cast<std::size_t>(a)).at(static_cast<std::size_t>(b)); }

    /// Partial derivative value F_{x^a y^b}.
    double partial(int a, int b) const { return coeff(a, b) * factorial(a) * factorial(b); }

private:
    double x0_;
    double y0_;
    int order_;
    std::vector<std::vector<double>> c_;
};

} // namespace nthderiv
