// Prints d^n y/dx^n for the parametric and implicit problems, n = 1..4, and
// evaluates the parametric ones on the curve x = t^2, y = t^3 at t = 1.

#include <nthderiv/nthderiv.hpp>

#include <iostream>

int main()
{
    using namespace nthderiv;
    const ParametricTable curve{1.0, {2.0, 2.0, 0.0, 0.0}, {3.0, 6.0, 6.0, 0.0}};
    for (int n = 1; n <= 4; ++n) {
        const auto p = parametric_formula(n);
        std::cout << "d^" << n << "y/dx^" << n << " = " << render_text(p) << '\n';
        std::cout << "  at x = t^2, y = t^3, t = 1: " << eval_parametric(p, curve) << '\n';
    }
    for (int n = 1; n <= 3; ++n) {
        std::cout << "implicit d^" << n << "y/dx^" << n << " = " << render_text(implicit_formula(n)) << '\n';
    }
}
