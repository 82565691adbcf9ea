#include "brute_force.hpp"

#include <nthderiv/implicit.hpp>
#include <nthderiv/render.hpp>

#include <gtest/gtest.h>

using namespace nthderiv;

namespace {

ImplicitMonomial im(int c, std::vector<Partial> fs) { return ImplicitMonomial(c, std::move(fs)); }

ImplicitLayer layer(int k, std::vector<ImplicitMonomial> ms) { return ImplicitLayer{k, layer_sign(k), -k, normalize(ms)}; }

constexpr Partial Fx{1, 0};
constexpr Partial Fxx{2, 0};
constexpr Partial Fxxx{3, 0};
constexpr Partial Fxy{1, 1};
constexpr Partial Fxxy{2, 1};
constexpr Partial Fxyy{1, 2};
constexpr Partial Fyy{0, 2};
constexpr Partial Fyyy{0, 3};

} // namespace

TEST(IEnum, KnownLayers)
{
    EXPECT_EQ(i_enum(2, 1), layer(1, {im(1, {Fxx})}));
    EXPECT_EQ(i_enum(2, 2), layer(2, {im(2, {Fx, Fxy})}));
    EXPECT_EQ(i_enum(2, 3), layer(3, {im(1, {Fx, Fx, Fyy})}));
    EXPECT_EQ(i_enum(3, 1), layer(1, {im(1, {Fxxx})}));
    EXPECT_EQ(i_enum(3, 2), layer(2, {im(3, {Fxx, Fxy}), im(3, {Fx, Fxxy})}));
    EXPECT_EQ(i_enum(3, 3), layer(3, {im(3, {Fx, Fx, Fxyy}), im(3, {Fx, Fxx, Fyy}), im(6, {Fx, Fxy, Fxy})}));
    EXPECT_EQ(i_enum(3, 4), layer(4, {im(1, {Fx, Fx, Fx, Fyyy}), im(9, {Fx, Fx, Fxy, Fyy})}));
    EXPECT_EQ(i_enum(3, 5), layer(5, {im(3, {Fx, Fx, Fx, Fyy, Fyy})}));
    EXPECT_TRUE(i_enum(2, 4).is_zero());
    EXPECT_TRUE(i_enum(2, 0).is_zero());
}

TEST(IEnum, MatchesBruteForceMonomials)
{
    for (int n = 1; n <= 4; ++n) {
        for (int k = 1; k <= 2 * n - 1; ++k) {
            std::vector<ImplicitMonomial> ms;
            for (const auto& p : brute::brute_force_implicit(n, k)) {
                ms.push_back(monomial_from_implicit_partition(p, RoleSplit{n}));
            }
            EXPECT_EQ(i_enum(n, k).monomials, normalize(ms)) << n << "," << k;
        }
    }
}

TEST(Partials, X)
{
    EXPECT_EQ(partial_x({im(1, {Fxx})}), (std::vector{im(1, {Fxxx})}));
    const auto two = partial_x({im(1, {Fx, Fxy})});
    EXPECT_EQ(two.size(), 2u);
    EXPECT_EQ(normalize(two), normalize(std::vector{im(1, {Fxx, Fxy}), im(1, {Fx, Fxxy})}));
    EXPECT_EQ(normalize(partial_x({im(1, {Fx, Fx, Fyy})})),
              normalize(std::vector{im(2, {Fx, Fxx, Fyy}), im(1, {Fx, Fx, Fxyy})}));
}

TEST(Partials, Y)
{
    EXPECT_EQ(partial_y({im(1, {Fxx})}), (std::vector{im(1, {Fxxy})}));
    const auto two = partial_y({im(1, {Fx, Fxy})});
    EXPECT_EQ(two.size(), 2u);
    EXPECT_EQ(normalize(two), normalize(std::vector{im(1, {Fxy, Fxy}), im(1, {Fx, Fxyy})}));
    EXPECT_TRUE(partial_y({}).empty());
}

TEST(IRecur, KnownLayers)
{
    EXPECT_EQ(i_recur(2, 1), layer(1, {im(1, {Fxx})}));
    EXPECT_EQ(i_recur(2, 3), layer(3, {im(1, {Fx, Fx, Fyy})}));
    EXPECT_EQ(i_recur(3, 5), layer(5, {im(3, {Fx, Fx, Fx, Fyy, Fyy})}));
    EXPECT_EQ(i_recur(1, 1), layer(1, {im(1, {Fx})}));
    EXPECT_TRUE(i_recur(3, 6).is_zero());
    EXPECT_THROW(i_recur(0, 1), InvalidArgument);
}

TEST(ImplicitFormula, SmallOrders)
{
    const auto one = implicit_formula(1);
    ASSERT_EQ(one.layers.size(), 1u);
    EXPECT_EQ(one.layers[0], layer(1, {im(1, {Fx})}));
    EXPECT_EQ(one.layers[0].sign, -1);

    const auto two = implicit_formula(2, Method::enumeration);
    ASSERT_EQ(two.layers.size(), 3u);
    EXPECT_EQ(two, implicit_formula(2, Method::recurrence));
    EXPECT_EQ(render_text(two), "- F_xx * F_y^-1 + 2 * F_x * F_xy * F_y^-2 - F_x^2 * F_yy * F_y^-3");

    const auto three = implicit_formula(3);
    ASSERT_EQ(three.layers.size(), 5u);
    for (int k = 1; k <= 5; ++k) {
        EXPECT_EQ(three.layers[static_cast<std::size_t>(k - 1)], i_enum(3, k));
    }
    EXPECT_THROW(implicit_formula(0), InvalidArgument);
}

TEST(InverseViaImplicit, SmallOrders)
{
    for (int n = 1; n <= 3; ++n) {
        EXPECT_EQ(inverse_via_implicit(n), inverse_formula(n)) << n;
    }
    EXPECT_EQ(render_text(inverse_via_implicit(1)), "[f'(t)]^-1");
    EXPECT_EQ(render_text(inverse_via_implicit(2)), "- f''(t)*[f'(t)]^-3");
    EXPECT_EQ(render_text(inverse_via_implicit(3)), "- f'''(t)*[f'(t)]^-4 + 3*[f''(t)]^2*[f'(t)]^-5");
}

TEST(Properties, EnumerationEqualsRecurrence)
{
    const ImplicitRecurrence table(5);
    for (int n = 1; n <= 5; ++n) {
        for (int k = 0; k <= 2 * n + 1; ++k) {
            const auto r = k < 1 || k > 2 * n - 1 ? empty_implicit_layer(k) : table.layer(n, k);
            EXPECT_EQ(i_enum(n, k), r) << n << "," << k;
        }
    }
}

TEST(Properties, CoefficientSumsCountPartitions)
{
    const ImplicitRecurrence table(8);
    for (int n = 1; n <= 8; ++n) {
        for (int k = 1; k <= 2 * n - 1; ++k) {
            EXPECT_EQ(table.layer(n, k).coefficient_sum(), count_implicit_partitions(n, k)) << n << "," << k;
        }
        EXPECT_EQ(count_implicit_partitions(n, 2 * n), 0);
    }
}

TEST(Properties, LayerShape)
{
    const ImplicitRecurrence table(7);
    for (int n = 1; n <= 7; ++n) {
        for (int k = 1; k <= 2 * n - 1; ++k) {
            const auto l = table.layer(n, k);
            EXPECT_FALSE(l.is_zero());
            EXPECT_NO_THROW(check_implicit_layer(n, l));
            for (const auto& m : l.monomials) {
                EXPECT_GT(m.coeff, 0);
            }
        }
        EXPECT_TRUE(i_recur(n, 0).is_zero());
        EXPECT_TRUE(i_recur(n, 2 * n).is_zero());
        EXPECT_NO_THROW(validate(implicit_formula(n)));
    }
}

TEST(Properties, ExtremeLayers)
{
    const ImplicitRecurrence table(8);
    for (int n = 1; n <= 8; ++n) {
        EXPECT_EQ(table.layer(n, 1), layer(1, {im(1, {Partial{n, 0}})}));
        std::vector<Partial> fs(static_cast<std::size_t>(n), Fx);
        fs.insert(fs.end(), static_cast<std::size_t>(n - 1), Fyy);
        const auto expected = layer(2 * n - 1, {ImplicitMonomial(double_factorial(2 * n - 3), fs)});
        EXPECT_EQ(table.layer(n, 2 * n - 1), expected) << n;
        if (n <= 5) {
            EXPECT_EQ(i_enum(n, 2 * n - 1), expected) << n;
        }
    }
}

TEST(Properties, InverseConsistency)
{
    for (int n = 1; n <= 6; ++n) {
        EXPECT_EQ(inverse_via_implicit(n), inverse_formula(n)) << n;
        EXPECT_EQ(inverse_via_implicit(n, Method::enumeration), inverse_formula(n, Method::enumeration)) << n;
    }
}
