#include "brute_force.hpp"

#include <nthderiv/partitions.hpp>

#include <gtest/gtest.h>

using namespace nthderiv;
using nthderiv::brute::brute_force_implicit;
using nthderiv::brute::brute_force_parametric;

namespace {

std::vector<std::string> strings(const std::vector<SetPartition>& ps)
{
    std::vector<std::string> out;
    for (const auto& p : ps) {
        out.push_back(p.to_string());
    }
    return out;
}

} // namespace

TEST(SetPartition, CanonicalBlockOrder)
{
    const SetPartition p(5, {{4, 2}, {5}, {3, 1}});
    EXPECT_EQ(p.to_string(), "{1,3},{2,4},{5}");
    EXPECT_EQ(p.rgs(), (std::vector<int>{0, 1, 0, 1, 2}));
    EXPECT_EQ(SetPartition::from_rgs(p.rgs()), p);
}

TEST(SetPartition, RejectsBrokenCovers)
{
    EXPECT_THROW(SetPartition(3, {{1, 2}, {}}), InvalidArgument);
    EXPECT_THROW(SetPartition(3, {{1, 2}, {2, 3}}), InvalidArgument);
    EXPECT_THROW(SetPartition(3, {{1, 2}}), InvalidArgument);
    EXPECT_THROW(SetPartition(3, {{1, 2}, {3, 4}}), InvalidArgument);
    EXPECT_THROW(SetPartition(0, {}), InvalidArgument);
    const std::vector<int> bad_rgs{0, 2, 1};
    EXPECT_THROW(SetPartition::from_rgs(bad_rgs), InvalidArgument);
}

TEST(ParametricPartitions, ThreeOne)
{
    EXPECT_EQ(strings(enumerate_parametric_partitions(3, 1)),
              (std::vector<std::string>{"{1,2},{3,4}", "{1,3},{2,4}", "{1,4},{2,3}", "{1},{2,3,4}"}));
}

TEST(ParametricPartitions, SingleBlockAtKZero)
{
    for (int n = 1; n <= 6; ++n) {
        const auto ps = enumerate_parametric_partitions(n, 0);
        ASSERT_EQ(ps.size(), 1u);
        EXPECT_EQ(ps[0].block_count(), 1);
        EXPECT_EQ(ps[0].ground_size(), n);
    }
}

TEST(ParametricPartitions, FourThreeIsSingletonPlusDoubletons)
{
    const auto ps = enumerate_parametric_partitions(4, 3);
    ASSERT_EQ(ps.size(), 15u);
    for (const auto& p : ps) {
        EXPECT_EQ(p.blocks()[0], (std::vector<int>{1}));
        for (std::size_t b = 1; b < p.blocks().size(); ++b) {
            EXPECT_EQ(p.blocks()[b].size(), 2u);
        }
    }
}

TEST(ImplicitPartitions, KnownCases)
{
    EXPECT_EQ(strings(enumerate_implicit_partitions(2, 3)), (std::vector<std::string>{"{1},{2},{3,4}"}));
    for (int n = 1; n <= 5; ++n) {
        const auto ps = enumerate_implicit_partitions(n, 1);
        ASSERT_EQ(ps.size(), 1u);
        EXPECT_EQ(ps[0].block_count(), 1);
        EXPECT_EQ(ps[0].ground_size(), n);
    }
    const auto five = enumerate_implicit_partitions(3, 5);
    ASSERT_EQ(five.size(), 3u);
    for (const auto& p : five) {
        EXPECT_EQ(p.blocks()[0], (std::vector<int>{1}));
        EXPECT_EQ(p.blocks()[1], (std::vector<int>{2}));
        EXPECT_EQ(p.blocks()[2], (std::vector<int>{3}));
        EXPECT_EQ(p.blocks()[3].size(), 2u);
        EXPECT_EQ(p.blocks()[4].size(), 2u);
    }
}

TEST(Counting, FixedValues)
{
    EXPECT_EQ(count_parametric_partitions(4, 2), 25);
    for (int n = 1; n <= 10; ++n) {
        EXPECT_EQ(count_parametric_partitions(n, 0), 1);
    }
    // frozen from the brute-force enumeration oracle
    EXPECT_EQ(count_parametric_partitions(6, 3), 1750);
    EXPECT_EQ(count_implicit_partitions(3, 4), 10);
    EXPECT_EQ(count_implicit_partitions(2, 4), 0);
    EXPECT_EQ(count_implicit_partitions(4, 3), 61);
}

TEST(Counting, NoSingletonNumbers)
{
    const auto b = no_singleton_table(8);
    EXPECT_EQ(b[4][2], 3);
    EXPECT_EQ(b[6][3], 15);
    EXPECT_EQ(b[6][2], 25);
    EXPECT_EQ(b[5][1], 1);
    EXPECT_EQ(b[1][1], 0);
}

TEST(Counting, StirlingWhenEverythingMayBeAlone)
{
    const int s[8][8] = {
        {1},
        {0, 1},
        {0, 1, 1},
        {0, 1, 3, 1},
        {0, 1, 7, 6, 1},
        {0, 1, 15, 25, 10, 1},
        {0, 1, 31, 90, 65, 15, 1},
        {0, 1, 63, 301, 350, 140, 21, 1},
    };
    const int bell[8] = {1, 1, 2, 5, 15, 52, 203, 877};
    for (int m = 0; m < 8; ++m) {
        Integer total = 0;
        for (int j = 0; j <= m; ++j) {
            EXPECT_EQ(stirling2(m, j), s[m][j]) << m << "," << j;
            total += count_restricted_partitions(m, j, m);
        }
        EXPECT_EQ(total, bell[m]) << m;
    }
}

TEST(Counting, CountsAreExactBeyondSixtyFourBits)
{
    // P_{n,n-1} counts are (2n-3)!!; 57!! does not fit in 128 bits
    EXPECT_EQ(count_parametric_partitions(30, 29), double_factorial(57));
    EXPECT_GT(count_parametric_partitions(30, 29), Integer(1) << 128);
}

TEST(Counting, RejectsZeroOrder)
{
    EXPECT_THROW(count_parametric_partitions(0, 0), InvalidArgument);
    EXPECT_THROW(count_implicit_partitions(0, 1), InvalidArgument);
    EXPECT_THROW(enumerate_parametric_partitions(0, 0), InvalidArgument);
}

TEST(Properties, ParametricMatchesBruteForceAndCount)
{
    for (int n = 1; n <= 7; ++n) {
        for (int k = -1; k <= n + 1; ++k) {
            const auto ps = enumerate_parametric_partitions(n, k);
            EXPECT_EQ(Integer(ps.size()), count_parametric_partitions(n, k)) << n << "," << k;
            EXPECT_EQ(ps.empty(), k < 0 || k > n - 1) << n << "," << k;
            for (const auto& p : ps) {
                EXPECT_EQ(p.ground_size(), k + n);
                EXPECT_EQ(p.block_count(), k + 1);
                EXPECT_TRUE(is_parametric_partition(p));
            }
            if (k + n <= 9) {
                EXPECT_EQ(ps, brute_force_parametric(n, k)) << n << "," << k;
            }
        }
    }
}

TEST(Properties, ImplicitMatchesBruteForceAndCount)
{
    for (int n = 1; n <= 6; ++n) {
        for (int k = 0; k <= 2 * n + 1; ++k) {
            const auto ps = enumerate_implicit_partitions(n, k);
            EXPECT_EQ(Integer(ps.size()), count_implicit_partitions(n, k)) << n << "," << k;
            EXPECT_EQ(ps.empty(), k < 1 || k > 2 * n - 1) << n << "," << k;
            for (const auto& p : ps) {
                EXPECT_EQ(p.ground_size(), n + k - 1);
                EXPECT_EQ(p.block_count(), k);
                EXPECT_TRUE(is_implicit_partition(p, RoleSplit{n}));
            }
            if (n + k - 1 <= 9) {
                EXPECT_EQ(ps, brute_force_implicit(n, k)) << n << "," << k;
            }
        }
    }
}

TEST(Properties, OutputIsInRgsOrder)
{
    const auto ps = enumerate_implicit_partitions(4, 4);
    for (std::size_t i = 1; i < ps.size(); ++i) {
        EXPECT_LT(ps[i - 1].rgs(), ps[i].rgs());
    }
}
