#pragma once

// Restricted set partitions of {1, ..., m}.
//
// Two classes index the derivative coefficients:
//  - parametric (n, k): partitions of {1..k+n} into k+1 blocks where only {1}
//    may be a singleton;
//  - implicit (n, k): partitions of {1..n+k-1} into k blocks where the large
//    elements n+1..n+k-1 may not be singletons.
// Both are the special case "only the first s elements may be singletons" of
// one generator, which walks restricted growth strings in lexicographic order.

#include "errors.hpp"
#include "integer.hpp"

#include <algorithm>
#include <compare>
#include <span>
#include <string>
#include <vector>

namespace nthderiv {

/// A set partition of {1, ..., ground_size}. Blocks are kept sorted by their
/// minimum element and each block is ascending.
class SetPartition {
public:
    using Block = std::vector<int>;

    SetPartition(int ground_size, std::vector<Block> blocks)
        : ground_size_(ground_size), blocks_(std::move(blocks))
    {
        if (ground_size_ < 1) {
            throw InvalidArgument("set partition needs a positive ground size");
        }
        std::vector<char> seen(static_cast<std::size_t>(ground_size_) + 1, 0);
        for (auto& block : blocks_) {
            if (block.empty()) {
                throw InvalidArgument("set partition has an empty block");
            }
            for (int e : block) {
                if (e < 1 || e > ground_size_ || seen[static_cast<std::size_t>(e)]) {
                    throw InvalidArgument("set partition blocks are not a disjoint cover");
                }
                seen[static_cast<std::size_t>(e)] = 1;
            }
            std::sort(block.begin(), block.end());
        }
        if (std::count(seen.begin() + 1, seen.end(), 1) != ground_size_) {
            throw InvalidArgument("set partition blocks do not cover the ground set");
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const Block& a, const Block& b) { return a.front() < b.front(); });
    }

    /// Builds the partition encoded by a restricted growth string (0-based
    /// block index of element i+1 at position i).
    static SetPartition from_rgs(std::span<const int> rgs)
    {
        std::vector<Block> blocks;
        for (std::size_t i = 0; i < rgs.size(); ++i) {
            const auto b = static_cast<std::size_t>(rgs[i]);
            if (b > blocks.size()) {
                throw InvalidArgument("not a restricted growth string");
            }
            if (b == blocks.size()) {
                blocks.emplace_back();
            }
            blocks[b].push_back(static_cast<int>(i) + 1);
        }
        return SetPartition(static_cast<int>(rgs.size()), std::move(blocks));
    }

    int ground_size() const noexcept { return ground_size_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    int block_count() const noexcept { return static_cast<int>(blocks_.size()); }

    std::vector<int> rgs() const
    {
        std::vector<int> out(static_cast<std::size_t>(ground_size_));
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            for (int e : blocks_[b]) {
                out[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
            }
        }
        return out;
    }

    const Block& block_of(int element) const
    {
        for (const auto& block : blocks_) {
            if (std::binary_search(block.begin(), block.end(), element)) {
                return block;
            }
        }
        throw InvalidArgument("element " + std::to_string(element) + " is not in the ground set");
    }

    std::string to_string() const
    {
        std::string s;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (b) {
                s += ',';
            }
            s += '{';
            for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
                if (i) {
                    s += ',';
                }
                s += std::to_string(blocks_[b][i]);
            }
            s += '}';
        }
        return s;
    }

    friend bool operator==(const SetPartition&, const SetPartition&) = default;
    friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

private:
    int ground_size_;
    std::vector<Block> blocks_;
};

/// Elements 1..small_count are small; the rest of the ground set is large.
struct RoleSplit {
    int small_count = 0;

    bool is_small(int element) const noexcept { return element <= small_count; }
};

/// True when every singleton block of `p` holds an element <= singleton_limit.
inline bool singletons_within(const SetPartition& p, int singleton_limit)
{
    return std::ranges::all_of(p.blocks(), [&](const SetPartition::Block& b) {
        return b.size() > 1 || b.front() <= singleton_limit;
    });
}

inline bool is_parametric_partition(const SetPartition& p)
{
    return singletons_within(p, 1);
}

inline bool is_implicit_partition(const SetPartition& p, RoleSplit roles)
{
    return roles.small_count >= 0 && roles.small_count <= p.ground_size()
        && singletons_within(p, roles.small_count);
}

namespace detail {

// Depth-first walk over restricted growth strings of length m with exactly
// `blocks` distinct values, in lexicographic order, where only elements
// 1..singleton_limit may end up alone in a block.
template <typename Visitor>
class RgsWalker {
public:
    RgsWalker(int m, int blocks, int singleton_limit, Visitor& visit)
        : m_(m), blocks_(blocks), limit_(singleton_limit), visit_(visit),
          rgs_(static_cast<std::size_t>(m)), size_(static_cast<std::size_t>(blocks)),
          opener_(static_cast<std::size_t>(blocks))
    {
    }

    void run()
    {
        if (m_ < 1 || blocks_ < 1 || blocks_ > m_) {
            return;
        }
        rgs_[0] = 0;
        size_[0] = 1;
        opener_[0] = 0;
        used_ = 1;
        bad_ = limit_ >= 1 ? 0 : 1;
        step(1);
    }

private:
    bool bad_singleton(int block) const
    {
        return size_[static_cast<std::size_t>(block)] == 1
            && opener_[static_cast<std::size_t>(block)] >= limit_;
    }

    bool feasible(int placed) const
    {
        const int remaining = m_ - placed;
        const int need_new = blocks_ - used_;
        if (need_new < 0) {
            return false;
        }
        const int allowed_left = std::max(0, limit_ - placed);
        return remaining >= bad_ + need_new + std::max(0, need_new - allowed_left);
    }

    void step(int i)
    {
        if (!feasible(i)) {
            return;
        }
        if (i == m_) {
            visit_(std::span<const int>(rgs_));
            return;
        }
        const auto ui = static_cast<std::size_t>(i);
        for (int b = 0; b < used_; ++b) {
            const auto ub = static_cast<std::size_t>(b);
            const bool was_bad = bad_singleton(b);
            rgs_[ui] = b;
            ++size_[ub];
            bad_ -= was_bad ? 1 : 0;
            step(i + 1);
            bad_ += was_bad ? 1 : 0;
            --size_[ub];
        }
        if (used_ < blocks_) {
            const auto ub = static_cast<std::size_t>(used_);
            rgs_[ui] = used_;
            size_[ub] = 1;
            opener_[ub] = i;
            ++used_;
            const bool bad = bad_singleton(used_ - 1);
            bad_ += bad ? 1 : 0;
            step(i + 1);
            bad_ -= bad ? 1 : 0;
            --used_;
            size_[ub] = 0;
        }
    }

    int m_;
    int blocks_;
    int limit_;
    Visitor& visit_;
    std::vector<int> rgs_;
    std::vector<int> size_;
    std::vector<int> opener_;
    int used_ = 0;
    int bad_ = 0;
};

} // namespace detail

/// Calls visit(std::span<const int> rgs) for every partition of {1..m} into
/// `blocks` blocks in which only elements 1..singleton_limit may be singletons.
/// Visits in lexicographic order of the restricted growth string.
template <typename Visitor>
void for_each_restricted_partition(int m, int blocks, int singleton_limit, Visitor&& visit)
{
    detail::RgsWalker<std::remove_reference_t<Visitor>> walker(m, blocks, singleton_limit, visit);
    walker.run();
}

template <typename Visitor>
void for_each_parametric_partition(int n, int k, Visitor&& visit)
{
    if (n < 1) {
        throw InvalidArgument("parametric partitions need n >= 1");
    }
    if (k < 0 || k > n - 1) {
        return;
    }
    for_each_restricted_partition(k + n, k + 1, 1, std::forward<Visitor>(visit));
}

template <typename Visitor>
void for_each_implicit_partition(int n, int k, Visitor&& visit)
{
    if (n < 1) {
        throw InvalidArgument("implicit partitions need n >= 1");
    }
    if (k < 1 || k > 2 * n - 1) {
        return;
    }
    for_each_restricted_partition(n + k - 1, k, n, std::forward<Visitor>(visit));
}

inline std::vector<SetPartition> enumerate_parametric_partitions(int n, int k)
{
    std::vector<SetPartition> out;
    for_each_parametric_partition(n, k, [&](std::span<const int> rgs) {
        out.push_back(SetPartition::from_rgs(rgs));
    });
    return out;
}

inline std::vector<SetPartition> enumerate_implicit_partitions(int n, int k)
{
    std::vector<SetPartition> out;
    for_each_implicit_partition(n, k, [&](std::span<const int> rgs) {
        out.push_back(SetPartition::from_rgs(rgs));
    });
    return out;
}

// ---------------------------------------------------------------------------
// Counting without enumeration.

/// Partitions of m elements into j blocks with no singleton block
/// (associated Stirling numbers of the second kind):
///   b(m, j) = j*b(m-1, j) + (m-1)*b(m-2, j-1).
inline std::vector<std::vector<Integer>> no_singleton_table(int max_m)
{
    const auto size = static_cast<std::size_t>(std::max(max_m, 0)) + 1;
    std::vector<std::vector<Integer>> b(size, std::vector<Integer>(size, 0));
    b[0][0] = 1;
    for (std::size_t m = 1; m < size; ++m) {
        for (std::size_t j = 1; j <= m; ++j) {
            b[m][j] = Integer(j) * b[m - 1][j];
            if (m >= 2) {
                b[m][j] += Integer(m - 1) * b[m - 2][j - 1];
            }
        }
    }
    return b;
}

/// Partitions of m labelled elements into j blocks where only
/// `singleton_ok` designated elements may sit alone. Permitted elements are
/// placed first (Stirling recurrence); each forbidden element then joins a
/// block or opens one that some later forbidden element must join. The state
/// is (blocks, blocks that are a lone forbidden element).
inline Integer count_restricted_partitions(int m, int j, int singleton_ok)
{
    if (m < 0 || j < 0 || singleton_ok < 0 || singleton_ok > m) {
        throw InvalidArgument("count_restricted_partitions: bad arguments");
    }
    if (j > m) {
        return 0;
    }
    const auto width = static_cast<std::size_t>(j) + 1;
    // state[blocks][lonely]
    std::vector<std::vector<Integer>> state(width, std::vector<Integer>(width, 0));
    state[0][0] = 1;
    for (int e = 0; e < singleton_ok; ++e) {
        for (std::size_t blocks = width - 1;; --blocks) {
            Integer next = Integer(blocks) * state[blocks][0];
            if (blocks > 0) {
                next += state[blocks - 1][0];
            }
            state[blocks][0] = std::move(next);
            if (blocks == 0) {
                break;
            }
        }
    }
    for (int e = singleton_ok; e < m; ++e) {
        std::vector<std::vector<Integer>> next(width, std::vector<Integer>(width, 0));
        for (std::size_t blocks = 0; blocks < width; ++blocks) {
            for (std::size_t lonely = 0; lonely <= blocks; ++lonely) {
                const Integer& ways = state[blocks][lonely];
                if (ways == 0) {
                    continue;
                }
                next[blocks][lonely] += Integer(blocks - lonely) * ways;
                if (lonely > 0) {
                    next[blocks][lonely - 1] += Integer(lonely) * ways;
                }
                if (blocks + 1 < width) {
                    next[blocks + 1][lonely + 1] += ways;
                }
            }
        }
        state = std::move(next);
    }
    return state[static_cast<std::size_t>(j)][0];
}

inline Integer stirling2(int m, int j) { return count_restricted_partitions(m, j, m); }

/// Number of parametric (n, k) partitions, summed over the size s of the
/// block containing 1: C(k+n-1, s-1) * b(k+n-s, k).
inline Integer count_parametric_partitions(int n, int k)
{
    if (n < 1) {
        throw InvalidArgument("count_parametric_partitions needs n >= 1");
    }
    if (k < 0) {
        return 0;
    }
    const int m = k + n;
    const auto b = no_singleton_table(m);
    Integer total = 0;
    for (int s = 1; s <= m; ++s) {
        total += binomial(m - 1, s - 1) * b[static_cast<std::size_t>(m - s)][static_cast<std::size_t>(k)];
    }
    return total;
}

inline Integer count_implicit_partitions(int n, int k)
{
    if (n < 1) {
        throw InvalidArgument("count_implicit_partitions needs n >= 1");
    }
    if (k < 1) {
        return 0;
    }
    return count_restricted_partitions(n + k - 1, k, n);
}

} // namespace nthderiv
