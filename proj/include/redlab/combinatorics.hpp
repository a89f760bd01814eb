#pragma once

/**
 * @file combinatorics.hpp
 * @brief Permutations of [p], non-crossing partitions and choice permutations.
 *
 * Everything here uses 1-based semantics at the interface: a permutation of
 * size p acts on {1, ..., p}, cycles and blocks are listed with 1-based
 * labels. Storage is 0-based.
 *
 * Composition follows the usual convention (a * b)(i) = a(b(i)). The full
 * cycle gamma_p = (p ... 2 1) sends i to i - 1 (and 1 to p).
 */

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redlab::combinatorics {

using Cycle = std::vector<std::size_t>;

class Permutation {
public:
    /// Identity of S_1.
    Permutation() : images_{0} {}

    static Permutation identity(std::size_t p);
    /// gamma_p = (p ... 2 1), i.e. i -> i - 1 modulo p.
    static Permutation full_cycle(std::size_t p);
    /// One-line notation with 1-based images; throws InvalidArgument unless
    /// the images form a bijection of [p].
    static Permutation from_images(std::span<const std::size_t> images);
    /// Builds a permutation of [p] from disjoint 1-based cycles; elements
    /// not mentioned are fixed points.
    static Permutation from_cycles(std::size_t p, const std::vector<Cycle>& cycles);

    std::size_t size() const { return images_.size(); }

    /// Image of the 1-based point i.
    std::size_t operator()(std::size_t i) const { return images_[i - 1] + 1; }

    /// 0-based image array.
    std::span<const std::uint32_t> images0() const { return images_; }

    Permutation inverse() const;
    /// (*this * rhs)(i) = (*this)(rhs(i)); sizes must agree.
    Permutation operator*(const Permutation& rhs) const;

    /// Number of cycles, fixed points included.
    std::size_t cycle_count() const;
    /// Minimal number of transpositions, p - cycle_count().
    std::size_t length() const { return size() - cycle_count(); }

    /// Cycles with 1-based labels; each cycle starts at its smallest element
    /// and cycles are ordered by that element.
    std::vector<Cycle> cycles() const;
    /// Cycle notation such as "(1)(2)(4)(6 5 3)": fixed points first, then the
    /// longer cycles by smallest element, each written from its largest
    /// element to match the (p ... 2 1) convention.
    std::string to_string() const;

    bool operator==(const Permutation&) const = default;

private:
    explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {}

    std::vector<std::uint32_t> images_;
};

std::size_t cycle_count(const Permutation& perm);

/// True iff |alpha| + |alpha^{-1} gamma| = p - 1.
bool is_geodesic(const Permutation& perm);

/// The permutation of rank `rank` (lexicographic order of one-line notation)
/// in S_p. Used to split S_p into contiguous ranges for parallel sweeps.
Permutation unrank_permutation(std::size_t p, std::uint64_t rank);

std::uint64_t factorial(std::size_t p);

/// Catalan number C_p, computed with the exact product formula.
std::uint64_t catalan(std::size_t p);

/// A map f : [p] -> {1, 2}.
class ChoiceFunction {
public:
    /// Validates that every value is 1 or 2 and that p >= 1.
    explicit ChoiceFunction(std::vector<std::uint8_t> values);

    /// Element of F_p encoded by the bits of `mask`: bit i set means f(i+1) = 2.
    static ChoiceFunction from_mask(std::size_t p, std::uint64_t mask);

    std::size_t size() const { return values_.size(); }
    /// f(i) for 1-based i.
    std::uint8_t operator()(std::size_t i) const { return values_[i - 1]; }
    std::span<const std::uint8_t> values() const { return values_; }

    std::size_t ones_count() const;
    std::size_t twos_count() const { return size() - ones_count(); }
    bool all_ones() const { return ones_count() == size(); }

    /// True iff f is identically 1 on the given 1-based points.
    bool all_ones_on(std::span<const std::size_t> points) const;

    bool operator==(const ChoiceFunction&) const = default;

private:
    std::vector<std::uint8_t> values_;
};

/// P_f: identity on f^{-1}(1) and, on f^{-1}(2), each point goes to the
/// previous point of f^{-1}(2) walking down cyclically through [p]. A lone
/// point of f^{-1}(2) is fixed.
Permutation build_choice_permutation(const ChoiceFunction& f);

struct ChoiceCycleCounts {
    std::size_t choice_cycles;          ///< #P_f
    std::size_t complement_cycles;      ///< #(P_f^{-1} gamma)
};

/// Closed forms #P_f = |f^{-1}(1)| + 1 - 1_{f=1} and
/// #(P_f^{-1} gamma) = p - |f^{-1}(1)| + 1_{f=1}.
ChoiceCycleCounts pf_cycle_counts(const ChoiceFunction& f);

/// Right-hand side of the cycle-count formula for #(P_f^{-1} alpha):
///   p - |f^{-1}(1)| + 2 * sum_{b in alpha} 1_{f_b = 1} + 1 - #alpha - 1_{f = 1}.
/// No geodesic check; the value is meaningless for non-geodesic alpha.
long pf_inverse_alpha_formula(const ChoiceFunction& f, const Permutation& alpha);

/// #(P_f^{-1} alpha) via the closed formula. Throws NonGeodesicError when
/// alpha is not geodesic, since the formula does not hold there.
std::size_t pf_inverse_alpha_cycles(const ChoiceFunction& f, const Permutation& alpha);

/// A non-crossing partition of [p]. Blocks are stored sorted ascending and
/// ordered by their smallest element.
class NonCrossingPartition {
public:
    /// Throws InvalidArgument if the blocks do not partition [p] or cross.
    NonCrossingPartition(std::size_t p, std::vector<std::vector<std::size_t>> blocks);

    std::size_t size() const { return size_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }

    bool operator==(const NonCrossingPartition&) const = default;

private:
    struct Trusted {};
    NonCrossingPartition(Trusted, std::size_t p, std::vector<std::vector<std::size_t>> blocks)
        : size_(p), blocks_(std::move(blocks)) {}

    friend std::vector<NonCrossingPartition> enumerate_nc_partitions(std::size_t, std::size_t);

    std::size_t size_;
    std::vector<std::vector<std::size_t>> blocks_;
};

inline constexpr std::size_t kDefaultNcCap = 16;
inline constexpr std::size_t kDefaultSymmetricCap = 8;

/// Throws InvalidArgument for p == 0 and CapExceeded for p > cap.
void check_nc_order(std::size_t p, std::size_t cap);

/// All of NC(p), each exactly once, in a deterministic order.
/// Throws CapExceeded when p > cap and InvalidArgument when p == 0.
std::vector<NonCrossingPartition> enumerate_nc_partitions(std::size_t p, std::size_t cap = kDefaultNcCap);

namespace detail {

// Elements are added left to right. Open blocks live on a stack; joining
// block stack[d] closes everything above it (those blocks are nested inside
// and can never grow again without crossing).
template <class Visit>
void nc_sizes_step(std::size_t j, std::size_t p, std::vector<std::size_t>& sizes,
                   std::vector<std::size_t>& open, Visit& visit)
{
    if (j == p) {
        visit(std::span<const std::size_t>(sizes));
        return;
    }
    sizes.push_back(1);
    open.push_back(sizes.size() - 1);
    nc_sizes_step(j + 1, p, sizes, open, visit);
    open.pop_back();
    sizes.pop_back();

    std::array<std::size_t, 64> saved;
    const std::size_t depth = open.size();
    std::copy(open.begin(), open.end(), saved.begin());
    for (std::size_t d = depth; d-- > 0;) {
        open.resize(d + 1);
        ++sizes[open[d]];
        nc_sizes_step(j + 1, p, sizes, open, visit);
        --sizes[open[d]];
        open.assign(saved.begin(), saved.begin() + static_cast<std::ptrdiff_t>(depth));
    }
}

} // namespace detail

/// Calls `visit(block_sizes)` once for every partition in NC(p) without
/// materialising the blocks; only block sizes are reported. Same cap rules
/// as enumerate_nc_partitions.
template <class Visit>
void for_each_nc_block_sizes(std::size_t p, Visit&& visit, std::size_t cap = kDefaultNcCap)
{
    check_nc_order(p, cap);
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> open;
    sizes.reserve(p);
    open.reserve(p);
    detail::nc_sizes_step(0, p, sizes, open, visit);
}

/// t(pi): each i goes to the first of gamma(i), gamma^2(i), ... lying in the
/// same block. Cycle count equals block count.
Permutation nc_to_permutation(const NonCrossingPartition& pi);

/// Set partition of [p] given by the cycles of a permutation; throws
/// InvalidArgument when that partition crosses.
NonCrossingPartition permutation_to_nc(const Permutation& perm);

} // namespace redlab::combinatorics
