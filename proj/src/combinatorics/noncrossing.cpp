#include "redlab/combinatorics.hpp"

#include "redlab/error.hpp"

#include <algorithm>

namespace redlab::combinatorics {

namespace {

void normalise(std::vector<std::vector<std::size_t>>& blocks)
{
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
    }
    std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

// Block index of every point, or throws if the blocks are not a partition.
std::vector<std::size_t> block_labels(std::size_t p, const std::vector<std::vector<std::size_t>>& blocks)
{
    constexpr auto unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> label(p, unset);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (blocks[b].empty()) {
            throw InvalidArgument("partition blocks must be nonempty");
        }
        for (auto i : blocks[b]) {
            if (i < 1 || i > p || label[i - 1] != unset) {
                throw InvalidArgument("blocks are not disjoint subsets of [p]");
            }
            label[i - 1] = b;
        }
    }
    if (std::find(label.begin(), label.end(), unset) != label.end()) {
        throw InvalidArgument("blocks do not cover [p]");
    }
    return label;
}

// Scan left to right with a stack of open blocks: a point may only extend
// the block on top of the stack after every block above it has finished.
bool crosses(const std::vector<std::size_t>& label, const std::vector<std::vector<std::size_t>>& blocks)
{
    std::vector<std::size_t> remaining(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        remaining[b] = blocks[b].size();
    }
    std::vector<std::size_t> open;
    for (auto b : label) {
        if (!open.empty() && open.back() == b) {
            // continue the innermost block
        } else if (std::find(open.begin(), open.end(), b) != open.end()) {
            return true;
        } else {
            open.push_back(b);
        }
        if (--remaining[b] == 0) {
            open.pop_back();
        }
    }
    return false;
}

void enumerate_step(std::size_t j, std::size_t p, std::vector<std::vector<std::size_t>>& blocks,
                    std::vector<std::size_t>& open, std::vector<NonCrossingPartition>& out,
                    const auto& make)
{
    if (j == p) {
        out.push_back(make(blocks));
        return;
    }
    blocks.push_back({j + 1});
    open.push_back(blocks.size() - 1);
    enumerate_step(j + 1, p, blocks, open, out, make);
    open.pop_back();
    blocks.pop_back();

    const auto saved = open;
    for (std::size_t d = saved.size(); d-- > 0;) {
        open.resize(d + 1);
        blocks[open[d]].push_back(j + 1);
        enumerate_step(j + 1, p, blocks, open, out, make);
        blocks[open[d]].pop_back();
        open = saved;
    }
}

} // namespace

void check_nc_order(std::size_t p, std::size_t cap)
{
    if (p == 0) {
        throw InvalidArgument("NC(p) needs p >= 1");
    }
    if (p > cap || p > 64) {
        throw CapExceeded("NC(" + std::to_string(p) + ") exceeds the enumeration cap of "
                          + std::to_string(std::min<std::size_t>(cap, 64)));
    }
}

NonCrossingPartition::NonCrossingPartition(std::size_t p, std::vector<std::vector<std::size_t>> blocks)
    : size_(p), blocks_(std::move(blocks))
{
    if (p == 0) {
        throw InvalidArgument("partition of [p] needs p >= 1");
    }
    const auto label = block_labels(p, blocks_);
    if (crosses(label, blocks_)) {
        throw InvalidArgument("partition is crossing");
    }
    normalise(blocks_);
}

std::vector<NonCrossingPartition> enumerate_nc_partitions(std::size_t p, std::size_t cap)
{
    check_nc_order(p, cap);
    std::vector<NonCrossingPartition> out;
    out.reserve(catalan(p));
    std::vector<std::vector<std::size_t>> blocks;
    std::vector<std::size_t> open;
    auto make = [p](std::vector<std::vector<std::size_t>> b) {
        normalise(b);
        return NonCrossingPartition(NonCrossingPartition::Trusted{}, p, std::move(b));
    };
    enumerate_step(0, p, blocks, open, out, make);
    return out;
}

Permutation nc_to_permutation(const NonCrossingPartition& pi)
{
    // Within a sorted block b_1 < ... < b_m, walking i -> i-1 -> ... reaches
    // b_{j-1} first from b_j, and wraps from b_1 to b_m.
    std::vector<std::size_t> images(pi.size());
    for (const auto& b : pi.blocks()) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            images[b[j] - 1] = b[(j + b.size() - 1) % b.size()];
        }
    }
    return Permutation::from_images(images);
}

NonCrossingPartition permutation_to_nc(const Permutation& perm)
{
    return NonCrossingPartition(perm.size(), perm.cycles());
}

} // namespace redlab::combinatorics
