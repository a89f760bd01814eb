#include "redlab/combinatorics.hpp"

#include "redlab/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace redlab::combinatorics {

Permutation Permutation::identity(std::size_t p)
{
    if (p == 0) {
        throw InvalidArgument("permutation size must be positive");
    }
    std::vector<std::uint32_t> images(p);
    std::iota(images.begin(), images.end(), 0u);
    return Permutation(std::move(images));
}

Permutation Permutation::full_cycle(std::size_t p)
{
    if (p == 0) {
        throw InvalidArgument("permutation size must be positive");
    }
    std::vector<std::uint32_t> images(p);
    for (std::size_t i = 0; i < p; ++i) {
        images[i] = static_cast<std::uint32_t>((i + p - 1) % p);
    }
    return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::span<const std::size_t> images)
{
    const std::size_t p = images.size();
    if (p == 0) {
        throw InvalidArgument("permutation size must be positive");
    }
    std::vector<std::uint32_t> zero_based(p);
    std::vector<bool> hit(p, false);
    for (std::size_t i = 0; i < p; ++i) {
        if (images[i] < 1 || images[i] > p || hit[images[i] - 1]) {
            throw InvalidArgument("images do not form a bijection of [p]");
        }
        hit[images[i] - 1] = true;
        zero_based[i] = static_cast<std::uint32_t>(images[i] - 1);
    }
    return Permutation(std::move(zero_based));
}

Permutation Permutation::from_cycles(std::size_t p, const std::vector<Cycle>& cycles)
{
    auto result = identity(p);
    std::vector<bool> seen(p, false);
    for (const auto& cycle : cycles) {
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            const std::size_t from = cycle[j];
            const std::size_t to = cycle[(j + 1) % cycle.size()];
            if (from < 1 || from > p || to < 1 || to > p || seen[from - 1]) {
                throw InvalidArgument("cycles are not disjoint subsets of [p]");
            }
            seen[from - 1] = true;
            result.images_[from - 1] = static_cast<std::uint32_t>(to - 1);
        }
    }
    return result;
}

Permutation Permutation::inverse() const
{
    std::vector<std::uint32_t> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) {
        inv[images_[i]] = static_cast<std::uint32_t>(i);
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& rhs) const
{
    if (rhs.size() != size()) {
        throw InvalidArgument("cannot compose permutations of different sizes");
    }
    std::vector<std::uint32_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = images_[rhs.images_[i]];
    }
    return Permutation(std::move(out));
}

std::size_t Permutation::cycle_count() const
{
    std::vector<bool> seen(size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < size(); ++i) {
        if (seen[i]) {
            continue;
        }
        ++count;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
        }
    }
    return count;
}

std::vector<Cycle> Permutation::cycles() const
{
    std::vector<Cycle> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t i = 0; i < size(); ++i) {
        if (seen[i]) {
            continue;
        }
        Cycle cycle;
        for (std::size_t j = i; !seen[j]; j = images_[j]) {
            seen[j] = true;
            cycle.push_back(j + 1);
        }
        out.push_back(std::move(cycle));
    }
    return out;
}

std::string Permutation::to_string() const
{
    std::ostringstream os;
    auto all = cycles();
    std::stable_partition(all.begin(), all.end(), [](const Cycle& c) { return c.size() == 1; });
    for (const auto& cycle : all) {
        auto start = std::max_element(cycle.begin(), cycle.end());
        os << '(';
        for (std::size_t j = 0; j < cycle.size(); ++j) {
            if (j) {
                os << ' ';
            }
            auto offset = static_cast<std::size_t>(start - cycle.begin());
            os << cycle[(offset + j) % cycle.size()];
        }
        os << ')';
    }
    return os.str();
}

std::size_t cycle_count(const Permutation& perm)
{
    return perm.cycle_count();
}

bool is_geodesic(const Permutation& perm)
{
    const std::size_t p = perm.size();
    const auto complement = perm.inverse() * Permutation::full_cycle(p);
    return perm.length() + complement.length() == p - 1;
}

std::uint64_t factorial(std::size_t p)
{
    if (p > 20) {
        throw CapExceeded("factorial overflows 64 bits beyond p = 20");
    }
    std::uint64_t out = 1;
    for (std::size_t i = 2; i <= p; ++i) {
        out *= i;
    }
    return out;
}

std::uint64_t catalan(std::size_t p)
{
    if (p > 33) {
        throw CapExceeded("Catalan number overflows 64 bits beyond p = 33");
    }
    // C_{i+1} = C_i * 2(2i+1) / (i+2), exact at every step.
    unsigned __int128 c = 1;
    for (std::size_t i = 0; i < p; ++i) {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    return static_cast<std::uint64_t>(c);
}

Permutation unrank_permutation(std::size_t p, std::uint64_t rank)
{
    if (p == 0 || rank >= factorial(p)) {
        throw InvalidArgument("rank out of range for S_p");
    }
    std::vector<std::size_t> pool(p);
    std::iota(pool.begin(), pool.end(), std::size_t{1});
    std::vector<std::size_t> images;
    images.reserve(p);
    for (std::size_t i = p; i-- > 0;) {
        const std::uint64_t block = factorial(i);
        const auto pick = static_cast<std::size_t>(rank / block);
        rank %= block;
        images.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return Permutation::from_images(images);
}

} // namespace redlab::combinatorics
