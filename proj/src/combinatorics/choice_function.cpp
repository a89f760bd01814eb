#include "redlab/combinatorics.hpp"

#include "redlab/error.hpp"

#include <algorithm>

namespace redlab::combinatorics {

ChoiceFunction::ChoiceFunction(std::vector<std::uint8_t> values) : values_(std::move(values))
{
    if (values_.empty()) {
        throw InvalidArgument("choice function needs p >= 1");
    }
    for (auto v : values_) {
        if (v != 1 && v != 2) {
            throw InvalidArgument("choice function values must be 1 or 2");
        }
    }
}

ChoiceFunction ChoiceFunction::from_mask(std::size_t p, std::uint64_t mask)
{
    if (p == 0 || p > 63 || (mask >> p) != 0) {
        throw InvalidArgument("mask does not encode an element of F_p");
    }
    std::vector<std::uint8_t> values(p);
    for (std::size_t i = 0; i < p; ++i) {
        values[i] = ((mask >> i) & 1u) ? 2 : 1;
    }
    return ChoiceFunction(std::move(values));
}

std::size_t ChoiceFunction::ones_count() const
{
    return static_cast<std::size_t>(std::count(values_.begin(), values_.end(), std::uint8_t{1}));
}

bool ChoiceFunction::all_ones_on(std::span<const std::size_t> points) const
{
    return std::all_of(points.begin(), points.end(), [&](std::size_t i) { return values_.at(i - 1) == 1; });
}

Permutation build_choice_permutation(const ChoiceFunction& f)
{
    const std::size_t p = f.size();
    std::vector<std::size_t> images(p);
    const std::size_t twos = f.twos_count();
    for (std::size_t i = 1; i <= p; ++i) {
        if (f(i) == 1 || twos == 1) {
            images[i - 1] = i;
            continue;
        }
        // Smallest r >= 1 with f(i - r) = 2, where j <= 0 stands for p + j.
        std::size_t j = i;
        do {
            j = (j == 1) ? p : j - 1;
        } while (f(j) != 2);
        images[i - 1] = j;
    }
    return Permutation::from_images(images);
}

ChoiceCycleCounts pf_cycle_counts(const ChoiceFunction& f)
{
    const std::size_t p = f.size();
    const std::size_t ones = f.ones_count();
    const std::size_t all_one = f.all_ones() ? 1 : 0;
    return {ones + 1 - all_one, p - ones + all_one};
}

long pf_inverse_alpha_formula(const ChoiceFunction& f, const Permutation& alpha)
{
    if (alpha.size() != f.size()) {
        throw InvalidArgument("choice function and permutation sizes differ");
    }
    const auto cycles = alpha.cycles();
    long ones_blocks = 0;
    for (const auto& b : cycles) {
        ones_blocks += f.all_ones_on(b) ? 1 : 0;
    }
    const auto p = static_cast<long>(f.size());
    return p - static_cast<long>(f.ones_count()) + 2 * ones_blocks + 1 - static_cast<long>(cycles.size())
           - (f.all_ones() ? 1 : 0);
}

std::size_t pf_inverse_alpha_cycles(const ChoiceFunction& f, const Permutation& alpha)
{
    if (!is_geodesic(alpha)) {
        throw NonGeodesicError("cycle-count formula for P_f^{-1} alpha requires a geodesic alpha, got "
                               + alpha.to_string());
    }
    return static_cast<std::size_t>(pf_inverse_alpha_formula(f, alpha));
}

} // namespace redlab::combinatorics
