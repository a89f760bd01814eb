#include "redlab/combinatorics.hpp"
#include "redlab/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace redlab;
using namespace redlab::combinatorics;

namespace {

// Catalan numbers from C_{m+1} = sum C_i C_{m-i}.
std::vector<std::uint64_t> catalan_recurrence(std::size_t up_to)
{
    std::vector<std::uint64_t> c(up_to + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= up_to; ++m) {
        for (std::size_t i = 0; i < m; ++i) {
            c[m] += c[i] * c[m - 1 - i];
        }
    }
    return c;
}

// Cycle count straight from an image array, no library code involved.
std::size_t count_cycles(const std::vector<std::size_t>& img)
{
    std::vector<bool> seen(img.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = img[j]) {
            seen[j] = true;
        }
    }
    return cycles;
}

std::vector<std::size_t> images(const Permutation& perm)
{
    const auto s = perm.images0();
    return {s.begin(), s.end()};
}

// Set partitions via restricted growth strings, kept when no a < b < c < d
// has a, c in one block and b, d in another.
std::set<std::vector<std::vector<std::size_t>>> brute_force_nc(std::size_t p)
{
    std::set<std::vector<std::vector<std::size_t>>> out;
    std::vector<std::size_t> label(p, 0);
    while (true) {
        bool crossing = false;
        for (std::size_t a = 0; a < p && !crossing; ++a) {
            for (std::size_t b = a + 1; b < p && !crossing; ++b) {
                for (std::size_t c = b + 1; c < p && !crossing; ++c) {
                    for (std::size_t d = c + 1; d < p && !crossing; ++d) {
                        crossing = label[a] == label[c] && label[b] == label[d] && label[a] != label[b];
                    }
                }
            }
        }
        if (!crossing) {
            const std::size_t blocks = *std::max_element(label.begin(), label.end()) + 1;
            std::vector<std::vector<std::size_t>> partition(blocks);
            for (std::size_t i = 0; i < p; ++i) {
                partition[label[i]].push_back(i + 1);
            }
            out.insert(partition);
        }
        // next restricted growth string
        std::size_t i = p;
        while (i-- > 1) {
            const std::size_t bound = *std::max_element(label.begin(), label.begin() + static_cast<long>(i)) + 1;
            if (label[i] < bound) {
                ++label[i];
                std::fill(label.begin() + static_cast<long>(i) + 1, label.end(), 0);
                break;
            }
        }
        if (i == 0) {
            return out;
        }
    }
}

// P_f built from its definition with plain arrays: points with f = 2 are
// listed ascending and each maps to the previous one cyclically.
std::vector<std::size_t> choice_images(const std::vector<std::uint8_t>& f)
{
    std::vector<std::size_t> img(f.size());
    std::iota(img.begin(), img.end(), 0);
    std::vector<std::size_t> twos;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 2) {
            twos.push_back(i);
        }
    }
    for (std::size_t j = 0; j < twos.size(); ++j) {
        img[twos[j]] = twos[(j + twos.size() - 1) % twos.size()];
    }
    return img;
}

} // namespace

TEST_CASE("cycle counts of small permutations")
{
    CHECK(cycle_count(Permutation::identity(5)) == 5);
    CHECK(cycle_count(Permutation::full_cycle(4)) == 1);
    CHECK(cycle_count(Permutation::from_cycles(4, {{1, 3}, {2, 4}})) == 2);
}

TEST_CASE("full cycle sends i to i - 1")
{
    const auto g = Permutation::full_cycle(4);
    CHECK(g(1) == 4);
    CHECK(g(2) == 1);
    CHECK(g(4) == 3);
    CHECK(g.to_string() == "(4 3 2 1)");
}

TEST_CASE("composition applies the right factor first")
{
    const auto a = Permutation::from_cycles(3, {{1, 2}});
    const auto b = Permutation::from_cycles(3, {{2, 3}});
    const auto ab = a * b;
    CHECK(ab(2) == a(b(2)));
    CHECK(ab(3) == 1);
    CHECK(ab * ab.inverse() == Permutation::identity(3));
}

TEST_CASE("from_images rejects non-bijections")
{
    const std::vector<std::size_t> bad{1, 1, 3};
    CHECK_THROWS_AS(Permutation::from_images(bad), InvalidArgument);
    const std::vector<std::size_t> out_of_range{1, 4, 2};
    CHECK_THROWS_AS(Permutation::from_images(out_of_range), InvalidArgument);
}

TEST_CASE("geodesic examples")
{
    for (std::size_t p = 1; p <= 6; ++p) {
        CHECK(is_geodesic(Permutation::identity(p)));
        CHECK(is_geodesic(Permutation::full_cycle(p)));
    }
    CHECK_FALSE(is_geodesic(Permutation::from_cycles(4, {{1, 3}, {2, 4}})));
}

TEST_CASE("number of geodesic permutations equals the Catalan number")
{
    const auto cat = catalan_recurrence(7);
    for (std::size_t p = 1; p <= 7; ++p) {
        std::uint64_t count = 0;
        for (std::uint64_t r = 0; r < factorial(p); ++r) {
            const auto alpha = unrank_permutation(p, r);
            const auto img = images(alpha);
            const auto inv = images(alpha.inverse());
            // alpha^{-1} gamma with gamma(i) = i - 1
            std::vector<std::size_t> rest(p);
            for (std::size_t i = 0; i < p; ++i) {
                rest[i] = inv[(i + p - 1) % p];
            }
            if ((p - count_cycles(img)) + (p - count_cycles(rest)) == p - 1) {
                ++count;
            }
        }
        CHECK(count == cat[p]);
    }
}

TEST_CASE("unranking walks S_p in lexicographic order")
{
    for (std::size_t p = 1; p <= 6; ++p) {
        std::vector<std::size_t> one_line(p);
        std::iota(one_line.begin(), one_line.end(), 0);
        for (std::uint64_t r = 0; r < factorial(p); ++r) {
            CHECK(images(unrank_permutation(p, r)) == one_line);
            std::next_permutation(one_line.begin(), one_line.end());
        }
    }
}

TEST_CASE("catalan matches the recurrence")
{
    const auto cat = catalan_recurrence(16);
    for (std::size_t p = 0; p <= 16; ++p) {
        CHECK(catalan(p) == cat[p]);
    }
}

TEST_CASE("NC enumeration counts")
{
    CHECK(enumerate_nc_partitions(1).size() == 1);
    CHECK(enumerate_nc_partitions(3).size() == 5);
    CHECK(enumerate_nc_partitions(6).size() == catalan_recurrence(6)[6]);
}

TEST_CASE("NC enumeration agrees with brute force over all set partitions")
{
    for (std::size_t p = 1; p <= 8; ++p) {
        const auto expected = brute_force_nc(p);
        std::set<std::vector<std::vector<std::size_t>>> got;
        const auto all = enumerate_nc_partitions(p);
        for (const auto& pi : all) {
            got.insert(pi.blocks());
        }
        CHECK(got.size() == all.size());
        CHECK(got == expected);
    }
}

TEST_CASE("block-size visitor sees every NC partition once")
{
    for (std::size_t p = 1; p <= 10; ++p) {
        std::uint64_t visits = 0;
        std::size_t total = 0;
        for_each_nc_block_sizes(p, [&](std::span<const std::size_t> sizes) {
            ++visits;
            total += std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
        });
        CHECK(visits == catalan(p));
        CHECK(total == visits * p);
    }
}

TEST_CASE("NC enumeration caps")
{
    CHECK_THROWS_AS(enumerate_nc_partitions(0), InvalidArgument);
    CHECK_THROWS_AS(enumerate_nc_partitions(17), CapExceeded);
    CHECK_THROWS_AS(enumerate_nc_partitions(9, 8), CapExceeded);
}

TEST_CASE("NonCrossingPartition rejects crossings and non-partitions")
{
    CHECK_THROWS_AS(NonCrossingPartition(4, {{1, 3}, {2, 4}}), InvalidArgument);
    CHECK_THROWS_AS(NonCrossingPartition(3, {{1, 2}}), InvalidArgument);
    CHECK_THROWS_AS(NonCrossingPartition(3, {{1, 2}, {2, 3}}), InvalidArgument);
    CHECK_NOTHROW(NonCrossingPartition(4, {{1, 4}, {2, 3}}));
}

TEST_CASE("nc_to_permutation examples")
{
    CHECK(nc_to_permutation(NonCrossingPartition(4, {{1}, {2}, {3}, {4}})) == Permutation::identity(4));
    CHECK(nc_to_permutation(NonCrossingPartition(5, {{1, 2, 3, 4, 5}})) == Permutation::full_cycle(5));
    const auto t = nc_to_permutation(NonCrossingPartition(7, {{1}, {2}, {4}, {7}, {3, 5, 6}}));
    CHECK(t.to_string() == "(1)(2)(4)(7)(6 5 3)");
}

TEST_CASE("NC partitions and geodesic permutations round trip")
{
    for (std::size_t p = 1; p <= 8; ++p) {
        std::set<std::vector<std::size_t>> seen;
        for (const auto& pi : enumerate_nc_partitions(p)) {
            const auto t = nc_to_permutation(pi);
            CHECK(is_geodesic(t));
            CHECK(cycle_count(t) == pi.block_count());
            CHECK(permutation_to_nc(t) == pi);
            seen.insert(images(t));
        }
        CHECK(seen.size() == catalan(p));
    }
    CHECK_THROWS_AS(permutation_to_nc(Permutation::from_cycles(4, {{1, 3}, {2, 4}})), InvalidArgument);
}

TEST_CASE("ChoiceFunction validation")
{
    CHECK_THROWS_AS(ChoiceFunction(std::vector<std::uint8_t>{1, 3}), InvalidArgument);
    CHECK_THROWS_AS(ChoiceFunction(std::vector<std::uint8_t>{}), InvalidArgument);
    const auto f = ChoiceFunction::from_mask(4, 0b0101);
    CHECK(f == ChoiceFunction(std::vector<std::uint8_t>{2, 1, 2, 1}));
    CHECK(f.ones_count() == 2);
}

TEST_CASE("choice permutation examples")
{
    CHECK(build_choice_permutation(ChoiceFunction({2, 2})).to_string() == "(2 1)");
    CHECK(build_choice_permutation(ChoiceFunction({1, 1, 2, 1, 2, 2, 1})).to_string() == "(1)(2)(4)(7)(6 5 3)");
    CHECK(build_choice_permutation(ChoiceFunction({2, 2, 2, 2})) == Permutation::full_cycle(4));
    CHECK(build_choice_permutation(ChoiceFunction({1, 2, 1})) == Permutation::identity(3));
}

TEST_CASE("choice permutations match a direct construction")
{
    for (std::size_t p = 1; p <= 8; ++p) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
            const auto f = ChoiceFunction::from_mask(p, mask);
            const std::vector<std::uint8_t> values(f.values().begin(), f.values().end());
            CHECK(images(build_choice_permutation(f)) == choice_images(values));
        }
    }
}

TEST_CASE("pf_cycle_counts examples")
{
    auto counts = pf_cycle_counts(ChoiceFunction({1, 1, 1, 1, 1}));
    CHECK(counts.choice_cycles == 5);
    CHECK(counts.complement_cycles == 1);
    counts = pf_cycle_counts(ChoiceFunction({2, 2, 2, 2}));
    CHECK(counts.choice_cycles == 1);
    CHECK(counts.complement_cycles == 4);
    counts = pf_cycle_counts(ChoiceFunction({1, 1, 2, 1, 2, 2, 1}));
    CHECK(counts.choice_cycles == 5);
    CHECK(counts.complement_cycles == 3);
}

TEST_CASE("pf_cycle_counts agree with direct cycle counting")
{
    for (std::size_t p = 1; p <= 8; ++p) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
            const auto f = ChoiceFunction::from_mask(p, mask);
            const std::vector<std::uint8_t> values(f.values().begin(), f.values().end());
            const auto pf = choice_images(values);
            std::vector<std::size_t> pf_inv(p);
            for (std::size_t i = 0; i < p; ++i) {
                pf_inv[pf[i]] = i;
            }
            std::vector<std::size_t> rest(p);
            for (std::size_t i = 0; i < p; ++i) {
                rest[i] = pf_inv[(i + p - 1) % p];
            }
            const auto counts = pf_cycle_counts(f);
            CHECK(counts.choice_cycles == count_cycles(pf));
            CHECK(counts.complement_cycles == count_cycles(rest));
        }
    }
}

TEST_CASE("pf_inverse_alpha_cycles examples")
{
    CHECK(pf_inverse_alpha_cycles(ChoiceFunction({2, 2, 2, 2}), Permutation::identity(4)) == 1);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
        const auto f = ChoiceFunction::from_mask(5, mask);
        CHECK(pf_inverse_alpha_cycles(f, Permutation::full_cycle(5)) == pf_cycle_counts(f).complement_cycles);
    }
}

TEST_CASE("pf_inverse_alpha_cycles rejects non-geodesic permutations")
{
    const auto alpha = Permutation::from_cycles(4, {{1, 3}, {2, 4}});
    const ChoiceFunction f({1, 2, 1, 2});
    CHECK(pf_inverse_alpha_formula(f, alpha) == 3);
    CHECK_THROWS_AS(pf_inverse_alpha_cycles(f, alpha), NonGeodesicError);
}

TEST_CASE("pf_inverse_alpha formula holds on geodesic permutations")
{
    for (std::size_t p = 1; p <= 6; ++p) {
        for (std::uint64_t r = 0; r < factorial(p); ++r) {
            const auto alpha = unrank_permutation(p, r);
            if (!is_geodesic(alpha)) {
                continue;
            }
            const auto a = images(alpha);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
                const auto f = ChoiceFunction::from_mask(p, mask);
                const std::vector<std::uint8_t> values(f.values().begin(), f.values().end());
                const auto pf = choice_images(values);
                std::vector<std::size_t> pf_inv(p), product(p);
                for (std::size_t i = 0; i < p; ++i) {
                    pf_inv[pf[i]] = i;
                }
                for (std::size_t i = 0; i < p; ++i) {
                    product[i] = pf_inv[a[i]];
                }
                CHECK(pf_inverse_alpha_cycles(f, alpha) == count_cycles(product));
            }
        }
    }
}

TEST_CASE("choice permutation lies between the identity and the full cycle")
{
    for (std::size_t p = 1; p <= 7; ++p) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p); ++mask) {
            const auto pf = build_choice_permutation(ChoiceFunction::from_mask(p, mask));
            CHECK(is_geodesic(pf));
        }
    }
}
