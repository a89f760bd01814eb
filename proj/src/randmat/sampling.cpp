#include "redlab/randmat.hpp"

#include "redlab/error.hpp"

#include <cmath>
#include <random>

namespace redlab::randmat {

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial)
{
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(master_seed) ^ trial);
}

ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    if (rows == 0 || cols == 0) {
        throw InvalidArgument("Ginibre dimensions must be >= 1");
    }
    if (static_cast<long double>(rows) * cols > static_cast<long double>(kMaxSampleEntries)) {
        throw GuardViolation("Ginibre sample of " + std::to_string(rows) + " x " + std::to_string(cols)
                             + " exceeds the 1e8 entry guard");
    }
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ComplexMatrix x(rows, cols);
    Complex* out = x.data();
    for (std::size_t i = 0; i < rows * cols; ++i) {
        const double re = gauss(engine);
        const double im = gauss(engine);
        out[i] = Complex(re, im);
    }
    return x;
}

} // namespace redlab::randmat
