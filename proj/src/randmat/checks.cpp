#include "redlab/randmat.hpp"

#include "redlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace redlab::randmat {

double norm_deviation(const SimulationConfig& cfg)
{
    auto trial_cfg = cfg;
    trial_cfg.normalization = Normalization::over_ks;
    const auto sample = reduction_trial(trial_cfg, 0);
    return std::max(std::abs(sample.eigenvalues.front() - 1.0), std::abs(sample.eigenvalues.back() - 1.0));
}

RankReport rank_check(const SimulationConfig& cfg)
{
    if (cfg.s * cfg.k >= cfg.n) {
        throw InvalidArgument("rank check needs s < n/k so that k^2 s < nk");
    }
    auto trial_cfg = cfg;
    trial_cfg.normalization = Normalization::none;
    const auto eig = reduction_trial(trial_cfg, 0).eigenvalues;
    const double norm = std::max(std::abs(eig.front()), std::abs(eig.back()));
    RankReport report;
    report.dimension = eig.size();
    report.bound = cfg.k * cfg.k * cfg.s;
    report.zero_count = static_cast<std::size_t>(
        std::count_if(eig.begin(), eig.end(), [&](double v) { return std::abs(v) <= 1e-8 * norm; }));
    report.observed_rank = report.dimension - report.zero_count;
    return report;
}

double baiyin_check(std::size_t n, double c, std::uint64_t seed)
{
    if (n < 100 || !(c > 0.0)) {
        throw InvalidArgument("Bai-Yin check needs n >= 100 and c > 0");
    }
    const auto s = static_cast<std::size_t>(std::ceil(c * static_cast<double>(n)));
    const auto eig = hermitian_eigenvalues(wishart(sample_ginibre(n, s, seed)));
    return eig.back() / static_cast<double>(s);
}

SpectralSample fluctuation_sample(std::size_t n, std::size_t s, std::uint64_t seed)
{
    if (n == 0 || s < 20 * n) {
        throw InvalidArgument("fluctuation sample needs s >= 20n");
    }
    auto eig = hermitian_eigenvalues(wishart(sample_ginibre(n, s, seed)));
    const double ns = static_cast<double>(n) * static_cast<double>(s);
    const double root = std::sqrt(ns);
    for (auto& v : eig) {
        v = root * (v / ns - 1.0 / static_cast<double>(n));
    }
    SimulationConfig cfg;
    cfg.n = n;
    cfg.k = 1;
    cfg.s = s;
    cfg.master_seed = seed;
    cfg.normalization = Normalization::fluctuation;
    return {std::move(eig), Normalization::fluctuation, cfg, 0};
}

double image_containment_residual(std::size_t n, std::size_t k, std::uint64_t seed)
{
    const auto x = sample_ginibre(n * k, 1, seed);
    const auto w = wishart(x);
    const auto lifted = kron(partial_trace_second(w, n, k), ComplexMatrix::identity(k));
    const auto sys = hermitian_eigensystem(lifted);
    const double top = std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));

    const std::span<const Complex> v = x.entries();
    std::vector<Complex> projected(v.size());
    for (std::size_t j = 0; j < sys.values.size(); ++j) {
        if (std::abs(sys.values[j]) <= 1e-10 * top) {
            continue;
        }
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            overlap += std::conj(sys.vectors(i, j)) * v[i];
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            projected[i] += overlap * sys.vectors(i, j);
        }
    }
    double diff = 0.0;
    double norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        diff += std::norm(projected[i] - v[i]);
        norm += std::norm(v[i]);
    }
    return std::sqrt(diff / norm);
}

} // namespace redlab::randmat
