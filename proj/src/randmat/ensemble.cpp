#include "redlab/randmat.hpp"

#include "redlab/error.hpp"
#include "redlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

extern "C" void openblas_set_num_threads(int threads);

namespace redlab::randmat {

namespace {

constexpr double kMemoryBudgetBytes = 2.0 * 1024 * 1024 * 1024;

} // namespace

SpectralSample reduction_trial(const SimulationConfig& cfg, std::uint64_t trial)
{
    cfg.validate();
    const std::size_t n = cfg.n;
    const std::size_t k = cfg.k;
    auto eig = [&] {
        const auto w = wishart(sample_ginibre(n * k, cfg.s, derive_seed(cfg.master_seed, trial)));
        return hermitian_eigenvalues(reduce(w, n, k));
    }();
    double scale = 1.0;
    if (cfg.normalization == Normalization::over_n) {
        scale = static_cast<double>(cfg.n);
    } else if (cfg.normalization == Normalization::over_ks) {
        scale = static_cast<double>(cfg.k) * static_cast<double>(cfg.s);
    } else if (cfg.normalization == Normalization::fluctuation) {
        throw InvalidArgument("fluctuation normalization applies to Wishart spectra only");
    }
    for (auto& v : eig) {
        v /= scale;
    }
    return {std::move(eig), cfg.normalization, cfg, trial};
}

std::vector<SpectralSample> run_reduction_ensemble(const SimulationConfig& cfg, unsigned workers)
{
    cfg.validate();
    // Trials are the unit of parallelism; a single-threaded BLAS keeps every
    // trial's arithmetic identical whatever the worker count.
    openblas_set_num_threads(1);
    const double nk = static_cast<double>(cfg.n * cfg.k);
    const double bytes = 16.0 * (nk * static_cast<double>(cfg.s) + 3.0 * nk * nk);
    const auto affordable = static_cast<unsigned>(std::max(1.0, std::floor(kMemoryBudgetBytes / bytes)));
    const unsigned threads = std::min({workers ? workers : worker_count(), cfg.trials, affordable});

    std::vector<SpectralSample> out(cfg.trials);
    parallel_for(cfg.trials, threads, [&](std::size_t t) { out[t] = reduction_trial(cfg, t); });
    return out;
}

std::vector<double> empirical_moments(std::span<const double> eigenvalues, unsigned p_max)
{
    if (eigenvalues.empty()) {
        throw InvalidArgument("empirical moments of an empty sample");
    }
    std::vector<double> sums(p_max, 0.0);
    for (double v : eigenvalues) {
        double power = 1.0;
        for (unsigned p = 0; p < p_max; ++p) {
            power *= v;
            sums[p] += power;
        }
    }
    for (auto& s : sums) {
        s /= static_cast<double>(eigenvalues.size());
    }
    return sums;
}

double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf)
{
    if (sorted.empty()) {
        throw InvalidArgument("KS distance of an empty sample");
    }
    const auto count = static_cast<double>(sorted.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        worst = std::max({worst, std::abs(static_cast<double>(i + 1) / count - f),
                          std::abs(f - static_cast<double>(i) / count)});
    }
    return worst;
}

MinEigStats min_eig_stats(std::span<const SpectralSample> samples)
{
    if (samples.empty()) {
        throw InvalidArgument("no samples");
    }
    MinEigStats stats;
    stats.min = std::numeric_limits<double>::infinity();
    stats.max = -std::numeric_limits<double>::infinity();
    for (const auto& s : samples) {
        const double m = s.eigenvalues.front();
        stats.min = std::min(stats.min, m);
        stats.max = std::max(stats.max, m);
        stats.mean += m;
        stats.negative_samples += m < 0.0 ? 1 : 0;
    }
    stats.mean /= static_cast<double>(samples.size());
    return stats;
}

void write_eigenvalue_csv(std::ostream& out, std::span<const SpectralSample> samples)
{
    const auto precision = out.precision(17);
    out << "trial,index,eigenvalue,normalization\n";
    for (const auto& s : samples) {
        const auto label = to_string(s.normalization);
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
            out << s.trial_index << ',' << i << ',' << s.eigenvalues[i] << ',' << label << '\n';
        }
    }
    out.precision(precision);
}

} // namespace redlab::randmat
