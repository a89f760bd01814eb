#pragma once

// Seeded Monte Carlo engine for reduced Wishart matrices.
//
// Complex Gaussian entries have variance 1 (real and imaginary parts each
// N(0, 1/2)). Bipartite indices follow the Kronecker layout (a, i) -> a*k + i
// with a in [n] and i in [k]. Dense linear algebra goes through LAPACK.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace redlab::randmat {

using Complex = std::complex<double>;

/// Largest X = nk x s that the sampler will allocate.
inline constexpr std::uint64_t kMaxSampleEntries = 100'000'000;

enum class Normalization { none, over_n, over_ks, fluctuation };

std::string to_string(Normalization normalization);
Normalization parse_normalization(const std::string& name);

struct SimulationConfig {
    std::uint64_t n = 1;
    std::uint64_t k = 1;
    std::uint64_t s = 1;
    std::uint64_t master_seed = 0;
    unsigned trials = 1;
    Normalization normalization = Normalization::over_n;

    /// Throws InvalidArgument for zero fields and GuardViolation when
    /// nk * s exceeds kMaxSampleEntries.
    void validate() const;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Complex* data() { return data_.data(); }
    const Complex* data() const { return data_.data(); }
    std::span<const Complex> entries() const { return data_; }

    Complex trace() const;
    double max_abs() const;

    /// max |M - M*| <= tol * max(1, max |M|).
    bool is_hermitian(double tol = 1e-10) const;

    bool operator==(const ComplexMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, const ComplexMatrix& a);
/// Matrix product through zgemm.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x);

/// splitmix64 mix of (master_seed, trial): the seed of trial `trial`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial);

/// rows x cols matrix of i.i.d. complex Gaussians from std::mt19937_64 seeded
/// with `seed`, filled row-major, real part before imaginary part.
ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// X X* through zherk.
ComplexMatrix wishart(const ComplexMatrix& x);

/// W_A = [id (x) Tr](W), n x n.
ComplexMatrix partial_trace_second(const ComplexMatrix& w, std::size_t n, std::size_t k);
/// W_B = [Tr (x) id](W), k x k.
ComplexMatrix partial_trace_first(const ComplexMatrix& w, std::size_t n, std::size_t k);
/// W_A (x) I_k - W.
ComplexMatrix reduce(const ComplexMatrix& w, std::size_t n, std::size_t k);
/// I_n (x) W_B - W.
ComplexMatrix reduce_first(const ComplexMatrix& w, std::size_t n, std::size_t k);
/// [id (x) transp](W): every k x k block transposed.
ComplexMatrix partial_transpose(const ComplexMatrix& w, std::size_t n, std::size_t k);

/// Choi matrix sum_{ij} E_ij (x) map(E_ij) of a linear map on M_k.
ComplexMatrix choi_matrix(std::size_t k, const std::function<ComplexMatrix(const ComplexMatrix&)>& map);
/// Choi matrix of phi(X) = I Tr X - X, i.e. I_{k^2} - E_k.
ComplexMatrix choi_reduction_map(std::size_t k);
/// Choi matrix of psi(X) = I Tr X - X^t.
ComplexMatrix choi_psi(std::size_t k);

/// Full spectrum, ascending (zheevd). Throws InvalidArgument for
/// non-Hermitian input.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

struct Eigensystem {
    std::vector<double> values;  ///< ascending
    ComplexMatrix vectors;       ///< column j is the eigenvector of values[j]
};

Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

struct SpectralSample {
    std::vector<double> eigenvalues;  ///< ascending
    Normalization normalization = Normalization::none;
    SimulationConfig config;
    std::uint64_t trial_index = 0;
};

/// Spectrum of R for trial `trial` of cfg, scaled per cfg.normalization.
SpectralSample reduction_trial(const SimulationConfig& cfg, std::uint64_t trial);

/// All trials in trial order. Results are bit-identical for any worker count
/// (0 means worker_count()).
std::vector<SpectralSample> run_reduction_ensemble(const SimulationConfig& cfg, unsigned workers = 0);

/// (1/N) sum lambda^p for p = 1..p_max.
std::vector<double> empirical_moments(std::span<const double> eigenvalues, unsigned p_max);

/// sup |F_emp - cdf| over a sorted sample.
double ks_distance(std::span<const double> sorted, const std::function<double(double)>& cdf);

struct MinEigStats {
    double min = 0.0;   ///< smallest eigenvalue over all samples
    double max = 0.0;   ///< largest of the per-sample minima
    double mean = 0.0;  ///< mean of the per-sample minima
    std::size_t negative_samples = 0;
};

MinEigStats min_eig_stats(std::span<const SpectralSample> samples);

/// ||R/(ks) - I_nk|| for trial 0 of cfg.
double norm_deviation(const SimulationConfig& cfg);

struct RankReport {
    std::size_t observed_rank = 0;
    std::size_t bound = 0;       ///< k^2 s
    std::size_t zero_count = 0;  ///< eigenvalues with |lambda| <= 1e-8 ||R||
    std::size_t dimension = 0;   ///< nk
};

/// Numerical rank of R for trial 0; requires s < n/k.
RankReport rank_check(const SimulationConfig& cfg);

/// ||W/s|| for W = XX*, X of size n x ceil(cn); requires n >= 100.
double baiyin_check(std::size_t n, double c, std::uint64_t seed);

/// Spectrum of Z = sqrt(ns) (W/(ns) - I/n) with W = XX*, X of size n x s;
/// requires s >= 20n.
SpectralSample fluctuation_sample(std::size_t n, std::size_t s, std::uint64_t seed);

/// || P x - x || / || x || where P projects onto the range of W_A (x) I_k for
/// the rank-one W = x x* of a random x in C^{nk}.
double image_containment_residual(std::size_t n, std::size_t k, std::uint64_t seed);

/// Header `trial,index,eigenvalue,normalization`, one row per eigenvalue,
/// 17 significant digits.
void write_eigenvalue_csv(std::ostream& out, std::span<const SpectralSample> samples);

} // namespace redlab::randmat
