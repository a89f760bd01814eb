#include "redlab/error.hpp"
#include "redlab/moments.hpp"
#include "redlab/randmat.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

using namespace redlab;
using namespace redlab::randmat;

namespace {

ComplexMatrix naive_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex sum = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) {
                sum += a(i, l) * b(l, j);
            }
            c(i, j) = sum;
        }
    }
    return c;
}

// (A (x) B)[(a, i), (b, j)] = A[a, b] B[i, j] with row index a * k + i.
ComplexMatrix naive_kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    const std::size_t k = b.rows();
    ComplexMatrix c(a.rows() * k, a.cols() * b.cols());
    for (std::size_t r = 0; r < c.rows(); ++r) {
        for (std::size_t s = 0; s < c.cols(); ++s) {
            c(r, s) = a(r / k, s / b.cols()) * b(r % k, s % b.cols());
        }
    }
    return c;
}

double max_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    REQUIRE(a.rows() == b.rows());
    REQUIRE(a.cols() == b.cols());
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return d;
}

ComplexMatrix transpose(const ComplexMatrix& a)
{
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

SimulationConfig config(std::uint64_t n, std::uint64_t k, std::uint64_t s, std::uint64_t seed, unsigned trials,
                        Normalization norm = Normalization::none)
{
    SimulationConfig cfg;
    cfg.n = n;
    cfg.k = k;
    cfg.s = s;
    cfg.master_seed = seed;
    cfg.trials = trials;
    cfg.normalization = norm;
    return cfg;
}

} // namespace

TEST_CASE("Ginibre entries are centred with unit variance")
{
    const auto x = sample_ginibre(1000, 1000, 7);
    Complex mean = 0.0;
    double power = 0.0;
    for (const auto& v : x.entries()) {
        mean += v;
        power += std::norm(v);
    }
    mean /= static_cast<double>(x.entries().size());
    power /= static_cast<double>(x.entries().size());
    CHECK(std::abs(mean) <= 5e-3);
    CHECK(std::abs(power - 1.0) <= 1e-2);
}

TEST_CASE("Ginibre samples are reproducible")
{
    CHECK(sample_ginibre(20, 30, 99) == sample_ginibre(20, 30, 99));
    CHECK_FALSE(sample_ginibre(20, 30, 99) == sample_ginibre(20, 30, 100));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK_THROWS_AS(sample_ginibre(0, 3, 1), InvalidArgument);
    CHECK_THROWS_AS(sample_ginibre(20000, 20000, 1), GuardViolation);
}

TEST_CASE("matrix product and Wishart against direct loops")
{
    const auto a = sample_ginibre(7, 5, 1);
    const auto b = sample_ginibre(5, 4, 2);
    CHECK(max_diff(a * b, naive_product(a, b)) <= 1e-12);
    CHECK(max_diff(wishart(a), naive_product(a, adjoint(a))) <= 1e-12);
    CHECK(wishart(ComplexMatrix::identity(4)) == ComplexMatrix::identity(4));
    CHECK(wishart(a).is_hermitian());
}

TEST_CASE("kron follows the Kronecker layout")
{
    const auto a = sample_ginibre(3, 3, 3);
    const auto b = sample_ginibre(2, 2, 4);
    CHECK(max_diff(kron(a, b), naive_kron(a, b)) == 0.0);
}

TEST_CASE("partial traces")
{
    const std::size_t n = 3, k = 2;
    const auto id = partial_trace_second(ComplexMatrix::identity(n * k), n, k);
    CHECK(max_diff(id, Complex(double(k)) * ComplexMatrix::identity(n)) == 0.0);
    const auto a = sample_ginibre(n, n, 5);
    const auto b = sample_ginibre(k, k, 6);
    const auto ab = naive_kron(a, b);
    CHECK(max_diff(partial_trace_second(ab, n, k), b.trace() * a) <= 1e-12);
    CHECK(max_diff(partial_trace_first(ab, n, k), a.trace() * b) <= 1e-12);
}

TEST_CASE("reduction annihilates product vectors")
{
    const std::size_t n = 4, k = 3;
    const auto e = sample_ginibre(n, 1, 8);
    auto f = sample_ginibre(k, 1, 9);
    double norm = 0.0;
    for (const auto& v : f.entries()) {
        norm += std::norm(v);
    }
    f = Complex(1.0 / std::sqrt(norm)) * f;
    const auto x = naive_kron(e, f);
    const auto r = reduce(naive_product(x, adjoint(x)), n, k);
    const auto rx = matvec(r, x.entries());
    double worst = 0.0;
    for (const auto& v : rx) {
        worst = std::max(worst, std::abs(v));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("reduction with k = 1 is zero")
{
    const auto w = wishart(sample_ginibre(5, 3, 10));
    CHECK(reduce(w, 5, 1).max_abs() == 0.0);
    CHECK(choi_reduction_map(1).max_abs() == 0.0);
}

TEST_CASE("trace identity and Hermiticity of R")
{
    const std::size_t n = 6, k = 3;
    const auto w = wishart(sample_ginibre(n * k, 11, 12));
    const auto r = reduce(w, n, k);
    CHECK(r.is_hermitian());
    const Complex expected = double(k - 1) * w.trace();
    CHECK(std::abs(r.trace() - expected) <= 1e-9 * std::abs(expected));
    const auto rf = reduce_first(w, n, k);
    CHECK(rf.is_hermitian());
    CHECK(std::abs(rf.trace() - double(n - 1) * w.trace()) <= 1e-9 * std::abs(w.trace()) * n);
}

TEST_CASE("partial transpose")
{
    const std::size_t n = 3, k = 2;
    const auto a = sample_ginibre(n, n, 13);
    const auto b = sample_ginibre(k, k, 14);
    const auto ab = naive_kron(a, b);
    CHECK(max_diff(partial_transpose(ab, n, k), naive_kron(a, transpose(b))) == 0.0);
    const auto w = sample_ginibre(n * k, n * k, 15);
    CHECK(partial_transpose(partial_transpose(w, n, k), n, k) == w);
}

TEST_CASE("Choi matrices")
{
    for (std::size_t k = 2; k <= 6; ++k) {
        const auto phi = hermitian_eigenvalues(choi_reduction_map(k));
        CHECK(phi.front() == doctest::Approx(1.0 - double(k)).epsilon(1e-12));
        for (std::size_t i = 1; i < phi.size(); ++i) {
            CHECK(std::abs(phi[i] - 1.0) <= 1e-10);
        }
        const auto psi = hermitian_eigenvalues(choi_psi(k));
        CHECK(psi.front() >= -1e-10);
    }
    // the identity map has the unnormalised maximally entangled projector as Choi matrix
    const auto id = hermitian_eigenvalues(choi_matrix(3, [](const ComplexMatrix& x) { return x; }));
    CHECK(id.back() == doctest::Approx(3.0));
    CHECK(std::abs(id[id.size() - 2]) <= 1e-12);
}

TEST_CASE("Hermitian eigenvalues")
{
    ComplexMatrix d(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    const auto ev = hermitian_eigenvalues(d);
    CHECK(ev == std::vector<double>{-1.0, 2.0, 3.0});
    for (const double v : hermitian_eigenvalues(ComplexMatrix::identity(6))) {
        CHECK(v == doctest::Approx(1.0));
    }
    ComplexMatrix swap(2, 2);
    swap(0, 1) = 1.0;
    swap(1, 0) = 1.0;
    const auto s = hermitian_eigenvalues(swap);
    CHECK(s[0] == doctest::Approx(-1.0));
    CHECK(s[1] == doctest::Approx(1.0));
    ComplexMatrix skew(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), InvalidArgument);
}

TEST_CASE("eigensystem residual")
{
    const auto w = wishart(sample_ginibre(8, 5, 16));
    const auto es = hermitian_eigensystem(w);
    for (std::size_t j = 0; j < es.values.size(); ++j) {
        std::vector<Complex> v(w.rows());
        for (std::size_t i = 0; i < w.rows(); ++i) {
            v[i] = es.vectors(i, j);
        }
        const auto wv = matvec(w, v);
        for (std::size_t i = 0; i < w.rows(); ++i) {
            CHECK(std::abs(wv[i] - es.values[j] * v[i]) <= 1e-10 * (1.0 + std::abs(es.values.back())));
        }
    }
}

TEST_CASE("Monte Carlo moments agree with the exact moments")
{
    const auto cfg = config(3, 3, 9, 2024, 4000);
    const auto samples = run_reduction_ensemble(cfg);
    for (unsigned p = 1; p <= 3; ++p) {
        double sum = 0.0, sum2 = 0.0;
        for (const auto& s : samples) {
            const double v = empirical_moments(s.eigenvalues, p)[p - 1];
            sum += v;
            sum2 += v * v;
        }
        const double trials = samples.size();
        const double mean = sum / trials;
        const double se = std::sqrt((sum2 / trials - mean * mean) / (trials - 1.0));
        moments::MomentQuery q;
        q.n = 3;
        q.k = 3;
        q.s = 9;
        q.p = p;
        const double exact = moments::exact_trace_moment(q).value.convert_to<double>() / 9.0;
        INFO("p = " << p << " mean " << mean << " exact " << exact << " se " << se);
        CHECK(std::abs(mean - exact) <= 5.0 * se);
    }
}

TEST_CASE("ensemble output does not depend on the worker count")
{
    const auto cfg = config(6, 3, 20, 77, 9, Normalization::over_n);
    const auto one = run_reduction_ensemble(cfg, 1);
    const auto three = run_reduction_ensemble(cfg, 3);
    REQUIRE(one.size() == three.size());
    for (std::size_t t = 0; t < one.size(); ++t) {
        CHECK(one[t].eigenvalues == three[t].eigenvalues);
        CHECK(one[t].trial_index == t);
        CHECK(one[t].eigenvalues == reduction_trial(cfg, t).eigenvalues);
    }
}

TEST_CASE("configuration validation")
{
    CHECK_THROWS_AS(config(0, 2, 2, 0, 1).validate(), InvalidArgument);
    CHECK_THROWS_AS(config(2, 2, 2, 0, 0).validate(), InvalidArgument);
    CHECK_THROWS_AS(config(10000, 10, 10000, 0, 1).validate(), GuardViolation);
    CHECK_NOTHROW(config(10, 3, 5, 0, 1).validate());
    for (const auto n : {Normalization::none, Normalization::over_n, Normalization::over_ks, Normalization::fluctuation}) {
        CHECK(parse_normalization(to_string(n)) == n);
    }
}

TEST_CASE("norm deviation")
{
    CHECK(norm_deviation(config(4, 1, 10, 3, 1)) == 1.0);
    // the deviation shrinks as the environment grows
    CHECK(norm_deviation(config(4, 2, 4000, 3, 1)) < norm_deviation(config(4, 2, 40, 3, 1)));
}

TEST_CASE("rank bound")
{
    const auto small = rank_check(config(50, 2, 10, 1, 1));
    CHECK(small.observed_rank <= 40);
    CHECK(small.bound == 40);
    CHECK(small.dimension == 100);
    const auto large = rank_check(config(100, 2, 10, 1, 1));
    CHECK(large.zero_count >= 160);
    CHECK_THROWS_AS(rank_check(config(5, 2, 10, 1, 1)), InvalidArgument);
}

TEST_CASE("image containment")
{
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        CHECK(image_containment_residual(4, 3, seed) <= 1e-8);
    }
}

TEST_CASE("Bai-Yin and fluctuation preconditions")
{
    CHECK_THROWS_AS(baiyin_check(50, 1.0, 1), InvalidArgument);
    CHECK_THROWS_AS(baiyin_check(100, 0.0, 1), InvalidArgument);
    CHECK_THROWS_AS(fluctuation_sample(10, 100, 1), InvalidArgument);
}

TEST_CASE("largest Wishart eigenvalue over s approaches (1 + 1/sqrt(c))^2")
{
    // ||W/s|| for W of size n x n with s = cn tends to the upper edge of the
    // Marchenko-Pastur law with ratio n/s.
    for (const double c : {1.0, 2.0, 4.0}) {
        const double edge = std::pow(1.0 + 1.0 / std::sqrt(c), 2);
        CHECK(baiyin_check(300, c, 5) == doctest::Approx(edge).epsilon(0.05));
    }
}

TEST_CASE("fluctuation spectrum: even moments near Catalan, third moment near sqrt(n/s)")
{
    const std::size_t n = 100, s = 3000;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    const int seeds = 4;
    for (int seed = 0; seed < seeds; ++seed) {
        const auto sample = fluctuation_sample(n, s, static_cast<std::uint64_t>(seed));
        CHECK(sample.normalization == Normalization::fluctuation);
        const auto m = empirical_moments(sample.eigenvalues, 4);
        m2 += m[1] / seeds;
        m3 += m[2] / seeds;
        m4 += m[3] / seeds;
    }
    CHECK(m2 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m4 == doctest::Approx(2.0).epsilon(0.1));
    // E m3 = (n^2 s + s) / (ns)^{3/2}
    const double expected = (double(n) * n * s + s) / std::pow(double(n) * s, 1.5);
    CHECK(m3 == doctest::Approx(expected).epsilon(0.2));
}

TEST_CASE("empirical statistics")
{
    const std::vector<double> v{1.0, 2.0, 3.0};
    const auto m = empirical_moments(v, 2);
    CHECK(m[0] == doctest::Approx(2.0));
    CHECK(m[1] == doctest::Approx(14.0 / 3.0));
    std::vector<double> uniform(1000);
    for (std::size_t i = 0; i < uniform.size(); ++i) {
        uniform[i] = (static_cast<double>(i) + 0.5) / 1000.0;
    }
    const auto cdf = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(ks_distance(uniform, cdf) == doctest::Approx(5e-4));
    std::vector<SpectralSample> samples(2);
    samples[0].eigenvalues = {-1.0, 3.0};
    samples[1].eigenvalues = {0.5, 2.0};
    const auto stats = min_eig_stats(samples);
    CHECK(stats.min == -1.0);
    CHECK(stats.max == 0.5);
    CHECK(stats.mean == doctest::Approx(-0.25));
    CHECK(stats.negative_samples == 1);
}

TEST_CASE("eigenvalue CSV")
{
    const auto cfg = config(3, 2, 2, 1, 2, Normalization::over_n);
    const auto samples = run_reduction_ensemble(cfg);
    std::ostringstream out;
    write_eigenvalue_csv(out, samples);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "trial,index,eigenvalue,normalization");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 12);
}
