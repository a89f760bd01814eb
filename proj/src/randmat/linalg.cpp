#include "redlab/randmat.hpp"

#include "redlab/error.hpp"

#include <climits>

extern "C" {
void zgemm_(const char* transa, const char* transb, const int* m, const int* n, const int* k,
            const std::complex<double>* alpha, const std::complex<double>* a, const int* lda,
            const std::complex<double>* b, const int* ldb, const std::complex<double>* beta,
            std::complex<double>* c, const int* ldc);
void zherk_(const char* uplo, const char* trans, const int* n, const int* k, const double* alpha,
            const std::complex<double>* a, const int* lda, const double* beta, std::complex<double>* c,
            const int* ldc);
void zheevd_(const char* jobz, const char* uplo, const int* n, std::complex<double>* a, const int* lda, double* w,
             std::complex<double>* work, const int* lwork, double* rwork, const int* lrwork, int* iwork,
             const int* liwork, int* info);
}

namespace redlab::randmat {

namespace {

int blas_int(std::size_t v)
{
    if (v > static_cast<std::size_t>(INT_MAX)) {
        throw GuardViolation("matrix dimension exceeds the LAPACK integer range");
    }
    return static_cast<int>(v);
}

void require_bipartite(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    if (n == 0 || k == 0 || w.rows() != n * k || w.cols() != n * k) {
        throw InvalidArgument("expected an nk x nk matrix with n = " + std::to_string(n) + ", k = "
                              + std::to_string(k));
    }
}

// Row-major storage of a Hermitian M is column-major storage of conj(M), so
// zheevd sees conj(M): same eigenvalues, conjugated eigenvectors.
Eigensystem run_zheevd(const ComplexMatrix& m, bool vectors)
{
    if (!m.is_hermitian()) {
        throw InvalidArgument("eigensolver input is not Hermitian");
    }
    const int n = blas_int(m.rows());
    ComplexMatrix a = m;
    std::vector<double> w(m.rows());
    const char jobz = vectors ? 'V' : 'N';
    const char uplo = 'U';
    int info = 0;
    int query = -1;
    Complex work_size;
    double rwork_size = 0.0;
    int iwork_size = 0;
    zheevd_(&jobz, &uplo, &n, a.data(), &n, w.data(), &work_size, &query, &rwork_size, &query, &iwork_size, &query,
            &info);
    if (info != 0) {
        throw NumericalError("zheevd workspace query failed");
    }
    const int lwork = static_cast<int>(work_size.real());
    const int lrwork = static_cast<int>(rwork_size);
    const int liwork = iwork_size;
    std::vector<Complex> work(static_cast<std::size_t>(std::max(lwork, 1)));
    std::vector<double> rwork(static_cast<std::size_t>(std::max(lrwork, 1)));
    std::vector<int> iwork(static_cast<std::size_t>(std::max(liwork, 1)));
    zheevd_(&jobz, &uplo, &n, a.data(), &n, w.data(), work.data(), &lwork, rwork.data(), &lrwork, iwork.data(),
            &liwork, &info);
    if (info != 0) {
        throw NumericalError("zheevd failed with info = " + std::to_string(info));
    }
    Eigensystem out{std::move(w), {}};
    if (vectors) {
        // Column j of the column-major result is the j-th eigenvector of conj(M).
        out.vectors = ComplexMatrix(m.rows(), m.rows());
        for (std::size_t j = 0; j < m.rows(); ++j) {
            for (std::size_t i = 0; i < m.rows(); ++i) {
                out.vectors(i, j) = std::conj(a.data()[j * m.rows() + i]);
            }
        }
    }
    return out;
}

} // namespace

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw InvalidArgument("inner matrix dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    if (c.rows() == 0 || c.cols() == 0 || a.cols() == 0) {
        return c;
    }
    // Row-major C = AB is column-major C^t = B^t A^t.
    const int m = blas_int(b.cols());
    const int n = blas_int(a.rows());
    const int k = blas_int(a.cols());
    const Complex one = 1.0;
    const Complex zero = 0.0;
    zgemm_("N", "N", &m, &n, &k, &one, b.data(), &m, a.data(), &k, &zero, c.data(), &m);
    return c;
}

ComplexMatrix wishart(const ComplexMatrix& x)
{
    const int n = blas_int(x.rows());
    const int s = blas_int(x.cols());
    ComplexMatrix w(x.rows(), x.rows());
    if (n == 0 || s == 0) {
        return w;
    }
    // Row-major X is column-major X^t; X^t^H X^t = conj(XX*) in column-major,
    // which is XX* read row-major. "U" there fills the row-major lower half.
    const double one = 1.0;
    const double zero = 0.0;
    zherk_("U", "C", &n, &s, &one, x.data(), &s, &zero, w.data(), &n);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        w(i, i) = w(i, i).real();
        for (std::size_t j = i + 1; j < x.rows(); ++j) {
            w(i, j) = std::conj(w(j, i));
        }
    }
    return w;
}

ComplexMatrix partial_trace_second(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    require_bipartite(w, n, k);
    ComplexMatrix out(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                acc += w(a * k + i, b * k + i);
            }
            out(a, b) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace_first(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    require_bipartite(w, n, k);
    ComplexMatrix out(k, k);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                out(i, j) += w(a * k + i, a * k + j);
            }
        }
    }
    return out;
}

ComplexMatrix reduce(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    const auto wa = partial_trace_second(w, n, k);
    ComplexMatrix r(n * k, n * k);
    for (std::size_t row = 0; row < n * k; ++row) {
        for (std::size_t col = 0; col < n * k; ++col) {
            r(row, col) = -w(row, col);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < k; ++i) {
                r(a * k + i, b * k + i) += wa(a, b);
            }
        }
    }
    return r;
}

ComplexMatrix reduce_first(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    const auto wb = partial_trace_first(w, n, k);
    ComplexMatrix r(n * k, n * k);
    for (std::size_t row = 0; row < n * k; ++row) {
        for (std::size_t col = 0; col < n * k; ++col) {
            r(row, col) = -w(row, col);
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                r(a * k + i, a * k + j) += wb(i, j);
            }
        }
    }
    return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& w, std::size_t n, std::size_t k)
{
    require_bipartite(w, n, k);
    ComplexMatrix out(n * k, n * k);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) {
                    out(a * k + i, b * k + j) = w(a * k + j, b * k + i);
                }
            }
        }
    }
    return out;
}

ComplexMatrix choi_matrix(std::size_t k, const std::function<ComplexMatrix(const ComplexMatrix&)>& map)
{
    if (k == 0) {
        throw InvalidArgument("Choi matrix needs k >= 1");
    }
    ComplexMatrix out(k * k, k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            ComplexMatrix unit(k, k);
            unit(i, j) = 1.0;
            const auto image = map(unit);
            for (std::size_t p = 0; p < k; ++p) {
                for (std::size_t q = 0; q < k; ++q) {
                    out(i * k + p, j * k + q) = image(p, q);
                }
            }
        }
    }
    return out;
}

ComplexMatrix choi_reduction_map(std::size_t k)
{
    return choi_matrix(k, [k](const ComplexMatrix& x) { return x.trace() * ComplexMatrix::identity(k) - x; });
}

ComplexMatrix choi_psi(std::size_t k)
{
    return choi_matrix(k, [k](const ComplexMatrix& x) {
        ComplexMatrix t(k, k);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = 0; q < k; ++q) {
                t(p, q) = x(q, p);
            }
        }
        return x.trace() * ComplexMatrix::identity(k) - t;
    });
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m)
{
    return run_zheevd(m, false).values;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m)
{
    return run_zheevd(m, true);
}

} // namespace redlab::randmat
