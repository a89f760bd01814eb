#include "redlab/randmat.hpp"

#include "redlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace redlab::randmat {

std::string to_string(Normalization normalization)
{
    switch (normalization) {
    case Normalization::none:
        return "none";
    case Normalization::over_n:
        return "over_n";
    case Normalization::over_ks:
        return "over_ks";
    case Normalization::fluctuation:
        return "fluctuation";
    }
    return "none";
}

Normalization parse_normalization(const std::string& name)
{
    for (auto v : {Normalization::none, Normalization::over_n, Normalization::over_ks, Normalization::fluctuation}) {
        if (to_string(v) == name) {
            return v;
        }
    }
    throw InvalidArgument("unknown normalization '" + name + "'");
}

void SimulationConfig::validate() const
{
    if (n == 0 || k == 0 || s == 0 || trials == 0) {
        throw InvalidArgument("simulation dimensions and trial count must be >= 1");
    }
    const long double entries = static_cast<long double>(n) * k * s;
    if (entries > static_cast<long double>(kMaxSampleEntries)) {
        throw GuardViolation("nk * s = " + std::to_string(static_cast<double>(entries))
                             + " exceeds the sampling guard of 1e8 entries");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols)
{
}

ComplexMatrix ComplexMatrix::identity(std::size_t n)
{
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Complex ComplexMatrix::trace() const
{
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& v : data_) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const
{
    if (rows_ != cols_) {
        return false;
    }
    const double bound = tol * std::max(1.0, max_abs());
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i; j < cols_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > bound) {
                return false;
            }
        }
    }
    return true;
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("matrix shapes differ");
    }
}

} // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_shape(a, b);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) {
        out.data()[i] = a.data()[i] + b.data()[i];
    }
    return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b)
{
    require_same_shape(a, b);
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) {
        out.data()[i] = a.data()[i] - b.data()[i];
    }
    return out;
}

ComplexMatrix operator*(Complex scale, const ComplexMatrix& a)
{
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows() * a.cols(); ++i) {
        out.data()[i] = scale * a.data()[i];
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a)
{
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b)
{
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            for (std::size_t p = 0; p < b.rows(); ++p) {
                for (std::size_t q = 0; q < b.cols(); ++q) {
                    out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> matvec(const ComplexMatrix& a, std::span<const Complex> x)
{
    if (x.size() != a.cols()) {
        throw InvalidArgument("vector length does not match matrix columns");
    }
    std::vector<Complex> y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc += a(i, j) * x[j];
        }
        y[i] = acc;
    }
    return y;
}

} // namespace redlab::randmat
