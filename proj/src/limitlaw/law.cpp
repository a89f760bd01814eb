#include "redlab/limitlaw.hpp"

#include "redlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace redlab::limitlaw {

namespace {

// Coefficients (a3, a2, a1, a0) of
//   zm G^3 + [-m + am + b - z(m-1)] G^2 + [m - 1 + a - b - z] G + 1 = 0
// with m = k-1, a = c(k^2-1), b = c(k-1); obtained by clearing the
// denominators of K(G) = z.
std::array<Complex, 4> cubic_coefficients(const CompoundFreePoissonLaw& law, Complex z)
{
    const double m = law.k() - 1.0;
    const double a = law.c() * (law.k() * law.k() - 1.0);
    const double b = law.c() * (law.k() - 1.0);
    return {z * m, -m + a * m + b - z * (m - 1.0), m - 1.0 + a - b - z, Complex(1.0)};
}

Complex eval_cubic(const std::array<Complex, 4>& a, Complex g)
{
    return ((a[0] * g + a[1]) * g + a[2]) * g + a[3];
}

Complex eval_cubic_derivative(const std::array<Complex, 4>& a, Complex g)
{
    return (3.0 * a[0] * g + 2.0 * a[1]) * g + a[2];
}

Complex polish(const std::array<Complex, 4>& a, Complex g)
{
    for (int it = 0; it < 3; ++it) {
        const Complex d = eval_cubic_derivative(a, g);
        if (d == Complex(0.0)) {
            break;
        }
        const Complex next = g - eval_cubic(a, g) / d;
        if (!(std::abs(eval_cubic(a, next)) < std::abs(eval_cubic(a, g)))) {
            break;
        }
        g = next;
    }
    return g;
}

Complex nearest(const std::array<Complex, 3>& roots, Complex target)
{
    return *std::min_element(roots.begin(), roots.end(), [&](Complex x, Complex y) {
        return std::abs(x - target) < std::abs(y - target);
    });
}

// Follows the physical branch from x + iH, where it is the root nearest 1/z,
// down to the requested height.
Complex track_branch(const CompoundFreePoissonLaw& law, Complex z)
{
    const double x = z.real();
    const double top = 10.0 * (1.0 + std::abs(x) + law.c() * law.k() * law.k());
    Complex w(x, top);
    Complex g = nearest(cauchy_cubic_roots(law, w), 1.0 / w);
    double height = top;
    while (height > z.imag()) {
        height = std::max(height * 0.8, z.imag());
        w = Complex(x, height);
        g = nearest(cauchy_cubic_roots(law, w), g);
    }
    return g;
}

} // namespace

CompoundFreePoissonLaw::CompoundFreePoissonLaw(double k, double c) : k_(k), c_(c)
{
    if (!(k >= 2.0) || !(c > 0.0) || !std::isfinite(k) || !std::isfinite(c)) {
        throw InvalidArgument("compound free Poisson law needs k >= 2 and c > 0");
    }
}

Complex k_transform(const CompoundFreePoissonLaw& law, Complex w)
{
    const double k = law.k();
    const double c = law.c();
    return 1.0 / w + c * (k * k - 1.0) / (1.0 - w) - c * (k - 1.0) / (1.0 + (k - 1.0) * w);
}

std::array<Complex, 3> cauchy_cubic_roots(const CompoundFreePoissonLaw& law, Complex z)
{
    if (z == Complex(0.0)) {
        throw InvalidArgument("the Cauchy cubic degenerates at z = 0");
    }
    const auto a = cubic_coefficients(law, z);
    Eigen::Matrix3cd companion = Eigen::Matrix3cd::Zero();
    companion(0, 0) = -a[1] / a[0];
    companion(0, 1) = -a[2] / a[0];
    companion(0, 2) = -a[3] / a[0];
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen solver failed on the Cauchy cubic");
    }
    std::array<Complex, 3> roots;
    for (int i = 0; i < 3; ++i) {
        roots[i] = polish(a, solver.eigenvalues()[i]);
    }
    return roots;
}

Complex cauchy_transform(const CompoundFreePoissonLaw& law, Complex z)
{
    if (!(z.imag() > 0.0)) {
        throw InvalidArgument("Cauchy transform needs Im z > 0");
    }
    const auto roots = cauchy_cubic_roots(law, z);
    const auto lower = std::count_if(roots.begin(), roots.end(), [](Complex g) { return g.imag() < 0.0; });
    Complex g;
    if (lower == 1) {
        g = *std::find_if(roots.begin(), roots.end(), [](Complex r) { return r.imag() < 0.0; });
    } else {
        g = track_branch(law, z);
    }
    if (!(g.imag() < 0.0)) {
        throw BranchSelectionError("no root of the Cauchy cubic has Im G < 0 at z = ("
                                   + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")");
    }
    return g;
}

double atom_mass(const CompoundFreePoissonLaw& law)
{
    return std::max(0.0, 1.0 - law.c() * law.k() * law.k());
}

double density(const CompoundFreePoissonLaw& law, double x)
{
    try {
        const auto ends = support_endpoints(law);
        bool inside = false;
        for (std::size_t i = 0; i + 1 < ends.size(); i += 2) {
            inside = inside || (x >= ends[i] && x <= ends[i + 1]);
        }
        if (!inside) {
            return 0.0;
        }
    } catch (const BoundaryProximityError&) {
        // Interval structure is ambiguous on c0; fall back to inversion alone.
    }
    auto rho = [&](double eta) { return -cauchy_transform(law, Complex(x, eta)).imag() / std::numbers::pi; };
    const double r4 = rho(1e-4);
    const double r5 = rho(1e-5);
    const double r6 = rho(1e-6);
    const double first = (10.0 * r5 - r4) / 9.0;
    const double second = (10.0 * r6 - r5) / 9.0;
    return std::max(0.0, (100.0 * second - first) / 99.0);
}

} // namespace redlab::limitlaw
