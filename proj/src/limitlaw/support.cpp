#include "redlab/limitlaw.hpp"

#include "redlab/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace redlab::limitlaw {

namespace {

bool near_curve(double c, double curve)
{
    return std::abs(c - curve) <= kBoundaryTolerance * std::abs(curve);
}

double derivative(const QuarticDiscriminant& q, double z)
{
    return ((4.0 * q.coeff_a4 * z + 3.0 * q.coeff_a3) * z + 2.0 * q.coeff_a2) * z + q.coeff_a1;
}

} // namespace

double QuarticDiscriminant::evaluate(double z) const
{
    return (((coeff_a4 * z + coeff_a3) * z + coeff_a2) * z + coeff_a1) * z + coeff_a0;
}

QuarticDiscriminant discriminant_coefficients(const CompoundFreePoissonLaw& law)
{
    const double k = law.k();
    const double c = law.c();
    const double km = k - 1.0;
    const double k2 = k * k;
    const double k3 = k2 * k;
    const double k4 = k3 * k;
    QuarticDiscriminant q{};
    q.coeff_a4 = k;
    q.coeff_a3 = 2.0 * (k * (k - 2.0) - 2.0 * c * km * km * (k + 1.0));
    q.coeff_a2 = 2.0 * c * c * k * km * km * (3.0 * k2 - 4.0) - c * (6.0 * k4 - 8.0 * k3 - 4.0 * k2 + 18.0 * k - 12.0)
                 + k * (k2 - 6.0 * k + 6.0);
    q.coeff_a1 = -2.0 * km
                 * (2.0 * c * c * c * k2 * (k + 1.0) * km * km * km
                    - c * c * k * (3.0 * k4 + k3 - 8.0 * k2 - 6.0 * k + 10.0)
                    + c * (k4 - k3 - k2 + 6.0 * k - 6.0) + k * (k - 2.0));
    const double atom_factor = c * k2 - 1.0;
    q.coeff_a0 = km * km * atom_factor * atom_factor * (c * c * k * km * km - 2.0 * c * (k2 + k - 2.0) + k);
    return q;
}

std::vector<double> support_endpoints(const CompoundFreePoissonLaw& law)
{
    const double c0 = curve_c0(law.k());
    if (near_curve(law.c(), c0)) {
        throw BoundaryProximityError("(k, c) lies within tolerance of the c0 curve; the interval count is undefined");
    }
    const std::size_t expected = cubic_f(law.k(), law.c()) > 0.0 ? 2 : 4;

    const auto q = discriminant_coefficients(law);
    Eigen::Matrix4d companion = Eigen::Matrix4d::Zero();
    companion(0, 0) = -q.coeff_a3 / q.coeff_a4;
    companion(0, 1) = -q.coeff_a2 / q.coeff_a4;
    companion(0, 2) = -q.coeff_a1 / q.coeff_a4;
    companion(0, 3) = -q.coeff_a0 / q.coeff_a4;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    companion(3, 2) = 1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigen solver failed on the discriminant quartic");
    }

    std::vector<double> roots;
    for (int i = 0; i < 4; ++i) {
        const auto r = solver.eigenvalues()[i];
        if (std::abs(r.imag()) > 1e-8 * (1.0 + std::abs(r))) {
            continue;
        }
        double x = r.real();
        for (int it = 0; it < 2; ++it) {
            const double d = derivative(q, x);
            if (d != 0.0) {
                x -= q.evaluate(x) / d;
            }
        }
        roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());
    if (roots.size() != expected) {
        throw NumericalError("discriminant quartic has " + std::to_string(roots.size()) + " real roots, expected "
                             + std::to_string(expected));
    }
    return roots;
}

std::string to_string(Region region)
{
    switch (region) {
    case Region::A:
        return "A";
    case Region::B:
        return "B";
    case Region::C:
        return "C";
    case Region::D:
        return "D";
    case Region::E:
        return "E";
    case Region::F:
        return "F";
    case Region::Boundary:
        return "Boundary";
    }
    return "Boundary";
}

SupportReport region_classify(const CompoundFreePoissonLaw& law)
{
    const double k = law.k();
    const double c = law.c();
    const double atom_curve = 1.0 / (k * k);
    const double c0 = curve_c0(k);
    const double c1 = curve_c1(k);
    const double c2 = curve_c2(k);

    SupportReport report;
    report.atom_mass = atom_mass(law);
    report.positive_support = c > c2 && !near_curve(c, c2);

    if (near_curve(c, atom_curve) || near_curve(c, c0) || near_curve(c, c1) || near_curve(c, c2)) {
        report.region = Region::Boundary;
    } else if (c < atom_curve) {
        report.region = Region::A;
    } else if (c < c1) {
        report.region = Region::B;
    } else if (c < c2) {
        report.region = c < c0 ? Region::C : Region::D;
    } else {
        report.region = c < c0 ? Region::E : Region::F;
    }

    std::vector<double> ends;
    try {
        ends = support_endpoints(law);
    } catch (const BoundaryProximityError&) {
        return report;
    }
    for (std::size_t i = 0; i + 1 < ends.size(); i += 2) {
        report.intervals.push_back({ends[i], ends[i + 1]});
    }

    const auto q = discriminant_coefficients(law);
    if (ends.size() == 4 && q.coeff_a0 > 0.0) {
        const bool all_positive = ends.front() > 0.0;
        const bool signs = q.coeff_a3 < 0.0 && q.coeff_a2 > 0.0 && q.coeff_a1 < 0.0;
        report.descartes_consistent = all_positive == signs;
    }
    return report;
}

} // namespace redlab::limitlaw
