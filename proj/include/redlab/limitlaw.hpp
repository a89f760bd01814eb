#pragma once

// The compound free Poisson law mu_{k,c}: free cumulants c[(1-k)^p + k^2 - 1],
// Cauchy transform, density, support and the (k, c) phase diagram.
// k is real throughout; integer k is a caller-side restriction.

#include "redlab/moments.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace redlab::limitlaw {

using Complex = std::complex<double>;

class CompoundFreePoissonLaw {
public:
    /// Throws InvalidArgument unless k >= 2 and c > 0.
    CompoundFreePoissonLaw(double k, double c);

    double k() const { return k_; }
    double c() const { return c_; }

private:
    double k_;
    double c_;
};

/// K(w) = 1/w + c(k^2-1)/(1-w) - c(k-1)/(1+(k-1)w), the functional inverse of G.
Complex k_transform(const CompoundFreePoissonLaw& law, Complex w);

/// All three roots of the cubic satisfied by G(z), polished by Newton.
std::array<Complex, 3> cauchy_cubic_roots(const CompoundFreePoissonLaw& law, Complex z);

/// G(z) for Im z > 0: the root with Im G < 0 that continues to 1/z at
/// infinity. Throws BranchSelectionError if no root qualifies.
Complex cauchy_transform(const CompoundFreePoissonLaw& law, Complex z);

/// max(0, 1 - ck^2).
double atom_mass(const CompoundFreePoissonLaw& law);

/// Absolutely continuous density. -Im G(x + i eta)/pi at eta = 1e-4, 1e-5,
/// 1e-6, Richardson-extrapolated to eta = 0; zero outside the support.
double density(const CompoundFreePoissonLaw& law, double x);

/// Delta(z) = a4' * (a4 z^4 + a3 z^3 + a2 z^2 + a1 z + a0) with a4' = k,
/// i.e. the alpha .. epsilon coefficients in that order.
struct QuarticDiscriminant {
    double coeff_a4;
    double coeff_a3;
    double coeff_a2;
    double coeff_a1;
    double coeff_a0;

    /// alpha z^4 + ... + epsilon (without the leading factor k).
    double evaluate(double z) const;
};

QuarticDiscriminant discriminant_coefficients(const CompoundFreePoissonLaw& law);

/// Relative tolerance in c against every region curve.
inline constexpr double kBoundaryTolerance = 1e-8;

/// Real roots of Delta(z) = 0, ascending: 2 when c > c0(k), 4 when c < c0(k).
/// Throws BoundaryProximityError within tolerance of c0 and NumericalError if
/// the root count disagrees with the sign of f.
std::vector<double> support_endpoints(const CompoundFreePoissonLaw& law);

enum class Region { A, B, C, D, E, F, Boundary };

std::string to_string(Region region);

struct Interval {
    double lo;
    double hi;
};

struct SupportReport {
    std::vector<Interval> intervals;
    double atom_mass = 0.0;
    Region region = Region::Boundary;
    bool positive_support = false;
    /// Sign test on (beta, gamma, delta) against the computed roots; only set
    /// when there are 4 real roots and epsilon > 0.
    std::optional<bool> descartes_consistent;
};

SupportReport region_classify(const CompoundFreePoissonLaw& law);

/// f(c) = 8k(k-1)^3 c^3 + 3(k-1)^2(5k^2-9)c^2 + 6k^3(k-1)c - k^4.
double cubic_f(double k, double c);

/// Unique real root of f via the closed form in u = ((k-1)(k+1)^2)^{1/3},
/// v = ((k-1)^2(k+1))^{1/3}. Requires k > 1; throws NumericalError if
/// |f(c0)| > 1e-9 k^4.
double curve_c0(double k);

/// (sqrt(k+1) - 1)^2 / (k(k-1)) and (sqrt(k+1) + 1)^2 / (k(k-1)); k > 1.
double curve_c1(double k);
double curve_c2(double k);

double threshold_red(double k);

/// 2 + 2 sqrt(1 - 1/k^2); k >= 1.
double threshold_ppt(double k);

/// threshold_red(m) for m = min(n, k) >= 2.
double threshold_simultaneous(unsigned m);

/// Regime-aware variant: the balanced regime satisfies the criterion for
/// every c, so its threshold is 0.
double threshold_simultaneous(moments::Regime regime, unsigned m);

/// Crossing of c0 and c2 by bisection on [lo, hi].
double find_k0(double lo = 2.0, double hi = 100.0, double tol = 1e-12);

/// Distribution function of mu_{k,c}: atom at 0 plus the integrated density,
/// tabulated on a cosine grid over each support interval.
class SpectralCdf {
public:
    explicit SpectralCdf(const CompoundFreePoissonLaw& law, std::size_t panels = 256);

    double operator()(double x) const;

    const SupportReport& support() const { return report_; }

private:
    struct Table {
        Interval span;
        std::vector<double> cumulative;  // at theta_j = pi j / panels
    };

    SupportReport report_;
    std::vector<Table> tables_;
    std::size_t panels_;
};

} // namespace redlab::limitlaw
