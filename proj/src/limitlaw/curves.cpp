#include "redlab/limitlaw.hpp"

#include "redlab/error.hpp"

#include <cmath>

namespace redlab::limitlaw {

namespace {

void require_above_one(double k, const char* what)
{
    if (!(k > 1.0) || !std::isfinite(k)) {
        throw InvalidArgument(std::string(what) + " needs k > 1");
    }
}

} // namespace

double cubic_f(double k, double c)
{
    const double km = k - 1.0;
    return ((8.0 * k * km * km * km * c + 3.0 * km * km * (5.0 * k * k - 9.0)) * c + 6.0 * k * k * k * km) * c
           - k * k * k * k;
}

double curve_c0(double k)
{
    require_above_one(k, "c0");
    const double u = std::cbrt((k - 1.0) * (k + 1.0) * (k + 1.0));
    const double v = std::cbrt((k - 1.0) * (k - 1.0) * (k + 1.0));
    const double c0 = (3.0 * k * k * k - k * k * (5.0 * v - 3.0 * u + 9.0) + 3.0 * k * (2.0 * u - 1.0)
                       + 9.0 * (v - u + 1.0))
                      / (8.0 * k * (k - 1.0) * v);
    if (std::abs(cubic_f(k, c0)) > 1e-9 * k * k * k * k) {
        throw NumericalError("closed form for c0 fails its residual check at k = " + std::to_string(k));
    }
    return c0;
}

double curve_c1(double k)
{
    require_above_one(k, "c1");
    const double r = std::sqrt(k + 1.0) - 1.0;
    return r * r / (k * (k - 1.0));
}

double curve_c2(double k)
{
    require_above_one(k, "c2");
    const double r = std::sqrt(k + 1.0) + 1.0;
    return r * r / (k * (k - 1.0));
}

double threshold_red(double k)
{
    return curve_c2(k);
}

double threshold_ppt(double k)
{
    if (!(k >= 1.0) || !std::isfinite(k)) {
        throw InvalidArgument("c_PPT needs k >= 1");
    }
    return 2.0 + 2.0 * std::sqrt(1.0 - 1.0 / (k * k));
}

double threshold_simultaneous(unsigned m)
{
    if (m < 2) {
        throw InvalidArgument("simultaneous threshold needs min(n, k) >= 2");
    }
    return threshold_red(static_cast<double>(m));
}

double threshold_simultaneous(moments::Regime regime, unsigned m)
{
    return regime == moments::Regime::balanced ? 0.0 : threshold_simultaneous(m);
}

double find_k0(double lo, double hi, double tol)
{
    auto gap = [](double k) { return curve_c0(k) - curve_c2(k); };
    double glo = gap(lo);
    if ((glo < 0.0) == (gap(hi) < 0.0)) {
        throw NumericalError("c0 - c2 does not change sign on the bracket");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double gmid = gap(mid);
        if ((gmid < 0.0) == (glo < 0.0)) {
            lo = mid;
            glo = gmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace redlab::limitlaw
