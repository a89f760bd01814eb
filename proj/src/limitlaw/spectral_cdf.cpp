#include "redlab/limitlaw.hpp"

#include "redlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace redlab::limitlaw {

SpectralCdf::SpectralCdf(const CompoundFreePoissonLaw& law, std::size_t panels)
    : report_(region_classify(law)), panels_(panels)
{
    if (panels_ < 2) {
        throw InvalidArgument("spectral CDF needs at least 2 panels");
    }
    if (report_.intervals.empty()) {
        throw BoundaryProximityError("support intervals are undefined on the c0 curve");
    }
    // x = lo + (hi - lo)(1 - cos theta)/2 removes the square-root edges;
    // Simpson's rule on each theta panel.
    const double h = std::numbers::pi / static_cast<double>(panels_);
    for (const auto& span : report_.intervals) {
        const double half = 0.5 * (span.hi - span.lo);
        auto integrand = [&](double theta) {
            return density(law, span.lo + half * (1.0 - std::cos(theta))) * half * std::sin(theta);
        };
        Table table{span, std::vector<double>(panels_ + 1, 0.0)};
        double left = integrand(0.0);
        for (std::size_t j = 0; j < panels_; ++j) {
            const double t0 = h * static_cast<double>(j);
            const double right = integrand(t0 + h);
            table.cumulative[j + 1] = table.cumulative[j] + h / 6.0 * (left + 4.0 * integrand(t0 + 0.5 * h) + right);
            left = right;
        }
        tables_.push_back(std::move(table));
    }
}

double SpectralCdf::operator()(double x) const
{
    double total = x >= 0.0 ? report_.atom_mass : 0.0;
    const double h = std::numbers::pi / static_cast<double>(panels_);
    for (const auto& t : tables_) {
        if (x >= t.span.hi) {
            total += t.cumulative.back();
        } else if (x > t.span.lo) {
            const double ratio = std::clamp(1.0 - 2.0 * (x - t.span.lo) / (t.span.hi - t.span.lo), -1.0, 1.0);
            const double theta = std::acos(ratio);
            const auto j = std::min(static_cast<std::size_t>(theta / h), panels_ - 1);
            const double w = theta / h - static_cast<double>(j);
            total += (1.0 - w) * t.cumulative[j] + w * t.cumulative[j + 1];
        }
    }
    return total;
}

} // namespace redlab::limitlaw
