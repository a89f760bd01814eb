#include "redlab/moments.hpp"

#include "redlab/error.hpp"

#include <cmath>

namespace redlab::moments {

namespace {

constexpr unsigned kLargeOrder = 12;

void check_limit_order(unsigned p, const LimitOptions& options)
{
    if (p > kLargeOrder && !options.allow_large) {
        throw CapExceeded("NC(" + std::to_string(p) + ") sums above order " + std::to_string(kLargeOrder)
                          + " need allow_large");
    }
}

} // namespace

double free_cumulant(double k, double c, unsigned p)
{
    if (p == 0) {
        throw InvalidArgument("cumulant order must be at least 1");
    }
    return c * (std::pow(1.0 - k, static_cast<double>(p)) + k * k - 1.0);
}

double moments_from_cumulants(std::span<const double> cumulants, unsigned p, const LimitOptions& options)
{
    if (cumulants.size() < p) {
        throw InvalidArgument("need at least p free cumulants");
    }
    check_limit_order(p, options);
    // Neumaier summation: NC(12) alone has 208012 terms.
    double sum = 0.0, carry = 0.0;
    combinatorics::for_each_nc_block_sizes(
        p,
        [&](std::span<const std::size_t> sizes) {
            double term = 1.0;
            for (auto b : sizes) {
                term *= cumulants[b - 1];
            }
            const double t = sum + term;
            carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
            sum = t;
        },
        options.nc_cap);
    return sum + carry;
}

double limit_moment(Regime regime, double k, double c, unsigned p, const LimitOptions& options)
{
    if (p == 0) {
        throw InvalidArgument("moment order must be at least 1");
    }
    if (regime != Regime::unbalanced_second) {
        return 1.0;
    }
    if (!(k >= 2.0) || !(c > 0.0)) {
        throw InvalidArgument("limit law needs k >= 2 and c > 0");
    }
    std::vector<double> cumulants(p);
    for (unsigned i = 1; i <= p; ++i) {
        cumulants[i - 1] = free_cumulant(k, c, i);
    }
    return moments_from_cumulants(cumulants, p, options);
}

} // namespace redlab::moments
