#pragma once

/**
 * @file moments.hpp
 * @brief Exact finite-size trace moments of the reduced Wishart matrix
 *        R = W_A (x) I_k - W and their limits in the three scaling regimes.
 *
 * E Tr(R^p) is a polynomial in (n, k, s) with integer coefficients:
 *
 *   sum over alpha in S_p, f in F_p of
 *     (-1)^{|f^{-1}(2)|} s^{#alpha} n^{#(gamma^{-1} alpha)} k^{1_{f=1} + #(P_f^{-1} alpha)}.
 *
 * The coefficient table for order p is built once by sweeping S_p x F_p and
 * then evaluated in arbitrary precision for any (n, k, s).
 */

#include "redlab/combinatorics.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace redlab::moments {

using BigInt = boost::multiprecision::cpp_int;

struct MomentQuery {
    std::uint64_t n = 1;  ///< dimension of the first factor
    std::uint64_t k = 1;  ///< dimension of the factor the reduction map acts on
    std::uint64_t s = 1;  ///< environment dimension
    unsigned p = 1;       ///< moment order
};

struct ExactMoment {
    MomentQuery query;
    BigInt value;  ///< E Tr(R^p)
};

struct MomentOptions {
    /// Largest p for which S_p x F_p may be swept (8! * 2^8 ~ 10.3M pairs).
    unsigned max_order = static_cast<unsigned>(combinatorics::kDefaultSymmetricCap);
    /// 0 means worker_count().
    unsigned threads = 0;
};

/// One monomial coeff * s^s_exp * n^n_exp * k^k_exp.
struct MomentTerm {
    unsigned s_exp;
    unsigned n_exp;
    unsigned k_exp;
    std::int64_t coeff;
};

/// E Tr(R^p) as an integer polynomial in (n, k, s).
class MomentPolynomial {
public:
    MomentPolynomial(unsigned order, std::vector<MomentTerm> terms) : order_(order), terms_(std::move(terms)) {}

    unsigned order() const { return order_; }
    const std::vector<MomentTerm>& terms() const { return terms_; }

    BigInt evaluate(std::uint64_t n, std::uint64_t k, std::uint64_t s) const;

private:
    unsigned order_;
    std::vector<MomentTerm> terms_;
};

/// Coefficient table for order p; cached process-wide after the first call.
/// Throws CapExceeded when p > options.max_order.
const MomentPolynomial& moment_polynomial(unsigned p, const MomentOptions& options = {});

/// Validates a query (all fields >= 1, p within the cap).
void validate(const MomentQuery& q, unsigned max_order);

ExactMoment exact_trace_moment(const MomentQuery& q, const MomentOptions& options = {});

/// The printed closed forms for p = 1 and p = 2:
///   E Tr R   = nk(k-1)s
///   E Tr R^2 = (k-2)[(ks)^2 n + ks n^2] + nks^2 + (nk)^2 s
/// Throws InvalidArgument for any other p.
ExactMoment closed_form_moment(const MomentQuery& q);

enum class Regime {
    balanced,           ///< n, k -> infinity, s ~ cnk; normalised by ks
    unbalanced_first,   ///< n fixed, k -> infinity, s ~ cnk; normalised by ks
    unbalanced_second,  ///< k fixed, n -> infinity, s ~ cnk; normalised by n
};

Regime parse_regime(const std::string& name);
std::string to_string(Regime regime);

/// (nk)^{-1} E Tr((R / scale)^p), with scale = ks for the first two regimes
/// and scale = n for unbalanced_second, computed from the exact moment.
double normalized_moment(const MomentQuery& q, Regime regime, const MomentOptions& options = {});

struct LimitOptions {
    unsigned nc_cap = static_cast<unsigned>(combinatorics::kDefaultNcCap);
    /// NC sums above p = 12 cost tens of millions of products; callers must
    /// opt in explicitly.
    bool allow_large = false;
};

/// kappa_p(mu_{k,c}) = c[(1-k)^p + k^2 - 1]. k is real here.
double free_cumulant(double k, double c, unsigned p);

/// m_p = sum over pi in NC(p) of prod_{b in pi} kappa_{|b|}, with
/// cumulants[0] = kappa_1. Throws InvalidArgument if fewer than p cumulants.
double moments_from_cumulants(std::span<const double> cumulants, unsigned p, const LimitOptions& options = {});

/// Limit of the normalised moments. balanced and unbalanced_first converge
/// to 1 (k and c are ignored); unbalanced_second returns
///   sum over alpha in NC(p) of prod_{b in alpha} c[(1-k)^{|b|} + k^2 - 1]
/// and requires k >= 2, c > 0.
double limit_moment(Regime regime, double k, double c, unsigned p, const LimitOptions& options = {});

} // namespace redlab::moments
