#include "redlab/cli.hpp"

#include "redlab/combinatorics.hpp"
#include "redlab/error.hpp"
#include "redlab/limitlaw.hpp"
#include "redlab/moments.hpp"
#include "redlab/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace redlab::cli {

namespace {

namespace cb = redlab::combinatorics;
namespace mo = redlab::moments;
namespace ll = redlab::limitlaw;
namespace rm = redlab::randmat;

std::vector<Check> combinatorics_checks()
{
    return {
        {"nc_count_is_catalan",
         [](std::string& detail) {
             for (std::size_t p = 1; p <= 10; ++p) {
                 if (cb::enumerate_nc_partitions(p).size() != cb::catalan(p)) {
                     detail = "count differs at p = " + std::to_string(p);
                     return false;
                 }
             }
             return true;
         }},
        {"nc_permutations_geodesic_and_injective",
         [](std::string& detail) {
             for (std::size_t p = 1; p <= 8; ++p) {
                 std::set<std::string> seen;
                 for (const auto& pi : cb::enumerate_nc_partitions(p)) {
                     const auto perm = cb::nc_to_permutation(pi);
                     if (!cb::is_geodesic(perm) || perm.cycle_count() != pi.blocks().size()
                         || !(cb::permutation_to_nc(perm) == pi) || !seen.insert(perm.to_string()).second) {
                         detail = "failure at p = " + std::to_string(p);
                         return false;
                     }
                 }
             }
             return true;
         }},
        {"choice_permutation_lemma",
         [](std::string& detail) {
             for (std::size_t p = 1; p <= 7; ++p) {
                 for (std::uint64_t m = 0; m < (1ULL << p); ++m) {
                     const auto f = cb::ChoiceFunction::from_mask(p, m);
                     const auto pf = cb::build_choice_permutation(f);
                     const auto counts = cb::pf_cycle_counts(f);
                     const auto complement = pf.inverse() * cb::Permutation::full_cycle(p);
                     if (!cb::is_geodesic(pf) || counts.choice_cycles != pf.cycle_count()
                         || counts.complement_cycles != complement.cycle_count()) {
                         detail = "p = " + std::to_string(p) + ", mask = " + std::to_string(m);
                         return false;
                     }
                 }
             }
             return true;
         }},
        {"pf_inverse_alpha_exhaustive",
         [](std::string& detail) {
             std::size_t cases = 0;
             for (std::size_t p = 1; p <= 6; ++p) {
                 for (std::uint64_t r = 0; r < cb::factorial(p); ++r) {
                     const auto alpha = cb::unrank_permutation(p, r);
                     if (!cb::is_geodesic(alpha)) {
                         continue;
                     }
                     for (std::uint64_t m = 0; m < (1ULL << p); ++m) {
                         const auto f = cb::ChoiceFunction::from_mask(p, m);
                         const auto direct = (cb::build_choice_permutation(f).inverse() * alpha).cycle_count();
                         if (cb::pf_inverse_alpha_cycles(f, alpha) != direct) {
                             detail = "alpha = " + alpha.to_string();
                             return false;
                         }
                         ++cases;
                     }
                 }
             }
             detail = std::to_string(cases) + " (alpha, f) pairs";
             return true;
         }},
        {"pf_inverse_alpha_non_geodesic",
         [](std::string& detail) {
             // The formula at alpha = (1 3)(2 4), f = (1,2,1,2) evaluates to 3 and the
             // checked entry point rejects alpha; off geodesics the formula can be wrong,
             // e.g. alpha = (1 2 3), f = (2,2,2) where it gives 3 against 1 cycle.
             const auto alpha = cb::Permutation::from_cycles(4, {{1, 3}, {2, 4}});
             const cb::ChoiceFunction f({1, 2, 1, 2});
             bool rejected = false;
             try {
                 cb::pf_inverse_alpha_cycles(f, alpha);
             } catch (const NonGeodesicError&) {
                 rejected = true;
             }
             const auto beta = cb::Permutation::from_cycles(3, {{1, 2, 3}});
             const cb::ChoiceFunction g({2, 2, 2});
             const long wrong = cb::pf_inverse_alpha_formula(g, beta);
             const auto direct = (cb::build_choice_permutation(g).inverse() * beta).cycle_count();
             detail = "formula " + std::to_string(cb::pf_inverse_alpha_formula(f, alpha)) + " at (1 3)(2 4); "
                      + std::to_string(wrong) + " vs " + std::to_string(direct) + " at (1 2 3)";
             return cb::pf_inverse_alpha_formula(f, alpha) == 3 && rejected && !cb::is_geodesic(beta)
                    && wrong == 3 && direct == 1;
         }},
    };
}

// m_n = sum_s kappa_s sum_{i_1+...+i_s = n-s} m_{i_1}...m_{i_s}.
std::vector<double> moments_by_recursion(const std::vector<double>& kappa, unsigned p_max)
{
    std::vector<double> m(p_max + 1, 0.0);
    m[0] = 1.0;
    for (unsigned n = 1; n <= p_max; ++n) {
        // conv[s][t]: sum over compositions of t into s parts of products of m.
        std::vector<std::vector<double>> conv(n + 1, std::vector<double>(n, 0.0));
        conv[0][0] = 1.0;
        for (unsigned s = 1; s <= n; ++s) {
            for (unsigned t = 0; t + s <= n; ++t) {
                double acc = 0.0;
                for (unsigned i = 0; i <= t; ++i) {
                    acc += m[i] * conv[s - 1][t - i];
                }
                conv[s][t] = acc;
            }
            m[n] += kappa[s - 1] * conv[s][n - s];
        }
    }
    return m;
}

std::vector<Check> moments_checks()
{
    return {
        {"closed_form_identity",
         [](std::string& detail) {
             for (std::uint64_t n = 1; n <= 5; ++n) {
                 for (std::uint64_t k = 1; k <= 5; ++k) {
                     for (std::uint64_t s = 1; s <= 5; ++s) {
                         for (unsigned p = 1; p <= 2; ++p) {
                             const mo::MomentQuery q{n, k, s, p};
                             if (mo::exact_trace_moment(q).value != mo::closed_form_moment(q).value) {
                                 detail = "mismatch at (" + std::to_string(n) + "," + std::to_string(k) + ","
                                          + std::to_string(s) + "," + std::to_string(p) + ")";
                                 return false;
                             }
                         }
                     }
                 }
             }
             return true;
         }},
        {"k1_annihilation",
         [](std::string&) {
             for (std::uint64_t n = 1; n <= 5; ++n) {
                 for (std::uint64_t s = 1; s <= 5; ++s) {
                     for (unsigned p = 1; p <= 5; ++p) {
                         if (mo::exact_trace_moment({n, 1, s, p}).value != 0) {
                             return false;
                         }
                     }
                 }
             }
             return true;
         }},
        {"unbalanced_limit_consistency",
         [](std::string& detail) {
             double worst = 0.0;
             for (unsigned p = 1; p <= 5; ++p) {
                 const double limit = mo::limit_moment(mo::Regime::unbalanced_second, 3, 2, p);
                 double previous = INFINITY;
                 for (std::uint64_t n : {50, 100, 200}) {
                     const double err =
                         std::abs(mo::normalized_moment({n, 3, 6 * n, p}, mo::Regime::unbalanced_second) - limit)
                         / limit;
                     if (err > previous) {
                         detail = "error not monotone at p = " + std::to_string(p);
                         return false;
                     }
                     previous = err;
                 }
                 worst = std::max(worst, previous);
             }
             detail = "max relative error at n = 200: " + format_double(worst);
             return worst <= 0.05;
         }},
        {"cumulant_recursion_agreement",
         [](std::string& detail) {
             double worst = 0.0;
             for (double k : {2.0, 3.0, 4.5}) {
                 for (double c : {0.05, 1.0, 2.0}) {
                     std::vector<double> kappa;
                     for (unsigned p = 1; p <= 8; ++p) {
                         kappa.push_back(mo::free_cumulant(k, c, p));
                     }
                     const auto rec = moments_by_recursion(kappa, 8);
                     for (unsigned p = 1; p <= 8; ++p) {
                         const double nc = mo::moments_from_cumulants(kappa, p);
                         worst = std::max(worst, std::abs(nc - rec[p]) / std::max(1.0, std::abs(rec[p])));
                     }
                 }
             }
             detail = "max relative gap " + format_double(worst);
             return worst <= 1e-12;
         }},
    };
}

std::vector<Check> limitlaw_checks()
{
    return {
        {"k0_crossing",
         [](std::string& detail) {
             const double k0 = ll::find_k0();
             detail = "k0 = " + format_double(k0);
             return std::abs(k0 - 13.637) <= 0.01;
         }},
        {"c0_residual_and_limit",
         [](std::string& detail) {
             for (double k = 2.0; k <= 100.0; k += 0.25) {
                 ll::curve_c0(k);  // throws on residual failure
             }
             const double far = ll::curve_c0(1e6);
             detail = "c0(1e6) = " + format_double(far);
             return std::abs(far - 0.125) <= 1e-3;
         }},
        {"curve_ordering",
         [](std::string& detail) {
             for (double k = 2.0; k <= 50.0; k += 0.125) {
                 const double c1 = ll::curve_c1(k);
                 if (!(1.0 / (k * k) <= c1 && c1 < ll::curve_c2(k) && c1 < ll::curve_c0(k))) {
                     detail = "ordering fails at k = " + format_double(k);
                     return false;
                 }
             }
             return true;
         }},
        {"red_below_ppt",
         [](std::string& detail) {
             for (double k = 3.0; k <= 100.0; k += 0.5) {
                 if (!(ll::threshold_red(k) < ll::threshold_ppt(k))) {
                     detail = "fails at k = " + format_double(k);
                     return false;
                 }
             }
             return std::abs(ll::threshold_red(2.0) - ll::threshold_ppt(2.0)) <= 1e-12;
         }},
        {"density_mass_and_mean",
         [](std::string& detail) {
             std::ostringstream os;
             bool ok = true;
             for (auto [k, c] : {std::pair{3.0, 2.0}, {5.0, 1.0}, {2.0, 4.0}, {3.0, 0.05}}) {
                 const ll::CompoundFreePoissonLaw law(k, c);
                 const auto report = ll::region_classify(law);
                 double mass = report.atom_mass;
                 double mean = 0.0;
                 const int panels = 2000;
                 for (const auto& iv : report.intervals) {
                     const double half = 0.5 * (iv.hi - iv.lo);
                     for (int j = 0; j < panels; ++j) {
                         const double t = (j + 0.5) * M_PI / panels;
                         const double x = iv.lo + half * (1.0 - std::cos(t));
                         const double w = ll::density(law, x) * half * std::sin(t) * M_PI / panels;
                         mass += w;
                         mean += w * x;
                     }
                 }
                 const double m1 = c * k * (k - 1.0);
                 ok = ok && std::abs(mass - 1.0) <= 1e-3 && std::abs(mean - m1) <= 0.01 * m1;
                 os << "(" << k << "," << c << "): mass " << mass << " mean " << mean << "; ";
             }
             detail = os.str();
             return ok;
         }},
        {"descartes_cross_check",
         [](std::string& detail) {
             std::size_t tested = 0;
             for (double k = 2.0; k <= 20.0; k += 0.5) {
                 for (double c = 0.005; c <= 4.0; c *= 1.3) {
                     const auto r = ll::region_classify(ll::CompoundFreePoissonLaw(k, c));
                     if (r.descartes_consistent) {
                         ++tested;
                         if (!*r.descartes_consistent) {
                             detail = "disagreement at k = " + format_double(k) + ", c = " + format_double(c);
                             return false;
                         }
                     }
                 }
             }
             detail = std::to_string(tested) + " laws with 4 real roots and epsilon > 0";
             return tested > 0;
         }},
    };
}

std::vector<Check> randmat_checks()
{
    return {
        {"choi_spectra",
         [](std::string& detail) {
             for (std::size_t k = 2; k <= 6; ++k) {
                 const auto phi = rm::hermitian_eigenvalues(rm::choi_reduction_map(k));
                 if (std::abs(phi.front() - (1.0 - static_cast<double>(k))) > 1e-10) {
                     detail = "C_phi lowest eigenvalue wrong at k = " + std::to_string(k);
                     return false;
                 }
                 for (std::size_t i = 1; i < phi.size(); ++i) {
                     if (std::abs(phi[i] - 1.0) > 1e-10) {
                         detail = "C_phi spectrum wrong at k = " + std::to_string(k);
                         return false;
                     }
                 }
                 if (rm::hermitian_eigenvalues(rm::choi_psi(k)).front() < -1e-10) {
                     detail = "C_psi not PSD at k = " + std::to_string(k);
                     return false;
                 }
             }
             return true;
         }},
        {"trace_identity",
         [](std::string& detail) {
             const auto w = rm::wishart(rm::sample_ginibre(12, 20, 7));
             const auto r = rm::reduce(w, 4, 3);
             const double gap = std::abs(r.trace() - 2.0 * w.trace()) / std::abs(w.trace());
             detail = "relative gap " + format_double(gap);
             return r.is_hermitian() && gap <= 1e-9;
         }},
        {"rank_bound",
         [](std::string& detail) {
             rm::SimulationConfig cfg;
             cfg.n = 50;
             cfg.k = 2;
             cfg.s = 10;
             const auto r = rm::rank_check(cfg);
             detail = "rank " + std::to_string(r.observed_rank) + " <= " + std::to_string(r.bound);
             return r.observed_rank <= r.bound;
         }},
        {"image_containment",
         [](std::string& detail) {
             const double res = rm::image_containment_residual(5, 3, 11);
             detail = "residual " + format_double(res);
             return res <= 1e-8;
         }},
        {"ensemble_determinism",
         [](std::string&) {
             rm::SimulationConfig cfg;
             cfg.n = 6;
             cfg.k = 2;
             cfg.s = 20;
             cfg.trials = 6;
             cfg.master_seed = 99;
             const auto a = rm::run_reduction_ensemble(cfg, 1);
             const auto b = rm::run_reduction_ensemble(cfg, 3);
             for (std::size_t t = 0; t < a.size(); ++t) {
                 if (a[t].eigenvalues != b[t].eigenvalues) {
                     return false;
                 }
             }
             return true;
         }},
        {"monte_carlo_moments",
         [](std::string& detail) {
             rm::SimulationConfig cfg;
             cfg.n = 3;
             cfg.k = 3;
             cfg.s = 9;
             cfg.trials = 4000;
             cfg.master_seed = 2024;
             cfg.normalization = rm::Normalization::none;
             const auto samples = rm::run_reduction_ensemble(cfg);
             std::ostringstream os;
             bool ok = true;
             for (unsigned p = 1; p <= 4; ++p) {
                 double sum = 0.0;
                 double sq = 0.0;
                 for (const auto& s : samples) {
                     const double v = rm::empirical_moments(s.eigenvalues, p)[p - 1];
                     sum += v;
                     sq += v * v;
                 }
                 const double count = static_cast<double>(samples.size());
                 const double mean = sum / count;
                 const double se = std::sqrt(std::max(0.0, sq / count - mean * mean) / count);
                 const double exact = mo::exact_trace_moment({3, 3, 9, p}).value.convert_to<double>() / 9.0;
                 const double z = std::abs(mean - exact) / se;
                 ok = ok && z <= 5.0;
                 os << "p" << p << " z=" << format_double(z) << " ";
             }
             detail = os.str();
             return ok;
         }},
    };
}

} // namespace

std::vector<Check> suite_checks(const std::string& suite)
{
    if (suite == "combinatorics") {
        return combinatorics_checks();
    }
    if (suite == "moments") {
        return moments_checks();
    }
    if (suite == "limitlaw") {
        return limitlaw_checks();
    }
    if (suite == "randmat") {
        return randmat_checks();
    }
    if (suite == "all") {
        std::vector<Check> all;
        for (auto part : {combinatorics_checks(), moments_checks(), limitlaw_checks(), randmat_checks()}) {
            all.insert(all.end(), part.begin(), part.end());
        }
        return all;
    }
    throw InvalidArgument("unknown suite '" + suite + "'");
}

bool VerifyReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

Json VerifyReport::to_json() const
{
    Json list = Json::array();
    for (const auto& c : checks) {
        list.push_back({{"name", c.name},
                        {"status", c.passed ? "pass" : "fail"},
                        {"detail", c.detail},
                        {"seconds", c.seconds}});
    }
    return {{"schema", kSchema}, {"suite", suite}, {"passed", passed()}, {"checks", list}};
}

VerifyReport run_checks(const std::string& suite, const std::vector<Check>& checks)
{
    VerifyReport report{suite, {}};
    for (const auto& check : checks) {
        CheckResult result{check.name, false, "", 0.0};
        const auto start = std::chrono::steady_clock::now();
        try {
            result.passed = check.run(result.detail);
        } catch (const std::exception& e) {
            result.passed = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.checks.push_back(std::move(result));
    }
    return report;
}

int verify_exit_code(const VerifyReport& report)
{
    return report.passed() ? kExitOk : kExitFailure;
}

} // namespace redlab::cli
