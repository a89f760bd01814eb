#include "redlab/cli.hpp"

#include "redlab/error.hpp"
#include "redlab/limitlaw.hpp"
#include "redlab/moments.hpp"
#include "redlab/randmat.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace redlab::cli {

namespace {

template <class T>
T param(const Json& p, const char* key)
{
    if (!p.contains(key)) {
        throw InvalidArgument(std::string("missing parameter '") + key + "'");
    }
    try {
        return p.at(key).get<T>();
    } catch (const Json::exception&) {
        throw InvalidArgument(std::string("parameter '") + key + "' has the wrong type");
    }
}

std::uint64_t positive(const Json& p, const char* key)
{
    const auto v = param<std::int64_t>(p, key);
    if (v < 1) {
        throw InvalidArgument(std::string("--") + key + " must be >= 1");
    }
    return static_cast<std::uint64_t>(v);
}

Json interval_json(const std::vector<limitlaw::Interval>& intervals)
{
    Json out = Json::array();
    for (const auto& iv : intervals) {
        out.push_back({iv.lo, iv.hi});
    }
    return out;
}

Json support_json(const limitlaw::SupportReport& r)
{
    Json j{{"intervals", interval_json(r.intervals)},
           {"atom_mass", r.atom_mass},
           {"region", limitlaw::to_string(r.region)},
           {"positive_support", r.positive_support}};
    j["descartes_consistent"] = r.descartes_consistent ? Json(*r.descartes_consistent) : Json(nullptr);
    return j;
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

} // namespace

CommandResult cmd_moments(const Json& p)
{
    moments::MomentQuery q;
    q.n = positive(p, "n");
    q.k = positive(p, "k");
    q.s = positive(p, "s");
    const auto p_max = static_cast<unsigned>(positive(p, "p_max"));
    const auto mode = param<std::string>(p, "mode");
    if (mode != "exact" && mode != "closed") {
        throw InvalidArgument("mode must be 'exact' or 'closed'");
    }
    if (mode == "closed" && p_max > 2) {
        throw InvalidArgument("closed forms exist only for p <= 2");
    }
    moments::MomentOptions options;
    if (p_max > options.max_order) {
        throw CapExceeded("--p-max " + std::to_string(p_max) + " exceeds the S_p enumeration cap of "
                          + std::to_string(options.max_order));
    }
    std::ostringstream csv;
    csv << "p,moment\n";
    for (unsigned order = 1; order <= p_max; ++order) {
        q.p = order;
        const auto m = mode == "exact" ? moments::exact_trace_moment(q, options) : moments::closed_form_moment(q);
        csv << order << ',' << m.value.str() << '\n';
    }
    return {{{"csv", csv.str()}}, kExitOk};
}

CommandResult cmd_density(const Json& p)
{
    const limitlaw::CompoundFreePoissonLaw law(param<double>(p, "k"), param<double>(p, "c"));
    const double x_min = param<double>(p, "x_min");
    const double x_max = param<double>(p, "x_max");
    const auto points = positive(p, "points");
    if (!(x_max >= x_min)) {
        throw InvalidArgument("--x-max must not be below --x-min");
    }
    const auto report = limitlaw::region_classify(law);

    std::ostringstream csv;
    csv << "x,density\n";
    for (std::uint64_t i = 0; i < points; ++i) {
        const double x = points == 1 ? x_min
                                     : x_min + (x_max - x_min) * static_cast<double>(i)
                                                   / static_cast<double>(points - 1);
        csv << format_double(x) << ',' << format_double(limitlaw::density(law, x)) << '\n';
    }
    Json summary{{"schema", kSchema}, {"law", {{"k", law.k()}, {"c", law.c()}}}, {"support", support_json(report)}};
    return {{{"csv", csv.str()}, {"json", dump(summary)}}, kExitOk};
}

CommandResult cmd_thresholds(const Json& p)
{
    const double k_min = param<double>(p, "k_min");
    const double k_max = param<double>(p, "k_max");
    const double step = param<double>(p, "step");
    const bool diagnostic = p.value("diagnostic", false);
    if (!(step > 0.0) || !(k_max >= k_min)) {
        throw InvalidArgument("need step > 0 and k_max >= k_min");
    }
    if (diagnostic ? !(k_min > 1.0) : !(k_min >= 2.0)) {
        throw InvalidArgument(diagnostic ? "diagnostic mode needs k_min > 1" : "k_min must be >= 2");
    }
    const auto count = static_cast<std::uint64_t>(std::floor((k_max - k_min) / step + 1e-9)) + 1;
    std::ostringstream csv;
    csv << "k,inv_k2,c1,c0,c2_red,c_ppt\n";
    for (std::uint64_t i = 0; i < count; ++i) {
        const double k = k_min + step * static_cast<double>(i);
        csv << format_double(k) << ',' << format_double(1.0 / (k * k)) << ',' << format_double(limitlaw::curve_c1(k))
            << ',' << format_double(limitlaw::curve_c0(k)) << ',' << format_double(limitlaw::threshold_red(k)) << ','
            << format_double(limitlaw::threshold_ppt(k)) << '\n';
    }
    return {{{"csv", csv.str()}}, kExitOk};
}

CommandResult cmd_simulate(const Json& p)
{
    randmat::SimulationConfig cfg;
    cfg.n = positive(p, "n");
    cfg.k = positive(p, "k");
    const double c = param<double>(p, "c");
    if (!(c > 0.0)) {
        throw InvalidArgument("--c must be positive");
    }
    const double target = c * static_cast<double>(cfg.n) * static_cast<double>(cfg.k);
    cfg.s = static_cast<std::uint64_t>(std::ceil(target * (1.0 - 1e-12)));
    cfg.trials = static_cast<unsigned>(positive(p, "trials"));
    cfg.master_seed = param<std::uint64_t>(p, "seed");
    cfg.normalization = randmat::Normalization::over_n;
    const bool compare = p.value("compare_density", false);
    const auto bins = positive(p, "bins");
    cfg.validate();

    std::optional<limitlaw::CompoundFreePoissonLaw> law;
    if (compare) {
        law.emplace(static_cast<double>(cfg.k), c);
    }

    const auto samples = randmat::run_reduction_ensemble(cfg);
    std::vector<double> pooled;
    for (const auto& s : samples) {
        pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    }
    std::sort(pooled.begin(), pooled.end());

    const double lo = pooled.front();
    const double hi = pooled.back() > lo ? pooled.back() : lo + 1.0;
    const double width = (hi - lo) / static_cast<double>(bins);
    std::vector<std::uint64_t> counts(bins, 0);
    for (double v : pooled) {
        counts[std::min<std::uint64_t>(bins - 1, static_cast<std::uint64_t>((v - lo) / width))] += 1;
    }
    std::ostringstream csv;
    csv << "bin_lo,bin_hi,count,empirical_density" << (compare ? ",theoretical_density" : "") << '\n';
    for (std::uint64_t b = 0; b < bins; ++b) {
        const double a = lo + width * static_cast<double>(b);
        csv << format_double(a) << ',' << format_double(a + width) << ',' << counts[b] << ','
            << format_double(static_cast<double>(counts[b]) / (static_cast<double>(pooled.size()) * width));
        if (compare) {
            csv << ',' << format_double(limitlaw::density(*law, a + 0.5 * width));
        }
        csv << '\n';
    }

    Json moments_json = Json::array();
    std::vector<double> mean_moments(4, 0.0);
    for (const auto& s : samples) {
        const auto m = randmat::empirical_moments(s.eigenvalues, 4);
        for (std::size_t i = 0; i < 4; ++i) {
            mean_moments[i] += m[i] / static_cast<double>(samples.size());
        }
    }
    for (std::size_t i = 0; i < 4; ++i) {
        Json entry{{"p", i + 1}, {"value", mean_moments[i]}};
        if (compare) {
            entry["limit"] =
                moments::limit_moment(moments::Regime::unbalanced_second, static_cast<double>(cfg.k), c,
                                      static_cast<unsigned>(i + 1));
        }
        moments_json.push_back(entry);
    }

    const auto stats = randmat::min_eig_stats(samples);
    Json per_trial = Json::array();
    for (const auto& s : samples) {
        per_trial.push_back(s.eigenvalues.front());
    }
    Json summary{{"schema", kSchema},
                 {"config",
                  {{"n", cfg.n},
                   {"k", cfg.k},
                   {"s", cfg.s},
                   {"c", c},
                   {"trials", cfg.trials},
                   {"master_seed", cfg.master_seed},
                   {"normalization", randmat::to_string(cfg.normalization)}}},
                 {"empirical_moments", moments_json},
                 {"min_eig_stats",
                  {{"min", stats.min},
                   {"max", stats.max},
                   {"mean", stats.mean},
                   {"negative_samples", stats.negative_samples},
                   {"per_trial", per_trial}}}};
    if (compare) {
        const limitlaw::SpectralCdf cdf(*law);
        summary["ks_distance"] = randmat::ks_distance(pooled, [&](double x) { return cdf(x); });
        summary["support"] = support_json(cdf.support());
    } else {
        summary["ks_distance"] = nullptr;
    }

    CommandResult result{{{"csv", csv.str()}, {"json", dump(summary)}}, kExitOk};
    if (p.contains("eigenvalues") && !p["eigenvalues"].get<std::string>().empty()) {
        std::ostringstream eig;
        randmat::write_eigenvalue_csv(eig, samples);
        result.streams["eigenvalues"] = eig.str();
    }
    return result;
}

CommandResult cmd_verify(const Json& p)
{
    const auto suite = param<std::string>(p, "suite");
    const auto report = run_checks(suite, suite_checks(suite));
    std::ostringstream text;
    for (const auto& c : report.checks) {
        text << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << format_double(c.seconds) << " s)";
        if (!c.detail.empty()) {
            text << ": " << c.detail;
        }
        text << '\n';
    }
    text << (report.passed() ? "all checks passed" : "verification FAILED") << '\n';
    return {{{"text", text.str()}, {"json", dump(report.to_json())}}, verify_exit_code(report)};
}

CommandResult execute(const std::string& subcommand, const Json& parameters)
{
    if (subcommand == "moments") {
        return cmd_moments(parameters);
    }
    if (subcommand == "density") {
        return cmd_density(parameters);
    }
    if (subcommand == "thresholds") {
        return cmd_thresholds(parameters);
    }
    if (subcommand == "simulate") {
        return cmd_simulate(parameters);
    }
    if (subcommand == "verify") {
        return cmd_verify(parameters);
    }
    throw InvalidArgument("unknown subcommand '" + subcommand + "'");
}

} // namespace redlab::cli
