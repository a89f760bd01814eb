#include "redlab/cli.hpp"

#include "redlab/error.hpp"
#include "redlab/limitlaw.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>

namespace redlab::cli {

namespace {

struct Destination {
    std::string stream;
    std::string path;
};

std::vector<Destination> destinations(const CommandResult& result, const Json& parameters)
{
    const auto paths = output_paths(parameters);
    std::vector<Destination> out;
    for (const auto& [stream, content] : result.streams) {
        auto it = paths.find(stream);
        std::string path = it != paths.end() ? it->second : (stream == "text" ? "-" : "");
        if (!path.empty()) {
            out.push_back({stream, path});
        }
    }
    return out;
}

void emit(const std::string& path, const std::string& content)
{
    if (path == "-") {
        std::cout << content << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InvalidArgument("cannot write '" + path + "'");
    }
    out << content;
}

int finish(const std::string& subcommand, const Json& parameters, const std::string& manifest_path)
{
    const auto result = execute(subcommand, parameters);
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.parameters = parameters;
    manifest.master_seed = parameters.value("seed", std::uint64_t{0});
    for (const auto& d : destinations(result, parameters)) {
        const auto& content = result.streams.at(d.stream);
        emit(d.path, content);
        manifest.outputs.push_back({d.stream, d.path, digest(content)});
    }
    if (!manifest_path.empty()) {
        write_manifest(manifest_path, manifest);
    }
    return result.exit_code;
}

int replay(const std::string& manifest_path, bool check)
{
    const auto manifest = read_manifest(manifest_path);
    const auto result = execute(manifest.subcommand, manifest.parameters);
    if (!check) {
        for (const auto& d : destinations(result, manifest.parameters)) {
            emit(d.path, result.streams.at(d.stream));
        }
        return result.exit_code;
    }
    bool identical = true;
    for (const auto& o : manifest.outputs) {
        auto it = result.streams.find(o.stream);
        const bool same = it != result.streams.end() && digest(it->second) == o.fnv1a64;
        identical = identical && same;
        std::cerr << (same ? "match    " : "MISMATCH ") << o.stream << " -> " << o.path << '\n';
    }
    return identical ? kExitOk : kExitFailure;
}

// Plots a little beyond the support when no range is given.
std::pair<double, double> default_range(double k, double c)
{
    const auto report = limitlaw::region_classify(limitlaw::CompoundFreePoissonLaw(k, c));
    if (report.intervals.empty()) {
        const double r = 2.0 * (c * k * k + k);
        return {-r, r};
    }
    const double lo = report.intervals.front().lo;
    const double hi = report.intervals.back().hi;
    const double pad = 0.05 * (hi - lo);
    return {std::min(lo - pad, report.atom_mass > 0.0 ? -pad : lo - pad), hi + pad};
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Exact moments, limit laws and Monte Carlo checks for reduced Wishart matrices", kToolName};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    std::string manifest_path = "redlab-manifest.json";

    auto add_manifest = [&](CLI::App* sub) {
        sub->add_option("--manifest", manifest_path, "Run manifest path (empty to skip)")->capture_default_str();
    };

    std::int64_t n = 0, k = 0, s = 0, p_max = 0, points = 201, trials = 1, bins = 60;
    double kd = 0.0, c = 0.0, k_min = 2.0, k_max = 100.0, step = 1.0;
    std::optional<double> x_min, x_max;
    std::uint64_t seed = 0;
    bool closed = false, exact = false, diagnostic = false, compare = false, check = false;
    std::string csv = "-", json, eigenvalues, suite = "all", replay_path;

    auto* moments = app.add_subcommand("moments", "Exact E Tr(R^p) for p = 1..p_max");
    moments->add_option("--n", n, "First subsystem dimension")->required();
    moments->add_option("--k", k, "Second subsystem dimension")->required();
    moments->add_option("--s", s, "Environment dimension")->required();
    moments->add_option("--p-max", p_max, "Largest moment order")->required();
    auto* exact_flag = moments->add_flag("--exact", exact, "Sum over S_p x F_p (default)");
    moments->add_flag("--closed", closed, "Closed forms (p <= 2)")->excludes(exact_flag);
    moments->add_option("--csv", csv, "CSV output ('-' for stdout)")->capture_default_str();
    add_manifest(moments);

    auto* density = app.add_subcommand("density", "Density of the limit law on a grid plus its support report");
    density->add_option("--k", kd, "k (real, >= 2)")->required();
    density->add_option("--c", c, "c > 0")->required();
    density->add_option("--x-min", x_min, "Grid start (default: just below the support)");
    density->add_option("--x-max", x_max, "Grid end (default: just above the support)");
    density->add_option("--points", points, "Grid points")->capture_default_str();
    density->add_option("--csv", csv, "CSV output ('-' for stdout)")->capture_default_str();
    density->add_option("--json", json, "Support report JSON path");
    add_manifest(density);

    auto* thresholds = app.add_subcommand("thresholds", "Table of 1/k^2, c1, c0, c_red and c_PPT");
    thresholds->add_option("--k-min", k_min, "First k")->capture_default_str();
    thresholds->add_option("--k-max", k_max, "Last k")->capture_default_str();
    thresholds->add_option("--step", step, "Step in k")->capture_default_str();
    thresholds->add_flag("--diagnostic", diagnostic, "Allow 1 < k < 2");
    thresholds->add_option("--csv", csv, "CSV output ('-' for stdout)")->capture_default_str();
    add_manifest(thresholds);

    auto* simulate = app.add_subcommand("simulate", "Eigenvalue histogram of R/n with s = ceil(cnk)");
    simulate->add_option("--n", n, "First subsystem dimension")->required();
    simulate->add_option("--k", k, "Second subsystem dimension")->required();
    simulate->add_option("--c", c, "Environment ratio c = s/(nk)")->required();
    simulate->add_option("--trials", trials, "Independent realizations")->capture_default_str();
    simulate->add_option("--seed", seed, "Master seed")->capture_default_str();
    simulate->add_option("--bins", bins, "Histogram bins")->capture_default_str();
    simulate->add_flag("--compare-density", compare, "Add the limit density and the KS distance");
    simulate->add_option("--csv", csv, "Histogram CSV ('-' for stdout)")->capture_default_str();
    simulate->add_option("--json", json, "Summary JSON path");
    simulate->add_option("--eigenvalues", eigenvalues, "Eigenvalue dump CSV path");
    add_manifest(simulate);

    auto* verify = app.add_subcommand("verify", "Run invariant suites");
    verify->add_option("--suite", suite, "combinatorics, moments, limitlaw, randmat or all")
        ->check(CLI::IsMember({"combinatorics", "moments", "limitlaw", "randmat", "all"}))
        ->capture_default_str();
    verify->add_option("--json", json, "JSON report path");
    add_manifest(verify);

    auto* replay_cmd = app.add_subcommand("replay", "Re-run a manifest");
    replay_cmd->add_option("manifest", replay_path, "Manifest written by an earlier run")->required();
    replay_cmd->add_flag("--check", check, "Compare output digests instead of writing outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (moments->parsed()) {
            Json p{{"n", n}, {"k", k}, {"s", s}, {"p_max", p_max}, {"mode", closed ? "closed" : "exact"}, {"csv", csv}};
            return finish("moments", p, manifest_path);
        }
        if (density->parsed()) {
            if (!x_min || !x_max) {
                const auto [lo, hi] = default_range(kd, c);
                x_min = x_min.value_or(lo);
                x_max = x_max.value_or(hi);
            }
            Json p{{"k", kd},          {"c", c},     {"x_min", *x_min}, {"x_max", *x_max},
                   {"points", points}, {"csv", csv}, {"json", json}};
            return finish("density", p, manifest_path);
        }
        if (thresholds->parsed()) {
            Json p{{"k_min", k_min}, {"k_max", k_max}, {"step", step}, {"diagnostic", diagnostic}, {"csv", csv}};
            return finish("thresholds", p, manifest_path);
        }
        if (simulate->parsed()) {
            Json p{{"n", n},       {"k", k},       {"c", c},
                   {"trials", trials}, {"seed", seed}, {"bins", bins},
                   {"compare_density", compare}, {"csv", csv}, {"json", json},
                   {"eigenvalues", eigenvalues}};
            return finish("simulate", p, manifest_path);
        }
        if (verify->parsed()) {
            return finish("verify", Json{{"suite", suite}, {"json", json}}, manifest_path);
        }
        return replay(replay_path, check);
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const GuardViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const BoundaryProximityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

} // namespace redlab::cli
