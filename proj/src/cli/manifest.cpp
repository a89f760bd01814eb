#include "redlab/cli.hpp"

#include "redlab/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace redlab::cli {

std::string format_double(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::string digest(const std::string& bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json RunManifest::to_json() const
{
    Json outs = Json::array();
    for (const auto& o : outputs) {
        outs.push_back({{"stream", o.stream}, {"path", o.path}, {"fnv1a64", o.fnv1a64}});
    }
    return {{"schema", kSchema},       {"tool", kToolName},       {"version", version},
            {"subcommand", subcommand}, {"parameters", parameters}, {"master_seed", master_seed},
            {"outputs", outs}};
}

RunManifest RunManifest::from_json(const Json& j)
{
    if (!j.is_object() || j.value("schema", 0) != kSchema || j.value("tool", "") != kToolName) {
        throw InvalidArgument("not a schema-1 redlab manifest");
    }
    RunManifest m;
    m.subcommand = j.at("subcommand").get<std::string>();
    m.parameters = j.at("parameters");
    m.master_seed = j.value("master_seed", std::uint64_t{0});
    m.version = j.value("version", std::string(kVersion));
    for (const auto& o : j.value("outputs", Json::array())) {
        m.outputs.push_back(
            {o.at("stream").get<std::string>(), o.at("path").get<std::string>(), o.at("fnv1a64").get<std::string>()});
    }
    return m;
}

void write_manifest(const std::string& path, const RunManifest& manifest)
{
    std::ofstream out(path);
    if (!out) {
        throw InvalidArgument("cannot write manifest '" + path + "'");
    }
    out << manifest.to_json().dump(2) << '\n';
}

RunManifest read_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InvalidArgument("cannot read manifest '" + path + "'");
    }
    try {
        return RunManifest::from_json(Json::parse(in));
    } catch (const Json::exception& e) {
        throw InvalidArgument("malformed manifest '" + path + "': " + e.what());
    }
}

std::map<std::string, std::string> output_paths(const Json& parameters)
{
    std::map<std::string, std::string> paths;
    for (const char* key : {"csv", "json", "eigenvalues", "report"}) {
        if (parameters.contains(key)) {
            paths[key] = parameters[key].get<std::string>();
        }
    }
    return paths;
}

} // namespace redlab::cli
