#include "impactlab/manifest.hpp"

#include "impactlab/csv.hpp"
#include "impactlab/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>

namespace impactlab {

std::string content_hash(const std::vector<std::string>& parts) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](unsigned char ch) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    };
    for (const auto& part : parts) {
        for (unsigned char ch : part) mix(ch);
        mix('\x1f');
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentManifest make_manifest(const std::vector<std::string>& args,
                                 const std::vector<std::string>& outputs) {
    ExperimentManifest m;
    // the id identifies the experiment, not where it was written
    std::vector<std::string> config_args;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out") {
            ++i;
            continue;
        }
        config_args.push_back(args[i]);
    }
    m.id = content_hash(config_args);
    m.tool_version = kToolVersion;
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char stamp[32];
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.created_at = stamp;
    m.args = args;
    m.outputs = outputs;
    return m;
}

std::string manifest_to_json(const ExperimentManifest& m) {
    nlohmann::json j;
    j["id"] = m.id;
    j["tool_version"] = m.tool_version;
    j["created_at"] = m.created_at;
    j["args"] = m.args;
    j["outputs"] = m.outputs;
    return j.dump(2) + "\n";
}

ExperimentManifest manifest_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    ExperimentManifest m;
    m.id = j.at("id").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    m.args = j.at("args").get<std::vector<std::string>>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    return m;
}

void write_manifest(const std::string& dir, const ExperimentManifest& m) {
    write_text_file(dir + "/manifest.json", manifest_to_json(m));
}

ExperimentManifest load_manifest(const std::string& path) {
    return manifest_from_json(read_text_file(path));
}

} // namespace impactlab
