#pragma once

#include <string>
#include <vector>

namespace impactlab {

/// Record of one tool invocation, written next to its outputs. Re-running
/// the stored args reproduces the CSV outputs byte for byte (the created_at
/// stamp is the only field excluded from that contract).
struct ExperimentManifest {
    std::string id; // content hash of the normalized args
    std::string tool_version;
    std::string created_at;
    std::vector<std::string> args;
    std::vector<std::string> outputs;
};

ExperimentManifest make_manifest(const std::vector<std::string>& args,
                                 const std::vector<std::string>& outputs);

std::string manifest_to_json(const ExperimentManifest& m);
ExperimentManifest manifest_from_json(const std::string& text);

void write_manifest(const std::string& dir, const ExperimentManifest& m);
ExperimentManifest load_manifest(const std::string& path);

/// FNV-1a 64-bit hex digest; the manifest id.
std::string content_hash(const std::vector<std::string>& parts);

} // namespace impactlab
