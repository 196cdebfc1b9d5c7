#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace qsearch::cli {

struct OutputRecord {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> params;
    std::string started;
    std::string finished;
    std::string tool_version;
    std::vector<OutputRecord> outputs;
};

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& p);
std::string utc_timestamp();

OutputRecord record_output(const std::filesystem::path& dir, const std::filesystem::path& file);
std::string manifest_json(const RunManifest& m);
std::filesystem::path write_manifest(const RunManifest& m, const std::filesystem::path& dir);
RunManifest read_manifest(const std::filesystem::path& file);
// True when every listed output exists under dir with a matching hash.
bool verify_manifest(const RunManifest& m, const std::filesystem::path& dir, std::string* why = nullptr);

}  // namespace qsearch::cli
