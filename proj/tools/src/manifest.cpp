#include "qsearch_cli/manifest.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qsearch::cli {

namespace {

std::string hex(const unsigned char* d, unsigned n) {
    static const char* digits = "0123456789abcdef";
    std::string s(2 * n, '0');
    for (unsigned i = 0; i < n; ++i) {
        s[2 * i] = digits[d[i] >> 4];
        s[2 * i + 1] = digits[d[i] & 15];
    }
    return s;
}

std::string read_all(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
        throw std::runtime_error("sha256 failed");
    return hex(md, len);
}

std::string sha256_file(const std::filesystem::path& p) { return sha256_hex(read_all(p)); }

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[40];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
    char out[48];
    std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
    return out;
}

OutputRecord record_output(const std::filesystem::path& dir, const std::filesystem::path& file) {
    OutputRecord r;
    r.path = std::filesystem::relative(file, dir).generic_string();
    r.sha256 = sha256_file(file);
    r.bytes = std::filesystem::file_size(file);
    return r;
}

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["params"] = m.params;
    j["started"] = m.started;
    j["finished"] = m.finished;
    j["tool_version"] = m.tool_version;
    j["outputs"] = nlohmann::json::array();
    for (const auto& o : m.outputs) j["outputs"].push_back({{"path", o.path}, {"sha256", o.sha256}, {"bytes", o.bytes}});
    return j.dump(2) + "\n";
}

std::filesystem::path write_manifest(const RunManifest& m, const std::filesystem::path& dir) {
    std::string stem = m.command;
    for (char& c : stem)
        if (c == '-') c = '_';
    const auto path = dir / ("manifest_" + stem + ".json");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << manifest_json(m);
    return path;
}

RunManifest read_manifest(const std::filesystem::path& file) {
    const auto j = nlohmann::json::parse(read_all(file));
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.params = j.at("params").get<std::map<std::string, std::string>>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    for (const auto& o : j.at("outputs"))
        m.outputs.push_back({o.at("path").get<std::string>(), o.at("sha256").get<std::string>(),
                             o.at("bytes").get<std::uintmax_t>()});
    return m;
}

bool verify_manifest(const RunManifest& m, const std::filesystem::path& dir, std::string* why) {
    for (const auto& o : m.outputs) {
        const auto p = dir / o.path;
        if (!std::filesystem::exists(p)) {
            if (why) *why = "missing " + o.path;
            return false;
        }
        if (sha256_file(p) != o.sha256) {
            if (why) *why = "hash mismatch for " + o.path;
            return false;
        }
    }
    return true;
}

}  // namespace qsearch::cli
