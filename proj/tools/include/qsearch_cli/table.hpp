#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qsearch::cli {

// 17 significant digits, enough to round-trip a double.
std::string fmt(double x);
std::string fmt(std::int64_t x);
inline std::string fmt(int x) { return fmt(static_cast<std::int64_t>(x)); }
inline std::string fmt(std::size_t x) { return fmt(static_cast<std::int64_t>(x)); }
inline std::string fmt(const std::string& s) { return s; }
inline std::string fmt(const char* s) { return s; }

struct Table {
    std::string name;  // file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    template <class... Ts>
    void add(const Ts&... cells) {
        rows.push_back({fmt(cells)...});
    }
};

std::string to_csv(const Table& t);
// Writes t atomically enough for our purposes: temp file then rename.
void write_csv(const Table& t, const std::filesystem::path& path);

}  // namespace qsearch::cli
