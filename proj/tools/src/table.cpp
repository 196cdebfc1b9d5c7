#include "qsearch_cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qsearch::cli {

std::string fmt(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fmt(std::int64_t x) { return std::to_string(x); }

std::string to_csv(const Table& t) {
    std::string s;
    auto line = [&s](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) s += ',';
            s += cells[i];
        }
        s += '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) {
        if (r.size() != t.header.size()) throw std::logic_error("row width differs from header in " + t.name);
        line(r);
    }
    return s;
}

void write_csv(const Table& t, const std::filesystem::path& path) {
    const std::string body = to_csv(t);
    const auto tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp);
        f.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!f) throw std::runtime_error("write failed for " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace qsearch::cli
