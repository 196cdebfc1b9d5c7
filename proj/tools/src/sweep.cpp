#include "qsearch_cli/sweep.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qsearch_cli/table.hpp"

namespace qsearch::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& s, const std::string& key) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw std::invalid_argument("bad number '" + s + "' in range for " + key);
    return v;
}

std::vector<std::string> expand(const std::string& key, const std::string& raw) {
    std::vector<std::string> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto c1 = item.find(':');
        if (c1 == std::string::npos) {
            out.push_back(item);
            continue;
        }
        const auto c2 = item.find(':', c1 + 1);
        if (c2 == std::string::npos) throw std::invalid_argument("range for " + key + " needs start:stop:step");
        const double a = to_number(trim(item.substr(0, c1)), key);
        const double b = to_number(trim(item.substr(c1 + 1, c2 - c1 - 1)), key);
        const double h = to_number(trim(item.substr(c2 + 1)), key);
        if (!(h > 0) || b < a) throw std::invalid_argument("range for " + key + " must have step > 0 and stop >= start");
        const auto n = static_cast<long>(std::floor((b - a) / h + 1e-9));
        if (n > 100000) throw std::invalid_argument("range for " + key + " is too long");
        for (long i = 0; i <= n; ++i) {
            const double v = a + static_cast<double>(i) * h;
            out.push_back(v == std::floor(v) && std::abs(v) < 9e15 ? fmt(static_cast<std::int64_t>(v)) : fmt(v));
        }
    }
    return out;
}

}  // namespace

std::size_t SweepConfig::cell_count() const {
    if (grid.empty()) return 0;
    std::size_t n = 1;
    for (const auto& [k, v] : grid) n *= v.size();
    return n;
}

std::vector<std::vector<std::pair<std::string, std::string>>> SweepConfig::cells() const {
    const std::size_t n = cell_count();
    std::vector<std::vector<std::pair<std::string, std::string>>> out(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t rem = c;
        std::vector<std::pair<std::string, std::string>> cell(grid.size());
        for (std::size_t g = grid.size(); g-- > 0;) {
            const auto& vals = grid[g].second;
            cell[g] = {grid[g].first, vals[rem % vals.size()]};
            rem /= vals.size();
        }
        out[c] = std::move(cell);
    }
    return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
        if (key == "command") {
            cfg.command = val;
        } else if (key == "out") {
            cfg.out = val;
        } else if (key == "workers") {
            const double w = to_number(val, key);
            if (w < 1 || w != std::floor(w)) throw std::invalid_argument("workers must be a positive integer");
            cfg.workers = static_cast<unsigned>(w);
        } else {
            for (const auto& [k, v] : cfg.grid)
                if (k == key) throw std::invalid_argument("duplicate grid key " + key);
            auto values = expand(key, val);
            if (values.empty()) throw std::invalid_argument("empty grid for key " + key);
            cfg.grid.emplace_back(key, std::move(values));
        }
    }
    if (cfg.command.empty()) throw std::invalid_argument("config has no command");
    if (cfg.command == "sweep") throw std::invalid_argument("a sweep cannot run sweep cells");
    if (cfg.grid.empty()) throw std::invalid_argument("empty grid: no parameter keys in config");
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& file) {
    std::ifstream f(file);
    if (!f) throw std::invalid_argument("cannot open config " + file.string());
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_sweep_config(ss.str());
}

}  // namespace qsearch::cli
