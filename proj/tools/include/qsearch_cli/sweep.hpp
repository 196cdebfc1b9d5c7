#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsearch::cli {

// Flat key = value file. Lists are comma separated; a value of the form
// start:stop:step expands to an inclusive numeric range. Reserved keys are
// command, out and workers; every other key is passed as --key to the command.
struct SweepConfig {
    std::string command;
    std::optional<std::string> out;
    std::optional<unsigned> workers;
    std::vector<std::pair<std::string, std::vector<std::string>>> grid;

    std::size_t cell_count() const;
    // Cartesian product, first key varies slowest.
    std::vector<std::vector<std::pair<std::string, std::string>>> cells() const;
};

SweepConfig parse_sweep_config(const std::string& text);
SweepConfig load_sweep_config(const std::filesystem::path& file);

}  // namespace qsearch::cli
