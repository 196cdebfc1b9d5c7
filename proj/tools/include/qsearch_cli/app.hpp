#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qsearch_cli/table.hpp"

namespace qsearch::cli {

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitDomain = 3 };

struct CommandResult {
    std::string command;
    std::map<std::string, std::string> params;
    std::vector<Table> tables;
    std::vector<std::string> summary;
};

// Parses a single non-sweep invocation (no program name) and computes its
// tables without touching the filesystem. Throws CLI11 parse errors,
// std::invalid_argument for bad values and std::domain_error for numeric
// domain failures.
CommandResult compute(const std::vector<std::string>& args);

// Full front end: parses, computes, writes CSVs and the manifest.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_main(int argc, char** argv);

std::string default_out_dir();

}  // namespace qsearch::cli
