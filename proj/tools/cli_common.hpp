#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cyclelab::cli {

std::string version_string();
std::string iso8601_utc_now();

// shortest fixed formatting that round-trips a double exactly
std::string fmt_double(double v);

// Every directory the CLI writes into gets exactly one of these. `args` is
// the effective subcommand argv (seed already resolved), so feeding it back
// through the parser reproduces the run.
void write_manifest(const std::filesystem::path& dir, const std::string& command,
                    const std::vector<std::string>& args, std::uint64_t master_seed,
                    const std::string& started_at, const std::string& finished_at);

// 0 = all hard invariants hold, 3 = at least one violated. Diagnostic
// (statistical) findings are printed but never affect the exit code.
int run_validate(const std::vector<std::string>& only, unsigned max_tree,
                 std::uint64_t seed, std::ostream& out);

}  // namespace cyclelab::cli
