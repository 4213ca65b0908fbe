#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "wgql/arith.hpp"

namespace wgql::cli {

inline constexpr const char* kSchemaTag = "# wgql-v1";

enum class Command { sieve, series, p0, predict, count, scan, arcs, charsum, exponent_check };

struct RunConfig {
  Command command = Command::exponent_check;
  u64 x = 1'000'000;
  std::vector<i64> n;        // count accepts several
  u64 p_limit = 0;           // 0: command default
  u64 q_grid = 0;
  u64 sample = 50;
  std::string mode;          // scan: unconstrained|constrained, p0: exact|continuous
  std::string output_path = "-";
  unsigned threads = 0;
  std::uint64_t seed = 1;
  // command specific
  u64 limit = 100;           // sieve
  u64 modulus = 1;           // charsum
  unsigned k = 2;            // charsum
  i64 a = 1;                 // charsum
  bool all = false;          // scan: also list representable N with witnesses
  bool diagnostic = false;   // arcs: skip the disjointness checks
};

/// Executes one subcommand. Returns 0 on success and 1 when a library
/// precondition fails (message on err).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv; usage errors return 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main_entry(int argc, char** argv);

}  // namespace wgql::cli
