#pragma once

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nlse/app/config.hpp"
#include "nlse/specmat.hpp"

namespace nlse::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitDiverged = 3,
  kExitIo = 4,
  kExitSearchFailed = 5,
};

int cmd_bound(const RunConfig& config, std::ostream& out);
int cmd_simulate(const RunConfig& config, std::ostream& out);
int cmd_threshold(const RunConfig& config, std::ostream& out);
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_region(const RunConfig& config, std::ostream& out);

/// Expected data checked by `verify`, keyed by (dimension, scheme).
struct VerifyTables {
  using Key = std::pair<int, SchemeOrder>;
  std::map<Key, std::set<DiskForm>> disks;
  std::map<Key, std::vector<Twelfths>> g;

  static VerifyTables published();
};

int cmd_verify(std::ostream& out, const VerifyTables& tables = VerifyTables::published());

/// Full command line: parses argv, runs one subcommand, maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Four significant figures, trailing zeros kept (0.008650).
std::string sig4(double v);

}  // namespace nlse::app
