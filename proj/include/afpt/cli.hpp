#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace afpt::cli {

inline constexpr std::string_view kVersion = "0.1.0";

enum ExitCode : int {
  kOk = 0,
  kNoneFound = 1,  // extract: no nontrivial certificate; multitwist: a check failed
  kParseError = 2,
  kBudgetError = 3,
  kWindowError = 4,
  kInputError = 5,
  kInternalError = 6,
};

struct RunConfig {
  std::string subcommand;                 // ball, delta, afp, extract, farey, multitwist
  std::string group = "F2";               // built-in name or definition file
  std::vector<std::string> h;             // generators of H, as words
  int radius = 3;
  std::optional<int> radius_max;          // extract: grow the window until card(X_H) >= N
  std::string action = "cayley";          // extract: cayley | tree
  std::optional<int> a;                   // almost-fixed threshold; default floor(6 delta)
  std::optional<std::string> delta;       // exact delta; default estimated on the window
  std::string delta_mode = "exhaustive";  // exhaustive | sampled
  std::uint64_t samples = 20000;
  std::string formula = "plus4";          // plus4 | plus10
  std::uint64_t order_bound = 64;
  std::size_t max_vertices = 200000;
  std::uint64_t max_pairs = 500;          // afp: far pairs certified
  std::string subgroup = "S4";            // farey: S4 | ST6 | center2 | trivial
  std::vector<int> depths{4};             // farey
  std::vector<std::string> pairs;         // farey: "p/q:r/s" distance queries
  std::string action_file;                // multitwist
  std::uint64_t seed = 1;
  std::string output;                     // report path; empty = stdout
  std::string summary;                    // summary path; empty = stderr

  void validate() const;
};

/// `key = value` lines with '#' comments; keys are RunConfig field names and
/// list values are comma-separated. Later keys override earlier ones.
RunConfig parse_config(std::string_view text, RunConfig base = {});
/// As parse_config; a relative action_file is taken relative to the file.
RunConfig load_config(const std::string& path, RunConfig base = {});

/// Runs one subcommand: JSON-lines records to `report`, plain text to `summary`.
int run(const RunConfig& config, std::ostream& report, std::ostream& summary);

}  // namespace afpt::cli
