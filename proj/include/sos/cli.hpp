#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sos {

// Parsed command line. `text()` serializes to JSON and `parse_text` inverts
// it exactly.
struct RunConfig {
  std::string command;
  std::vector<std::string> alphas;  // repeatable --alpha
  long n = 0;
  long n_from = 0, n_to = 0, n_step = 1;
  long n_log2_from = -1, n_log2_to = -1;  // >= 0 selects the log2 range
  std::string format = "csv";             // csv | json | svg
  unsigned digits = 6;
  int jobs = 1;
  long cap = 3000;  // enumeration guard
  bool lsvk = false;
  std::string out_path;

  bool log2_range() const { return n_log2_from >= 0; }
  std::string text() const;
  static RunConfig parse_text(const std::string& text);
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// Dispatches a parsed config. Returns 0 on success, 1 on domain errors, 2 on
// verification failure, 3 when a resource guard triggers.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full argv entry point: parse (usage text on `err`, exit 1 for bad
// commands/flags) then run.
int sos_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sos
