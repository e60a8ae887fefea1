#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "harness/config.hpp"

namespace qfdense::harness {

/// A reported solution failed its independent re-verification.
class SoundnessError : public Error {
 public:
  using Error::Error;
};

/// Subcommand names in CLI order.
const std::vector<std::string>& command_names();

/// Runs one subcommand: CSV (or JSON) to `out`, warnings to `log`.
/// Output never depends on the thread count.
void run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                 std::ostream& log);

void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_count_orbit(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_verify_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_kappa(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_exponent(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_oracle_count(const RunConfig& cfg, std::ostream& out, std::ostream& log);

}  // namespace qfdense::harness
