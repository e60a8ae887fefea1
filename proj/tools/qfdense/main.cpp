#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "harness/commands.hpp"
#include "qfdense/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kInvalid = 1, kPrecision = 2, kSoundness = 3 };

}  // namespace

int main(int argc, char** argv) {
  using namespace qfdense::harness;

  CLI::App app{"Effective density of values of the shifted form b^2 - 4ac"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path, out_path;
  std::optional<int> precision, threads;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "Flat key = value config file");
  app.add_option("--precision", precision, "Fractional bits F (>= 64)");
  app.add_option("--out", out_path, "Write output here instead of stdout");
  app.add_option("--seed", seed, "Seed for sampled parameters");
  app.add_option("--threads", threads, "Worker threads (output does not depend on it)");
  app.add_option("-D,--set", overrides, "Override a config key: key=value");

  const char* help[] = {
      "Construct certified solutions |v| <= T, |Q(v + xi) - t| <= C delta",
      "Count orbit points of phi within delta of a torus point",
      "Check the Weyl differencing and sum-of-minima inequalities",
      "Continued fraction convergents and a Diophantine exponent estimate",
      "Estimate the critical exponent from the smallest residual",
      "Brute-force count of lattice points with |Q(v + xi) - t| <= delta"};
  const auto& names = command_names();
  for (std::size_t i = 0; i < names.size(); ++i) app.add_subcommand(names[i], help[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  std::ostringstream buffer;
  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : RunConfig::load_file(config_path);
    for (const auto& o : overrides) cfg.set_assignment(o);
    if (precision) cfg.set("precision", std::to_string(*precision));
    if (threads) cfg.set("threads", std::to_string(*threads));
    if (seed) cfg.set("seed", std::to_string(*seed));
    if (out_path.empty()) out_path = cfg.get_string("out", "");

    run_command(command, cfg, buffer, std::cerr);
  } catch (const SoundnessError& e) {
    std::cerr << "qfdense: internal soundness check failed: " << e.what() << '\n';
    return kSoundness;
  } catch (const qfdense::PrecisionExhausted& e) {
    std::cerr << "qfdense: precision exhausted: " << e.what() << '\n';
    return kPrecision;
  } catch (const qfdense::InvalidInput& e) {
    std::cerr << "qfdense: invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "qfdense: error: " << e.what() << '\n';
    return kInvalid;
  }

  if (out_path.empty()) {
    std::cout << buffer.str();
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << buffer.str())) {
    std::cerr << "qfdense: cannot write '" << out_path << "'\n";
    return kInvalid;
  }
  return kOk;
}
