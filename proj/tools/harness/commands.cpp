#include "harness/commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "json.hpp"

#include "harness/csv.hpp"
#include "harness/rng.hpp"
#include "qfdense/diophantine.hpp"
#include "qfdense/isometries.hpp"
#include "qfdense/solver.hpp"
#include "qfdense/weyl_sums.hpp"

namespace qfdense::harness {

namespace {

const std::vector<std::string> kCommonKeys = {"precision", "tolerance_bits", "threads", "seed",
                                              "out"};

void require_keys(const RunConfig& cfg, std::vector<std::string> keys) {
  keys.insert(keys.end(), kCommonKeys.begin(), kCommonKeys.end());
  cfg.require_known(keys);
}

void write_preamble(CsvWriter& csv, const std::string& command, const RunConfig& cfg) {
  csv.meta("qfdense", command);
  for (const auto& [key, value] : cfg.values()) {
    if (key == "threads" || key == "out") continue;
    csv.meta("config " + key, value);
  }
}

ScanOptions scan_options(const RunConfig& cfg) { return {cfg.threads(), cfg.log2_tol()}; }

std::int64_t checked_T(std::int64_t T) {
  if (T < 4) throw ConfigError("T must be at least 4");
  return T;
}

std::optional<double> nu_of(const RunConfig& cfg) {
  auto nu = cfg.find_double("nu");
  if (nu && !(*nu > 0.0 && *nu < 0.5)) throw ConfigError("nu must lie in (0, 1/2)");
  return nu;
}

// delta, either given directly or as T^-nu.
double resolve_delta(const RunConfig& cfg, std::int64_t T) {
  const auto delta = cfg.find_double("delta");
  const auto nu = nu_of(cfg);
  if (delta && nu) throw ConfigError("give either delta or nu, not both");
  if (!delta && !nu) throw ConfigError("missing required config key 'delta' (or 'nu')");
  const double d = delta ? *delta : std::pow(static_cast<double>(T), -*nu);
  if (!(d > 0.0 && d < 0.5)) throw ConfigError("delta must lie in (0, 1/2)");
  return d;
}

struct Shift {
  std::vector<RealLiteral> literals;

  ShiftVector at(int bits) const {
    return {literals[0].evaluate(bits), literals[1].evaluate(bits), literals[2].evaluate(bits)};
  }
};

Shift read_shift(const RunConfig& cfg) { return {cfg.get_literals("xi", 3)}; }

struct Frame {
  DirectionChoice choice;
  SOQMatrix matrix;
};

Frame choose_frame(const RunConfig& cfg, const ShiftVector& xi) {
  const Integer q_max = to_integer(cfg.get_int("q_max", 1000000));
  DirectionChoice choice = [&] {
    if (cfg.has("direction")) {
      const auto ac = cfg.get_int_list("direction", {});
      if (ac.size() != 2) throw ConfigError("direction must be two integers 'a c'");
      if (gcd(to_integer(ac[0]), to_integer(ac[1])) != 1) {
        throw ConfigError("direction (a, c) must be coprime");
      }
      return evaluate_direction(xi, to_integer(ac[0]), to_integer(ac[1]), q_max);
    }
    const std::int64_t bound = cfg.get_int("direction_bound", 8);
    if (bound < 1) throw ConfigError("direction_bound must be at least 1");
    return diophantine_direction(xi, static_cast<long>(bound), q_max, cfg.threads());
  }();
  SOQMatrix m = iota(complete_to_sl2(choice.a, choice.c));
  return {std::move(choice), std::move(m)};
}

void write_frame_meta(CsvWriter& csv, const Frame& frame) {
  csv.meta("direction", frame.choice.a.get_str() + " " + frame.choice.c.get_str());
  csv.meta("alpha_tilde", format_real(frame.choice.alpha_tilde));
  csv.meta("kappa_hat", format_double(frame.choice.estimate.kappa_hat));
  csv.meta("c_hat", format_double(frame.choice.estimate.c_hat));
}

void warn_nu(const RunConfig& cfg, const Frame& frame, CsvWriter& csv, std::ostream& log) {
  const auto nu = nu_of(cfg);
  if (!nu) return;
  const double limit = 1.0 / (8.0 * frame.choice.estimate.kappa_hat);
  if (*nu > limit) {
    const std::string msg = "nu = " + format_double(*nu) + " exceeds 1/(8 kappa_hat) = " +
                            format_double(limit) + "; the density guarantee does not apply";
    log << "warning: " << msg << '\n';
    csv.comment("warning: " + msg);
  }
}

nlohmann::json int_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

nlohmann::json vec_json(const IntVec3& v) {
  return nlohmann::json::array({int_json(v[0]), int_json(v[1]), int_json(v[2])});
}

// Independent re-check of every reported solution at twice the working
// precision.
void reverify(const SolveReport& report, const Shift& shift, const RealLiteral& t_lit, int bits,
              const SOQMatrix& frame, int log2_tol) {
  const int bits2 = 2 * bits;
  const ShiftVector xi2 = shift.at(bits2);
  const FixedReal t2 = t_lit.evaluate(bits2);
  const FixedReal bound = FixedReal::from_double(report.params.bound_C, bits2) *
                          FixedReal::from_double(report.params.delta, bits2);
  const Integer t_sq = to_integer(report.params.T) * to_integer(report.params.T);
  const SOQMatrix back = frame.inverse();
  for (const Solution& s : report.solutions) {
    auto fail = [&](const std::string& why) {
      throw SoundnessError("re-verification failed for m = " + std::to_string(s.m) + ", v = " +
                           format(s.original) + ": " + why);
    };
    if (s.v[0] != 0) fail("first frame coordinate is not 0");
    if (s.v != qfdense::apply(s.u, unipotent(-to_integer(s.m)))) fail("v != u M_m^{-1}");
    if (s.original != qfdense::apply(s.v, back)) fail("mapped-back vector mismatch");
    if (norm_sq(s.original) > t_sq) fail("|v| > T");
    const FixedReal value = evaluate_shifted(TernaryForm::standard(), xi2, s.original, log2_tol);
    const FixedReal residual = (value - t2).abs();
    if (!certified_le(residual, bound, "re-verification")) fail("residual > bound_C delta");
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"solve", "count-orbit", "verify-lemmas",
                                                 "kappa", "exponent",    "oracle-count"};
  return names;
}

void run_command(const std::string& name, const RunConfig& cfg, std::ostream& out,
                 std::ostream& log) {
  static const std::map<std::string,
                        std::function<void(const RunConfig&, std::ostream&, std::ostream&)>>
      table = {{"solve", cmd_solve},           {"count-orbit", cmd_count_orbit},
               {"verify-lemmas", cmd_verify_lemmas}, {"kappa", cmd_kappa},
               {"exponent", cmd_exponent},     {"oracle-count", cmd_oracle_count}};
  auto it = table.find(name);
  if (it == table.end()) throw ConfigError("unknown subcommand '" + name + "'");
  it->second(cfg, out, log);
}

void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  require_keys(cfg, {"xi", "t", "T", "delta", "nu", "scan_c", "bound_C", "q_max",
                     "direction_bound", "direction", "format"});
  const int bits = cfg.precision();
  const Shift shift = read_shift(cfg);
  const RealLiteral t_lit = cfg.get_literal("t", "0");
  const std::string fmt = cfg.get_string("format", "csv");
  if (fmt != "csv" && fmt != "json") throw ConfigError("format must be csv or json");

  SolveParams params;
  params.T = checked_T(cfg.get_int("T", 0));
  params.delta = resolve_delta(cfg, params.T);
  params.scan_c = cfg.get_double("scan_c", 1.0);
  params.bound_C = cfg.get_double("bound_C", 32.0);
  if (!(params.scan_c > 0.0)) throw ConfigError("scan_c must be positive");
  if (!(params.bound_C >= 1.0)) throw ConfigError("bound_C must be at least 1");

  const ShiftVector xi = shift.at(bits);
  const Frame frame = choose_frame(cfg, xi);
  params.frame = frame.matrix;
  const SolveReport report = find_solutions(xi, t_lit.evaluate(bits), params, scan_options(cfg));
  reverify(report, shift, t_lit, bits, frame.matrix, cfg.log2_tol());

  if (fmt == "json") {
    nlohmann::json j;
    j["direction"] = {int_json(frame.choice.a), int_json(frame.choice.c)};
    j["alpha_tilde"] = frame.choice.alpha_tilde.to_double();
    j["kappa_hat"] = frame.choice.estimate.kappa_hat;
    j["params"] = {{"T", params.T},
                   {"delta", params.delta},
                   {"scan_c", params.scan_c},
                   {"bound_C", params.bound_C}};
    j["count"] = report.count();
    j["solutions"] = nlohmann::json::array();
    for (const Solution& s : report.solutions) {
      j["solutions"].push_back({{"m", s.m},
                                {"u", vec_json(s.u)},
                                {"frame_v", vec_json(s.v)},
                                {"v", vec_json(s.original)},
                                {"value", s.value.to_double()},
                                {"residual", s.residual.to_double()},
                                {"torus_miss", s.torus_miss}});
    }
    out << j.dump(2) << '\n';
    return;
  }

  CsvWriter csv(out);
  write_preamble(csv, "solve", cfg);
  write_frame_meta(csv, frame);
  warn_nu(cfg, frame, csv, log);
  csv.meta("delta", format_double(params.delta));
  csv.meta("count", std::to_string(report.count()));
  csv.header({"m", "a", "b", "v1", "v2", "v3", "value", "residual", "torus_miss"});
  for (const Solution& s : report.solutions) {
    csv.row({std::to_string(s.m), s.u[1].get_str(), s.u[2].get_str(), s.original[0].get_str(),
             s.original[1].get_str(), s.original[2].get_str(), format_real(s.value),
             format_real(s.residual), format_double(s.torus_miss)});
  }
}

void cmd_count_orbit(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_keys(cfg, {"alpha", "beta", "gamma", "v0", "grid", "delta", "nu"});
  const int bits = cfg.precision();
  const RealLiteral alpha_lit = cfg.get_literal("alpha", "sqrt:2");
  const FixedReal alpha = alpha_lit.evaluate(bits);
  const FixedReal beta = cfg.get_literal("beta", "0").evaluate(bits);
  const FixedReal gamma = cfg.get_literal("gamma", "0").evaluate(bits);
  std::vector<RealLiteral> v0_lits = cfg.has("v0") ? cfg.get_literals("v0", 2)
                                                    : std::vector{parse_real_literal("0"),
                                                                  parse_real_literal("0")};
  const TorusPoint2 v0 = TorusPoint2::reduce(v0_lits[0].evaluate(bits), v0_lits[1].evaluate(bits));
  const auto grid = cfg.get_int_list("grid", {10000, 100000, 1000000});
  const bool rational = alpha_lit.is_rational();

  CsvWriter csv(out);
  write_preamble(csv, "count-orbit", cfg);
  if (rational) csv.comment("alpha is rational: the orbit is finite and the ratio is degenerate");
  csv.header({"T", "delta", "N_phi", "ratio", "rational"});
  for (const std::int64_t T : grid) {
    checked_T(T);
    const double delta = resolve_delta(cfg, T);
    const OrbitCount c = count_orbit_hits(alpha, beta, gamma, v0, T, delta, scan_options(cfg));
    const double ratio =
        static_cast<double>(c.count) / (std::numbers::pi * static_cast<double>(T) * delta * delta);
    csv.row({std::to_string(T), format_double(delta), std::to_string(c.count),
             format_double(ratio), rational ? "true" : "false"});
  }
}

void cmd_verify_lemmas(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_keys(cfg, {"alphas", "n_values", "T_values", "M_values", "samples", "rel_tol"});
  const int bits = cfg.precision();
  std::vector<RealLiteral> alphas;
  for (const auto& w : split_words(cfg.get_string("alphas", "sqrt:2 surd:1,1,2,5"))) {
    alphas.push_back(parse_real_literal(w));
  }
  const auto n_values = cfg.get_int_list("n_values", {1, 3, 50});
  const auto T_values = cfg.get_int_list("T_values", {100, 1000, 10000});
  const auto M_values = cfg.get_int_list("M_values", {1, 5});
  const std::int64_t samples = cfg.get_int("samples", 20);
  const double rel_tol = cfg.get_double("rel_tol", 1e-6);
  if (samples < 1) throw ConfigError("samples must be at least 1");
  if (!(rel_tol >= 0.0)) throw ConfigError("rel_tol must be non-negative");
  for (const std::int64_t T : T_values) checked_T(T);
  for (const std::int64_t M : M_values) {
    if (M < 0) throw ConfigError("M_values must be non-negative");
  }
  const ScanOptions opts = scan_options(cfg);
  MmixLcg rng(cfg.seed());

  CsvWriter csv(out);
  write_preamble(csv, "verify-lemmas", cfg);
  csv.meta("rng", "MMIX LCG a = 6364136223846793005, c = 1442695040888963407, beta = (x >> 11) 2^-53");
  csv.header({"lemma", "alpha", "n", "M", "T", "beta", "abs_S_sq", "differencing_bound", "sum_min",
              "explicit_bound", "pass"});
  for (const RealLiteral& lit : alphas) {
    const FixedReal alpha = lit.evaluate(bits);
    for (const std::int64_t n : n_values) {
      for (const std::int64_t T : T_values) {
        const double bound = weyl_differencing_bound(n, alpha, T, opts);
        for (std::int64_t s = 0; s < samples; ++s) {
          const double beta = rng.next_unit();
          const WeylSumResult S = weyl_sum(n, alpha, FixedReal::from_double(beta, bits), T, opts);
          const bool pass = S.norm_sq() <= bound * (1.0 + rel_tol);
          csv.row({"ST", lit.text, std::to_string(n), "", std::to_string(T), format_double(beta),
                   format_double(S.norm_sq()), format_double(bound), "", "",
                   pass ? "true" : "false"});
        }
      }
    }
  }
  for (const RealLiteral& lit : alphas) {
    const FixedReal alpha = lit.evaluate(bits);
    for (const std::int64_t M : M_values) {
      for (const std::int64_t T : T_values) {
        const double lhs = sum_min(alpha, M, T, opts);
        const double rhs = sum_min_explicit_bound(alpha, M, T);
        csv.row({"sumfrac", lit.text, "", std::to_string(M), std::to_string(T), "", "", "",
                 format_double(lhs), format_double(rhs), lhs <= rhs ? "true" : "false"});
      }
    }
  }
}

void cmd_kappa(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_keys(cfg, {"alpha", "xi", "q_max", "direction_bound", "direction"});
  const int bits = cfg.precision();
  if (cfg.has("alpha") == cfg.has("xi")) throw ConfigError("give exactly one of alpha or xi");
  const std::int64_t q_max = cfg.get_int("q_max", 1000000);
  if (q_max < 2) throw ConfigError("q_max must be at least 2");

  CsvWriter csv(out);
  write_preamble(csv, "kappa", cfg);
  FixedReal alpha;
  DiophantineEstimate est;
  if (cfg.has("xi")) {
    const Frame frame = choose_frame(cfg, read_shift(cfg).at(bits));
    write_frame_meta(csv, frame);
    est = frame.choice.estimate;
  } else {
    alpha = cfg.get_literal("alpha", "").evaluate(bits);
    est = estimate_kappa(alpha, to_integer(q_max));
    csv.meta("kappa_hat", format_double(est.kappa_hat));
    csv.meta("c_hat", format_double(est.c_hat));
  }
  csv.header({"k", "p", "q", "dist", "local_kappa"});
  for (std::size_t k = 0; k < est.convergents.size(); ++k) {
    const Convergent& c = est.convergents[k];
    std::string local;
    for (const auto& l : est.per_convergent) {
      if (l.q == c.q) local = format_double(l.kappa);
    }
    csv.row({std::to_string(k), c.p.get_str(), c.q.get_str(), format_real(c.dist), local});
  }
}

void cmd_exponent(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_keys(cfg, {"xi", "t", "grid", "mode", "cap", "scan_c", "q_max", "direction_bound",
                     "direction"});
  const int bits = cfg.precision();
  const ShiftVector xi = read_shift(cfg).at(bits);
  const FixedReal t = cfg.get_literal("t", "0").evaluate(bits);
  const auto grid = cfg.get_int_list("grid", {20, 40, 80, 160});
  for (const std::int64_t T : grid) checked_T(T);

  ExponentParams params;
  const std::string mode = cfg.get_string("mode", "oracle");
  if (mode == "oracle") {
    params.mode = ExponentMode::oracle;
  } else if (mode == "solver") {
    params.mode = ExponentMode::solver;
  } else {
    throw ConfigError("mode must be oracle or solver");
  }
  params.scan_c = cfg.get_double("scan_c", 1.0);
  if (!(params.scan_c > 0.0)) throw ConfigError("scan_c must be positive");
  params.oracle.cap = cfg.get_int("cap", kBruteForceCap);
  params.oracle.threads = cfg.threads();
  params.oracle.log2_tol = cfg.log2_tol();
  params.scan = scan_options(cfg);

  CsvWriter csv(out);
  write_preamble(csv, "exponent", cfg);
  if (params.mode == ExponentMode::solver) {
    const Frame frame = choose_frame(cfg, xi);
    write_frame_meta(csv, frame);
    params.frame = frame.matrix;
  }
  const auto rows = estimate_critical_exponent(xi, t, grid, params);
  csv.header({"T", "min_residual", "omega_hat"});
  for (const ExponentRow& r : rows) {
    csv.row({std::to_string(r.T), format_real(r.min_residual),
             r.omega_hat ? format_double(*r.omega_hat) : "saturated"});
  }
}

void cmd_oracle_count(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require_keys(cfg, {"form", "xi", "t", "T", "delta", "nu", "cap"});
  const int bits = cfg.precision();
  const TernaryForm form =
      cfg.has("form") ? TernaryForm::parse(cfg.get_string("form", "")) : TernaryForm::standard();
  const ShiftVector xi = read_shift(cfg).at(bits);
  const FixedReal t = cfg.get_literal("t", "0").evaluate(bits);
  const std::int64_t T = checked_T(cfg.get_int("T", 0));
  const double delta = resolve_delta(cfg, T);
  OracleOptions opts;
  opts.cap = cfg.get_int("cap", kBruteForceCap);
  opts.threads = cfg.threads();
  opts.log2_tol = cfg.log2_tol();
  const OracleResult r = count_values_bruteforce(form, xi, t, T, delta, opts);

  CsvWriter csv(out);
  write_preamble(csv, "oracle-count", cfg);
  csv.meta("form", form.serialize());
  csv.header({"T", "delta", "count", "min_residual", "argmin_v1", "argmin_v2", "argmin_v3"});
  csv.row({std::to_string(T), format_double(delta), std::to_string(r.count),
           format_real(r.min_residual), r.argmin[0].get_str(), r.argmin[1].get_str(),
           r.argmin[2].get_str()});
}

}  // namespace qfdense::harness
