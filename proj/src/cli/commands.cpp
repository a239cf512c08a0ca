// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/cli.hpp"

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include <CLI11.hpp>

#include "spp/instances.hpp"
#include "spp/io.hpp"
#include "spp/projection.hpp"
#include "spp/regularity.hpp"
#include "spp/sharpness.hpp"
#include "spp/single_projection.hpp"

#ifndef SPP_VERSION
#define SPP_VERSION "0.0.0"
#endif

namespace spp::cli {

const char* tool_version() noexcept { return SPP_VERSION; }

namespace {

using io::Json;
using io::number;

// Tolerances of the re-checks done by `verify` and `bench`.
constexpr double kValueTol = 1e-7;
constexpr double kPointTol = 1e-8;
constexpr double kRecomputeTol = 1e-10;

struct Config {
  std::string command;
  std::vector<std::string> argv;
  std::string problem_path;
  std::string report_path;
  double tol = 1e-9;
  double active_tol = 1e-8;
  std::string mu = "auto";
  std::string alpha = "auto";
  std::size_t samples = 256;
  std::uint64_t seed = 1;
  std::string format = "text";
  int max_doublings = 60;
  bool timing = false;
  std::vector<double> direction;
  std::vector<double> point;
  std::vector<double> from;
  std::vector<double> to;
  std::optional<double> t;
  std::optional<double> radius;
  double delta = 0.5;
  std::size_t n = 3;
  std::size_t m = 6;
  std::size_t count = 200;
  std::size_t pieces = 0;
  std::string out_dir;
};

// A report whose certificate failed; carries the exit status to main.
struct Outcome {
  Json result;
  std::string status;  // ok | certified | not_certified | verified | rejected
};

std::optional<double> parse_auto(const std::string& s, const char* flag) {
  if (s == "auto") return std::nullopt;
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !std::isfinite(x))
    fail(ErrorCode::invalid_argument, std::string(flag) + ": expected a number or 'auto', got '" + s + "'");
  return x;
}

std::optional<Vector> flag_vector(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return Vector(v);
}

SppOptions spp_options(const Config& cfg, const io::ProblemFile* prob) {
  SppOptions o;
  o.cert_tol = cfg.tol;
  o.projection.kkt_tol = cfg.tol;
  o.projection.active_tol = cfg.active_tol;
  o.max_doublings = cfg.max_doublings;
  o.mu = parse_auto(cfg.mu, "--mu");
  o.alpha = parse_auto(cfg.alpha, "--alpha");
  if (prob && cfg.mu == "auto" && prob->mu) o.mu = prob->mu;
  if (prob && cfg.alpha == "auto" && prob->alpha) o.alpha = prob->alpha;
  return o;
}

Json config_json(const Config& cfg) {
  Json j{{"tol", number(cfg.tol)},         {"active_tol", number(cfg.active_tol)},
         {"mu", cfg.mu},                   {"alpha", cfg.alpha},
         {"samples", cfg.samples},         {"seed", cfg.seed},
         {"max_doublings", cfg.max_doublings}};
  if (!cfg.problem_path.empty()) j["problem_path"] = cfg.problem_path;
  if (!cfg.direction.empty()) j["direction"] = io::to_json(Vector(cfg.direction));
  if (!cfg.point.empty()) j["point"] = io::to_json(Vector(cfg.point));
  if (!cfg.from.empty()) j["from"] = io::to_json(Vector(cfg.from));
  if (!cfg.to.empty()) j["to"] = io::to_json(Vector(cfg.to));
  if (cfg.t) j["t"] = number(*cfg.t);
  if (cfg.radius) j["radius"] = number(*cfg.radius);
  if (cfg.command == "dist-bound") j["delta"] = number(cfg.delta);
  if (cfg.command == "bench" || cfg.command == "gen") {
    j["n"] = cfg.n;
    j["m"] = cfg.m;
    j["count"] = cfg.count;
    j["pieces"] = cfg.pieces;
  }
  return j;
}

// Config as stored in a report, for re-running a command under `verify`.
Config config_from_json(const Json& report) {
  Config cfg;
  const Json& c = report.at("config");
  cfg.command = report.at("command").get<std::string>();
  cfg.tol = io::as_number(c.at("tol"), "config.tol");
  cfg.active_tol = io::as_number(c.at("active_tol"), "config.active_tol");
  cfg.mu = c.at("mu").get<std::string>();
  cfg.alpha = c.at("alpha").get<std::string>();
  cfg.samples = c.at("samples").get<std::size_t>();
  cfg.seed = c.at("seed").get<std::uint64_t>();
  cfg.max_doublings = c.at("max_doublings").get<int>();
  auto vec = [&](const char* key) {
    return c.contains(key) ? io::as_vector(c.at(key), std::string("config.") + key).values()
                           : std::vector<double>{};
  };
  cfg.direction = vec("direction");
  cfg.point = vec("point");
  cfg.from = vec("from");
  cfg.to = vec("to");
  if (c.contains("t")) cfg.t = io::as_number(c.at("t"), "config.t");
  if (c.contains("radius")) cfg.radius = io::as_number(c.at("radius"), "config.radius");
  if (c.contains("delta")) cfg.delta = io::as_number(c.at("delta"), "config.delta");
  if (c.contains("n")) {
    cfg.n = c.at("n").get<std::size_t>();
    cfg.m = c.at("m").get<std::size_t>();
    cfg.count = c.at("count").get<std::size_t>();
    cfg.pieces = c.at("pieces").get<std::size_t>();
  }
  return cfg;
}

UnitDirection direction_for(const Config& cfg, const io::ProblemFile& prob) {
  if (!cfg.direction.empty()) return UnitDirection::normalize(Vector(cfg.direction));
  // Minimizing <c, x> asks for sharpness with respect to -c.
  if (prob.linear) return -UnitDirection::normalize(*prob.linear);
  fail(ErrorCode::invalid_argument, "direction: give --direction or objective.linear");
}

Rng instance_rng(std::uint64_t seed, std::size_t i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  return Rng(seq);
}

// ---- subcommands ---------------------------------------------------------

Outcome cmd_project(const Config& cfg, const io::ProblemFile& prob) {
  const Polyhedron p = prob.polyhedron();
  const auto z = flag_vector(cfg.point) ? *flag_vector(cfg.point) : prob.v.value_or(Vector());
  if (z.empty()) fail(ErrorCode::invalid_argument, "point: give --point or v in the problem file");
  ProjectionOptions o;
  o.kkt_tol = cfg.tol;
  o.active_tol = cfg.active_tol;
  const auto r = project_polyhedron(p, z, o);
  Json j{{"point", io::to_json(z)},
         {"proj", io::to_json(r.proj)},
         {"distance", number(distance(z, r.proj))},
         {"residual_normal", number(r.residual_normal)},
         {"active", io::to_json(r.active)},
         {"multipliers", r.multipliers},
         {"iterations", r.iterations},
         {"used_fallback", r.used_fallback}};
  return {j, "ok"};
}

Outcome cmd_sharpness(const Config& cfg, const io::ProblemFile& prob) {
  const Polyhedron p = prob.polyhedron();
  const UnitDirection x_star = direction_for(cfg, prob);
  SharpnessReport r = sharpness_lower_bound(p, x_star);
  try {
    const SharpnessReport exact = sharpness_exact(p, x_star);
    r.alpha_exact = exact.alpha_exact;
    r.vacuous = exact.vacuous;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::caps_exceeded) throw;
  }
  if (cfg.samples > 0 && is_bounded(p)) {
    r.dual_estimate = sharpness_dual_estimate(p, x_star, cfg.samples, cfg.seed);
    r.samples = cfg.samples;
  }
  Json j{{"sharpness", io::to_json(r)}};
  if (r.alpha_exact) {
    const auto kl = indicator_linear_kl(p, x_star);
    j["indicator_kl"] = {{"alpha", number(kl.alpha)},
                         {"epi_alpha", kl.epi_alpha ? number(*kl.epi_alpha) : Json(nullptr)}};
    if (kl.alpha < 1.0) j["indicator_kl"]["beta"] = number(kl_beta_from_alpha(kl.alpha));
  }
  if (prob.max_affine) {
    const auto beta = pwl_kl_constant(*prob.max_affine);
    j["pwl_kl_beta"] = beta ? number(*beta) : Json(nullptr);
  }
  return {j, "ok"};
}

Outcome cmd_solve_lp(const Config& cfg, const io::ProblemFile& prob) {
  if (!prob.linear) fail(ErrorCode::parse_error, "objective.linear: required by solve-lp");
  const Polyhedron p = prob.polyhedron();
  const UnitDirection x_star = UnitDirection::normalize(*prob.linear);
  const SppOptions opts = spp_options(cfg, &prob);
  const auto v = flag_vector(cfg.point) ? flag_vector(cfg.point) : prob.v;
  const SppReport r = v ? solve_lp_spp(p, x_star, *v, opts) : solve_lp_spp_doubling(p, x_star, opts);
  Json j = io::to_json(r);
  j["v_mode"] = v ? "given" : "doubling";
  j["objective_value"] = number(prob.linear->dot(r.solution));
  return {j, r.certified ? "certified" : "not_certified"};
}

Outcome cmd_solve_cp(const Config& cfg, const io::ProblemFile& prob) {
  if (!prob.max_affine) fail(ErrorCode::parse_error, "objective.max_affine: required by solve-cp");
  const Polyhedron p = prob.polyhedron();
  const SppOptions opts = spp_options(cfg, &prob);
  const auto v = flag_vector(cfg.point) ? flag_vector(cfg.point) : prob.v;
  const auto t = cfg.t ? cfg.t : prob.t;
  const CpReport r = solve_cp_spp(p, *prob.max_affine, v, t, opts);
  Json j = io::to_json(r);
  if (v) {
    try {
      j["solution_set_certificate"] =
          io::to_json(verify_solution_set_certificate(p, *prob.max_affine, *v, r.spp.alpha_used));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::caps_exceeded) throw;
    }
  }
  return {j, r.spp.certified ? "certified" : "not_certified"};
}

Outcome cmd_dist_bound(const Config& cfg, const io::ProblemFile& prob) {
  if (cfg.from.empty() || cfg.to.empty())
    fail(ErrorCode::invalid_argument, "dist-bound: --from and --to are required");
  const auto r = distance_upper_bound(prob.polyhedron(), Vector(cfg.from), Vector(cfg.to), cfg.delta,
                                      std::max<std::size_t>(cfg.samples, 1), cfg.seed);
  return {io::to_json(r), r.verified ? "certified" : "not_certified"};
}

Outcome cmd_subtrans(const Config& cfg, const io::ProblemFile& prob) {
  const Polyhedron p = prob.polyhedron();
  const auto r = estimate_subtransversality(p, direction_for(cfg, prob), cfg.radius, cfg.samples, cfg.seed);
  Json j{{"subtransversality", io::to_json(r)}};
  try {
    const auto s = sharpness_exact(p, r.direction);
    j["alpha_exact"] = number(*s.alpha_exact);
    j["gamma_below_sharpness"] = r.vacuous || r.gamma_implied <= *s.alpha_exact + 1e-6;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::caps_exceeded) throw;
  }
  return {j, "ok"};
}

Json bench_instances(const Config& cfg) {
  SppOptions opts = spp_options(cfg, nullptr);
  std::size_t matches = 0;
  std::size_t fallbacks = 0;
  double max_value_err = 0.0;
  double max_proj_err = 0.0;
  Json failed = Json::array();
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Rng rng = instance_rng(cfg.seed, i);
    const Polyhedron p = random_bounded_polyhedron(cfg.n, cfg.m, rng);
    const UnitDirection x_star = random_direction(cfg.n, rng);
    std::normal_distribution<double> g(0.0, 3.0);
    Vector z(cfg.n);
    for (std::size_t k = 0; k < cfg.n; ++k) z[k] = g(rng);

    const SppReport r = solve_lp_spp_doubling(p, x_star, opts);
    const double oracle = *lp_solve_enumeration(p, x_star.vec()).value;
    const double value_err = std::abs(r.value - oracle);
    const auto fast = project_polyhedron(p, z, opts.projection);
    const double proj_err = max_abs_diff(fast.proj, project_brute(p, z).proj);
    fallbacks += fast.used_fallback;
    max_value_err = std::max(max_value_err, value_err);
    max_proj_err = std::max(max_proj_err, proj_err);
    if (r.certified && value_err <= kValueTol && proj_err <= kValueTol) {
      ++matches;
    } else {
      failed.push_back(i);
    }
  }
  return {{"count", cfg.count},
          {"matches", matches},
          {"failures", cfg.count - matches},
          {"failed_instances", failed},
          {"max_value_error", number(max_value_err)},
          {"max_projection_error", number(max_proj_err)},
          {"projection_fallbacks", fallbacks}};
}

Outcome cmd_bench(const Config& cfg) {
  if (cfg.n < 1 || cfg.m < cfg.n + 1) fail(ErrorCode::invalid_argument, "bench: need n >= 1 and m >= n + 1");
  Json j = bench_instances(cfg);
  const bool clean = j["failures"].get<std::size_t>() == 0;
  return {j, clean ? "certified" : "not_certified"};
}

Json generate(const Config& cfg) {
  Json problems = Json::array();
  for (std::size_t i = 0; i < cfg.count; ++i) {
    Rng rng = instance_rng(cfg.seed, i);
    const Polyhedron p = random_bounded_polyhedron(cfg.n, cfg.m, rng);
    io::ProblemFile f;
    f.n = cfg.n;
    f.a = p.a();
    f.b = p.b();
    if (cfg.pieces > 0) {
      f.max_affine = random_max_affine(cfg.n, cfg.pieces, rng);
    } else {
      f.linear = random_direction(cfg.n, rng).vec();
    }
    problems.push_back(io::to_json(f));
  }
  return problems;
}

Outcome cmd_gen(const Config& cfg) {
  if (cfg.n < 1 || cfg.m < cfg.n + 1) fail(ErrorCode::invalid_argument, "gen: need n >= 1 and m >= n + 1");
  Json problems = generate(cfg);
  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    for (std::size_t i = 0; i < problems.size(); ++i) {
      const auto path = std::filesystem::path(cfg.out_dir) / ("problem_" + std::to_string(i) + ".json");
      std::ofstream out(path);
      if (!out) fail(ErrorCode::io_error, path.string() + ": cannot write");
      out << problems[i].dump(2) << "\n";
    }
  }
  return {{{"problems", problems}}, "ok"};
}

// ---- verify ----------------------------------------------------------------

struct Checks {
  Json list = Json::array();
  bool all = true;
  void add(const std::string& name, bool pass, double measured = std::nan("")) {
    Json c{{"check", name}, {"pass", pass}};
    if (!std::isnan(measured)) c["measured"] = number(measured);
    list.push_back(c);
    all = all && pass;
  }
};

double scale_of(const Vector& v) {
  double s = 1.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

void verify_spp(const Polyhedron& p, const Json& r, double cert_tol, double active_tol, Checks& c,
                const std::string& prefix) {
  const Vector x_star = io::as_vector(r.at("x_star"), prefix + "x_star");
  const Vector v = io::as_vector(r.at("v"), prefix + "v");
  const Vector u = io::as_vector(r.at("u"), prefix + "u");
  const Vector sol = io::as_vector(r.at("solution"), prefix + "solution");
  const double mu = io::as_number(r.at("mu_used"), prefix + "mu_used");
  const double s = scale_of(u);
  c.add(prefix + "u_equals_v_minus_mu_xstar", max_abs_diff(u, v - mu * x_star) <= 1e-12 * s);
  c.add(prefix + "solution_feasible", p.contains(sol, feas_tol_at_scale(s)), p.max_violation(sol));
  const double value = io::as_number(r.at("value"), prefix + "value");
  c.add(prefix + "value_matches_solution", std::abs(value - x_star.dot(sol)) <= 1e-12 * scale_of(sol));
  const Vector fresh = project_polyhedron(p, u).proj;
  c.add(prefix + "solution_is_projection_of_u", max_abs_diff(fresh, sol) <= kPointTol * s,
        max_abs_diff(fresh, sol));
  const double kkt = kkt_certificate(p, UnitDirection::normalize(x_star), sol,
                                     std::max(active_tol, feas_tol_at_scale(s)));
  const bool certified = r.at("certified").get<bool>();
  c.add(prefix + "kkt_certificate_recomputed",
        std::abs(kkt - io::as_number(r.at("kkt_certificate"), prefix + "kkt_certificate")) <= 1e-9, kkt);
  c.add(prefix + "certified_flag_consistent", certified == (kkt <= cert_tol));
  if (!r.at("oracle_value").is_null()) {
    const double oracle = io::as_number(r.at("oracle_value"), prefix + "oracle_value");
    c.add(prefix + "oracle_flag_consistent",
          r.at("oracle_match").get<bool>() == (std::abs(value - oracle) <= kOracleValueTol));
  }
}

Outcome cmd_verify(const Config& cfg) {
  const Json report = io::load_json(cfg.report_path);
  if (!report.contains("schema_version") || report.at("schema_version") != io::kSchemaVersion)
    fail(ErrorCode::parse_error, "schema_version: expected " + std::to_string(io::kSchemaVersion));
  if (!report.contains("command") || !report.contains("result"))
    fail(ErrorCode::parse_error, "report: missing command or result");
  const std::string command = report.at("command").get<std::string>();
  const Json& res = report.at("result");
  const Config rc = config_from_json(report);
  Checks c;

  std::optional<io::ProblemFile> prob;
  if (report.contains("problem")) prob = io::parse_problem(report.at("problem"));
  auto need_problem = [&]() -> const io::ProblemFile& {
    if (!prob) fail(ErrorCode::parse_error, "problem: missing from report");
    return *prob;
  };

  try {
    if (command == "project") {
      const Polyhedron p = need_problem().polyhedron();
      const Vector z = io::as_vector(res.at("point"), "result.point");
      const Vector x = io::as_vector(res.at("proj"), "result.proj");
      const double tol = std::max(rc.active_tol, feas_tol_at_scale(scale_of(z)));
      c.add("proj_feasible", p.contains(x, feas_tol_at_scale(scale_of(z))), p.max_violation(x));
      const double resid = projection_residual(p, z, x, tol);
      c.add("projection_residual", resid <= rc.tol, resid);
      const Vector fresh = project_brute(p, z).proj;
      c.add("matches_brute_force", max_abs_diff(fresh, x) <= kPointTol * scale_of(z), max_abs_diff(fresh, x));
    } else if (command == "sharpness") {
      const io::ProblemFile& f = need_problem();
      const Polyhedron p = f.polyhedron();
      const Json& s = res.at("sharpness");
      const auto dir = UnitDirection::normalize(io::as_vector(s.at("direction"), "result.sharpness.direction"));
      const double lower = sharpness_lower_bound(p, dir).alpha_lower;
      c.add("alpha_lower_recomputed",
            std::abs(lower - io::as_number(s.at("alpha_lower"), "alpha_lower")) <= kRecomputeTol, lower);
      if (!s.at("alpha_exact").is_null()) {
        const double exact = *sharpness_exact(p, dir).alpha_exact;
        c.add("alpha_exact_recomputed",
              std::abs(exact - io::as_number(s.at("alpha_exact"), "alpha_exact")) <= kRecomputeTol, exact);
        c.add("lower_below_exact", lower <= exact + kRecomputeTol);
        if (!s.at("dual_estimate").is_null())
          c.add("dual_estimate_above_exact",
                io::as_number(s.at("dual_estimate"), "dual_estimate") >= exact - 1e-7);
      }
    } else if (command == "solve-lp") {
      verify_spp(need_problem().polyhedron(), res, rc.tol, rc.active_tol, c, "");
      c.add("status_consistent", (report.at("status") == "certified") == res.at("certified").get<bool>());
    } else if (command == "solve-cp") {
      const io::ProblemFile& f = need_problem();
      const Polyhedron p = f.polyhedron();
      const Vector w = io::as_vector(res.at("w"), "result.w");
      const double fw = io::as_number(res.at("fw"), "result.fw");
      c.add("w_feasible", p.contains(w, feas_tol_at_scale(scale_of(w))), p.max_violation(w));
      c.add("fw_is_f_of_w", std::abs(fw - f.max_affine->value(w)) <= kPointTol * scale_of(w));
      verify_spp(lift_epigraph(p, *f.max_affine).poly, res.at("spp"), rc.tol, rc.active_tol, c, "spp.");
    } else if (command == "dist-bound") {
      const Polyhedron p = need_problem().polyhedron();
      const Vector a = io::as_vector(res.at("a"), "result.a");
      const Vector b = io::as_vector(res.at("b"), "result.b");
      const double rho = io::as_number(res.at("rho"), "result.rho");
      const double eps = io::as_number(res.at("epsilon"), "result.epsilon");
      const double delta = io::as_number(res.at("delta"), "result.delta");
      const double inf = io::as_number(res.at("sampled_inf"), "result.sampled_inf");
      const double d = distance(b, project_brute(p, b).proj);
      c.add("rho_is_distance_a_b", std::abs(rho - distance(a, b)) <= 1e-12 * scale_of(b));
      c.add("epsilon_is_delta_times_inf", std::abs(eps - delta * inf) <= 1e-15);
      c.add("d_bP_recomputed", std::abs(d - io::as_number(res.at("d_bP"), "result.d_bP")) <= kPointTol, d);
      if (res.at("verified").get<bool>()) c.add("bound_holds", d <= rho - eps + 1e-7, d - (rho - eps));
    } else if (command == "subtrans") {
      const io::ProblemFile& f = need_problem();
      const Json& s = res.at("subtransversality");
      const double a = io::as_number(s.at("alpha_sub_est"), "alpha_sub_est");
      c.add("gamma_formula",
            std::abs(io::as_number(s.at("gamma_implied"), "gamma_implied") - a * std::sqrt(1 - a * a / 4)) <=
                1e-15);
      const auto again = estimate_subtransversality(
          f.polyhedron(), UnitDirection::normalize(io::as_vector(s.at("direction"), "direction")),
          rc.radius, rc.samples, rc.seed);
      c.add("rerun_identical", again.alpha_sub_est == a, again.alpha_sub_est);
    } else if (command == "bench") {
      const Json again = bench_instances(rc);
      c.add("rerun_identical", again == res);
      c.add("no_failures", res.at("failures").get<std::size_t>() == 0);
    } else if (command == "gen") {
      const Json& problems = res.at("problems");
      c.add("regenerated_identical", generate(rc) == problems);
      bool all_ok = true;
      for (const auto& pj : problems) {
        const Polyhedron p = io::parse_problem(pj).polyhedron();
        all_ok = all_ok && is_feasible(p) && is_bounded(p);
      }
      c.add("problems_feasible_and_bounded", all_ok);
    } else {
      fail(ErrorCode::invalid_argument, "verify: cannot verify '" + command + "' reports");
    }
  } catch (const Error& e) {
    // A tampered result can make a recomputation itself fail; that is a rejection.
    if (e.code() == ErrorCode::parse_error || e.code() == ErrorCode::invalid_argument) throw;
    c.add(std::string("recompute: ") + e.what(), false);
  }
  return {{{"verified_command", command}, {"checks", c.list}}, c.all ? "verified" : "rejected"};
}

// ---- output ----------------------------------------------------------------

bool use_color(const std::ostream& out) {
  if (std::getenv("NO_COLOR") != nullptr) return false;
  return &out == &std::cout && isatty(STDOUT_FILENO);
}

void render_text(const Json& report, std::ostream& out, bool color) {
  const std::string status = report.at("status").get<std::string>();
  const bool good = status != "not_certified" && status != "rejected" && status != "error";
  std::string label = status;
  std::transform(label.begin(), label.end(), label.begin(), [](unsigned char ch) { return std::toupper(ch); });
  if (color) label = (good ? "\033[32m" : "\033[31m") + label + "\033[0m";
  out << "spp " << report.at("command").get<std::string>() << ": " << label << "\n";
  if (report.contains("error")) {
    out << "  " << report["error"]["code"].get<std::string>() << ": "
        << report["error"]["message"].get<std::string>() << "\n";
    return;
  }
  std::size_t width = 0;
  for (const auto& [key, _] : report.at("result").items()) width = std::max(width, key.size());
  for (const auto& [key, value] : report.at("result").items())
    out << "  " << key << std::string(width - key.size() + 2, ' ') << value.dump() << "\n";
}

int exit_code_for(const std::string& status) {
  return status == "not_certified" || status == "rejected" ? kExitCertificate : kExitOk;
}

void add_common(CLI::App* sub, Config& cfg) {
  sub->add_option("--tol", cfg.tol, "KKT and certificate tolerance")->capture_default_str();
  sub->add_option("--active-tol", cfg.active_tol, "active-constraint tolerance")->capture_default_str();
  sub->add_option("--samples", cfg.samples, "sample budget")->capture_default_str();
  sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  sub->add_flag("--timing", cfg.timing, "add wall-clock timing to the report");
}

void add_spp_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--mu", cfg.mu, "shift: a number or 'auto'")->capture_default_str();
  sub->add_option("--alpha", cfg.alpha, "sharpness constant: a number or 'auto'")->capture_default_str();
  sub->add_option("--max-doublings", cfg.max_doublings, "doubling cap when v is not given")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  cfg.argv = args;
  CLI::App app{"Single-projection solver for linear and piecewise-linear programs over polyhedra", "spp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SPP_VERSION);

  auto problem_cmd = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("problem", cfg.problem_path, "problem file (JSON)")->required();
    add_common(sub, cfg);
    return sub;
  };
  auto vec_opt = [](CLI::App* sub, const char* name, std::vector<double>& target, const char* help) {
    sub->add_option(name, target, help)->delimiter(',')->expected(1, -1);
  };

  CLI::App* project = problem_cmd("project", "project a point onto P");
  vec_opt(project, "--point", cfg.point, "point to project (comma separated)");
  CLI::App* sharp = problem_cmd("sharpness", "sharpness modulus of P w.r.t. a direction");
  vec_opt(sharp, "--direction", cfg.direction, "direction (default: -objective.linear)");
  CLI::App* solve_lp = problem_cmd("solve-lp", "minimize a linear objective by one projection");
  add_spp_flags(solve_lp, cfg);
  vec_opt(solve_lp, "--point", cfg.point, "starting point v (default: problem v, else doubling)");
  CLI::App* solve_cp = problem_cmd("solve-cp", "minimize a max-affine objective over P");
  add_spp_flags(solve_cp, cfg);
  vec_opt(solve_cp, "--point", cfg.point, "base point v");
  solve_cp->add_option("--t", cfg.t, "lifted height t");
  CLI::App* dist = problem_cmd("dist-bound", "distance upper bound d(b,P) <= |a-b| - eps");
  vec_opt(dist, "--from", cfg.from, "feasible point a");
  vec_opt(dist, "--to", cfg.to, "infeasible point b");
  dist->add_option("--delta", cfg.delta, "ball radius around a")->capture_default_str();
  CLI::App* subtrans = problem_cmd("subtrans", "subtransversality constant of P and its supporting hyperplane");
  vec_opt(subtrans, "--direction", cfg.direction, "direction (default: -objective.linear)");
  subtrans->add_option("--radius", cfg.radius, "sampling box radius");

  CLI::App* verify = app.add_subcommand("verify", "re-check the certificates of a stored report");
  verify->add_option("report", cfg.report_path, "report file (JSON)")->required();
  add_common(verify, cfg);

  CLI::App* bench = app.add_subcommand("bench", "random instances against the enumeration oracles");
  add_common(bench, cfg);
  add_spp_flags(bench, cfg);
  CLI::App* gen = app.add_subcommand("gen", "seeded random problem files");
  add_common(gen, cfg);
  for (CLI::App* sub : {bench, gen}) {
    sub->add_option("--n", cfg.n, "dimension")->capture_default_str();
    sub->add_option("--m", cfg.m, "number of rows")->capture_default_str();
    sub->add_option("--count", cfg.count, "number of instances")->capture_default_str();
  }
  gen->add_option("--pieces", cfg.pieces, "max-affine pieces (0: linear objective)")->capture_default_str();
  gen->add_option("--out", cfg.out_dir, "also write problem_<i>.json files here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SPP_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  Json report{{"schema_version", io::kSchemaVersion},
              {"tool", {{"name", "spp"}, {"version", SPP_VERSION}}},
              {"command", cfg.command},
              {"argv", cfg.argv},
              {"seed", cfg.seed},
              {"config", config_json(cfg)}};
  const auto start = std::chrono::steady_clock::now();
  int code = kExitOk;
  try {
    std::optional<io::ProblemFile> prob;
    if (!cfg.problem_path.empty()) {
      prob = io::load_problem(cfg.problem_path);
      report["problem"] = io::to_json(*prob);
      report["row_scale"] = prob->polyhedron().row_scale();
    }
    Outcome o;
    if (cfg.command == "project") o = cmd_project(cfg, *prob);
    else if (cfg.command == "sharpness") o = cmd_sharpness(cfg, *prob);
    else if (cfg.command == "solve-lp") o = cmd_solve_lp(cfg, *prob);
    else if (cfg.command == "solve-cp") o = cmd_solve_cp(cfg, *prob);
    else if (cfg.command == "dist-bound") o = cmd_dist_bound(cfg, *prob);
    else if (cfg.command == "subtrans") o = cmd_subtrans(cfg, *prob);
    else if (cfg.command == "verify") o = cmd_verify(cfg);
    else if (cfg.command == "bench") o = cmd_bench(cfg);
    else o = cmd_gen(cfg);
    report["result"] = std::move(o.result);
    report["status"] = o.status;
    code = exit_code_for(o.status);
  } catch (const Error& e) {
    report["status"] = "error";
    report["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    code = kExitError;
  } catch (const std::exception& e) {
    report["status"] = "error";
    report["error"] = {{"code", "internal"}, {"message", e.what()}};
    err << "error: " << e.what() << "\n";
    code = kExitError;
  }
  if (cfg.timing) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    report["timing_ms"] = {{"total", ms.count()}};
  }
  if (cfg.format == "json") {
    out << report.dump(2) << "\n";
  } else {
    render_text(report, out, use_color(out));
  }
  return code;
}

}  // namespace spp::cli
