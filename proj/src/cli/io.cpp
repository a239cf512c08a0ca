// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#include "spp/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace spp::io {
namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::parse_error, path + ": " + what);
}

std::string child(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

const Json& field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) bad(child(path, key), "missing");
  return obj.at(key);
}

std::string index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

Vector vector_of_size(const Json& j, const std::string& path, std::size_t n) {
  Vector v = as_vector(j, path);
  if (v.dim() != n) bad(path, "expected " + std::to_string(n) + " entries, got " + std::to_string(v.dim()));
  return v;
}

}  // namespace

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double as_number(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  if (!j.is_number()) bad(path, "expected a number");
  return j.get<double>();
}

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(number(x));
  return out;
}

Vector as_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) bad(path, "expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const double x = as_number(j[i], index(path, i));
    if (!std::isfinite(x)) fail(ErrorCode::non_finite, index(path, i) + ": non-finite entry");
    out.push_back(x);
  }
  return Vector(std::move(out));
}

ProblemFile parse_problem(const Json& j) {
  if (!j.is_object()) bad("(root)", "expected an object");
  ProblemFile p;
  const Json& jn = field(j, "n", "");
  if (!jn.is_number_integer() || jn.get<long long>() < 1) bad("n", "expected a positive integer");
  p.n = jn.get<std::size_t>();

  const Json& ja = field(j, "A", "");
  if (!ja.is_array() || ja.empty()) bad("A", "expected a non-empty array of rows");
  p.a = Matrix(ja.size(), p.n);
  for (std::size_t r = 0; r < ja.size(); ++r) {
    const Vector row = vector_of_size(ja[r], index("A", r), p.n);
    for (std::size_t c = 0; c < p.n; ++c) p.a(r, c) = row[c];
  }
  p.b = vector_of_size(field(j, "b", ""), "b", ja.size());

  if (j.contains("objective")) {
    const Json& jo = j.at("objective");
    if (!jo.is_object()) bad("objective", "expected an object");
    const bool has_linear = jo.contains("linear");
    const bool has_pieces = jo.contains("max_affine");
    if (has_linear == has_pieces) bad("objective", "give exactly one of 'linear' or 'max_affine'");
    if (has_linear) p.linear = vector_of_size(jo.at("linear"), "objective.linear", p.n);
    if (has_pieces) {
      const Json& jp = jo.at("max_affine");
      if (!jp.is_array() || jp.empty()) bad("objective.max_affine", "expected a non-empty array");
      std::vector<MaxAffine::Piece> pieces;
      for (std::size_t i = 0; i < jp.size(); ++i) {
        const std::string path = index("objective.max_affine", i);
        if (!jp[i].is_object()) bad(path, "expected an object");
        Vector g = vector_of_size(field(jp[i], "a", path), path + ".a", p.n);
        const double c = as_number(field(jp[i], "c", path), path + ".c");
        if (!std::isfinite(c)) fail(ErrorCode::non_finite, path + ".c: non-finite entry");
        pieces.push_back({std::move(g), c});
      }
      p.max_affine = MaxAffine(std::move(pieces));
    }
  }
  if (j.contains("v")) p.v = vector_of_size(j.at("v"), "v", p.n);
  for (auto [key, slot] : {std::pair{"t", &p.t}, std::pair{"mu", &p.mu}, std::pair{"alpha", &p.alpha}}) {
    if (!j.contains(key)) continue;
    const double x = as_number(j.at(key), key);
    if (!std::isfinite(x)) fail(ErrorCode::non_finite, std::string(key) + ": non-finite entry");
    *slot = x;
  }
  return p;
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, path + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::parse_error, path + ": " + e.what());
  }
}

ProblemFile load_problem(const std::string& path) {
  try {
    return parse_problem(load_json(path));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::io_error) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

Json to_json(const ProblemFile& p) {
  Json a = Json::array();
  for (std::size_t r = 0; r < p.a.rows(); ++r) a.push_back(to_json(p.a.row_vector(r)));
  Json j{{"n", p.n}, {"A", a}, {"b", to_json(p.b)}};
  if (p.linear) j["objective"] = {{"linear", to_json(*p.linear)}};
  if (p.max_affine) {
    Json pieces = Json::array();
    for (const auto& piece : p.max_affine->pieces())
      pieces.push_back({{"a", to_json(piece.gradient)}, {"c", number(piece.intercept)}});
    j["objective"] = {{"max_affine", pieces}};
  }
  if (p.v) j["v"] = to_json(*p.v);
  if (p.t) j["t"] = number(*p.t);
  if (p.mu) j["mu"] = number(*p.mu);
  if (p.alpha) j["alpha"] = number(*p.alpha);
  return j;
}

Json to_json(const ActiveSet& s) { return s.indices; }

Json to_json(const SharpnessReport& r) {
  Json j{{"direction", to_json(r.direction.vec())},
         {"alpha_lower", number(r.alpha_lower)},
         {"subsets_examined", r.subsets_examined},
         {"vacuous", r.vacuous},
         {"minimizing_rows", r.minimizing_rows},
         {"samples", r.samples}};
  j["alpha_exact"] = r.alpha_exact ? number(*r.alpha_exact) : Json(nullptr);
  j["dual_estimate"] = r.dual_estimate ? number(*r.dual_estimate) : Json(nullptr);
  return j;
}

Json to_json(const Conditions& c) {
  return {{"cond1", c.cond1}, {"cond2", c.cond2}, {"theta", number(c.theta)}, {"d_vA", number(c.d_va)}};
}

Json to_json(const SppReport& r) {
  Json j{{"x_star", to_json(r.x_star.vec())},
         {"v", to_json(r.v)},
         {"d_vA", number(r.d_va)},
         {"alpha_used", number(r.alpha_used)},
         {"alpha_auto", r.alpha_auto},
         {"mu_threshold", number(r.mu_threshold)},
         {"mu_used", number(r.mu_used)},
         {"mu_auto", r.mu_auto},
         {"u", to_json(r.u)},
         {"solution", to_json(r.solution)},
         {"value", number(r.value)},
         {"kkt_certificate", number(r.kkt_certificate)},
         {"projection_residual", number(r.projection_residual)},
         {"doublings", r.doublings},
         {"certified", r.certified}};
  j["theta_v"] = r.theta_v ? number(*r.theta_v) : Json(nullptr);
  j["conditions"] = r.conditions ? to_json(*r.conditions) : Json(nullptr);
  j["conditions_u"] = r.conditions_u ? to_json(*r.conditions_u) : Json(nullptr);
  j["oracle_value"] = r.oracle_value ? number(*r.oracle_value) : Json(nullptr);
  j["oracle_match"] = r.oracle_match ? Json(*r.oracle_match) : Json(nullptr);
  return j;
}

Json to_json(const CpReport& r) {
  Json j{{"point", to_json(r.point)},
         {"w", to_json(r.w)},
         {"fw", number(r.fw)},
         {"graph_gap", number(r.graph_gap)},
         {"lifted_rows", r.lifted.poly.rows()},
         {"spp", to_json(r.spp)}};
  j["M_est"] = r.m_est ? number(*r.m_est) : Json(nullptr);
  return j;
}

Json to_json(const SolutionSetCertificate& c) {
  return {{"cond_i", c.cond_i},     {"cond_a", c.cond_a},
          {"cond_b", c.cond_b},     {"min_value", number(c.min_value)},
          {"cond_i_inf", number(c.cond_i_inf)}, {"d_vA", number(c.d_va)},
          {"all", c.all()}};
}

Json to_json(const SubtransReport& r) {
  return {{"direction", to_json(r.direction.vec())},
          {"alpha_sub_est", number(r.alpha_sub_est)},
          {"gamma_implied", number(r.gamma_implied)},
          {"beta_required", number(r.beta_required)},
          {"samples", r.samples},
          {"box_radius", number(r.box_radius)},
          {"vacuous", r.vacuous}};
}

Json to_json(const DistBoundReport& r) {
  return {{"a", to_json(r.a)},
          {"b", to_json(r.b)},
          {"rho", number(r.rho)},
          {"delta", number(r.delta)},
          {"sampled_inf", number(r.sampled_inf)},
          {"epsilon", number(r.epsilon)},
          {"d_bP", number(r.d_bp)},
          {"verified", r.verified},
          {"samples", r.samples},
          {"resamples", r.resamples}};
}

}  // namespace spp::io
