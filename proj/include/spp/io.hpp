// Copyright 2026 The spp Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// JSON problem files and report serialization.
//
// Problem file:
//   {
//     "n": 2,
//     "A": [[1, -1], [-1, -1]],
//     "b": [0, 0],
//     "objective": {"linear": [0, 1]}        or
//                  {"max_affine": [{"a": [1, 1], "c": 0}, ...]},
//     "v": [-1, -0.5], "t": -3, "mu": 10, "alpha": 0.7   (all optional)
//   }
//
// Non-finite numbers are written as the strings "inf", "-inf" and "nan".

#include <optional>
#include <string>

#include <json.hpp>

#include "spp/linalg.hpp"
#include "spp/max_affine.hpp"
#include "spp/polyhedron.hpp"
#include "spp/regularity.hpp"
#include "spp/sharpness.hpp"
#include "spp/single_projection.hpp"

namespace spp::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct ProblemFile {
  std::size_t n = 0;
  Matrix a;  // rows as written, before normalization
  Vector b;
  std::optional<Vector> linear;
  std::optional<MaxAffine> max_affine;
  std::optional<Vector> v;
  std::optional<double> t;
  std::optional<double> mu;
  std::optional<double> alpha;

  Polyhedron polyhedron() const { return Polyhedron(a, b); }
};

/// Validates shapes and finiteness; errors name the offending field, e.g.
/// "A[1][0]: expected a number".
ProblemFile parse_problem(const Json& j);
ProblemFile load_problem(const std::string& path);
Json to_json(const ProblemFile& p);

/// Reads a whole file as JSON (parse_error / io_error on failure).
Json load_json(const std::string& path);

Json number(double x);
double as_number(const Json& j, const std::string& path);
Json to_json(const Vector& v);
Vector as_vector(const Json& j, const std::string& path);

Json to_json(const ActiveSet& s);
Json to_json(const SharpnessReport& r);
Json to_json(const Conditions& c);
Json to_json(const SppReport& r);
Json to_json(const CpReport& r);
Json to_json(const SolutionSetCertificate& c);
Json to_json(const SubtransReport& r);
Json to_json(const DistBoundReport& r);

}  // namespace spp::io
