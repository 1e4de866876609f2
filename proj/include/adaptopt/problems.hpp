#pragma once

// Seeded instance generators with attached reference optima, and JSON
// (de)serialization of problem specs.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adaptopt/functional.hpp"

namespace adaptopt {

/// Registered kinds: quadratic, max-affine, composite, matrix-game,
/// diagonal-game, homogeneous-norm-constrained, abs, box-lp.
const std::vector<std::string>& problem_kinds();

/// Deterministic instance for (kind, dim, seed). Throws for unknown kinds.
/// quadratic:   0.5 x'Qx - b'x on R^n, spectrum of Q spans [0.1, 10] exactly.
/// max-affine:  10 rows with entries in [-0.02, 0.02] on [-1, 1]^n.
/// composite:   quadratic + 0.1 ||x||_1 on [-1, 1]^n.
/// matrix-game: payoff in [0, 1]^{n x n}; diagonal-game: A = I.
ProblemSpec generate_problem(const std::string& kind, int dim, std::uint64_t seed);

/// max_{i,j} ||a_i - a_j||_2 over the rows of a max-affine functional.
double max_affine_jump(const Functional& f);

/// min over a box of 0.5 x'Qx - b'x + w ||x||_1 by cyclic coordinate descent.
Vector composite_minimizer(const Functional& f, const FeasibleSet& box, int sweeps = 100'000,
                           double tol = 1e-14);

nlohmann::json to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Functional& f);
Functional functional_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FeasibleSet& s);
FeasibleSet set_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ProblemSpec& p);
ProblemSpec problem_from_json(const nlohmann::json& j);

/// Canonical text form: two-space indent and a trailing newline.
std::string dump_json(const nlohmann::json& j);

}  // namespace adaptopt
