#pragma once

#include <string>

#include <json.hpp>

#include "oscone/boxes.hpp"
#include "oscone/convex.hpp"

namespace oscone::box_io {

struct BoxParseError : std::runtime_error {
  explicit BoxParseError(const std::string& what) : std::runtime_error(what) {}
};

// Reads a box from its JSON schema. Accepted forms:
//   {"p": [[[[...]]]]}   2x2x2x2 nested arrays in a,b,x,y index order
//   {"matrix": [[...]]}  4x4 row-major matrix form (block-normalized)
// The reader auto-detects the form, validates the box invariants and throws
// BoxParseError naming the violated invariant and its indices.
boxes::Box read_box(const nlohmann::json& j);
boxes::Box read_box_file(const std::string& path);

nlohmann::json box_to_json(const boxes::Box& b);
nlohmann::json matrix_to_json(const std::array<std::array<double, 4>, 4>& q);

// Complex matrices appear as arrays of rows whose entries are either plain
// numbers or [re, im] pairs.
numerics::GeneralMatrix read_complex_matrix(const nlohmann::json& j);
numerics::HermMatrix read_hermitian_matrix(const nlohmann::json& j,
                                           double tol = 1e-9);
nlohmann::json complex_matrix_to_json(const numerics::GeneralMatrix& m);

// SolveReport JSON: {status, point?, residual, gap_estimate, iterations}.
nlohmann::json solve_report_to_json(const convex::SolveReport& r,
                                    const std::vector<std::string>& block_names);

}  // namespace oscone::box_io
