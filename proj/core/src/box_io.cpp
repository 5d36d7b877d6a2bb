#include "oscone/box_io.hpp"

#include <fstream>

namespace oscone::box_io {

using nlohmann::json;

namespace {

std::string issue_to_string(const boxes::ValidationIssue& issue) {
  std::string s = issue.invariant + " violated at (";
  bool first = true;
  const char* names[4] = {"a", "b", "x", "y"};
  for (int k = 0; k < 4; ++k) {
    if (issue.index[k] < 0) continue;
    if (!first) s += ",";
    s += std::string(names[k]) + "=" + std::to_string(issue.index[k]);
    first = false;
  }
  s += ") by " + std::to_string(issue.violation);
  return s;
}

}  // namespace

boxes::Box read_box(const json& j) {
  if (!j.is_object()) throw BoxParseError("box JSON must be an object");

  double p[2][2][2][2];
  if (j.contains("p")) {
    const json& t = j["p"];
    try {
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
              p[a][b][x][y] = t.at(a).at(b).at(x).at(y).get<double>();
    } catch (const json::exception& e) {
      throw BoxParseError(std::string("field \"p\" must be 2x2x2x2 numbers: ") +
                          e.what());
    }
  } else if (j.contains("matrix")) {
    const json& t = j["matrix"];
    std::array<std::array<double, 4>, 4> q;
    try {
      for (int i = 0; i < 4; ++i)
        for (int jj = 0; jj < 4; ++jj) q[i][jj] = t.at(i).at(jj).get<double>();
    } catch (const json::exception& e) {
      throw BoxParseError(std::string("field \"matrix\" must be 4x4 numbers: ") +
                          e.what());
    }
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) {
        const double s =
            q[2 * x][2 * y] + q[2 * x][2 * y + 1] + q[2 * x + 1][2 * y] +
            q[2 * x + 1][2 * y + 1];
        if (std::abs(s - 1.0) > 1e-9)
          throw BoxParseError("matrix block (x=" + std::to_string(x) +
                              ",y=" + std::to_string(y) +
                              ") sums to " + std::to_string(s) + ", expected 1");
      }
    for (int x = 0; x < 2; ++x)
      for (int a = 0; a < 2; ++a)
        for (int y = 0; y < 2; ++y)
          for (int b = 0; b < 2; ++b) p[a][b][x][y] = q[2 * x + a][2 * y + b];
  } else {
    throw BoxParseError("box JSON needs a \"p\" or \"matrix\" field");
  }

  std::vector<boxes::ValidationIssue> issues;
  auto box = boxes::Box::try_from_table(p, &issues);
  if (!box) {
    std::string msg = "invalid box:";
    for (const auto& issue : issues) msg += " " + issue_to_string(issue) + ";";
    throw BoxParseError(msg);
  }
  return *box;
}

boxes::Box read_box_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw BoxParseError(std::string("malformed JSON: ") + e.what());
  }
  return read_box(j);
}

json box_to_json(const boxes::Box& b) {
  json t = json::array();
  for (int a = 0; a < 2; ++a) {
    json ja = json::array();
    for (int bb = 0; bb < 2; ++bb) {
      json jb = json::array();
      for (int x = 0; x < 2; ++x) {
        json jx = json::array();
        for (int y = 0; y < 2; ++y) jx.push_back(b(a, bb, x, y));
        jb.push_back(jx);
      }
      ja.push_back(jb);
    }
    t.push_back(ja);
  }
  return json{{"p", t}};
}

json matrix_to_json(const std::array<std::array<double, 4>, 4>& q) {
  json rows = json::array();
  for (const auto& r : q) {
    json row = json::array();
    for (double v : r) row.push_back(v);
    rows.push_back(row);
  }
  return rows;
}

numerics::GeneralMatrix read_complex_matrix(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw BoxParseError("complex matrix must be an array of rows");
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j[0].size());
  numerics::GeneralMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols)
      throw BoxParseError("complex matrix has ragged rows");
    for (int c = 0; c < cols; ++c) {
      const json& e = j[i][c];
      if (e.is_number()) {
        m(i, c) = e.get<double>();
      } else if (e.is_array() && e.size() == 2) {
        m(i, c) = numerics::Complex(e[0].get<double>(), e[1].get<double>());
      } else {
        throw BoxParseError("matrix entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

numerics::HermMatrix read_hermitian_matrix(const json& j, double tol) {
  return numerics::HermMatrix::from_general(read_complex_matrix(j), tol);
}

json complex_matrix_to_json(const numerics::GeneralMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) {
      const numerics::Complex v = m(i, c);
      if (v.imag() == 0.0)
        row.push_back(v.real());
      else
        row.push_back(json::array({v.real(), v.imag()}));
    }
    rows.push_back(row);
  }
  return rows;
}

json solve_report_to_json(const convex::SolveReport& r,
                          const std::vector<std::string>& block_names) {
  json j;
  j["status"] = convex::to_string(r.status);
  j["residual"] = r.residual;
  j["gap_estimate"] = r.gap_estimate;
  j["iterations"] = r.iterations;
  if (!r.point.empty()) {
    json pt;
    for (size_t b = 0; b < r.point.size(); ++b) {
      const std::string name =
          b < block_names.size() ? block_names[b] : "block" + std::to_string(b);
      pt[name] = complex_matrix_to_json(r.point[b].to_general());
    }
    j["point"] = pt;
  }
  return j;
}

}  // namespace oscone::box_io
