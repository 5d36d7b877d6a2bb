#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscone/numerics.hpp"
#include "oscone/tensorlab.hpp"

namespace oscone::boxes {

struct ValidationIssue {
  std::string invariant;        // "nonnegative" | "normalization" | "nonsignaling"
  std::array<int, 4> index;     // offending (a,b,x,y) or (-1 padded)
  double violation;
};

/// Bipartite 2-input/2-output correlation box: table p[a][b][x][y] with
/// entrywise nonnegativity, per-(x,y) normalization and the non-signaling
/// marginal conditions.
class Box {
 public:
  static Box from_table(const double (&p)[2][2][2][2]);
  static std::optional<Box> try_from_table(const double (&p)[2][2][2][2],
                                           std::vector<ValidationIssue>* issues);

  double operator()(int a, int b, int x, int y) const { return p_[a][b][x][y]; }

  static Box uniform();
  static Box pr();
  // Deterministic responses a = f(x), b = g(y).
  static Box deterministic(int f0, int f1, int g0, int g1);

 private:
  Box() = default;
  double p_[2][2][2][2];
};

// The 16 deterministic boxes, ordered lexicographically by (f0, f1, g0, g1).
const std::array<Box, 16>& deterministic_boxes();

// Matrix form q[2x+a][2y+b] = p[a][b][x][y].
tensorlab::BoxMatrix box_to_matrix(const Box& b);
// Inverse, with a per-block normalization check (each 2x2 (x,y) block of the
// matrix must sum to 1 within tol).
Box matrix_to_box(const tensorlab::BoxMatrix& m, double tol = 1e-9);

struct NonsignalingCheck {
  bool nonsignaling = false;               // within tol
  bool repaired = false;                   // repair attempted (within 10 tol)
  std::array<std::array<double, 4>, 4> repaired_matrix{};
};

// Non-signaling test of a raw 4x4 table in matrix form, with a least-squares
// repaired matrix when the violation is within 10*tol.
NonsignalingCheck is_nonsignaling(const std::array<std::array<double, 4>, 4>& q,
                                  double tol);

/// Convex weights over the 16 deterministic response pairs.
struct LocalModel {
  std::array<double, 16> weights;
  Box to_box() const;
};

struct LocalResult {
  bool local = false;
  LocalModel model{};                     // inside
  std::array<double, 16> bell_functional{};  // outside: unit-norm separator
  double gap_unit = 0.0;      // value minus local max for the unit separator
  double local_max = 0.0;     // max of the unit separator over the vertices
  double gap_localmax2 = 0.0; // gap after rescaling the separator to local max 2
};

// Membership in the local polytope (convex hull of the 16 deterministic
// boxes) with a reconstructing model or a separating Bell functional.
LocalResult local_membership(const Box& b, double tol = 1e-9);

/// Shared state plus binary POVMs on dim-dimensional local spaces.
struct QuantumStrategy {
  int dim = 2;
  numerics::HermMatrix rho;                      // on dim^2, PSD, trace 1
  std::array<std::array<numerics::HermMatrix, 2>, 2> a;  // a[x][outcome]
  std::array<std::array<numerics::HermMatrix, 2>, 2> b;  // b[y][outcome]

  static QuantumStrategy make(int dim, numerics::HermMatrix rho,
                              std::array<std::array<numerics::HermMatrix, 2>, 2> a,
                              std::array<std::array<numerics::HermMatrix, 2>, 2> b,
                              double tol = 1e-9);
};

Box strategy_to_box(const QuantumStrategy& s);

double chsh_value(const Box& b);

// The CHSH functional in matrix coordinates: F[2x+a][2y+b] = (-1)^(a+b) for
// xy = 0 and -(-1)^(a+b) for x = y = 1.
std::array<std::array<double, 4>, 4> chsh_functional();

struct SeesawResult {
  double value = 0.0;
  QuantumStrategy strategy;
  std::vector<double> history;  // best value after each iteration (monotone)
};

// Maximizes sum_ij f[i][j] q_ij over dim-dimensional quantum strategies by
// alternating exact coordinate updates; deterministic for a fixed seed.
SeesawResult seesaw_maximize(const std::array<std::array<double, 4>, 4>& functional,
                             int dim, int restarts, uint64_t seed);

// Explicit max-cone witnesses from the two constructive sources: a quantum
// strategy (Schmidt-basis compression) and a local model (diagonal direct
// sum over the support).
tensorlab::FactorWitness witness_from_strategy(const QuantumStrategy& s);
tensorlab::FactorWitness witness_from_local_model(const LocalModel& m);

enum class QVerdict { yes_witness, no_sqrt_bell, undecided };
std::string to_string(QVerdict v);

struct ClassifyOptions {
  double tol = 1e-9;
  int witness_dim = 2;
  int restarts = 30;
  uint64_t seed = 0;
};

struct ClassifyReport {
  bool valid_box = true;
  std::vector<ValidationIssue> issues;  // populated when valid_box is false
  bool nonsignaling_p = false;  // min-cone membership of the matrix form (P)
  bool local = false;           // local polytope membership (L)
  LocalResult local_detail;
  QVerdict quantum = QVerdict::undecided;
  tensorlab::SqrtBellReport bell;
  std::optional<tensorlab::FactorWitness> witness;
  double chsh = 0.0;
};

ClassifyReport classify(const Box& b, const ClassifyOptions& opt = {});

// Raw-table entry point: tables violating the box invariants come back as
// not-in-P with the offending invariants listed.
ClassifyReport classify_table(const double (&p)[2][2][2][2],
                              const ClassifyOptions& opt = {});

}  // namespace oscone::boxes
