#pragma once

#include <memory>
#include <string>
#include <vector>

#include "oscone/numerics.hpp"

namespace oscone::convex {

enum class BlockKind { psd, free_herm };

struct BlockSpec {
  std::string name;
  int dim;
  BlockKind kind;
  double strictness;  // lower bound on lambda_min for psd blocks
};

/// Affine-slice-meets-cone-product feasibility instance: find one Hermitian
/// matrix per block such that every block lies in its cone (PSD with a
/// lambda_min >= strictness margin, or unconstrained for free blocks) and
/// every affine constraint holds.
class FeasibilityProblem {
 public:
  int add_psd_block(const std::string& name, int dim, double strictness = 0.0);
  int add_free_block(const std::string& name, int dim);

  // One real constraint  sum_b Tr(coeff_b X_b) = target.
  void add_functional_constraint(
      std::vector<std::pair<int, numerics::HermMatrix>> coeffs, double target);

  // sum_k coeff_k * X_{block_k}[row_k][col_k] = target, expanded into real
  // and imaginary scalar constraints.
  struct EntryTerm {
    int block;
    int row, col;
    numerics::Complex coeff;
  };
  void add_entry_constraint(const std::vector<EntryTerm>& terms,
                            numerics::Complex target);

  // sum_k coeff_k * X_{block_k}[row_off_k + i][col_off_k + j] = target(i, j)
  // for all i < sub_rows, j < sub_cols.
  struct SubblockTerm {
    int block;
    int row_off, col_off;
    double coeff;
  };
  void add_subblock_constraint(const std::vector<SubblockTerm>& terms,
                               const numerics::GeneralMatrix& target);

  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  int block_index(const std::string& name) const;
  int num_constraints() const { return static_cast<int>(targets_.size()); }

  // Real-isometric vectorization of a full assignment (diagonal entries,
  // then sqrt(2)-scaled off-diagonal real/imag parts, block by block).
  int ambient_dim() const;
  std::vector<double> vectorize(const std::vector<numerics::HermMatrix>& point) const;
  std::vector<numerics::HermMatrix> unvectorize(const std::vector<double>& x) const;

  // Constraint row in the same coordinates (used by the solver).
  std::vector<double> constraint_row(int c) const;
  double constraint_target(int c) const { return targets_[c]; }

 private:
  std::vector<BlockSpec> blocks_;
  // Per constraint: sparse list of (block, Hermitian coefficient).
  std::vector<std::vector<std::pair<int, numerics::HermMatrix>>> rows_;
  std::vector<double> targets_;
};

enum class SolveStatus { feasible, infeasible_evidence, undecided };
std::string to_string(SolveStatus s);

struct SolveReport {
  SolveStatus status = SolveStatus::undecided;
  std::vector<numerics::HermMatrix> point;  // one per block when feasible
  double residual = 0.0;                    // worst constraint/cone violation at point
  double gap_estimate = 0.0;                // stabilized affine<->cone distance
  int iterations = 0;
};

/// Least-squares projector onto the affine slice, with a precomputed
/// pseudo-inverse factorization; shared by the solver and distance queries.
class AffineProjector {
 public:
  explicit AffineProjector(const FeasibilityProblem& p);
  std::vector<double> project(const std::vector<double>& x) const;
  double distance(const std::vector<double>& x) const;
  double residual_inf(const std::vector<double>& x) const;  // max |Ax - b|

 private:
  int n_ = 0, m_ = 0;
  std::vector<double> a_;        // m x n rows
  std::vector<double> b_;
  std::vector<double> pinv_;     // n x m: A^T (A A^T)^+
};

/// One Dykstra cycle: affine projection, then per-block cone projection with
/// the accumulated corrections. Exposed so callers can drive or inspect the
/// iteration; solve_feasibility wraps it.
class DykstraState {
 public:
  explicit DykstraState(const FeasibilityProblem& p);
  // Restarts the iteration from the given assignment (Dykstra then converges
  // to the projection of this point onto the intersection, when nonempty).
  void set_start(const std::vector<numerics::HermMatrix>& point);
  void step();

  const FeasibilityProblem& problem() const { return *prob_; }
  // Most recent affine-side point (satisfies constraints exactly).
  std::vector<numerics::HermMatrix> affine_point() const;
  // Most recent cone-side point (satisfies cones exactly).
  std::vector<numerics::HermMatrix> cone_point() const;
  // Distance from the affine point to the cone product (fresh projection,
  // ignoring corrections).
  double gap() const;
  // Worst cone deficit of the affine point: max_b (strictness - lambda_min).
  double cone_violation_at_affine() const;
  double affine_residual_at_cone() const;  // max |A z - b| at the cone point
  int iterations() const { return iter_; }

 private:
  const FeasibilityProblem* prob_;
  std::shared_ptr<const AffineProjector> proj_;
  std::vector<double> x_, corr_, y_, z_;
  int iter_ = 0;

  friend SolveReport solve_feasibility(const FeasibilityProblem&, double, int);
};

SolveReport solve_feasibility(const FeasibilityProblem& p, double tol = 1e-8,
                              int max_iter = 50000);

// Exact distance from a point to the affine slice.
double distance_to_affine(const FeasibilityProblem& p,
                          const std::vector<numerics::HermMatrix>& point);

// ---------------------------------------------------------------------------

struct HullQuery {
  std::vector<std::vector<double>> vertices;
  std::vector<double> target;
  double tol = 1e-9;
};

struct HullResult {
  bool inside = false;
  std::vector<double> weights;    // convex weights over vertices (inside)
  std::vector<double> separator;  // unit vector c (outside)
  double gap = 0.0;               // <c, target> - max_v <c, v> for unit c
};

// Membership of target in the convex hull of the vertices, by NNLS-style
// active-set least squares plus a projected-gradient polish. Inside yields
// reconstructing weights; outside yields a strictly separating functional.
// Both certificates are re-verified before returning.
HullResult hull_membership(const HullQuery& q);

}  // namespace oscone::convex
