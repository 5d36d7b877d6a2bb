#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "oscone/convex.hpp"
#include "oscone/numerics.hpp"

namespace oscone::tensorlab {

/// A 4x4 real matrix representing an element of V (x) V, with the row and
/// column balance conditions q_{i1}+q_{i2} = q_{i3}+q_{i4} and
/// q_{1j}+q_{2j} = q_{3j}+q_{4j}. Construction checks the conditions within
/// tol and then repairs exactly by least-squares projection onto the
/// 9-dimensional subspace.
class BoxMatrix {
 public:
  static BoxMatrix from_entries(const std::array<std::array<double, 4>, 4>& q,
                                double tol = 1e-10);
  // Largest violation of the balance conditions of a raw table.
  static double balance_violation(const std::array<std::array<double, 4>, 4>& q);
  // Exact least-squares repair (no tolerance check).
  static std::array<std::array<double, 4>, 4> project_to_subspace(
      const std::array<std::array<double, 4>, 4>& q);

  double operator()(int i, int j) const { return q_[i][j]; }
  const std::array<std::array<double, 4>, 4>& entries() const { return q_; }
  BoxMatrix scaled(double t) const;
  double frobenius_distance(const BoxMatrix& o) const;

 private:
  BoxMatrix() = default;
  std::array<std::array<double, 4>, 4> q_{};
};

// Canonical instances of the separation discussion: the PR matrix, the
// printed Q matrix, and the uniform matrix with all entries 1/4.
BoxMatrix pr_matrix();
BoxMatrix displayed_q_matrix();
BoxMatrix uniform_matrix();

// Ground-level membership in the min cone: all 16 entries >= -tol.
bool min_cone_member(const BoxMatrix& b, double tol);

/// Both sides of the square-root Bell inequality, together with the full
/// S-table. Index conventions: d, a, c range over {0,2} encoded as 0 -> 0
/// and 1 -> 2; j, k range over {1,2} encoded as 0,1.
struct SqrtBellReport {
  std::array<double, 2> lhs;                                   // per d
  double rhs = 0.0;          // min_{a,c} sum_{j,k} S_{a,c}(j,k), min_b inside
  double rhs_outer_min = 0.0;  // variant with min_b outside the j,k sum
  std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> s_table{};
  bool violated(int d_index) const { return lhs[d_index] > rhs + 1e-12; }
  bool any_violated() const { return violated(0) || violated(1); }
};

SqrtBellReport sqrt_bell_value(const BoxMatrix& b);

/// Max-cone membership witness: PSD matrices with X1+X2 = X3+X4 and
/// Y1+Y2 = Y3+Y4 = I realizing q_{ij} = Tr(X_i Y_j). The Y side is stored
/// already transposed so the pairing is a plain trace.
struct FactorWitness {
  int p;
  std::array<numerics::HermMatrix, 4> x;
  std::array<numerics::HermMatrix, 4> y;

  static FactorWitness make(std::array<numerics::HermMatrix, 4> x,
                            std::array<numerics::HermMatrix, 4> y,
                            double tol = 1e-9);
};

BoxMatrix max_cone_construct(const FactorWitness& w);

struct SearchResult {
  bool found = false;
  std::optional<FactorWitness> witness;
  double reconstruction_error = 0.0;
  int restarts_used = 0;
};

// Alternating feasibility seesaw for the converse direction: look for a
// witness of dimension p reproducing b within 1e-6 Frobenius. A not-found
// outcome is never a non-membership proof.
SearchResult max_cone_search(const BoxMatrix& b, int p, int restarts,
                             uint64_t seed);

// The trace inequality Tr(X1+X2) <= min_{a,c} sum_{j,k} S_{a,c}(j,k)
// evaluated on the witness's induced q table; holds for every valid witness.
bool trace_inequality_check(const FactorWitness& w, double tol = 1e-9);

/// Matrix-valued trigonometric polynomial of degree <= 1 in 1 or 2 torus
/// variables, with the Hermitian symmetry coeff(-k) = coeff(k)^*.
class MatTrigPoly {
 public:
  MatTrigPoly(int vars, int dim);
  // Sets coefficient for the exponent tuple and its mirror image.
  void set_coeff(int kz, int kw, const numerics::GeneralMatrix& c);
  numerics::HermMatrix eval(numerics::Complex z,
                            numerics::Complex w = 1.0) const;
  int vars() const { return vars_; }
  int dim() const { return dim_; }

 private:
  int vars_, dim_;
  std::map<std::pair<int, int>, numerics::GeneralMatrix> coeffs_;
};

// The 2x2 element h(z,w) = [[3+2Re(zw), 2 conj(z) w],[2 z conj(w), 3-2Re(zw)]]
// separating the min and max structures on S_1 (x) S_1.
MatTrigPoly separation_element();

struct TorusScanResult {
  double min_value = 0.0;
  numerics::Complex argmin_z{1.0, 0.0};
  numerics::Complex argmin_w{1.0, 0.0};
};

// Minimum of lambda_min(f(point)) over the uniform grid_n^vars torus grid.
TorusScanResult torus_min_eig(const MatTrigPoly& f, int grid_n);

// Decides (to the solver contract) whether t0 splits as t0 = t0^1 + t0^2
// with [[t0^1, t1],[t1^*, t0^2]] PSD and both parts >= delta; this is
// equivalent to max-positivity of 1 (x) t0 + z (x) t1 + conj(z) (x) t1^*.
convex::SolveReport s1_max_split(
    const numerics::HermMatrix& t0, const numerics::GeneralMatrix& t1,
    double delta = numerics::kStrictPositivityDelta, double tol = 1e-8,
    int max_iter = 50000);
convex::FeasibilityProblem s1_max_split_problem(const numerics::HermMatrix& t0,
                                                const numerics::GeneralMatrix& t1,
                                                double delta);

// The split instance with unit diagonal sum: [[A, t],[t*, B]] >= 0 on the
// slice A + B = I, feasible exactly when the numerical radius of t is at
// most 1/2.
convex::FeasibilityProblem ando_split_problem(const numerics::GeneralMatrix& t,
                                              double delta = 0.0);

// The fifth-roots averaged matrix b(a11, a22) of the separation argument.
numerics::HermMatrix sone_averaged_matrix(double a11, double a22);

struct SoneObstructionReport {
  double parabola_max;       // max over x of -x^2 + 7x - 13 (exactly -3/4)
  double parabola_argmax;    // 7/2
  int grid_n;
  int grid_psd_hits;         // PSD hits of b(a11,a22) over the grid
  double worst_lambda_min;   // largest lambda_min(b) seen over the grid
  bool certified;            // parabola_max < 0 and zero grid hits
};

// Analytic certificate that the separation element is not max-positive:
// the determinant obstruction plus an exhaustive grid scan of the averaged
// matrix over (a11, a22) in [margin, 3-margin]^2.
SoneObstructionReport sone_obstruction(int grid_n = 100, double margin = 0.01);

// Finite relaxation of the max-positivity of the separation element: unknown
// degree-1 coefficients with the structured block matrix required PSD at the
// supplied circle points. With the five 5th roots of unity the instance is
// infeasible.
convex::FeasibilityProblem sone_relaxation(
    const std::vector<numerics::Complex>& points, double delta = 0.0);

// The five 5th roots of unity.
std::vector<numerics::Complex> roots_of_unity(int n);

}  // namespace oscone::tensorlab
