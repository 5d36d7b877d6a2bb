#pragma once

#include <vector>

#include "oscone/convex.hpp"
#include "oscone/numerics.hpp"

namespace oscone::opsys {

/// Element of l^inf_n (positivity = entrywise nonnegativity).
struct LInfVec {
  std::vector<double> values;
  int n() const { return static_cast<int>(values.size()); }
  bool positive(double tol = 0.0) const {
    for (double v : values)
      if (v < -tol) return false;
    return true;
  }
};

/// Element of V = {(a,b,c,d) : a+b = c+d}. The constraint is enforced
/// exactly by storing (a,b,c) and deriving d, so it cannot drift.
class VVec {
 public:
  static VVec from_values(double a, double b, double c, double d,
                          double tol = 1e-12);
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return a_ + b_ - c_; }
  double min_entry() const;

 private:
  VVec(double a, double b, double c) : a_(a), b_(b), c_(c) {}
  double a_, b_, c_;
};

/// Coordinates of C0 (x) 1 + C1 (x) h1 + C2 (x) h2 in M_n(NC(2)); scalar
/// level is n = 1.
struct NC2Coeff {
  numerics::HermMatrix c0, c1, c2;
  static NC2Coeff scalar(double v0, double v1, double v2);
  int dim() const { return c0.dim(); }
  bool is_scalar() const { return dim() == 1; }
};

/// Element a * 1 + sum_k a12^k (offdiagonal of the k-th summand) of the
/// concrete model W of NC(n)^d inside a direct sum of n copies of M_2.
struct WElem {
  int n;
  double diag;
  std::vector<double> offdiags;  // one per 2x2 summand
};

/// Hermitian tridiagonal element of T_k (sub-diagonal = conj(super)).
struct TriDiag {
  std::vector<numerics::Complex> diagonal;
  std::vector<numerics::Complex> super;
  int k() const { return static_cast<int>(diagonal.size()); }
  numerics::HermMatrix embed(double tol = 1e-12) const;
};

/// Degree-1 matrix coefficient model of an element of M_n(S_1):
/// coeff0 + coeff1 z + coeff1^* conj(z) as a function on the circle.
struct S1Elem {
  numerics::HermMatrix coeff0;
  numerics::GeneralMatrix coeff1;
};

struct SCoefficients {
  numerics::Complex c0;
  std::vector<numerics::Complex> cs;  // generator coefficients c_1..c_{k-1}
};

// Quotient gamma: l^inf_4 -> NC(2) in coefficient coordinates,
// gamma(a) = ((a1+a2+a3+a4)/4, (a1-a2)/4, (a3-a4)/4). Kernel is
// span{(1,1,-1,-1)}.
NC2Coeff gamma_quotient(const LInfVec& x);

// Strict positivity of C0 (x) 1 + C1 (x) h1 + C2 (x) h2 in M_n(NC(2)):
// feasibility of C0/2 +- C1 + A >= delta and C0/2 +- C2 - A >= delta over
// Hermitian A.
convex::SolveReport nc2_positivity(
    const NC2Coeff& c, double delta = numerics::kStrictPositivityDelta,
    double tol = 1e-8, int max_iter = 50000);

// Builds the underlying feasibility instance (exposed for diagnostics).
convex::FeasibilityProblem nc2_positivity_problem(const NC2Coeff& c,
                                                  double delta);

// Closed-form criterion for the scalar level: c0 > |c1| + |c2|.
bool nc2_scalar_criterion(double c0, double c1, double c2);

// The duality isomorphism NC(2)^d = V, sending a functional f to
// (f(p1), f(q1), f(p2), f(q2)).
VVec v_from_functional(double f_p1, double f_q1, double f_p2, double f_q2,
                       double tol = 1e-10);

// Dual pairing of v in V with a scalar NC(2) element:
// c0 (a+b) + c1 (a-b) + c2 (c-d).
double pair_v_nc2(const VVec& v, const NC2Coeff& c);

// Materializes the n 2x2 summands of an element of W; the element is
// positive iff all blocks are PSD.
std::vector<numerics::HermMatrix> w_dual_embed(const WElem& e);

// Quotient map T_k -> S_{k-1}: unit coefficient (sum of diagonal)/k and
// generator coefficients super_j / k.
SCoefficients phi_k_apply(const TriDiag& t);

// Evaluation of a degree-1 element at a point of the circle.
numerics::HermMatrix s1_eval(const S1Elem& e, numerics::Complex z,
                             double tol = 1e-12);

}  // namespace oscone::opsys
