#include "oscone/opsys.hpp"

#include <cmath>
#include <stdexcept>

namespace oscone::opsys {

using numerics::Complex;
using numerics::GeneralMatrix;
using numerics::HermMatrix;

VVec VVec::from_values(double a, double b, double c, double d, double tol) {
  if (std::abs(a + b - c - d) > tol)
    throw std::invalid_argument("VVec: a+b = c+d violated beyond tolerance");
  return VVec(a, b, c);
}

double VVec::min_entry() const {
  return std::min(std::min(a_, b_), std::min(c_, d()));
}

NC2Coeff NC2Coeff::scalar(double v0, double v1, double v2) {
  NC2Coeff c{HermMatrix(1), HermMatrix(1), HermMatrix(1)};
  c.c0.set(0, 0, v0);
  c.c1.set(0, 0, v1);
  c.c2.set(0, 0, v2);
  return c;
}

HermMatrix TriDiag::embed(double tol) const {
  const int n = k();
  if (static_cast<int>(super.size()) != n - 1)
    throw std::invalid_argument("TriDiag: super-diagonal length must be k-1");
  HermMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(diagonal[i].imag()) > tol)
      throw std::invalid_argument("TriDiag: diagonal must be real to embed");
    m.set(i, i, diagonal[i].real());
  }
  for (int i = 0; i + 1 < n; ++i) m.set(i, i + 1, super[i]);
  return m;
}

NC2Coeff gamma_quotient(const LInfVec& x) {
  if (x.n() != 4) throw std::invalid_argument("gamma_quotient: needs l^inf_4");
  const double a1 = x.values[0], a2 = x.values[1];
  const double a3 = x.values[2], a4 = x.values[3];
  return NC2Coeff::scalar((a1 + a2 + a3 + a4) / 4.0, (a1 - a2) / 4.0,
                          (a3 - a4) / 4.0);
}

convex::FeasibilityProblem nc2_positivity_problem(const NC2Coeff& c,
                                                  double delta) {
  const int n = c.dim();
  if (c.c1.dim() != n || c.c2.dim() != n)
    throw std::invalid_argument("nc2_positivity: coefficient dims differ");
  convex::FeasibilityProblem p;
  // P1 = C0/2 + C1 + A, P2 = C0/2 - C1 + A, P3 = C0/2 + C2 - A,
  // P4 = C0/2 - C2 - A; A is eliminated through the relations
  // P1 - P2 = 2 C1, P3 - P4 = 2 C2, P1 + P3 = C0 + C1 + C2.
  const int p1 = p.add_psd_block("P1", n, delta);
  const int p2 = p.add_psd_block("P2", n, delta);
  const int p3 = p.add_psd_block("P3", n, delta);
  const int p4 = p.add_psd_block("P4", n, delta);
  p.add_subblock_constraint({{p1, 0, 0, 1.0}, {p2, 0, 0, -1.0}},
                            (c.c1 * 2.0).to_general());
  p.add_subblock_constraint({{p3, 0, 0, 1.0}, {p4, 0, 0, -1.0}},
                            (c.c2 * 2.0).to_general());
  p.add_subblock_constraint({{p1, 0, 0, 1.0}, {p3, 0, 0, 1.0}},
                            (c.c0 + c.c1 + c.c2).to_general());
  return p;
}

convex::SolveReport nc2_positivity(const NC2Coeff& c, double delta, double tol,
                                   int max_iter) {
  return convex::solve_feasibility(nc2_positivity_problem(c, delta), tol,
                                   max_iter);
}

bool nc2_scalar_criterion(double c0, double c1, double c2) {
  return c0 > std::abs(c1) + std::abs(c2);
}

VVec v_from_functional(double f_p1, double f_q1, double f_p2, double f_q2,
                       double tol) {
  if (std::abs(f_p1 + f_q1 - f_p2 - f_q2) > tol)
    throw std::invalid_argument(
        "v_from_functional: f(p1)+f(q1) must equal f(p2)+f(q2)");
  // Repair the tiny drift exactly by symmetric redistribution.
  const double gap = (f_p1 + f_q1 - f_p2 - f_q2) / 4.0;
  return VVec::from_values(f_p1 - gap, f_q1 - gap, f_p2 + gap, f_q2 + gap,
                           1e-9);
}

double pair_v_nc2(const VVec& v, const NC2Coeff& c) {
  if (!c.is_scalar())
    throw std::invalid_argument("pair_v_nc2: scalar coefficients expected");
  const double c0 = c.c0(0, 0).real();
  const double c1 = c.c1(0, 0).real();
  const double c2 = c.c2(0, 0).real();
  return c0 * (v.a() + v.b()) + c1 * (v.a() - v.b()) + c2 * (v.c() - v.d());
}

std::vector<HermMatrix> w_dual_embed(const WElem& e) {
  if (e.n < 2 || static_cast<int>(e.offdiags.size()) != e.n)
    throw std::invalid_argument("w_dual_embed: need n >= 2 off-diagonals");
  std::vector<HermMatrix> blocks;
  blocks.reserve(e.n);
  for (int k = 0; k < e.n; ++k) {
    HermMatrix b(2);
    b.set(0, 0, e.diag);
    b.set(1, 1, e.diag);
    b.set(0, 1, e.offdiags[k]);
    blocks.push_back(b);
  }
  return blocks;
}

SCoefficients phi_k_apply(const TriDiag& t) {
  const int k = t.k();
  if (static_cast<int>(t.super.size()) != k - 1)
    throw std::invalid_argument("phi_k_apply: super-diagonal length must be k-1");
  SCoefficients out;
  Complex s = 0.0;
  for (const Complex& d : t.diagonal) s += d;
  out.c0 = s / static_cast<double>(k);
  out.cs.reserve(k - 1);
  for (const Complex& u : t.super) out.cs.push_back(u / static_cast<double>(k));
  return out;
}

HermMatrix s1_eval(const S1Elem& e, Complex z, double tol) {
  if (std::abs(std::abs(z) - 1.0) > tol)
    throw std::invalid_argument("s1_eval: evaluation point must be unimodular");
  if (e.coeff1.rows() != e.coeff0.dim() || e.coeff1.cols() != e.coeff0.dim())
    throw std::invalid_argument("s1_eval: coefficient shapes differ");
  const GeneralMatrix v =
      e.coeff0.to_general() + e.coeff1 * z + e.coeff1.adjoint() * std::conj(z);
  return HermMatrix::from_general(v, 1e-9);
}

}  // namespace oscone::opsys
