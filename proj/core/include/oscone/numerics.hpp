#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace oscone::numerics {

using Complex = std::complex<double>;

// Default margin used when deciding strict positivity (lambda_min >= delta).
inline constexpr double kStrictPositivityDelta = 1e-7;

/// Dense complex matrix with no structural constraints beyond shape.
class GeneralMatrix {
 public:
  GeneralMatrix() : rows_(0), cols_(0) {}
  GeneralMatrix(int rows, int cols);
  static GeneralMatrix identity(int n);
  static GeneralMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex operator()(int i, int j) const { return e_[i * cols_ + j]; }
  Complex& operator()(int i, int j) { return e_[i * cols_ + j]; }

  GeneralMatrix adjoint() const;
  GeneralMatrix transpose() const;
  GeneralMatrix conj() const;
  GeneralMatrix operator+(const GeneralMatrix& o) const;
  GeneralMatrix operator-(const GeneralMatrix& o) const;
  GeneralMatrix operator*(const GeneralMatrix& o) const;
  GeneralMatrix operator*(Complex s) const;

  double frobenius_norm() const;
  Complex trace() const;

 private:
  int rows_, cols_;
  std::vector<Complex> e_;
};

/// Dense complex Hermitian matrix. The Hermitian constraint is checked at
/// construction (within tol) and then enforced exactly, so every instance
/// satisfies entries[i][j] == conj(entries[j][i]) to the last bit.
class HermMatrix {
 public:
  HermMatrix() : dim_(0) {}
  explicit HermMatrix(int dim);  // zero matrix
  static HermMatrix identity(int dim);
  static HermMatrix diagonal(const std::vector<double>& d);
  static HermMatrix from_rows(const std::vector<std::vector<Complex>>& rows,
                              double tol = 1e-12);
  // Symmetrizes (g + g*)/2; rejects if g deviates from Hermitian by > tol.
  static HermMatrix from_general(const GeneralMatrix& g, double tol = 1e-12);

  int dim() const { return dim_; }
  Complex operator()(int i, int j) const { return e_[i * dim_ + j]; }
  // Sets entry (i,j) and its mirror (j,i) together; diagonal entries keep
  // only their real part.
  void set(int i, int j, Complex v);

  GeneralMatrix to_general() const;
  HermMatrix operator+(const HermMatrix& o) const;
  HermMatrix operator-(const HermMatrix& o) const;
  HermMatrix operator*(double s) const;

  double trace() const;
  double frobenius_norm() const;

 private:
  int dim_;
  std::vector<Complex> e_;
};

/// Full spectral data of a Hermitian matrix: eigenvalues ascending and the
/// matching unitary of column eigenvectors.
struct Spectrum {
  std::vector<double> eigenvalues;
  GeneralMatrix eigenvectors;
};

// Cyclic Jacobi eigensolver for Hermitian matrices. Deterministic for a
// fixed input: fixed sweep order, eigenvalues sorted ascending, column
// phases normalized. Reconstruction error stays below 1e-10 * (1 + ||m||_F).
Spectrum eigh(const HermMatrix& m);

double lambda_min(const HermMatrix& m);
double lambda_max(const HermMatrix& m);

// True iff lambda_min(m) >= -tol. Pass a negative tol to test strict
// positivity with margin |tol|.
bool is_psd(const HermMatrix& m, double tol);

// Frobenius-nearest PSD matrix (eigenvalue clipping).
HermMatrix psd_project(const HermMatrix& m);

// Numerical radius w(t) = sup |<t xi, xi>| over unit vectors, computed as
// max over theta of lambda_max(Re(e^{i theta} t)). Accurate to ~1e-10.
double numerical_radius(const GeneralMatrix& t);

// Operator (spectral) norm.
double op_norm(const GeneralMatrix& t);

// Entrywise (Schur) product; PSD whenever both factors are.
HermMatrix schur_product(const HermMatrix& a, const HermMatrix& t);

// For a Hermitian contraction a, the selfadjoint unitary
// [[a, s],[s, -a]] with s = (I - a^2)^{1/2}. Throws std::domain_error if the
// spectrum of a leaves [-1,1] by more than 1e-10.
HermMatrix halmos_dilation(const HermMatrix& a);

struct CholeskyComplementResult {
  HermMatrix complement;   // C - X* A^+ X for block = [[A, X],[X*, C]]
  bool top_left_psd;       // A is PSD (within tol)
  bool range_consistent;   // (I - A A^+) X vanishes (within tol)
};

// Schur complement of the leading p x p block of a (p+q) x (p+q) Hermitian
// matrix, using the pseudo-inverse when A is singular. The block is PSD iff
// A is PSD, the complement is PSD and the range condition holds; the flags
// report the latter two preconditions instead of raising.
CholeskyComplementResult cholesky_complement(const HermMatrix& block,
                                             std::pair<int, int> split,
                                             double tol = 1e-10);

// Kronecker product (used for composite quantum systems).
HermMatrix kron(const HermMatrix& a, const HermMatrix& b);
GeneralMatrix kron(const GeneralMatrix& a, const GeneralMatrix& b);

}  // namespace oscone::numerics
