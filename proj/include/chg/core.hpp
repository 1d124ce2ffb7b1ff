#pragma once

// Core linear algebra over C^{n,1}: the ambient Hermitian form, the
// sesquilinear pairing, Hermitian cross products, and projective equality.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace chg {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Comparison thresholds used across the library. "identity" guards algebraic
// identities (relations, form preservation), "geometric" guards predicates
// that feed combinatorial decisions (tangency, membership).
struct Tolerances {
  double identity = 1e-9;
  double geometric = 1e-7;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InvalidModuliError : std::domain_error {
  using std::domain_error::domain_error;
};
struct FixesInfinityError : std::domain_error {
  using std::domain_error::domain_error;
};
struct DegenerateChartError : std::domain_error {
  using std::domain_error::domain_error;
};

// Signature (n,1) form with the null basis convention: anti-diagonal ones in
// the corners, identity in the middle block. n is 2 or 3.
CMat standard_form(int n);

// <z,w> = w^* H z. Conjugate-linear in w.
cplx herm_inner(const CVec& z, const CVec& w, const CMat& H);

// Hermitian cross product for length-3 vectors under the standard form:
// the unique (up to scale) vector H-orthogonal to both arguments.
// Conjugate-linear in each slot, antisymmetric.
CVec box_cross(const CVec& p, const CVec& q);

// Cross product with respect to an arbitrary 3x3 Hermitian form HL.
// Componentwise products of the row vectors x^* HL and y^* HL; result is
// HL-orthogonal to x and y.
CVec box_cross_general(const CVec& x, const CVec& y, const CMat& HL);

// Square matrix with a word label attached.
struct GroupElement {
  CMat m;
  std::string word;
};

// Projective equality: M == lambda N for unit-modulus lambda, compared
// entrywise after scaling by the largest-magnitude entry.
bool scalar_equiv(const CMat& M, const CMat& N, double tol = 1e-9);

// Residual of the same comparison: 0 when M and N agree up to a
// unit-modulus scalar.
double scalar_defect(const CMat& M, const CMat& N);

// ||M^* H M - H||_inf, the defect of form preservation.
double form_defect(const CMat& M, const CMat& H);

}  // namespace chg
