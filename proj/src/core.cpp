#include "chg/core.hpp"

#include <limits>

namespace chg {

CMat standard_form(int n) {
  if (n != 2 && n != 3) throw UsageError("standard_form: n must be 2 or 3");
  CMat H = CMat::Zero(n + 1, n + 1);
  H(0, n) = 1.0;
  H(n, 0) = 1.0;
  for (int i = 1; i < n; ++i) H(i, i) = 1.0;
  return H;
}

cplx herm_inner(const CVec& z, const CVec& w, const CMat& H) {
  if (z.size() != w.size() || z.size() != H.rows())
    throw UsageError("herm_inner: dimension mismatch");
  return (w.adjoint() * H * z)(0, 0);
}

CVec box_cross(const CVec& p, const CVec& q) {
  if (p.size() != 3 || q.size() != 3)
    throw UsageError("box_cross: length-3 vectors required");
  CVec a = p.conjugate(), b = q.conjugate();
  CVec r(3);
  r(0) = a(0) * b(1) - a(1) * b(0);
  r(1) = a(2) * b(0) - a(0) * b(2);
  r(2) = a(1) * b(2) - a(2) * b(1);
  return r;
}

CVec box_cross_general(const CVec& x, const CVec& y, const CMat& HL) {
  if (x.size() != 3 || y.size() != 3 || HL.rows() != 3 || HL.cols() != 3)
    throw UsageError("box_cross_general: 3-dimensional data required");
  Eigen::RowVectorXcd a = x.adjoint() * HL;
  Eigen::RowVectorXcd b = y.adjoint() * HL;
  CVec r(3);
  r(0) = a(1) * b(2) - b(1) * a(2);
  r(1) = a(2) * b(0) - b(2) * a(0);
  r(2) = a(0) * b(1) - b(0) * a(1);
  return r;
}

double scalar_defect(const CMat& M, const CMat& N) {
  if (M.rows() != N.rows() || M.cols() != N.cols())
    throw UsageError("scalar_defect: dimension mismatch");
  // Normalize each matrix by its largest-magnitude entry, then compare the
  // two normalized copies after aligning phases on that entry.
  Eigen::Index ri, ci;
  M.cwiseAbs().maxCoeff(&ri, &ci);
  cplx pivot_m = M(ri, ci);
  cplx pivot_n = N(ri, ci);
  if (std::abs(pivot_m) < 1e-300 && std::abs(pivot_n) < 1e-300) return 0.0;
  if (std::abs(pivot_m) < 1e-300 || std::abs(pivot_n) < 1e-300)
    return std::numeric_limits<double>::infinity();
  CMat Mn = M / pivot_m;
  CMat Nn = N / pivot_n;
  // lambda must be unit-modulus: the pivot magnitudes must agree too.
  double scale = std::abs(pivot_m) / std::abs(pivot_n);
  return std::max(std::abs(scale - 1.0), (Mn - Nn).cwiseAbs().maxCoeff());
}

bool scalar_equiv(const CMat& M, const CMat& N, double tol) {
  return scalar_defect(M, N) < tol;
}

double form_defect(const CMat& M, const CMat& H) {
  return (M.adjoint() * H * M - H).cwiseAbs().maxCoeff();
}

}  // namespace chg
