#include "chg/heisenberg.hpp"

#include <cmath>

namespace chg {

HeisenbergPoint HeisenbergPoint::infinity(int n) {
  HeisenbergPoint p;
  p.z = CVec::Zero(n - 1);
  p.at_infinity = true;
  return p;
}

HeisenbergPoint HeisenbergPoint::boundary(cplx z0, double t0) {
  HeisenbergPoint p;
  p.z = CVec::Constant(1, z0);
  p.t = t0;
  return p;
}

CVec lift(const HeisenbergPoint& p) {
  const int n = static_cast<int>(p.z.size()) + 1;
  CVec v = CVec::Zero(n + 1);
  if (p.at_infinity) {
    v(0) = 1.0;
    return v;
  }
  v(0) = cplx(-(p.z.squaredNorm() + p.u) / 2.0, p.t / 2.0);
  for (int i = 0; i < n - 1; ++i) v(i + 1) = p.z(i);
  v(n) = 1.0;
  return v;
}

HeisenbergPoint from_lift(const CVec& v, double tol) {
  const int n = static_cast<int>(v.size()) - 1;
  cplx last = v(n);
  if (std::abs(last) < tol * v.cwiseAbs().maxCoeff())
    return HeisenbergPoint::infinity(n);
  CVec w = v / last;
  HeisenbergPoint p;
  p.z = w.segment(1, n - 1);
  p.t = 2.0 * std::imag(w(0));
  p.u = -2.0 * std::real(w(0)) - p.z.squaredNorm();
  if (std::abs(p.u) < 1e-12) p.u = std::max(0.0, p.u);
  return p;
}

double cygan_distance(const HeisenbergPoint& p, const HeisenbergPoint& q) {
  if (p.at_infinity || q.at_infinity)
    throw UsageError("cygan_distance: finite points required");
  // <<z,w>> = w^* z
  cplx zw = (q.z.adjoint() * p.z)(0, 0);
  cplx val(p.z.cwiseAbs2().sum() - 2.0 * std::real(zw) + q.z.cwiseAbs2().sum() +
               std::abs(p.u - q.u),
           -(p.t - q.t + 2.0 * std::imag(zw)));
  return std::sqrt(std::abs(val));
}

CyganSphere isometric_sphere(const GroupElement& g, double tol) {
  const int m = static_cast<int>(g.m.rows());
  const int n = m - 1;
  cplx corner = g.m(m - 1, 0);
  if (std::abs(corner) < tol * g.m.cwiseAbs().maxCoeff())
    throw FixesInfinityError("isometric_sphere: word fixes the point at infinity");
  CyganSphere s;
  s.word = g.word;
  s.g = g.m;
  s.radius = std::sqrt(2.0 / std::abs(corner));
  HeisenbergPoint c;
  c.z = CVec(n - 1);
  for (int i = 0; i < n - 1; ++i)
    c.z(i) = std::conj(g.m(m - 1, i + 1)) / std::conj(corner);
  c.t = 2.0 * std::imag(std::conj(g.m(m - 1, m - 1)) / std::conj(corner));
  c.u = 0.0;
  s.center = c;
  CVec qinf = CVec::Zero(m);
  qinf(0) = 1.0;
  s.pole = g.m.inverse() * qinf;
  return s;
}

HeisenbergPoint a_action(const HeisenbergPoint& p, long k) {
  if (p.z.size() != 1) throw UsageError("a_action: one complex coordinate expected");
  if (p.at_infinity) return p;
  HeisenbergPoint out = p;
  // (z,t) -> (z-2, t+4 Im z) iterated: z -> z-2k, t -> t + 4k Im z.
  out.z(0) = p.z(0) - 2.0 * double(k);
  out.t = p.t + 4.0 * double(k) * std::imag(p.z(0));
  return out;
}

SphereRelResult sphere_relation(const CyganSphere& a, const CyganSphere& b,
                                double tol) {
  double d = cygan_distance(a.center, b.center);
  double gap = d - (a.radius + b.radius);
  SphereRel rel = SphereRel::tangent;
  if (gap > tol) rel = SphereRel::disjoint;
  else if (gap < -tol) rel = SphereRel::overlapping;
  return {rel, gap};
}

Membership sphere_membership_lift(const CVec& p, const CyganSphere& s,
                                  const CMat& H, double tol) {
  CVec qinf = CVec::Zero(H.rows());
  qinf(0) = 1.0;
  double a = std::abs(herm_inner(p, qinf, H));
  double b = std::abs(herm_inner(p, s.pole, H));
  if (a > b + tol) return Membership::interior;
  if (a < b - tol) return Membership::exterior;
  return Membership::on;
}

Membership sphere_membership(const HeisenbergPoint& p, const CyganSphere& s,
                             const CMat& H, double tol) {
  return sphere_membership_lift(lift(p), s, H, tol);
}

HeisenbergPoint apply(const CMat& g, const HeisenbergPoint& p) {
  return from_lift(g * lift(p));
}

}  // namespace chg
