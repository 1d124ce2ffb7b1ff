#pragma once

// Horospherical coordinates, the Cygan metric, isometric spheres, the
// Heisenberg translation induced by the parabolic generator, and the sphere
// predicates used by the domain audits.

#include "chg/core.hpp"
#include "chg/group.hpp"

namespace chg {

struct HeisenbergPoint {
  CVec z;          // length n-1
  double t = 0.0;
  double u = 0.0;  // height; 0 on the ideal boundary
  bool at_infinity = false;

  static HeisenbergPoint infinity(int n);
  static HeisenbergPoint boundary(cplx z0, double t0);  // n = 2 convenience
};

// Standard lift; <lift(p), lift(p)> = -u.
CVec lift(const HeisenbergPoint& p);

// Inverse of lift: scales the last entry to 1 (or reports infinity).
HeisenbergPoint from_lift(const CVec& v, double tol = 1e-12);

// Extended Cygan metric; both arguments finite.
double cygan_distance(const HeisenbergPoint& p, const HeisenbergPoint& q);

struct CyganSphere {
  HeisenbergPoint center;  // u = 0
  double radius = 0.0;
  std::string word;
  CVec pole;  // the fixed lift g^{-1} * (standard lift of infinity)
  CMat g;
};

// Throws FixesInfinityError when the bottom-left entry vanishes (the word
// lies in the stabilizer of the point at infinity).
CyganSphere isometric_sphere(const GroupElement& g, double tol = 1e-12);

// k-th power of the unipotent translation (z,t) -> (z-2, t+4 Im z). n = 2.
HeisenbergPoint a_action(const HeisenbergPoint& p, long k);

enum class SphereRel { disjoint, tangent, overlapping };

struct SphereRelResult {
  SphereRel rel;
  double gap;  // center distance minus radius sum
};

SphereRelResult sphere_relation(const CyganSphere& a, const CyganSphere& b,
                                double tol = 1e-7);

enum class Membership { interior, on, exterior };

// Compares |<p, q_inf>| with |<p, pole>| using the sphere's fixed pole lift.
Membership sphere_membership(const HeisenbergPoint& p, const CyganSphere& s,
                             const CMat& H, double tol = 1e-7);
Membership sphere_membership_lift(const CVec& p, const CyganSphere& s,
                                  const CMat& H, double tol = 1e-7);

// Image of a boundary point under a matrix, back in horospherical
// coordinates.
HeisenbergPoint apply(const CMat& g, const HeisenbergPoint& p);

}  // namespace chg
