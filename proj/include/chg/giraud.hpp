#pragma once

// Spinal-coordinate charts on the intersection of two coequidistant
// bisectors, band-limited trigonometric forms on the parameter torus,
// certified maximization, triple-intersection solving, and the restricted
// slice used for the 4x4 family.

#include "chg/core.hpp"
#include "chg/group.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace chg {

// Real function on the torus with frequency support {-1,0,1}^2:
//   f(r,s) = sum c[j][k] e^{i((j-1) r + (k-1) s)},  c[2-j][2-k] = conj(c[j][k]).
struct TorusTrigForm {
  cplx c[3][3] = {};

  double eval(double r, double s) const;
  // f(r, s) = P + Q cos s + R sin s at fixed r.
  void s_slice(double r, double& P, double& Q, double& R) const;
  void r_slice(double s, double& P, double& Q, double& R) const;
  double lipschitz_r() const;
  double lipschitz_s() const;
  double coef_abs_sum() const;

  // Exact DFT fit on an 8x8 grid; throws UsageError if the sampled function
  // carries frequencies outside the supported band.
  static TorusTrigForm fit(const std::function<double(double, double)>& f,
                           double band_tol = 1e-7);
};

struct GiraudChart {
  CVec p, q, r;        // fixed lifts, never renormalized
  CMat H;              // ambient form (standard or a restricted slice form)
  CVec k0, k1, k2;     // V(z1,z2) = k0 + z1 k1 + z2 k2

  CVec V(double rr, double ss) const;
};

// Chart through the three lifted points; the torus map reproduces the
// published parameterizations of all bisector intersections verbatim.
GiraudChart make_chart(const CVec& p, const CVec& q, const CVec& r,
                       const CMat& H);

TorusTrigForm vv_form(const GiraudChart& chart);

// |<V,u>|^2 - |<V,v>|^2 as a torus form; its zero set is the trace of the
// sphere equidistant from u and v on the chart.
TorusTrigForm trace_equation(const GiraudChart& chart, const CVec& u,
                             const CVec& v);

struct DiskWitness {
  bool nonempty = false;
  double r = 0.0, s = 0.0;
  double value = 0.0;  // <V,V> at the witness
};

DiskWitness disk_nonempty(const GiraudChart& chart);

struct CertifiedMax {
  double upper_bound = -std::numeric_limits<double>::infinity();
  double best_value = -std::numeric_limits<double>::infinity();
  double r = 0.0, s = 0.0;  // best feasible grid point
  bool empty_feasible = true;
  int grid = 0;
};

// Rigorous upper bound for objective over {constraint <= 0}: dense grid plus
// a Lipschitz remainder from the frequency-weighted coefficient sums. The
// grid doubles until the certificate gap drops below gap_target.
CertifiedMax certified_max(const TorusTrigForm& objective,
                           const TorusTrigForm& constraint, int grid = 2048,
                           double gap_target = 1e-3, int max_grid = 1 << 14);

struct TorusInterval {
  double lo = 0.0, hi = 0.0;  // arc [lo, hi] traversed forward, hi in (lo, lo+2pi]
};

struct SolutionLine {
  enum Type { r_const, s_const, sum_const, diff_const } type;
  double c;          // r = c / s = c / r + s = c / r - s = c
  double residual;   // max |trace form| along the line
  bool feasible;     // intersects {<V,V> <= 0}
  std::vector<TorusInterval> segments;  // in s for r_const, else in r
};

struct TripleSolution {
  std::vector<SolutionLine> lines;
  bool fully_factored = false;  // residual of all lines certifies the zero set
};

// Zero set of the trace equation on the chart, clipped to the disk
// {<V,V> <= 0}. Detects exact line factors; the band-limited structure makes
// every candidate the root of a one-frequency equation.
TripleSolution solve_triple(const GiraudChart& chart, const CVec& u,
                            const CVec& v);

struct BoundaryArc {
  std::vector<std::array<double, 3>> pts;  // (r, s, trace-form value)
  bool exterior = false;  // of the sphere equidistant from (u, v)
};

// Traces {<V,V> = 0} (both quadratic branches), split where the trace form
// changes sign; each piece is classified interior/exterior.
std::vector<BoundaryArc> boundary_arcs(const GiraudChart& chart, const CVec& u,
                                       const CVec& v, int samples = 2048);

// Norm of q_inf - C^{-1}(q_inf) + CBC^{-1}(q_inf) - CBC(q_inf) in C^{3,1};
// zero everywhere on the moduli region.
double coplanar_defect(const ModuliPoint& p);

struct RestrictedSlice {
  GiraudChart chart;  // coordinates in the basis e1, e2, e3; form H_L
  CMat HL;
  CVec e1, e2, e3, e4;  // lifts in C^{3,1}; e4 = e1 - e2 + e3
  CVec u;  // E1 (the point at infinity in slice coordinates)
  CVec v;  // E1 - E2 + E3
};

// The totally geodesic slice through the four distinguished boundary points;
// requires h > 1.
RestrictedSlice restricted_slice_chart(const ModuliPoint& p);

}  // namespace chg
