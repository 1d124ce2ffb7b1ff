#pragma once

// Trace-based classification of isometries in SU(2,1) and SU(3,1).
//
// For 3x3 matrices the discriminant is the real quartic
//   G(z) = |z|^4 - 8 Re(z^3) + 18 |z|^2 - 27
// of the trace z: negative for regular elliptic, positive for loxodromic.
// For 4x4 matrices the discriminant is the degree-6 resultant H(tau, sigma)
// of the characteristic polynomial with its derivative data: positive for
// regular elliptic, negative for loxodromic. The zero locus is split by a
// numerical diagonalisability test.

#include "chg/core.hpp"

#include <vector>

namespace chg {

enum class Kind {
  regular_elliptic,
  special_elliptic,
  loxodromic,
  parabolic_unipotent,
  parabolic_other,
  boundary_undetermined,
};

const char* kind_name(Kind k);

struct TraceInvariants {
  cplx tau = 0.0;      // trace of the determinant-1 lift
  double sigma = 0.0;  // (tr^2 - tr(M^2))/2, real for SU(3,1); unused for n=2
};

struct IsometryClass {
  Kind kind = Kind::boundary_undetermined;
  double discriminant = 0.0;
  TraceInvariants invariants;
  std::vector<cplx> eigenvalues;  // eigenvalues of the normalized lift
  bool diagonalisable = true;
};

double goldman_g(cplx z);
double holy_grail_h(cplx tau, double sigma);

// Scale M to determinant 1 using the principal (n+1)-th root
// lambda = det(M)^{-1/(n+1)}. The residual root-of-unity ambiguity does not
// affect either discriminant.
CMat su_normalize(const CMat& M);

TraceInvariants trace_invariants(const CMat& su_matrix);

// Classify a form-preserving matrix. The boundary band around a vanishing
// discriminant scales with |tau|^6 since the discriminant has degree 6 in the
// trace data; inside the band the verdict comes from eigenstructure:
// repeated eigenvalue + defective -> parabolic (unipotent if tau is a scaled
// cube/quartic root of the dimension), repeated + diagonalisable ->
// special elliptic, inconclusive -> boundary_undetermined.
IsometryClass classify(const CMat& M, double boundary_band = 1e-8);

}  // namespace chg
