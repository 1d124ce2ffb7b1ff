#pragma once

// Construction of the two-parameter matrix family: Gram matrix, polar
// vectors, the four order-two complex reflections, the derived generators
// A, B, C, and word evaluation.

#include "chg/core.hpp"

#include <array>
#include <string>

namespace chg {

struct ModuliPoint {
  double h = 0.0;
  double t = 0.0;

  // Largest admissible t for this h (Gram signature degenerates there).
  double t_max() const;
  bool in_moduli(double tol = 1e-12) const;
  bool is_real_slice(double tol = 1e-12) const { return std::abs(t) <= tol; }
  bool is_2d_slice(double tol = 1e-9) const {
    return std::abs(t - t_max()) <= tol;
  }
  // The h < 1 regime is admissible but flagged.
  bool below_unit_h() const { return h < 1.0; }
};

CMat gram_matrix(const ModuliPoint& p);
double gram_det_closed_form(const ModuliPoint& p);

// Normalized polar vectors n1..n4 in C^{3,1}; their pairwise products
// reproduce the Gram matrix. Throws InvalidModuliError outside the
// admissible region (the normalizing square root turns imaginary).
std::array<CVec, 4> polar_vectors(const ModuliPoint& p);

// Reflection about the hyperplane polar to n, rotating the normal by theta:
//   z -> -z + (1 - e^{i theta}) <z,n>/<n,n> n.
// Requires <n,n> > 0.
CMat complex_reflection(const CVec& n, double theta, const CMat& H);

struct GeneratorSet {
  int n = 3;  // ambient complex dimension (2 or 3); matrices are (n+1)x(n+1)
  ModuliPoint p;
  CMat H;
  CMat I1, I2, I3, I4;
  CMat A, B, C;  // A = I1 I2, B = I3 I1, C = I4 I1
  std::array<CVec, 4> polars;  // only for n == 3
  double D = 0.0;              // sqrt(4h^2 cos t + 3h^2 + 1)

  const CMat& reflection(int i) const;
};

// dim = 3 builds the 4x4 family; dim = 2 is only defined on the degenerate
// upper boundary curve of the moduli region (the third coordinate of every
// polar vector vanishes there and row/column 3 are deleted).
GeneratorSet generators(const ModuliPoint& p, int dim = 3);

// Word grammar: whitespace-separated tokens over {A,B,C,I1..I4}; lowercase
// (a, b, c, i1..i4) is the inverse; an optional ^k suffix (k a signed
// integer) is a power, e.g. "A^-3 C B C a". Empty word = identity.
GroupElement eval_word(const std::string& word, const GeneratorSet& gens);

}  // namespace chg
