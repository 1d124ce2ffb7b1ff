#include "chg/group.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace chg {

double ModuliPoint::t_max() const {
  double c = -(3.0 * h * h + 1.0) / (4.0 * h * h);
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

bool ModuliPoint::in_moduli(double tol) const {
  if (h < 0.5 - tol) return false;
  if (t < -tol || t > M_PI + tol) return false;
  return t <= t_max() + tol;
}

CMat gram_matrix(const ModuliPoint& p) {
  cplx eit = std::polar(1.0, p.t);
  double h = p.h;
  CMat G(4, 4);
  G << 1.0, -1.0, 0.0, -eit / 2.0,
      -1.0, 1.0, -h, 0.0,
      0.0, -h, 1.0, -h,
      -std::conj(eit) / 2.0, 0.0, -h, 1.0;
  return G;
}

double gram_det_closed_form(const ModuliPoint& p) {
  double h2 = p.h * p.h;
  return -3.0 * h2 / 4.0 - 0.25 - h2 * std::cos(p.t);
}

std::array<CVec, 4> polar_vectors(const ModuliPoint& p) {
  double h = p.h, h2 = p.h * p.h;
  double rad = 4.0 * h2 * std::cos(p.t) + 3.0 * h2 + 1.0;
  if (rad < -1e-12)
    throw InvalidModuliError("polar_vectors: parameters outside the admissible region");
  double D = std::sqrt(std::max(0.0, rad));
  cplx emit = std::polar(1.0, -p.t);
  CVec n1(4), n2(4), n3(4), n4(4);
  n1 << 0.0, 1.0, 0.0, 0.0;
  n2 << 1.0, -1.0, 0.0, 0.0;
  n3 << -1.0 / (2.0 * h), 0.0, 0.0, -h;
  n4 << (4.0 * h2 + emit) / (4.0 * h2), -emit / 2.0, D / (2.0 * h), -emit / 2.0;
  return {n1, n2, n3, n4};
}

CMat complex_reflection(const CVec& n, double theta, const CMat& H) {
  cplx nn = herm_inner(n, n, H);
  if (std::abs(std::imag(nn)) > 1e-9 * std::abs(nn) || std::real(nn) <= 0.0)
    throw UsageError("complex_reflection: polar vector must be positive");
  const auto m = H.rows();
  cplx factor = (1.0 - std::polar(1.0, theta)) / nn;
  // z -> -z + factor <z,n> n; <z,n> = n^* H z.
  return -CMat::Identity(m, m) + factor * n * (n.adjoint() * H);
}

const CMat& GeneratorSet::reflection(int i) const {
  switch (i) {
    case 1: return I1;
    case 2: return I2;
    case 3: return I3;
    case 4: return I4;
  }
  throw UsageError("reflection index out of range");
}

GeneratorSet generators(const ModuliPoint& p, int dim) {
  if (!p.in_moduli())
    throw InvalidModuliError("generators: parameters outside the admissible region");
  if (dim != 2 && dim != 3)
    throw UsageError("generators: dim must be 2 or 3");
  if (dim == 2 && !p.is_2d_slice())
    throw InvalidModuliError(
        "generators: the 3x3 family exists only on the degenerate upper curve");

  GeneratorSet g;
  g.p = p;
  g.D = std::sqrt(std::max(0.0, 4.0 * p.h * p.h * std::cos(p.t) +
                                    3.0 * p.h * p.h + 1.0));
  CMat H4 = standard_form(3);
  auto polars = polar_vectors(p);
  CMat R[4];
  for (int i = 0; i < 4; ++i) R[i] = complex_reflection(polars[i], M_PI, H4);

  if (dim == 3) {
    g.n = 3;
    g.H = H4;
    g.polars = polars;
    g.I1 = R[0]; g.I2 = R[1]; g.I3 = R[2]; g.I4 = R[3];
  } else {
    // On the degenerate curve each reflection preserves the hyperplane
    // polar to (0,0,1,0); drop row/column 3.
    g.n = 2;
    g.H = standard_form(2);
    auto drop = [](const CMat& M) {
      CMat S(3, 3);
      int rr = 0;
      for (int i = 0; i < 4; ++i) {
        if (i == 2) continue;
        int cc = 0;
        for (int j = 0; j < 4; ++j) {
          if (j == 2) continue;
          S(rr, cc++) = M(i, j);
        }
        ++rr;
      }
      return S;
    };
    g.I1 = drop(R[0]); g.I2 = drop(R[1]); g.I3 = drop(R[2]); g.I4 = drop(R[3]);
  }
  g.A = g.I1 * g.I2;
  g.B = g.I3 * g.I1;
  g.C = g.I4 * g.I1;
  return g;
}

namespace {

struct Token {
  const CMat* base;
  long power;
};

}  // namespace

GroupElement eval_word(const std::string& word, const GeneratorSet& gens) {
  const auto m = gens.H.rows();
  CMat acc = CMat::Identity(m, m);
  std::istringstream in(word);
  std::string tok;
  size_t pos = 0;
  while (in >> tok) {
    pos = word.find(tok, pos);
    long power = 1;
    std::string name = tok;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      std::string exp = tok.substr(caret + 1);
      try {
        size_t used = 0;
        power = std::stol(exp, &used);
        if (used != exp.size()) throw std::invalid_argument(exp);
      } catch (const std::exception&) {
        throw UsageError("eval_word: bad exponent '" + exp + "' at position " +
                         std::to_string(pos));
      }
    }
    bool inverse = false;
    const CMat* base = nullptr;
    if (name.size() == 1) {
      char c = name[0];
      inverse = std::islower(static_cast<unsigned char>(c));
      switch (std::toupper(static_cast<unsigned char>(c))) {
        case 'A': base = &gens.A; break;
        case 'B': base = &gens.B; break;
        case 'C': base = &gens.C; break;
      }
    } else if (name.size() == 2 && (name[0] == 'I' || name[0] == 'i') &&
               name[1] >= '1' && name[1] <= '4') {
      inverse = (name[0] == 'i');
      base = &gens.reflection(name[1] - '0');
    }
    if (!base)
      throw UsageError("eval_word: unknown token '" + tok + "' at position " +
                       std::to_string(pos));
    if (inverse) power = -power;
    CMat factor;
    if (power >= 0) {
      factor = CMat::Identity(m, m);
      for (long i = 0; i < power; ++i) factor = factor * (*base);
    } else {
      CMat inv = base->inverse();
      factor = CMat::Identity(m, m);
      for (long i = 0; i < -power; ++i) factor = factor * inv;
    }
    acc = acc * factor;
    pos += tok.size();
  }
  return GroupElement{acc, word};
}

}  // namespace chg
