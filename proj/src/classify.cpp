#include "chg/classify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace chg {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::regular_elliptic: return "regular-elliptic";
    case Kind::special_elliptic: return "special-elliptic";
    case Kind::loxodromic: return "loxodromic";
    case Kind::parabolic_unipotent: return "parabolic-unipotent";
    case Kind::parabolic_other: return "parabolic-other";
    case Kind::boundary_undetermined: return "boundary-undetermined";
  }
  return "?";
}

double goldman_g(cplx z) {
  double a = std::norm(z);  // |z|^2
  return a * a - 8.0 * std::real(z * z * z) + 18.0 * a - 27.0;
}

double holy_grail_h(cplx tau, double sigma) {
  double t2 = std::norm(tau);
  double cube = sigma * sigma / 3.0 - t2 + 4.0;
  double re_t2 = std::real(tau * tau);
  double quad = 2.0 * sigma * sigma * sigma / 27.0 - t2 * sigma / 3.0 -
                8.0 * sigma / 3.0 + 2.0 * re_t2;
  return 4.0 * cube * cube * cube - 27.0 * quad * quad;
}

CMat su_normalize(const CMat& M) {
  const int m = static_cast<int>(M.rows());
  cplx det = M.determinant();
  if (std::abs(det) < 1e-300) throw UsageError("su_normalize: singular matrix");
  cplx lambda = std::pow(det, cplx(-1.0 / m, 0.0));
  return lambda * M;
}

TraceInvariants trace_invariants(const CMat& N) {
  TraceInvariants inv;
  inv.tau = N.trace();
  if (N.rows() == 4)
    inv.sigma = std::real((inv.tau * inv.tau - (N * N).trace()) / 2.0);
  return inv;
}

namespace {

// Cluster eigenvalues with relative gap below tol; returns representative
// value and multiplicity per cluster.
std::vector<std::pair<cplx, int>> cluster(const std::vector<cplx>& ev,
                                          double tol) {
  std::vector<std::pair<cplx, int>> out;
  std::vector<bool> used(ev.size(), false);
  double scale = 0.0;
  for (auto& e : ev) scale = std::max(scale, std::abs(e));
  scale = std::max(scale, 1.0);
  for (size_t i = 0; i < ev.size(); ++i) {
    if (used[i]) continue;
    cplx sum = ev[i];
    int cnt = 1;
    used[i] = true;
    for (size_t j = i + 1; j < ev.size(); ++j) {
      if (!used[j] && std::abs(ev[j] - ev[i]) < tol * scale) {
        sum += ev[j];
        ++cnt;
        used[j] = true;
      }
    }
    out.push_back({sum / double(cnt), cnt});
  }
  return out;
}

}  // namespace

IsometryClass classify(const CMat& M, double boundary_band) {
  const int m = static_cast<int>(M.rows());
  if (m != 3 && m != 4) throw UsageError("classify: 3x3 or 4x4 expected");
  CMat N = su_normalize(M);
  IsometryClass out;
  out.invariants = trace_invariants(N);
  const cplx tau = out.invariants.tau;
  out.discriminant = (m == 3) ? goldman_g(tau)
                              : holy_grail_h(tau, out.invariants.sigma);

  Eigen::ComplexEigenSolver<CMat> es(N);
  for (int i = 0; i < m; ++i) out.eigenvalues.push_back(es.eigenvalues()(i));

  const double band =
      boundary_band * (1.0 + std::pow(std::abs(tau), 6.0));
  if (out.discriminant > band) {
    out.kind = (m == 3) ? Kind::loxodromic : Kind::regular_elliptic;
    return out;
  }
  if (out.discriminant < -band) {
    out.kind = (m == 3) ? Kind::regular_elliptic : Kind::loxodromic;
    return out;
  }

  // Discriminant within the boundary band: decide from eigenstructure.
  auto clusters = cluster(out.eigenvalues, 1e-6);
  bool repeated = false;
  bool defective = false;
  for (auto& [val, mult] : clusters) {
    if (mult < 2) continue;
    repeated = true;
    // rank(N - val I) < m - (mult - 1) means a missing eigenvector.
    CMat S = N - val * CMat::Identity(m, m);
    Eigen::JacobiSVD<CMat> svd(S);
    double thresh = 1e-8 * std::max(1.0, svd.singularValues()(0));
    int nullity = 0;
    for (int i = 0; i < m; ++i)
      if (svd.singularValues()(i) < thresh) ++nullity;
    if (nullity < mult) defective = true;
  }
  out.diagonalisable = !defective;

  if (!repeated) {
    out.kind = Kind::boundary_undetermined;
    return out;
  }
  if (defective) {
    // Unipotent up to scalar: a single eigenvalue cluster.
    out.kind = (clusters.size() == 1) ? Kind::parabolic_unipotent
                                      : Kind::parabolic_other;
    return out;
  }
  bool unit = true;
  for (auto& e : out.eigenvalues)
    if (std::abs(std::abs(e) - 1.0) > 1e-6) unit = false;
  out.kind = unit ? Kind::special_elliptic : Kind::boundary_undetermined;
  return out;
}

}  // namespace chg
