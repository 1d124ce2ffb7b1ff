#include "chg/giraud.hpp"

#include <cmath>

namespace chg {

namespace {
constexpr double kTau = 2.0 * M_PI;

double wrap(double x) {
  x = std::fmod(x, kTau);
  if (x < 0) x += kTau;
  return x;
}
}  // namespace

double TorusTrigForm::eval(double r, double s) const {
  double P, Q, R;
  s_slice(r, P, Q, R);
  return P + Q * std::cos(s) + R * std::sin(s);
}

void TorusTrigForm::s_slice(double r, double& P, double& Q, double& R) const {
  cplx eir = std::polar(1.0, r);
  // k = 0 band.
  P = std::real(c[1][1]) + 2.0 * std::real(c[2][1] * eir);
  // k = +1 band; realness pairs it with k = -1.
  cplx W = c[1][2] + c[2][2] * eir + c[0][2] * std::conj(eir);
  Q = 2.0 * std::real(W);
  R = -2.0 * std::imag(W);
}

void TorusTrigForm::r_slice(double s, double& P, double& Q, double& R) const {
  cplx eis = std::polar(1.0, s);
  P = std::real(c[1][1]) + 2.0 * std::real(c[1][2] * eis);
  cplx W = c[2][1] + c[2][2] * eis + c[2][0] * std::conj(eis);
  Q = 2.0 * std::real(W);
  R = -2.0 * std::imag(W);
}

double TorusTrigForm::lipschitz_r() const {
  double L = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) L += std::abs(j - 1) * std::abs(c[j][k]);
  return L;
}

double TorusTrigForm::lipschitz_s() const {
  double L = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) L += std::abs(k - 1) * std::abs(c[j][k]);
  return L;
}

double TorusTrigForm::coef_abs_sum() const {
  double S = 0.0;
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) S += std::abs(c[j][k]);
  return S;
}

TorusTrigForm TorusTrigForm::fit(const std::function<double(double, double)>& f,
                                 double band_tol) {
  constexpr int N = 8;
  double vals[N][N];
  double scale = 1.0;
  for (int m = 0; m < N; ++m)
    for (int l = 0; l < N; ++l) {
      vals[m][l] = f(kTau * m / N, kTau * l / N);
      scale = std::max(scale, std::abs(vals[m][l]));
    }
  TorusTrigForm out;
  for (int j = -N / 2; j < N / 2; ++j)
    for (int k = -N / 2; k < N / 2; ++k) {
      cplx acc = 0.0;
      for (int m = 0; m < N; ++m)
        for (int l = 0; l < N; ++l)
          acc += vals[m][l] *
                 std::polar(1.0, -kTau * (double(j * m + k * l)) / N);
      acc /= double(N * N);
      if (std::abs(j) <= 1 && std::abs(k) <= 1) {
        out.c[j + 1][k + 1] = acc;
      } else if (std::abs(acc) > band_tol * scale) {
        throw UsageError("TorusTrigForm::fit: function is not band-limited");
      }
    }
  return out;
}

CVec GiraudChart::V(double rr, double ss) const {
  return k0 + std::polar(1.0, rr) * k1 + std::polar(1.0, ss) * k2;
}

GiraudChart make_chart(const CVec& p, const CVec& q, const CVec& r,
                       const CMat& H) {
  if (p.size() != 3 || q.size() != 3 || r.size() != 3)
    throw UsageError("make_chart: length-3 lifts required");
  CMat T(3, 3);
  T.col(0) = p;
  T.col(1) = q;
  T.col(2) = r;
  Eigen::JacobiSVD<CMat> svd(T);
  double smax = svd.singularValues()(0);
  if (svd.singularValues()(2) < 1e-9 * smax)
    throw DegenerateChartError("make_chart: the three points span a complex line");
  GiraudChart ch;
  ch.p = p;
  ch.q = q;
  ch.r = r;
  ch.H = H;
  ch.k0 = box_cross(q, r);
  ch.k1 = box_cross(q, p);
  ch.k2 = box_cross(p, r);
  return ch;
}

TorusTrigForm vv_form(const GiraudChart& chart) {
  return TorusTrigForm::fit([&](double r, double s) {
    CVec V = chart.V(r, s);
    return std::real(herm_inner(V, V, chart.H));
  });
}

TorusTrigForm trace_equation(const GiraudChart& chart, const CVec& u,
                             const CVec& v) {
  return TorusTrigForm::fit([&](double r, double s) {
    CVec V = chart.V(r, s);
    return std::norm(herm_inner(V, u, chart.H)) -
           std::norm(herm_inner(V, v, chart.H));
  });
}

DiskWitness disk_nonempty(const GiraudChart& chart) {
  TorusTrigForm f = vv_form(chart);
  DiskWitness w;
  for (int grid = 64; grid <= 4096; grid *= 4) {
    double best = std::numeric_limits<double>::infinity();
    double br = 0.0, bs = 0.0;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        double r = kTau * i / grid, s = kTau * j / grid;
        double val = f.eval(r, s);
        if (val < best) {
          best = val;
          br = r;
          bs = s;
        }
      }
    if (best < 0.0) {
      w.nonempty = true;
      w.r = br;
      w.s = bs;
      w.value = best;
      return w;
    }
    double slack = (f.lipschitz_r() + f.lipschitz_s()) * M_PI / grid;
    if (best - slack > 0.0) {
      w.nonempty = false;
      w.value = best - slack;  // certified positive lower bound
      return w;
    }
  }
  w.nonempty = false;
  w.value = 0.0;
  return w;
}

CertifiedMax certified_max(const TorusTrigForm& objective,
                           const TorusTrigForm& constraint, int grid,
                           double gap_target, int max_grid) {
  CertifiedMax out;
  const double lip_f = objective.lipschitz_r() + objective.lipschitz_s();
  const double lip_g = constraint.lipschitz_r() + constraint.lipschitz_s();
  for (int N = grid; N <= max_grid; N *= 2) {
    const double hw = M_PI / N;  // cell half-width per axis
    const double slack_f = lip_f * hw;
    const double slack_g = lip_g * hw;
    double ub = -std::numeric_limits<double>::infinity();
    double best = -std::numeric_limits<double>::infinity();
    double br = 0.0, bs = 0.0;
    bool any_cell = false;
    std::vector<double> cs(N), sn(N);
    for (int i = 0; i < N; ++i) {
      cs[i] = std::cos(kTau * i / N);
      sn[i] = std::sin(kTau * i / N);
    }
    for (int i = 0; i < N; ++i) {
      double r = kTau * i / N;
      double Pf, Qf, Rf, Pg, Qg, Rg;
      objective.s_slice(r, Pf, Qf, Rf);
      constraint.s_slice(r, Pg, Qg, Rg);
      for (int j = 0; j < N; ++j) {
        double g = Pg + Qg * cs[j] + Rg * sn[j];
        if (g > slack_g) continue;  // cell certainly infeasible
        any_cell = true;
        double fval = Pf + Qf * cs[j] + Rf * sn[j];
        if (fval + slack_f > ub) ub = fval + slack_f;
        if (g <= 0.0 && fval > best) {
          best = fval;
          br = r;
          bs = kTau * j / N;
        }
      }
    }
    out.grid = N;
    out.empty_feasible = !std::isfinite(best);
    out.upper_bound = ub;
    out.best_value = best;
    out.r = br;
    out.s = bs;
    if (!any_cell) {
      out.upper_bound = -std::numeric_limits<double>::infinity();
      return out;  // certified empty feasible set
    }
    if (std::isfinite(best) && ub - best < gap_target) return out;
  }
  return out;
}

namespace {

// Roots in [0, 2pi) of a + b cos x + c sin x.
std::vector<double> trig_roots(double a, double b, double c) {
  std::vector<double> out;
  double rho = std::hypot(b, c);
  if (rho < 1e-13) return out;  // constant; root only if identically zero
  double x = -a / rho;
  if (x < -1.0 || x > 1.0) return out;
  double phi = std::atan2(c, b);
  double d = std::acos(std::clamp(x, -1.0, 1.0));
  out.push_back(wrap(phi + d));
  if (d > 1e-13 && d < M_PI - 1e-13) out.push_back(wrap(phi - d));
  return out;
}

double line_residual(const TorusTrigForm& T, SolutionLine::Type type, double c) {
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) {
    double x = kTau * i / 64;
    double val = 0.0;
    switch (type) {
      case SolutionLine::r_const: val = T.eval(c, x); break;
      case SolutionLine::s_const: val = T.eval(x, c); break;
      case SolutionLine::sum_const: val = T.eval(x, c - x); break;
      case SolutionLine::diff_const: val = T.eval(x, x - c); break;
    }
    worst = std::max(worst, std::abs(val));
  }
  return worst;
}

double line_vv(const TorusTrigForm& Vf, SolutionLine::Type type, double c,
               double x) {
  switch (type) {
    case SolutionLine::r_const: return Vf.eval(c, x);
    case SolutionLine::s_const: return Vf.eval(x, c);
    case SolutionLine::sum_const: return Vf.eval(x, c - x);
    case SolutionLine::diff_const: return Vf.eval(x, x - c);
  }
  return 0.0;
}

// Maximal arcs of {W <= 0} for W periodic, via sampling plus bisection.
std::vector<TorusInterval> feasible_arcs(
    const std::function<double(double)>& W) {
  constexpr int M = 4096;
  std::vector<double> vals(M);
  for (int i = 0; i < M; ++i) vals[i] = W(kTau * i / M);
  std::vector<double> crossings;
  std::vector<bool> enter;  // sign goes + -> - at this crossing
  for (int i = 0; i < M; ++i) {
    double a = vals[i], b = vals[(i + 1) % M];
    if ((a > 0) == (b > 0)) continue;
    double lo = kTau * i / M, hi = kTau * (i + 1) / M;
    for (int it = 0; it < 60; ++it) {
      double mid = (lo + hi) / 2;
      if ((W(mid) > 0) == (a > 0)) lo = mid;
      else hi = mid;
    }
    crossings.push_back(wrap((lo + hi) / 2));
    enter.push_back(a > 0);
  }
  std::vector<TorusInterval> arcs;
  if (crossings.empty()) {
    if (vals[0] <= 0) arcs.push_back({0.0, kTau});
    return arcs;
  }
  for (size_t i = 0; i < crossings.size(); ++i) {
    if (!enter[i]) continue;
    double lo = crossings[i];
    // next crossing forward is the exit
    double hi = crossings[(i + 1) % crossings.size()];
    if (hi <= lo) hi += kTau;
    arcs.push_back({lo, hi});
  }
  return arcs;
}

}  // namespace

TripleSolution solve_triple(const GiraudChart& chart, const CVec& u,
                            const CVec& v) {
  TorusTrigForm T = trace_equation(chart, u, v);
  TorusTrigForm Vf = vv_form(chart);
  double scale = std::max(1.0, T.coef_abs_sum());
  TripleSolution out;

  std::vector<std::pair<SolutionLine::Type, double>> cands;
  auto add_roots = [&](SolutionLine::Type type, double a, double b, double c) {
    for (double r : trig_roots(a, b, c)) cands.push_back({type, r});
  };

  // r = const: all three s-slice coefficient functions of T must vanish.
  add_roots(SolutionLine::r_const, std::real(T.c[1][1]),
            2.0 * std::real(T.c[2][1]), -2.0 * std::imag(T.c[2][1]));
  {
    cplx w0 = T.c[1][2], wp = T.c[2][2], wm = T.c[0][2];
    add_roots(SolutionLine::r_const, std::real(w0),
              std::real(wp + wm), -std::imag(wp - wm));
    add_roots(SolutionLine::r_const, std::imag(w0),
              std::imag(wp + wm), std::real(wp - wm));
  }
  // s = const, by symmetry.
  add_roots(SolutionLine::s_const, std::real(T.c[1][1]),
            2.0 * std::real(T.c[1][2]), -2.0 * std::imag(T.c[1][2]));
  {
    cplx w0 = T.c[2][1], wp = T.c[2][2], wm = T.c[2][0];
    add_roots(SolutionLine::s_const, std::real(w0),
              std::real(wp + wm), -std::imag(wp - wm));
    add_roots(SolutionLine::s_const, std::imag(w0),
              std::imag(wp + wm), std::real(wp - wm));
  }
  // r - s = c: the frequency-0 band of T(x, x - c) must vanish.
  add_roots(SolutionLine::diff_const, std::real(T.c[1][1]),
            2.0 * std::real(T.c[2][0]), -2.0 * std::imag(T.c[2][0]));
  // plus the +/-1 bands: c[2][1] + c[1][2] e^{-ic} = 0.
  if (std::abs(T.c[2][1]) > 1e-12 &&
      std::abs(std::abs(T.c[2][1]) - std::abs(T.c[1][2])) <
          1e-9 * scale) {
    cands.push_back(
        {SolutionLine::diff_const, wrap(-std::arg(-T.c[2][1] / T.c[1][2]))});
  }
  // r + s = c analogues.
  add_roots(SolutionLine::sum_const, std::real(T.c[1][1]),
            2.0 * std::real(T.c[2][2]), -2.0 * std::imag(T.c[2][2]));
  if (std::abs(T.c[2][1]) > 1e-12 &&
      std::abs(std::abs(T.c[2][1]) - std::abs(T.c[0][1])) < 1e-9 * scale) {
    cands.push_back(
        {SolutionLine::sum_const, wrap(std::arg(-T.c[2][1] / T.c[0][1]))});
  }

  for (auto& [type, c] : cands) {
    double res = line_residual(T, type, c);
    if (res > 1e-9 * scale) continue;
    bool dup = false;
    for (auto& L : out.lines) {
      double d = std::abs(wrap(L.c - c + M_PI) - M_PI);
      if (L.type == type && d < 1e-8) dup = true;
    }
    if (dup) continue;
    SolutionLine L;
    L.type = type;
    L.c = c;
    L.residual = res;
    L.segments =
        feasible_arcs([&](double x) { return line_vv(Vf, type, c, x); });
    L.feasible = !L.segments.empty();
    out.lines.push_back(L);
  }
  out.fully_factored = !out.lines.empty();
  return out;
}

std::vector<BoundaryArc> boundary_arcs(const GiraudChart& chart, const CVec& u,
                                       const CVec& v, int samples) {
  TorusTrigForm Vf = vv_form(chart);
  TorusTrigForm T = trace_equation(chart, u, v);
  std::vector<BoundaryArc> arcs;
  for (int branch = 0; branch < 2; ++branch) {
    BoundaryArc cur;
    auto flush = [&]() {
      if (cur.pts.size() >= 2) arcs.push_back(cur);
      cur.pts.clear();
    };
    for (int i = 0; i <= samples; ++i) {
      double r = kTau * i / samples;
      double P, Q, R;
      Vf.s_slice(r, P, Q, R);
      double rho = std::hypot(Q, R);
      double x = (rho < 1e-13) ? 2.0 : -P / rho;
      if (x < -1.0 || x > 1.0) {
        flush();
        continue;
      }
      double phi = std::atan2(R, Q);
      double s =
          wrap(branch == 0 ? phi + std::acos(x) : phi - std::acos(x));
      double tv = T.eval(r, s);
      if (!cur.pts.empty() && ((cur.pts.back()[2] < 0) != (tv < 0))) {
        flush();
      }
      cur.exterior = tv < 0;
      cur.pts.push_back({r, s, tv});
    }
    flush();
  }
  return arcs;
}

double coplanar_defect(const ModuliPoint& p) {
  GeneratorSet g = generators(p, 3);
  CVec qinf = CVec::Zero(4);
  qinf(0) = 1.0;
  CMat Cinv = g.C.inverse();
  CVec sum = qinf - Cinv * qinf + (g.C * g.B * Cinv) * qinf -
             (g.C * g.B * g.C) * qinf;
  return sum.norm();
}

RestrictedSlice restricted_slice_chart(const ModuliPoint& p) {
  if (p.h <= 1.0)
    throw InvalidModuliError("restricted_slice_chart: requires h > 1");
  GeneratorSet g = generators(p, 3);
  RestrictedSlice out;
  CVec qinf = CVec::Zero(4);
  qinf(0) = 1.0;
  CMat Cinv = g.C.inverse();
  out.e1 = qinf;
  out.e2 = Cinv * qinf;
  out.e3 = (g.C * g.B * Cinv) * qinf;
  out.e4 = (g.C * g.B * g.C) * qinf;
  CMat HL(3, 3);
  const CVec* e[3] = {&out.e1, &out.e2, &out.e3};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      HL(i, j) = (e[i]->adjoint() * g.H * (*e[j]))(0, 0);
  out.HL = HL;
  CVec E1 = CVec::Zero(3), E2 = CVec::Zero(3), E3 = CVec::Zero(3);
  E1(0) = 1.0;
  E2(1) = 1.0;
  E3(2) = 1.0;
  GiraudChart ch;
  ch.p = E1;
  ch.q = E2;
  ch.r = E3;
  ch.H = HL;
  ch.k0 = box_cross_general(E2, E3, HL);
  ch.k1 = box_cross_general(E1, E3, HL);
  ch.k2 = box_cross_general(E1, E2, HL);
  out.chart = ch;
  out.u = E1;
  out.v = E1 - E2 + E3;
  return out;
}

}  // namespace chg
