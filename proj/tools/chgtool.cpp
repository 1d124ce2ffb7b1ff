// Command-line front end: parameter scans with zero-curve tracing, Cygan
// sphere meshes, verification reports, word classification, and sphere
// tables.

#include "chg/classify.hpp"
#include "chg/group.hpp"
#include "chg/heisenberg.hpp"
#include "chg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

using namespace chg;

namespace {

std::string f15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// Discriminant of the su-normalized word at (h, t); NaN outside the region.
double grail_at(const ModuliPoint& p, const std::string& word) {
  if (!p.in_moduli()) return std::nan("");
  GeneratorSet g = generators(p, 3);
  CMat M = su_normalize(eval_word(word, g).m);
  TraceInvariants inv = trace_invariants(M);
  return holy_grail_h(inv.tau, inv.sigma);
}

struct ScanOpts {
  double h_min = 0.5, h_max = 3.0, t_min = 0.0, t_max = M_PI;
  int grid = 400;
  std::string out = "scan.csv";
  std::vector<std::string> words = {"I1 I2 I3 I4", "I1 I4 I1 I2 I1 I4 I3",
                                    "I1 I3 I4 I1 I2", "I1 I3 I2 I4 I1 I3 I4"};
};

int cmd_scan(const ScanOpts& o) {
  if (o.grid < 2) throw UsageError("scan: grid resolution must be >= 2");
  const int N = o.grid;
  const size_t W = o.words.size();
  std::vector<std::vector<double>> vals(W,
                                        std::vector<double>(size_t(N) * N));
  std::ofstream csv(o.out);
  if (!csv) throw UsageError("scan: cannot open " + o.out);
  csv << "h,t";
  for (const auto& w : o.words) csv << ",\"" << w << "\"";
  csv << "\n";
  for (int i = 0; i < N; ++i) {
    double h = o.h_min + (o.h_max - o.h_min) * i / (N - 1);
    for (int j = 0; j < N; ++j) {
      double t = o.t_min + (o.t_max - o.t_min) * j / (N - 1);
      ModuliPoint p{h, t};
      csv << f15(h) << ',' << f15(t);
      std::optional<GeneratorSet> g;
      if (p.in_moduli()) g = generators(p, 3);
      for (size_t w = 0; w < W; ++w) {
        double v = std::nan("");
        if (g) {
          CMat M = su_normalize(eval_word(o.words[w], *g).m);
          TraceInvariants inv = trace_invariants(M);
          v = holy_grail_h(inv.tau, inv.sigma);
        }
        vals[w][size_t(i) * N + j] = v;
        csv << ',' << f15(v);
      }
      csv << "\n";
    }
  }

  // Zero curves by marching squares, with each edge crossing refined by
  // bisection so every emitted vertex actually sits on the locus.
  std::ofstream curves(o.out + ".curves.csv");
  curves << "word,h1,t1,h2,t2\n";
  auto coord = [&](int i, int j) {
    return std::pair<double, double>{
        o.h_min + (o.h_max - o.h_min) * i / (N - 1),
        o.t_min + (o.t_max - o.t_min) * j / (N - 1)};
  };
  for (size_t w = 0; w < W; ++w) {
    auto refine = [&](double h1, double t1, double v1, double h2, double t2,
                      double v2) {
      for (int it = 0; it < 40; ++it) {
        double hm = 0.5 * (h1 + h2), tm = 0.5 * (t1 + t2);
        double vm = grail_at({hm, tm}, o.words[w]);
        if (!std::isfinite(vm)) break;
        if ((vm > 0) == (v1 > 0)) {
          h1 = hm; t1 = tm; v1 = vm;
        } else {
          h2 = hm; t2 = tm; v2 = vm;
        }
      }
      return std::pair<double, double>{0.5 * (h1 + h2), 0.5 * (t1 + t2)};
    };
    for (int i = 0; i + 1 < N; ++i)
      for (int j = 0; j + 1 < N; ++j) {
        double v00 = vals[w][size_t(i) * N + j];
        double v10 = vals[w][size_t(i + 1) * N + j];
        double v01 = vals[w][size_t(i) * N + j + 1];
        double v11 = vals[w][size_t(i + 1) * N + j + 1];
        if (!std::isfinite(v00) || !std::isfinite(v10) || !std::isfinite(v01) ||
            !std::isfinite(v11))
          continue;
        std::vector<std::pair<double, double>> hits;
        auto edge = [&](int ia, int ja, double va, int ib, int jb, double vb) {
          if ((va > 0) == (vb > 0)) return;
          auto [ha, ta] = coord(ia, ja);
          auto [hb, tb] = coord(ib, jb);
          hits.push_back(refine(ha, ta, va, hb, tb, vb));
        };
        edge(i, j, v00, i + 1, j, v10);
        edge(i, j, v00, i, j + 1, v01);
        edge(i + 1, j, v10, i + 1, j + 1, v11);
        edge(i, j + 1, v01, i + 1, j + 1, v11);
        if (hits.size() == 2) {
          curves << '"' << o.words[w] << "\"," << f15(hits[0].first) << ','
                 << f15(hits[0].second) << ',' << f15(hits[1].first) << ','
                 << f15(hits[1].second) << "\n";
        }
      }
  }
  // The upper boundary curve of the admissible region.
  std::ofstream bnd(o.out + ".boundary.csv");
  bnd << "h,t\n";
  for (int i = 0; i < N; ++i) {
    double h = o.h_min + (o.h_max - o.h_min) * i / (N - 1);
    if (h < 0.5) continue;
    bnd << f15(h) << ',' << f15(ModuliPoint{h, 0.0}.t_max()) << "\n";
  }
  return 0;
}

int cmd_mesh(double h, double t, const std::string& word, int res,
             const std::string& out) {
  ModuliPoint p{h, t};
  GeneratorSet g = p.is_2d_slice() ? generators(p, 2) : generators(p, 3);
  if (g.n != 2)
    throw UsageError("mesh: surface export needs the one-dimensional "
                     "Heisenberg boundary (upper-curve parameters)");
  CyganSphere s = isometric_sphere(eval_word(word, g));
  cplx z0 = s.center.z(0);
  double t0 = s.center.t, rho = s.radius;
  std::ofstream obj(out);
  if (!obj) throw UsageError("mesh: cannot open " + out);
  obj << "# Cygan sphere of " << word << " at h=" << f15(h) << " t=" << f15(t)
      << "\n";
  // Geographic chart: beta in [-pi/2, pi/2], alpha around the axis.
  //   z = z0 + rho sqrt(cos beta) e^{i alpha}
  //   t = t0 - 2 Im(conj(z0) z) + rho^2 sin beta
  const int M = res, L = 2 * res;
  for (int i = 0; i <= M; ++i) {
    double beta = -M_PI / 2 + M_PI * i / M;
    for (int j = 0; j < L; ++j) {
      double alpha = 2 * M_PI * j / L;
      cplx z = z0 + rho * std::sqrt(std::max(0.0, std::cos(beta))) *
                        std::polar(1.0, alpha);
      double tt = t0 - 2 * std::imag(std::conj(z0) * z) +
                  rho * rho * std::sin(beta);
      obj << "v " << f15(std::real(z)) << ' ' << f15(std::imag(z)) << ' '
          << f15(tt) << "\n";
    }
  }
  auto vid = [L](int i, int j) { return i * L + (j % L) + 1; };
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < L; ++j) {
      obj << "f " << vid(i, j) << ' ' << vid(i + 1, j) << ' '
          << vid(i + 1, j + 1) << "\n";
      obj << "f " << vid(i, j) << ' ' << vid(i + 1, j + 1) << ' '
          << vid(i, j + 1) << "\n";
    }
  return 0;
}

int cmd_verify(double h, double t, bool full, int K, const std::string& out) {
  nlohmann::json rep = full_report({h, t}, full, K);
  std::string text = rep.dump(2);
  if (out.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream f(out);
    if (!f) throw UsageError("verify: cannot open " + out);
    f << text << "\n";
  }
  return rep["verdict"] == "pass" ? 0 : 1;
}

int cmd_classify(double h, double t, const std::string& word) {
  ModuliPoint p{h, t};
  if (!p.in_moduli()) throw InvalidModuliError("classify: point outside the moduli region");
  GeneratorSet g = generators(p, 3);
  CMat M = su_normalize(eval_word(word, g).m);
  IsometryClass cl = classify(M);
  nlohmann::json out{{"word", word},
                     {"kind", kind_name(cl.kind)},
                     {"discriminant", cl.discriminant},
                     {"tau_re", std::real(cl.invariants.tau)},
                     {"tau_im", std::imag(cl.invariants.tau)},
                     {"sigma", cl.invariants.sigma}};
  nlohmann::json eig = nlohmann::json::array();
  for (auto& e : cl.eigenvalues)
    eig.push_back({{"abs", std::abs(e)}, {"arg", std::arg(e)}});
  out["eigenvalues"] = eig;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_spheres(double h, double t, int K, const std::string& out) {
  ModuliPoint p{h, t};
  GeneratorSet g = p.is_2d_slice() ? generators(p, 2) : generators(p, 3);
  WordSet ws = build_word_set(K);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : ws.words) {
    CyganSphere s = isometric_sphere(eval_word(w, g));
    nlohmann::json center = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.center.z.size(); ++i)
      center.push_back({{"re", std::real(s.center.z(i))},
                        {"im", std::imag(s.center.z(i))}});
    center.push_back({{"t", s.center.t}});
    arr.push_back({{"word", w}, {"radius", s.radius}, {"center", center}});
  }
  nlohmann::json rep{{"h", h}, {"t", t}, {"spheres", arr}};
  std::string text = rep.dump(2);
  if (out.empty()) std::cout << text << "\n";
  else std::ofstream(out) << text << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ford domain toolkit for a two-parameter reflection family"};
  app.require_subcommand(1);
  app.set_config("--config");
  // Long-only help everywhere: "-h" would clash with the --h parameter that
  // several subcommands take.
  app.set_help_flag("--help", "print help and exit");

  double h = std::sqrt(2.0), t = std::acos(-7.0 / 8.0);
  int kmax = 5;
  double tol_id = 1e-9, tol_geom = 1e-7;

  ScanOpts so;
  auto* scan = app.add_subcommand("scan", "grid scan of the discriminant");
  scan->add_option("--h-min", so.h_min);
  scan->add_option("--h-max", so.h_max);
  scan->add_option("--t-min", so.t_min);
  scan->add_option("--t-max", so.t_max);
  scan->add_option("--grid", so.grid);
  scan->add_option("--out", so.out);
  scan->add_option("--word", so.words);

  std::string word = "C", out;
  int mesh_res = 48;
  auto* mesh = app.add_subcommand("mesh", "Cygan sphere surface mesh");
  mesh->add_option("--h", h);
  mesh->add_option("--t", t);
  mesh->add_option("--word", word);
  mesh->add_option("--grid", mesh_res);
  mesh->add_option("--out", out)->required();

  bool full = false;
  auto* verify = app.add_subcommand("verify", "verification report");
  verify->add_option("--h", h);
  verify->add_option("--t", t);
  verify->add_flag("--full", full);
  verify->add_option("--k-max", kmax);
  verify->add_option("--out", out);
  verify->add_option("--tol-id", tol_id);
  verify->add_option("--tol-geom", tol_geom);

  auto* classify_cmd = app.add_subcommand("classify", "classify a word");
  classify_cmd->add_option("--h", h);
  classify_cmd->add_option("--t", t);
  classify_cmd->add_option("--word", word);

  auto* spheres = app.add_subcommand("spheres", "center/radius tables");
  spheres->add_option("--h", h);
  spheres->add_option("--t", t);
  spheres->add_option("--k-max", kmax);
  spheres->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (scan->parsed()) return cmd_scan(so);
    if (mesh->parsed()) return cmd_mesh(h, t, word, mesh_res, out);
    if (verify->parsed()) return cmd_verify(h, t, full, kmax, out);
    if (classify_cmd->parsed()) return cmd_classify(h, t, word);
    if (spheres->parsed()) return cmd_spheres(h, t, kmax, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
