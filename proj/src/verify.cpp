#include "chg/verify.hpp"

#include "chg/classify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <set>

namespace chg {

namespace {

constexpr double kTau = 2.0 * M_PI;

std::string pow_word(char base, long k) {
  if (k == 0) return "";
  if (k == 1) return std::string(1, base);
  return std::string(1, base) + "^" + std::to_string(k);
}

std::string join_words(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (!out.empty()) out += ' ';
    out += p;
  }
  return out;
}

CVec qinf_lift(Eigen::Index m) {
  CVec q = CVec::Zero(m);
  q(0) = 1.0;
  return q;
}

// Separation of complex lines: squared sine of the principal angle, 0 when
// the lifts are proportional. Kept squared so that lifts agreeing to machine
// precision score ~1e-16 instead of the square-root-inflated ~1e-8.
double proj_dist(const CVec& a, const CVec& b) {
  double na = a.squaredNorm(), nb = b.squaredNorm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  cplx dot = (b.adjoint() * a)(0, 0);
  return std::max(0.0, 1.0 - std::norm(dot) / (na * nb));
}

// Componentwise agreement of two boundary points. The Cygan metric takes a
// fourth root, which would turn machine-level agreement into ~1e-8; this
// stays linear in the coordinate error.
double point_defect(const HeisenbergPoint& a, const HeisenbergPoint& b) {
  return std::max((a.z - b.z).norm(), std::abs(a.t - b.t));
}

}  // namespace

std::string conjugated_word(const std::string& core, long k) {
  if (k == 0) return core;
  return join_words({pow_word('A', k), core, pow_word('A', -k)});
}

WordSet build_word_set(int K) {
  if (K < 0) throw UsageError("build_word_set: K >= 0 required");
  WordSet ws;
  ws.K = K;
  const char* cores[5] = {"C", "c B C", "C B c", "C B C", "c B c"};
  for (long k = -K; k <= K; ++k)
    for (const char* core : cores) ws.words.push_back(conjugated_word(core, k));
  return ws;
}

std::vector<CyganSphere> build_spheres(const WordSet& ws,
                                       const GeneratorSet& gens) {
  std::vector<CyganSphere> out;
  out.reserve(ws.words.size());
  for (const auto& w : ws.words)
    out.push_back(isometric_sphere(eval_word(w, gens)));
  return out;
}

std::vector<PairwiseEntry> pairwise_audit(const std::vector<CyganSphere>& sph,
                                          double tol) {
  std::vector<PairwiseEntry> out;
  for (size_t i = 0; i < sph.size(); ++i)
    for (size_t j = i + 1; j < sph.size(); ++j) {
      auto rel = sphere_relation(sph[i], sph[j], tol);
      out.push_back({sph[i].word, sph[j].word, rel.rel, rel.gap});
    }
  return out;
}

namespace {

GiraudChart pair_chart(const GeneratorSet& gens, const std::string& w1,
                       const std::string& w2) {
  CVec q = eval_word(w1, gens).m.inverse() * qinf_lift(gens.H.rows());
  CVec r = eval_word(w2, gens).m.inverse() * qinf_lift(gens.H.rows());
  return make_chart(qinf_lift(gens.H.rows()), q, r, gens.H);
}

// Forward image g(q_inf) with the exact matrix of the word.
CVec fwd(const GeneratorSet& gens, const std::string& w) {
  return eval_word(w, gens).m * qinf_lift(gens.H.rows());
}

// Pole lift g^-1(q_inf).
CVec bwd(const GeneratorSet& gens, const std::string& w) {
  return eval_word(w, gens).m.inverse() * qinf_lift(gens.H.rows());
}

TorusTrigForm membership_form(const GiraudChart& chart, const CVec& pole) {
  return TorusTrigForm::fit([&](double r, double s) {
    return std::norm(herm_inner(chart.V(r, s), pole, chart.H));
  });
}

}  // namespace

std::vector<ContainmentCertificate> containment_audit(
    const GeneratorSet& gens) {
  const CVec qinf = qinf_lift(gens.H.rows());
  std::vector<ContainmentCertificate> out;

  auto certify = [&](const std::string& a, const std::string& b,
                     const CVec& q, const CVec& r, const std::string& container,
                     bool exterior_form) {
    ContainmentCertificate cert;
    cert.disk_a = a;
    cert.disk_b = b;
    cert.container = container;
    GiraudChart chart = make_chart(qinf, q, r, gens.H);
    TorusTrigForm vv = vv_form(chart);
    CVec pole = eval_word(container, gens).m.inverse() * qinf;
    TorusTrigForm obj = membership_form(chart, pole);
    if (exterior_form) {
      // max of |<V,q_inf>|^2 - |<V,pole>|^2 must stay negative: the disk is
      // exterior to the container sphere.
      TorusTrigForm qn = membership_form(chart, qinf);
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) obj.c[j][k] = qn.c[j][k] - obj.c[j][k];
      cert.threshold = 0.0;
    } else {
      // max of |<V,pole>|^2 must stay below the constant |<V,q_inf>|^2: the
      // disk is interior to the container sphere.
      cert.threshold = std::norm(herm_inner(chart.k0, qinf, chart.H));
    }
    CertifiedMax cm = certified_max(obj, vv);
    cert.bound = cm.upper_bound;
    cert.sample_r = cm.r;
    cert.sample_s = cm.s;
    cert.sample_value = cm.best_value;
    cert.certified = !cm.empty_feasible && cm.upper_bound < cert.threshold;
    out.push_back(cert);
  };

  certify("C", "C B C", bwd(gens, "C"), bwd(gens, "C B C"), "a C A", false);
  certify("C", "A C B c a", bwd(gens, "C"), fwd(gens, "A C B c a"), "A C a",
          false);
  certify("C", "a C A", bwd(gens, "C"), fwd(gens, "C"), "C B C", true);
  return out;
}

const char* ridge_class_name(RidgeRecord::Class c) {
  switch (c) {
    case RidgeRecord::empty_ridge: return "empty";
    case RidgeRecord::giraud_disk: return "giraud-disk";
    case RidgeRecord::partial_disk: return "partial-disk";
    case RidgeRecord::two_sectors: return "two-sectors";
    case RidgeRecord::tangent_point: return "tangent-point";
    case RidgeRecord::unclassified: return "unclassified";
  }
  return "unclassified";
}

std::vector<RidgeRecord> ridge_catalog(const WordSet& ws,
                                       const GeneratorSet& gens, int grid) {
  auto spheres = build_spheres(ws, gens);
  const Eigen::Index m = gens.H.rows();
  const CVec qinf = qinf_lift(m);
  Eigen::RowVectorXcd qrow = qinf.adjoint() * gens.H;
  std::vector<Eigen::RowVectorXcd> rows(spheres.size());
  for (size_t i = 0; i < spheres.size(); ++i)
    rows[i] = spheres[i].pole.adjoint() * gens.H;

  std::vector<RidgeRecord> out;
  for (size_t i = 0; i < spheres.size(); ++i) {
    for (size_t j = i + 1; j < spheres.size(); ++j) {
      auto rel = sphere_relation(spheres[i], spheres[j]);
      if (rel.rel == SphereRel::disjoint) continue;
      RidgeRecord rec;
      rec.w1 = spheres[i].word;
      rec.w2 = spheres[j].word;
      if (rel.rel == SphereRel::tangent) {
        rec.cls = RidgeRecord::tangent_point;
        out.push_back(rec);
        continue;
      }
      GiraudChart chart =
          make_chart(qinf, spheres[i].pole, spheres[j].pole, gens.H);
      TorusTrigForm vv = vv_form(chart);

      // Sample the disk; a point survives when no third sphere strictly
      // swallows it. Offset samples keep symmetric boundary points off grid.
      std::vector<char> disk(grid * grid, 0), alive(grid * grid, 0);
      std::vector<size_t> swallowers;
      int n_disk = 0, n_alive = 0;
      for (int a = 0; a < grid; ++a) {
        double r = kTau * (a + 0.5) / grid;
        for (int b = 0; b < grid; ++b) {
          double s = kTau * (b + 0.5) / grid;
          if (vv.eval(r, s) > 0.0) continue;
          disk[a * grid + b] = 1;
          ++n_disk;
          CVec V = chart.V(r, s);
          double ref = std::abs((qrow * V)(0, 0));
          bool survives = true;
          for (size_t w = 0; w < spheres.size(); ++w) {
            if (w == i || w == j) continue;
            // Strictly interior to sphere w: the q_inf pairing dominates.
            if (std::abs((rows[w] * V)(0, 0)) * (1.0 + 1e-9) < ref) {
              survives = false;
              if (std::find(swallowers.begin(), swallowers.end(), w) ==
                  swallowers.end())
                swallowers.push_back(w);
              break;
            }
          }
          if (survives) {
            alive[a * grid + b] = 1;
            ++n_alive;
          }
        }
      }

      // 4-neighbor components of the survivor set on the torus.
      int components = 0;
      std::vector<char> seen(grid * grid, 0);
      for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
          int idx = a * grid + b;
          if (!alive[idx] || seen[idx]) continue;
          ++components;
          std::deque<int> queue{idx};
          seen[idx] = 1;
          while (!queue.empty()) {
            int cur = queue.front();
            queue.pop_front();
            int ca = cur / grid, cb = cur % grid;
            int nb[4] = {((ca + 1) % grid) * grid + cb,
                         ((ca + grid - 1) % grid) * grid + cb,
                         ca * grid + (cb + 1) % grid,
                         ca * grid + (cb + grid - 1) % grid};
            for (int nn : nb)
              if (alive[nn] && !seen[nn]) {
                seen[nn] = 1;
                queue.push_back(nn);
              }
          }
        }

      rec.components = components;
      if (n_disk == 0) {
        rec.cls = RidgeRecord::unclassified;
      } else if (n_alive == 0) {
        rec.cls = RidgeRecord::empty_ridge;
        // Look for a single sphere that swallows the whole disk.
        for (size_t w : swallowers) {
          bool covers = true;
          for (int a = 0; a < grid && covers; ++a) {
            double r = kTau * (a + 0.5) / grid;
            for (int b = 0; b < grid; ++b) {
              if (!disk[a * grid + b]) continue;
              double s = kTau * (b + 0.5) / grid;
              CVec V = chart.V(r, s);
              if (std::abs((rows[w] * V)(0, 0)) * (1.0 + 1e-9) >=
                  std::abs((qrow * V)(0, 0))) {
                covers = false;
                break;
              }
            }
          }
          if (covers) {
            rec.annotation = spheres[w].word;
            break;
          }
        }
      } else if (n_alive == n_disk) {
        rec.cls = RidgeRecord::giraud_disk;
      } else if (components == 1) {
        rec.cls = RidgeRecord::partial_disk;
      } else if (components == 2) {
        rec.cls = RidgeRecord::two_sectors;
      } else {
        rec.cls = RidgeRecord::unclassified;
      }
      out.push_back(rec);
    }
  }
  return out;
}

namespace {

// Greedy-free matching: minimum over permutations of the worst projective
// distance between image lifts and target lifts.
double triple_set_defect(const std::array<CVec, 3>& img,
                         const std::array<CVec, 3>& tgt) {
  int perm[3] = {0, 1, 2};
  double best = std::numeric_limits<double>::infinity();
  std::sort(perm, perm + 3);
  do {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i)
      worst = std::max(worst, proj_dist(img[i], tgt[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm, perm + 3));
  return best;
}

// Ridge s(x) cap s(y) as the triple of lifts {q_inf, x^-1 q_inf, y^-1 q_inf};
// returns the defect of g mapping the triple of (x,y) onto that of (x2,y2).
double ridge_map_defect(const GeneratorSet& gens, const std::string& g,
                        const std::string& x, const std::string& y,
                        const std::string& x2, const std::string& y2) {
  const CVec q = qinf_lift(gens.H.rows());
  CMat G = eval_word(g, gens).m;
  std::array<CVec, 3> src = {q, eval_word(x, gens).m.inverse() * q,
                             eval_word(y, gens).m.inverse() * q};
  std::array<CVec, 3> tgt = {q, eval_word(x2, gens).m.inverse() * q,
                             eval_word(y2, gens).m.inverse() * q};
  std::array<CVec, 3> img = {G * src[0], G * src[1], G * src[2]};
  return triple_set_defect(img, tgt);
}

}  // namespace

std::vector<CycleRecord> cycle_audit(const GeneratorSet& gens) {
  struct Step {
    const char *x, *y, *g, *x2, *y2;
  };
  struct CycleData {
    const char* name;
    const char* relation;
    const char* identity_word;
    std::vector<Step> steps;
  };
  const std::vector<CycleData> cycles = {
      {"central-disk", "C^3 = id", "C C C",
       {{"C", "a C A", "C", "C", "a C A"}}},
      {"B-cycle-left", "B^2 = id", "c B C c B c c",
       {{"c B C", "c", "c", "C", "c B c"},
        {"C", "c B c", "c B c", "C B C", "c B C"},
        {"C B C", "c B C", "c B C", "c B C", "c"}}},
      {"B-cycle-right", "B^2 = id", "c B C C C B C",
       {{"c B C", "C B C", "C B C", "c B c", "C"},
        {"c B c", "C", "C", "c", "c B C"},
        {"c", "c B C", "c B C", "c B C", "C B C"}}},
      {"B-cycle-front", "B^2 = id", "C B c C B C C",
       {{"C B c", "C", "C", "c", "C B C"},
        {"c", "C B C", "C B C", "c B c", "C B c"},
        {"c B c", "C B c", "C B c", "C B c", "C"}}},
      {"B-cycle-back", "B^2 = id", "C B C C C B c",
       {{"c B c", "C B c", "C B c", "C B c", "C"},
        {"C B c", "C", "C", "c", "C B C"},
        {"c", "C B C", "C B C", "c B c", "C B c"}}},
      {"hidden-ridge", "(AC)^2 = id", "A C A C",
       {{"A C a", "C", "C", "c", "A^-2 C A^2"},
        {"c", "A^-2 C A^2", "A", "C", "a C A"}}},
  };

  const auto m = gens.H.rows();
  std::vector<CycleRecord> out;
  for (const auto& cd : cycles) {
    CycleRecord rec;
    rec.name = cd.name;
    rec.relation = cd.relation;
    rec.composed_word = cd.identity_word;
    double res = scalar_defect(eval_word(cd.identity_word, gens).m,
                               CMat::Identity(m, m));
    rec.relation_ok = res < 1e-9;
    double worst = 0.0;
    for (const auto& st : cd.steps)
      worst = std::max(worst,
                       ridge_map_defect(gens, st.g, st.x, st.y, st.x2, st.y2));
    rec.steps_ok = worst < 1e-9;
    rec.residual = std::max(res, worst);
    out.push_back(rec);
  }
  return out;
}

std::vector<CheckItem> side_pairing_audit(const GeneratorSet& gens,
                                          int k_range) {
  std::vector<CheckItem> out;
  auto conj = [](const char* core, long k) {
    return conjugated_word(core, k);
  };
  auto add = [&](const std::string& name, double res) {
    out.push_back({name, res < 1e-9, res});
  };
  for (long k = -k_range; k <= k_range; ++k) {
    std::string ks = std::to_string(k);
    // Pairing A^{k+1} C A^{-k}, a self-homeomorphism of s(A^k C A^-k).
    std::string gC = join_words({pow_word('A', k + 1), "C", pow_word('A', -k)});
    std::string sk = conj("C", k);
    double r1 = std::max(
        ridge_map_defect(gens, gC, sk, conj("C", k + 1), sk, conj("C", k - 1)),
        ridge_map_defect(gens, gC, sk, conj("C", k - 1), sk, conj("C", k + 1)));
    add("translate[" + ks + "] exchanges adjacent disks", r1);
    add("translate[" + ks + "] front ridge",
        ridge_map_defect(gens, gC, sk, conj("C B C", k + 1), sk,
                         conj("C B c", k)));
    add("translate[" + ks + "] back ridge",
        ridge_map_defect(gens, gC, sk, conj("c B C", k + 1), sk,
                         conj("c B c", k)));
    // Pairing A^k CBC A^-k: s(A^k CBC A^-k) -> s(A^k C^-1BC^-1 A^-k).
    std::string gCBC = conj("C B C", k);
    add("long-pairing[" + ks + "] first ridge",
        ridge_map_defect(gens, gCBC, conj("C B C", k), conj("c B C", k),
                         conj("c B c", k), conj("C", k)));
    add("long-pairing[" + ks + "] second ridge",
        ridge_map_defect(gens, gCBC, conj("C B C", k), conj("C", k - 1),
                         conj("c B c", k), conj("C B c", k)));
    // Self-pairing A^k C^-1BC A^-k.
    std::string gcBC = conj("c B C", k);
    double r2 = std::max(
        ridge_map_defect(gens, gcBC, conj("c B C", k), conj("C", k - 1),
                         conj("c B C", k), conj("C B C", k)),
        ridge_map_defect(gens, gcBC, conj("c B C", k), conj("C B C", k),
                         conj("c B C", k), conj("C", k - 1)));
    add("self-pairing-left[" + ks + "]", r2);
    // Self-pairing A^k CBC^-1 A^-k.
    std::string gCBc = conj("C B c", k);
    double r3 = std::max(
        ridge_map_defect(gens, gCBc, conj("C B c", k), conj("C", k),
                         conj("C B c", k), conj("c B c", k)),
        ridge_map_defect(gens, gCBc, conj("C B c", k), conj("c B c", k),
                         conj("C B c", k), conj("C", k)));
    add("self-pairing-right[" + ks + "]", r3);
  }
  return out;
}

std::vector<CheckItem> sample_point_audit(const GeneratorSet& gens) {
  if (gens.n != 2)
    throw UsageError("sample_point_audit: 3x3 generators required");
  std::vector<CheckItem> out;
  auto add = [&](const std::string& name, double res, double tol = 1e-9) {
    out.push_back({name, res < tol, res});
  };

  const double s3 = std::sqrt(3.0), s5 = std::sqrt(5.0), s6 = std::sqrt(6.0),
               s10 = std::sqrt(10.0), s14 = std::sqrt(14.0),
               s15 = std::sqrt(15.0), s210 = std::sqrt(210.0);
  auto pt = [](double x, double y, double t) {
    return HeisenbergPoint::boundary(cplx(x, y), t);
  };
  HeisenbergPoint u[4] = {
      pt(0.25 - s5 / 4, s15 / 4 - s3 / 4, -s15 - 1.5 * s3),
      pt(0.25 + s5 / 4, s15 / 4 + s3 / 4, -s15 + 1.5 * s3),
      pt(-0.2 + s10 / 10, 2 * s15 / 5 + s6 / 10, -1.3 * s15 - 0.2 * s6),
      pt(-0.2 - s10 / 10, 2 * s15 / 5 - s6 / 10, -1.3 * s15 + 0.2 * s6)};
  HeisenbergPoint cbc_u[4] = {
      pt(-0.25 + s5 / 4, -s15 / 4 + s3 / 4, -s15 - 1.5 * s3),
      pt(-0.25 - s5 / 4, -(s15 / 4 + s3 / 4), -s15 + 1.5 * s3),
      pt(0.2 + s10 / 10, -2 * s15 / 5 + s6 / 10, -1.3 * s15 + 0.2 * s6),
      pt(0.2 - s10 / 10, -(2 * s15 / 5 + s6 / 10), -1.3 * s15 - 0.2 * s6)};
  HeisenbergPoint w = pt(s210 / 18 + 1.0 / 3, 2 * s15 / 9 + s14 / 6,
                         -17 * s15 / 18 + 5 * s14 / 9);
  HeisenbergPoint cinv_w = pt(s210 / 54 - 1.0 / 9, -8 * s15 / 27 + s14 / 18,
                              -59 * s15 / 54 - 7 * s14 / 9);
  HeisenbergPoint cbc_w = pt(-s210 / 18 - 1.0 / 3, 4 * s15 / 9 - s14 / 6,
                             -25 * s15 / 18 - 5 * s14 / 9);
  HeisenbergPoint v = pt(s210 / 18 - 1.0 / 3, 4 * s15 / 9 + s14 / 6,
                         -25 * s15 / 18 + 5 * s14 / 9);
  HeisenbergPoint CBC_v = pt(-s210 / 54 - 1.0 / 9, -8 * s15 / 27 - s14 / 18,
                             -59 * s15 / 54 + 7 * s14 / 9);
  HeisenbergPoint cbc_v = pt(-s210 / 18 + 1.0 / 3, 2 * s15 / 9 - s14 / 6,
                             -17 * s15 / 18 - 5 * s14 / 9);

  CMat CBC = eval_word("C B C", gens).m;
  CMat cBC = eval_word("c B C", gens).m;
  CMat Cinv = eval_word("c", gens).m;

  add("involution swaps u1 u2",
      std::max(point_defect(chg::apply(cBC, u[0]), u[1]),
               point_defect(chg::apply(cBC, u[1]), u[0])));
  add("involution swaps u3 u4",
      std::max(point_defect(chg::apply(cBC, u[2]), u[3]),
               point_defect(chg::apply(cBC, u[3]), u[2])));
  {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      worst = std::max(worst, point_defect(chg::apply(CBC, u[i]), cbc_u[i]));
    add("images of u1..u4", worst);
  }

  auto membership_defect = [&](const HeisenbergPoint& p,
                               const std::string& word) {
    CyganSphere s = isometric_sphere(eval_word(word, gens));
    CVec lp = lift(p);
    return std::abs(std::abs(herm_inner(lp, qinf_lift(3), gens.H)) -
                    std::abs(herm_inner(lp, s.pole, gens.H)));
  };
  {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (const char* wd : {"a C A", "C B C", "c B C"})
        worst = std::max(worst, membership_defect(u[i], wd));
    add("u_i lie on their three spheres", worst);
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
      for (const char* wd : {"C", "C B c", "c B c"})
        worst = std::max(worst, membership_defect(cbc_u[i], wd));
    add("images of u_i lie on their three spheres", worst);
  }

  add("first orbit point maps as printed",
      std::max(point_defect(chg::apply(Cinv, w), cinv_w),
               point_defect(chg::apply(cBC, w), cbc_w)));
  add("first orbit closes in three steps",
      point_defect(chg::apply(eval_word("c B C c B c c", gens).m, w), w));
  add("first orbit base on its spheres",
      std::max(membership_defect(w, "c B C"), membership_defect(w, "c")));
  add("second orbit point maps as printed",
      std::max(point_defect(chg::apply(CBC, v), CBC_v),
               point_defect(chg::apply(cBC, v), cbc_v)));
  add("second orbit base on its spheres",
      std::max(membership_defect(v, "c B C"), membership_defect(v, "C B C")));

  // The triple point seen from the three pairwise charts.
  CVec triple(3);
  triple << cplx(17.0 / 16, -13 * s15 / 16), cplx(1.25, -s15 / 4),
      cplx(0.75, s15 / 4);
  const CVec qinf = qinf_lift(3);
  GiraudChart ch12 =
      make_chart(qinf, bwd(gens, "C"), fwd(gens, "C B C"), gens.H);
  GiraudChart ch13 =
      make_chart(qinf, fwd(gens, "C B C"), fwd(gens, "C B c"), gens.H);
  GiraudChart ch14 =
      make_chart(qinf, fwd(gens, "C B c"), bwd(gens, "C"), gens.H);
  {
    double worst = std::max({proj_dist(ch12.V(M_PI, M_PI), triple),
                             proj_dist(ch13.V(M_PI, M_PI), triple),
                             proj_dist(ch14.V(M_PI, M_PI), triple)});
    add("triple point agrees in three charts", worst);
  }

  // u5 sits on the boundary circle of the central disk.
  GiraudChart ch11 = make_chart(qinf, bwd(gens, "C"), fwd(gens, "C"), gens.H);
  {
    CVec V5 = ch11.V(M_PI, M_PI - std::acos(0.25));
    add("corner point on the disk boundary",
        std::abs(herm_inner(V5, V5, gens.H)), 1e-7);
  }

  // Chart coordinates of the u_i in the chart of the pair that carries them.
  GiraudChart chU = make_chart(fwd(gens, "c B C"), bwd(gens, "C B C"), qinf,
                               gens.H);
  const double at26 = std::atan(2 * std::sqrt(6.0));
  const double pi = M_PI;
  {
    double worst =
        std::max({proj_dist(chU.V(2 * pi / 3, 2 * pi / 3), lift(u[0])),
                  proj_dist(chU.V(-2 * pi / 3, -2 * pi / 3), lift(u[1])),
                  proj_dist(chU.V(pi - at26, pi), lift(u[2])),
                  proj_dist(chU.V(pi + at26, pi), lift(u[3]))});
    add("chart coordinates of u_i", worst);
  }
  // w lives on the disk cut by the spheres of C^-1 B C and C^-1.
  GiraudChart chW =
      make_chart(qinf, bwd(gens, "c B C"), fwd(gens, "C"), gens.H);
  add("chart coordinates of first orbit base",
      proj_dist(chW.V(pi - std::acos(5.0 / 9), pi), lift(w)));
  {
    double worst =
        std::max({proj_dist(ch12.V(pi, 2 * pi / 3), lift(cbc_u[1])),
                  proj_dist(ch12.V(pi, 4 * pi / 3), lift(cbc_u[0])),
                  proj_dist(ch12.V(pi - at26, pi), lift(cbc_u[2])),
                  proj_dist(ch12.V(pi + at26, pi), lift(cbc_u[3]))});
    add("chart coordinates of images of u_i", worst);
  }
  {
    double worst =
        std::max({proj_dist(ch13.V(4 * pi / 3, pi), lift(cbc_u[0])),
                  proj_dist(ch13.V(2 * pi / 3, pi), lift(cbc_u[1])),
                  proj_dist(ch13.V(pi + at26, pi + at26), lift(cbc_u[3])),
                  proj_dist(ch13.V(pi - at26, pi - at26), lift(cbc_u[2]))});
    add("second chart coordinates of images of u_i", worst);
  }
  {
    double worst =
        std::max({proj_dist(ch14.V(4 * pi / 3, 4 * pi / 3), lift(cbc_u[0])),
                  proj_dist(ch14.V(2 * pi / 3, 2 * pi / 3), lift(cbc_u[1])),
                  proj_dist(ch14.V(pi, pi + at26), lift(cbc_u[3])),
                  proj_dist(ch14.V(pi, pi - at26), lift(cbc_u[2]))});
    add("third chart coordinates of images of u_i", worst);
  }
  return out;
}

double bc_gap_on_curve(double h) {
  ModuliPoint p{h, 0.0};
  p.t = p.t_max();
  GeneratorSet g = generators(p, 2);
  CyganSphere sB = isometric_sphere(GroupElement{g.B, "B"});
  CyganSphere sC = isometric_sphere(GroupElement{g.C, "C"});
  // How far the small sphere pokes out of the big one: max over the surface
  // of I(B) of the Cygan distance to the center of I(C), minus its radius.
  // Positive while part of I(B) is outside, zero at internal tangency,
  // negative once I(B) is swallowed.
  const cplx zb = sB.center.z(0), zc = sC.center.z(0);
  const double tb = sB.center.t, tc = sC.center.t, rb = sB.radius,
               rc = sC.radius;
  auto dist = [&](double a, double b) {
    cplx z = zb + rb * std::sqrt(std::max(0.0, std::cos(b))) *
                      std::polar(1.0, a);
    double t = tb - 2.0 * std::imag(std::conj(zb) * z) + rb * rb * std::sin(b);
    cplx d = z - zc;
    double u = t - tc + 2.0 * std::imag(std::conj(zc) * z);
    return std::pow(std::norm(d) * std::norm(d) + u * u, 0.25);
  };
  double best = -std::numeric_limits<double>::infinity(), ba = 0.0, bb = 0.0;
  const int NA = 256, NB = 128;
  for (int i = 0; i < NA; ++i)
    for (int j = 0; j <= NB; ++j) {
      double a = kTau * i / NA, b = -M_PI / 2 + M_PI * j / NB;
      double v = dist(a, b);
      if (v > best) {
        best = v;
        ba = a;
        bb = b;
      }
    }
  double step = kTau / NA;
  for (int it = 0; it < 60; ++it) {
    for (int i = -2; i <= 2; ++i)
      for (int j = -2; j <= 2; ++j) {
        double a = ba + i * step, b = bb + j * step;
        if (b < -M_PI / 2 || b > M_PI / 2) continue;
        double v = dist(a, b);
        if (v > best) {
          best = v;
          ba = a;
          bb = b;
        }
      }
    step *= 0.6;
  }
  return best - rc;
}

double tangency_scan(double h_lo, double h_hi, double tol) {
  double flo = bc_gap_on_curve(h_lo), fhi = bc_gap_on_curve(h_hi);
  if ((flo > 0) == (fhi > 0))
    throw UsageError("tangency_scan: no sign change in bracket");
  while (h_hi - h_lo > tol) {
    double mid = 0.5 * (h_lo + h_hi);
    if ((bc_gap_on_curve(mid) > 0) == (flo > 0)) h_lo = mid;
    else h_hi = mid;
  }
  return 0.5 * (h_lo + h_hi);
}

namespace {

std::set<std::pair<std::string, std::string>> overlap_set(
    const std::vector<PairwiseEntry>& table) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : table)
    if (e.rel == SphereRel::overlapping) out.insert({e.w1, e.w2});
  return out;
}

}  // namespace

NeighborhoodReport neighborhood_audit(const ModuliPoint& p, int K) {
  if (!p.in_moduli())
    throw InvalidModuliError("neighborhood_audit: point outside the moduli region");
  if (p.h <= 1.0)
    throw InvalidModuliError("neighborhood_audit: requires h > 1");

  NeighborhoodReport rep;
  rep.p = p;
  auto add = [&](const std::string& name, bool pass, double value) {
    rep.items.push_back({name, pass, value});
  };

  GeneratorSet g = generators(p, 3);
  const CMat id = CMat::Identity(4, 4);

  double fd = 0.0;
  for (int i = 1; i <= 4; ++i)
    fd = std::max(fd, form_defect(g.reflection(i), g.H));
  add("form preservation", fd < 1e-9, fd);

  double rd = 0.0;
  for (const char* rel :
       {"I1 I1", "I2 I2", "I3 I3", "I4 I4", "I1 I3 I1 I3", "I2 I4 I2 I4",
        "I1 I4 I1 I4 I1 I4", "B B", "C C C", "A C A C"})
    rd = std::max(rd, scalar_defect(eval_word(rel, g).m, id));
  add("relations", rd < 1e-9, rd);

  IsometryClass ca = classify(g.A);
  add("translation generator is unipotent",
      ca.kind == Kind::parabolic_unipotent, ca.discriminant);

  WordSet ws = build_word_set(K);
  bool spheres_ok = true;
  double min_corner = std::numeric_limits<double>::infinity();
  std::vector<CyganSphere> spheres;
  try {
    spheres = build_spheres(ws, g);
    for (const auto& s : spheres)
      min_corner = std::min(min_corner, 2.0 / (s.radius * s.radius));
  } catch (const FixesInfinityError&) {
    spheres_ok = false;
  }
  add("all isometric spheres exist", spheres_ok, min_corner);

  if (spheres_ok) {
    ModuliPoint ref{std::sqrt(2.0), std::acos(-7.0 / 8.0)};
    GeneratorSet gref = generators(ref, 3);
    auto mine = overlap_set(pairwise_audit(spheres));
    auto theirs = overlap_set(pairwise_audit(build_spheres(ws, gref)));
    std::vector<std::pair<std::string, std::string>> diff;
    std::set_symmetric_difference(mine.begin(), mine.end(), theirs.begin(),
                                  theirs.end(), std::back_inserter(diff));
    add("overlap pattern matches the reference point", diff.empty(),
        double(diff.size()));
  }

  double cd = coplanar_defect(p);
  add("distinguished boundary points are coplanar", cd < 1e-10, cd);

  RestrictedSlice slice = restricted_slice_chart(p);
  TripleSolution sol = solve_triple(slice.chart, slice.u, slice.v);
  bool has_r = false, has_s = false, has_diff = false;
  double cres = 0.0;
  for (const auto& L : sol.lines) {
    double d = std::abs(std::remainder(L.c - M_PI, kTau));
    if (L.type == SolutionLine::r_const && d < 1e-6) {
      has_r = L.feasible;
      cres = std::max(cres, d);
    }
    if (L.type == SolutionLine::s_const && d < 1e-6) {
      has_s = !L.feasible;  // that branch must miss the disk
      cres = std::max(cres, d);
    }
    if (L.type == SolutionLine::diff_const && d < 1e-6) {
      has_diff = L.feasible;
      cres = std::max(cres, d);
    }
  }
  add("slice line structure", has_r && has_s && has_diff, cres);

  {
    const double h2 = p.h * p.h, c = std::cos(p.t);
    const double base = 4 * h2 * h2 * (c + 1) * (c + 1);
    const double qn_expect =
        base * (8 * h2 * c + 8 * h2 + 1) * (8 * h2 * c + 8 * h2 + 1);
    TorusTrigForm qn = TorusTrigForm::fit([&](double r, double s) {
      return std::norm(
          herm_inner(slice.chart.V(r, s), slice.u, slice.chart.H));
    });
    double worst = 0.0;
    for (int i = 0; i < 8; ++i)
      worst = std::max(worst, std::abs(qn.eval(kTau * i / 8, kTau * (3 * i) / 8) -
                                       qn_expect));
    TorusTrigForm vv = vv_form(slice.chart);
    double vv_expect = -32 * base * (h2 * c + h2 + 0.125);
    worst = std::max(worst, std::abs(vv.eval(M_PI, 0.0) - vv_expect));
    double scale = std::max(1.0, std::abs(qn_expect));
    add("slice closed forms", worst < 1e-9 * scale, worst);
  }

  {
    auto cycles = cycle_audit(g);
    bool ok = true;
    double worst = 0.0;
    for (const auto& c : cycles) {
      ok = ok && c.relation_ok && c.steps_ok;
      worst = std::max(worst, c.residual);
    }
    add("ridge cycles", ok, worst);
  }

  rep.verdict = true;
  for (const auto& it : rep.items) rep.verdict = rep.verdict && it.pass;
  return rep;
}

namespace {

double round15(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

const char* rel_name(SphereRel r) {
  switch (r) {
    case SphereRel::disjoint: return "disjoint";
    case SphereRel::tangent: return "tangent";
    case SphereRel::overlapping: return "overlapping";
  }
  return "?";
}

nlohmann::json pairwise_json(const std::vector<PairwiseEntry>& table) {
  nlohmann::json arr = nlohmann::json::array();
  int disjoint = 0;
  for (const auto& e : table) {
    if (e.rel == SphereRel::disjoint) {
      ++disjoint;
      continue;
    }
    arr.push_back({{"w1", e.w1},
                   {"w2", e.w2},
                   {"relation", rel_name(e.rel)},
                   {"gap", round15(e.gap)}});
  }
  return nlohmann::json{{"entries", arr},
                        {"disjoint_pairs", disjoint},
                        {"total_pairs", table.size()}};
}

nlohmann::json items_json(const std::vector<CheckItem>& items) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& it : items)
    arr.push_back({{"name", it.name},
                   {"pass", it.pass},
                   {"residual", round15(it.residual)}});
  return arr;
}

}  // namespace

nlohmann::json full_report(const ModuliPoint& p, bool full, int K) {
  nlohmann::json rep;
  rep["parameters"] = {{"h", round15(p.h)},
                       {"t", round15(p.t)},
                       {"K", K},
                       {"mode", full ? "full" : "neighborhood"}};
  WordSet ws = build_word_set(K);
  rep["word_set"] = ws.words;
  bool verdict = true;

  if (full) {
    if (!p.is_2d_slice())
      throw InvalidModuliError(
          "full_report: the full suite requires the upper boundary curve");
    GeneratorSet g = generators(p, 2);
    auto spheres = build_spheres(ws, g);
    rep["pairwise"] = pairwise_json(pairwise_audit(spheres));

    nlohmann::json conts = nlohmann::json::array();
    for (const auto& c : containment_audit(g)) {
      conts.push_back({{"disk", {c.disk_a, c.disk_b}},
                       {"container", c.container},
                       {"bound", round15(c.bound)},
                       {"threshold", round15(c.threshold)},
                       {"sample", {round15(c.sample_r), round15(c.sample_s)}},
                       {"certified", c.certified}});
      verdict = verdict && c.certified;
    }
    rep["containments"] = conts;

    nlohmann::json ridges = nlohmann::json::array();
    for (const auto& r : ridge_catalog(ws, g)) {
      ridges.push_back({{"w1", r.w1},
                        {"w2", r.w2},
                        {"class", ridge_class_name(r.cls)},
                        {"components", r.components},
                        {"containing_sphere", r.annotation}});
      verdict = verdict && r.cls != RidgeRecord::unclassified;
    }
    rep["ridges"] = ridges;

    nlohmann::json cyc = nlohmann::json::array();
    for (const auto& c : cycle_audit(g)) {
      cyc.push_back({{"name", c.name},
                     {"relation", c.relation},
                     {"composed_word", c.composed_word},
                     {"relation_ok", c.relation_ok},
                     {"steps_ok", c.steps_ok},
                     {"residual", round15(c.residual)}});
      verdict = verdict && c.relation_ok && c.steps_ok;
    }
    rep["cycles"] = cyc;

    auto samples = sample_point_audit(g);
    rep["sample_points"] = items_json(samples);
    for (const auto& it : samples) verdict = verdict && it.pass;

    auto pairings = side_pairing_audit(g);
    rep["side_pairings"] = items_json(pairings);
    for (const auto& it : pairings) verdict = verdict && it.pass;
  } else {
    NeighborhoodReport nb = neighborhood_audit(p, K);
    GeneratorSet g = generators(p, 3);
    rep["pairwise"] = pairwise_json(pairwise_audit(build_spheres(ws, g)));
    rep["containments"] = nlohmann::json::array();
    rep["ridges"] = nlohmann::json::array();
    nlohmann::json cyc = nlohmann::json::array();
    for (const auto& c : cycle_audit(g))
      cyc.push_back({{"name", c.name},
                     {"relation", c.relation},
                     {"composed_word", c.composed_word},
                     {"relation_ok", c.relation_ok},
                     {"steps_ok", c.steps_ok},
                     {"residual", round15(c.residual)}});
    rep["cycles"] = cyc;
    rep["neighborhood"] = items_json(nb.items);
    verdict = nb.verdict;
  }

  rep["verdict"] = verdict ? "pass" : "fail";
  return rep;
}

}  // namespace chg
