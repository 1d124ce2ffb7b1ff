#pragma once

// Ford-domain audits: the word set, pairwise sphere relations, disk
// containment certificates, the ridge catalog, sample-point identities,
// ridge cycles, side pairings, the two-parameter neighborhood audit, and
// the JSON verification report.

#include "chg/giraud.hpp"
#include "chg/group.hpp"
#include "chg/heisenberg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace chg {

struct WordSet {
  int K = 5;
  std::vector<std::string> words;
};

// The five conjugate families A^k {C, C^-1 B C, C B C^-1, C B C, C^-1 B C^-1}
// A^-k for |k| <= K. The sphere of C^-1 coincides with the sphere of A^-1 C A,
// so inverses add nothing and the set has exactly 5(2K+1) distinct spheres.
WordSet build_word_set(int K = 5);

// "A^k <core> A^-k" in the word grammar; plain core when k = 0.
std::string conjugated_word(const std::string& core, long k);

std::vector<CyganSphere> build_spheres(const WordSet& ws,
                                       const GeneratorSet& gens);

struct PairwiseEntry {
  std::string w1, w2;
  SphereRel rel;
  double gap;
};

// Every unordered pair of spheres, in word-set order.
std::vector<PairwiseEntry> pairwise_audit(const std::vector<CyganSphere>& sph,
                                          double tol = 1e-7);

struct ContainmentCertificate {
  std::string disk_a, disk_b;  // the pair cutting the Giraud disk
  std::string container;       // sphere the disk must stay clear of / inside
  double bound = 0.0;          // certified upper bound on the audit form
  double threshold = 0.0;      // must satisfy bound < threshold strictly
  double sample_r = 0.0, sample_s = 0.0;  // feasible point achieving best_value
  double sample_value = 0.0;
  bool certified = false;
};

// The three disk certificates backing the triple-intersection emptiness
// claims at the 3x3 point: I(C) cap I(CBC) inside I(A^-1 C A); I(C) cap
// I(A CBC^-1 A^-1) inside the corresponding k=-1 sphere; the central Giraud
// disk exterior to I(CBC).
std::vector<ContainmentCertificate> containment_audit(const GeneratorSet& gens);

struct RidgeRecord {
  std::string w1, w2;
  enum Class {
    empty_ridge,    // disk swallowed by another sphere
    giraud_disk,    // full disk survives
    partial_disk,   // one surviving component, proper subset of the disk
    two_sectors,    // survivor set splits into two components
    tangent_point,  // spheres tangent
    unclassified
  } cls = unclassified;
  int components = 0;      // connected survivor components on the torus grid
  std::string annotation;  // containing sphere for empty ridges
};

const char* ridge_class_name(RidgeRecord::Class c);

// Classifies every non-disjoint pair: samples the Giraud disk on a torus
// grid and removes points interior to any other sphere of the set.
std::vector<RidgeRecord> ridge_catalog(const WordSet& ws,
                                       const GeneratorSet& gens,
                                       int grid = 128);

struct CheckItem {
  std::string name;
  bool pass = false;
  double residual = 0.0;
};

// Verifies the distinguished boundary points: the four u_i with their
// involution and their images, the two length-3 orbits (w and v), the
// triple point seen identically from three charts, and the chart
// coordinates of u_5 and w. 3x3 generators only.
std::vector<CheckItem> sample_point_audit(const GeneratorSet& gens);

struct CycleRecord {
  std::string name;
  std::string composed_word;  // product of the pairing maps, in order
  std::string relation;       // the group relation it certifies
  bool relation_ok = false;   // composed word ~ identity
  bool steps_ok = false;      // each pairing maps ridge triple to ridge triple
  double residual = 0.0;
};

// The six ridge circles, each checked on the matrix level and through the
// triple-of-lifts criterion step by step. Works for 3x3 and 4x4 generators.
std::vector<CycleRecord> cycle_audit(const GeneratorSet& gens);

// The ridge-to-ridge correspondences of the four side-pairing statements,
// for |k| <= k_range, all via the triple-of-lifts criterion.
std::vector<CheckItem> side_pairing_audit(const GeneratorSet& gens,
                                          int k_range = 2);

struct NeighborhoodReport {
  ModuliPoint p;
  std::vector<CheckItem> items;
  bool verdict = false;
};

// The 4x4 audit at a general (h, t) with h > 1: form preservation and
// relations, sphere existence, the pairwise overlap pattern against the
// reference point, the coplanarity defect, the restricted-slice line
// structure {r = pi (feasible), s = pi (infeasible), r - s = pi}, and the
// slice closed forms.
NeighborhoodReport neighborhood_audit(const ModuliPoint& p, int K = 5);

// Root of gap(I(B), I(C)) along the upper boundary curve t = t_max(h),
// located by bisection. Throws UsageError if the bracket has no sign change.
double tangency_scan(double h_lo = 1.1, double h_hi = 1.6, double tol = 1e-6);

// Signed protrusion of I(B) out of I(C) for the 3x3 family on the upper
// boundary curve: positive while part of I(B) is outside, zero at internal
// tangency, negative once I(B) is swallowed.
double bc_gap_on_curve(double h);

// Full JSON verification report. full = true additionally runs the 3x3
// suite (containments, ridge catalog, sample points, cycles, side
// pairings); it requires the point to lie on the upper boundary curve.
// Deterministic: all floats pass through a 15-significant-digit round trip.
nlohmann::json full_report(const ModuliPoint& p, bool full, int K = 5);

}  // namespace chg
