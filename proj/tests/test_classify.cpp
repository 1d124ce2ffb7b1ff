#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chg/classify.hpp"
#include "chg/group.hpp"

#include <cmath>

using namespace chg;

namespace {
const ModuliPoint kCentral{std::sqrt(2.0), std::acos(-7.0 / 8.0)};
}

TEST_CASE("quartic discriminant vanishes on the unipotent trace") {
  // All eigenvalues 1: trace 3.
  CHECK(std::abs(goldman_g(cplx(3, 0))) < 1e-12);
  // Cube-root symmetry of the trace lift.
  cplx z(1.3, -0.8);
  cplx w = std::polar(1.0, 2 * M_PI / 3);
  CHECK(std::abs(goldman_g(z) - goldman_g(w * z)) < 1e-9);
  CHECK(std::abs(goldman_g(z) - goldman_g(w * w * z)) < 1e-9);
}

TEST_CASE("sextic discriminant vanishes on repeated eigenvalues") {
  // Identity in the 4x4 group: tau = 4, sigma = 6.
  CHECK(std::abs(holy_grail_h(cplx(4, 0), 6.0)) < 1e-9);
  // Any diagonal matrix with a repeated unit eigenvalue.
  CMat D = CMat::Zero(4, 4);
  cplx a = std::polar(1.0, 0.9), b = std::polar(1.0, -1.7);
  D(0, 0) = a; D(1, 1) = a; D(2, 2) = b;
  D(3, 3) = 1.0 / (a * a * b);
  TraceInvariants inv = trace_invariants(D);
  CHECK(std::abs(holy_grail_h(inv.tau, inv.sigma)) < 1e-9);
}

TEST_CASE("su_normalize lands on determinant one") {
  GeneratorSet g = generators(kCentral, 3);
  for (const CMat* m : {&g.I1, &g.A, &g.B, &g.C}) {
    CMat N = su_normalize(*m);
    CHECK(std::abs(N.determinant() - cplx(1, 0)) < 1e-9);
    // Normalization only rescales.
    CHECK(scalar_defect(CMat(N / N(0, 0) * (*m)(0, 0)), *m) < 1e-8);
  }
  CHECK((su_normalize(CMat::Identity(4, 4)) - CMat::Identity(4, 4)).norm() <
        1e-12);
}

TEST_CASE("discriminant is invariant under fourth-root-of-unity rescaling") {
  GeneratorSet g = generators(kCentral, 3);
  CMat M = su_normalize(eval_word("C B C a", g).m);
  TraceInvariants base = trace_invariants(M);
  double href = holy_grail_h(base.tau, base.sigma);
  for (int k = 1; k < 4; ++k) {
    CMat Mk = std::polar(1.0, k * M_PI / 2) * M;
    TraceInvariants ik = trace_invariants(Mk);
    CHECK(std::abs(holy_grail_h(ik.tau, ik.sigma) - href) < 1e-8 * (1 + std::abs(href)));
  }
}

TEST_CASE("the parabolic translation and the involutions classify correctly") {
  for (int dim : {2, 3}) {
    GeneratorSet g = generators(kCentral, dim);
    CHECK(classify(su_normalize(g.A)).kind == Kind::parabolic_unipotent);
    IsometryClass b = classify(su_normalize(g.B));
    CHECK((b.kind == Kind::special_elliptic || b.kind == Kind::regular_elliptic));
    // B has order two: its square is a scalar.
    CHECK(scalar_defect(CMat(g.B * g.B), CMat::Identity(dim + 1, dim + 1)) <
          1e-9);
  }
}

TEST_CASE("classification agrees with eigenvalue moduli off the boundary") {
  GeneratorSet g = generators({1.8, 0.4}, 3);
  for (const char* w : {"C B C", "A C", "C", "B C B c", "A^2 C B C A^-2 C"}) {
    IsometryClass cl = classify(su_normalize(eval_word(w, g).m));
    if (cl.kind == Kind::boundary_undetermined) continue;
    double max_abs = 0;
    for (auto& e : cl.eigenvalues) max_abs = std::max(max_abs, std::abs(e));
    bool off_circle = max_abs > 1 + 1e-6;
    if (cl.kind == Kind::loxodromic) CHECK(off_circle);
    if (cl.kind == Kind::regular_elliptic) CHECK(!off_circle);
  }
}

TEST_CASE("an accidental elliptic word of order six at the pink point") {
  GeneratorSet g = generators({0.5, 2 * M_PI / 3}, 3);
  CMat W = su_normalize(eval_word("I1 I4 I1 I2 I1 I4 I3", g).m);
  IsometryClass cl = classify(W);
  CHECK(cl.kind == Kind::regular_elliptic);
  CMat P = CMat::Identity(4, 4);
  for (int k = 1; k <= 6; ++k) {
    P = CMat(P * W);
    bool is_id = scalar_defect(P, CMat::Identity(4, 4)) < 1e-8;
    CHECK(is_id == (k == 6));
  }
}
