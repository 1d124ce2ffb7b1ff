#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chg/classify.hpp"
#include "chg/group.hpp"

#include <cmath>
#include <random>

using namespace chg;

namespace {

const ModuliPoint kCentral{std::sqrt(2.0), std::acos(-7.0 / 8.0)};

std::mt19937 rng(771);

ModuliPoint random_point() {
  std::uniform_real_distribution<double> uh(0.5, 3.0), uf(0.0, 1.0);
  ModuliPoint p{uh(rng), 0.0};
  p.t = uf(rng) * p.t_max();
  return p;
}

}  // namespace

TEST_CASE("gram determinant matches its closed form") {
  for (int i = 0; i < 200; ++i) {
    ModuliPoint p = random_point();
    CMat G = gram_matrix(p);
    double det = G.determinant().real();
    CHECK(std::abs(det - gram_det_closed_form(p)) < 1e-12);
    CHECK(std::abs(gram_det_closed_form(p) -
                   (-3 * p.h * p.h / 4 - 0.25 - p.h * p.h * std::cos(p.t))) <
          1e-14);
  }
}

TEST_CASE("gram eigenvalues on the degenerate curve") {
  // The curve exists only for h >= 1; below that the form stays definite
  // up to t = pi.
  for (double h : {1.0, std::sqrt(2.0), 1.7, 2.3, 2.9}) {
    ModuliPoint p{h, 0.0};
    p.t = p.t_max();
    Eigen::SelfAdjointEigenSolver<CMat> es(gram_matrix(p));
    Eigen::VectorXd ev = es.eigenvalues();
    double s = std::sqrt(8 * h * h + 1) / 2;
    double expect[4] = {1 - s, 0.0, 2.0, 1 + s};
    std::sort(expect, expect + 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(ev(i) - expect[i]) < 1e-9);
  }
}

TEST_CASE("polar vectors reproduce the gram matrix") {
  for (const ModuliPoint& p : {kCentral, ModuliPoint{1.1, 0.3}, random_point()}) {
    auto n = polar_vectors(p);
    CMat H = standard_form(3);
    CMat G = gram_matrix(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(std::abs(herm_inner(n[i], n[j], H) - G(i, j)) < 1e-12);
  }
  auto n = polar_vectors(kCentral);
  CHECK((n[0] - (CVec(4) << 0, 1, 0, 0).finished()).norm() < 1e-14);
  CHECK((n[1] - (CVec(4) << 1, -1, 0, 0).finished()).norm() < 1e-14);
  CHECK(std::abs(n[2](2)) < 1e-14);  // third entry of n3 vanishes identically
}

TEST_CASE("construction refuses parameters with indefinite normalization") {
  CHECK(!ModuliPoint{1.5, 3.0}.in_moduli());
  CHECK_THROWS_AS(polar_vectors({1.5, 3.0}), InvalidModuliError);
  CHECK_THROWS_AS(generators({1.5, 3.0}, 3), InvalidModuliError);
  // For h < 1 the form keeps signature (3,1) for every t in [0, pi], so a
  // large t is still accepted.
  CHECK(ModuliPoint{0.6, 3.0}.in_moduli());
  // dim 2 exists only on the upper curve.
  CHECK_THROWS_AS(generators({1.4, 0.2}, 2), InvalidModuliError);
}

TEST_CASE("complex reflections square to the identity and match the displayed matrices") {
  GeneratorSet g = generators(kCentral, 3);
  CMat H = standard_form(3);
  auto n = polar_vectors(kCentral);
  for (int i = 0; i < 4; ++i) {
    CMat R = complex_reflection(n[i], M_PI, H);
    CHECK(scalar_defect(CMat(R * R), CMat::Identity(4, 4)) < 1e-12);
    CHECK((R - g.reflection(i + 1)).norm() < 1e-12);
    CHECK(std::abs(R.determinant() - cplx(-1, 0)) < 1e-9);
  }
  CMat I1 = CMat::Identity(4, 4);
  I1(0, 0) = -1; I1(2, 2) = -1; I1(3, 3) = -1;
  CHECK((g.I1 - I1).norm() < 1e-14);
}

TEST_CASE("generator relations hold across the parameter region") {
  for (int trial = 0; trial < 20; ++trial) {
    ModuliPoint p = random_point();
    GeneratorSet g = generators(p, 3);
    CMat id = CMat::Identity(4, 4);
    CHECK(form_defect(g.I1, g.H) < 1e-9);
    CHECK(form_defect(g.I4, g.H) < 1e-9);
    CHECK(form_defect(g.C, g.H) < 1e-9);
    CHECK(scalar_defect(CMat(g.I1 * g.I3 * g.I1 * g.I3), id) < 1e-9);
    CHECK(scalar_defect(CMat(g.I2 * g.I4 * g.I2 * g.I4), id) < 1e-9);
    CMat p14 = g.I1 * g.I4;
    CHECK(scalar_defect(CMat(p14 * p14 * p14), id) < 1e-9);
    CHECK(scalar_defect(CMat(g.B * g.B), id) < 1e-9);
    CHECK(scalar_defect(CMat(g.C * g.C * g.C), id) < 1e-9);
    CMat ac = g.A * g.C;
    CHECK(scalar_defect(CMat(ac * ac), id) < 1e-9);
    CHECK(scalar_defect(g.A, CMat(g.I1 * g.I2)) < 1e-12);
    CHECK(scalar_defect(g.B, CMat(g.I3 * g.I1)) < 1e-12);
    CHECK(scalar_defect(g.C, CMat(g.I4 * g.I1)) < 1e-12);
  }
}

TEST_CASE("the real slice t = 0 gives real matrices") {
  GeneratorSet g = generators({1.7, 0.0}, 3);
  for (const CMat* m : {&g.I1, &g.I2, &g.I3, &g.I4, &g.A, &g.B, &g.C})
    CHECK(m->imag().norm() < 1e-12);
}

TEST_CASE("degenerate 3x3 family matches the displayed reduction") {
  GeneratorSet g = generators(kCentral, 2);
  REQUIRE(g.n == 2);
  CMat I3e(3, 3);
  I3e << 0, 0, 0.25, 0, -1, 0, 4, 0, 0;
  CHECK((g.I3 - I3e).norm() < 1e-12);
  // The deleted row/column of the 4x4 generators really decouples: each 4x4
  // generator fixes the hyperplane polar to (0,0,1,0) on the curve.
  GeneratorSet g4 = generators(kCentral, 3);
  for (const CMat* m : {&g4.I1, &g4.I2, &g4.I3, &g4.I4}) {
    for (int i : {0, 1, 3}) {
      CHECK(std::abs((*m)(i, 2)) < 1e-12);
      CHECK(std::abs((*m)(2, i)) < 1e-12);
    }
  }
  // A fixes the standard lift of the point at infinity exactly.
  CVec qinf(3); qinf << 1, 0, 0;
  CVec img = g.A * qinf;
  CHECK(std::abs(img(1)) + std::abs(img(2)) < 1e-14);
}

TEST_CASE("word grammar: inverses, powers, empty word, parse errors") {
  GeneratorSet g = generators(kCentral, 2);
  CMat id = CMat::Identity(3, 3);
  CHECK((eval_word("", g).m - id).norm() == 0.0);
  CHECK(scalar_defect(eval_word("A C A C", g).m, id) < 1e-9);
  CHECK(scalar_defect(eval_word("C c", g).m, id) < 1e-12);
  CHECK((eval_word("A^-3", g).m - eval_word("a a a", g).m).norm() < 1e-10);
  CHECK((eval_word("A^2 C A^-2", g).m -
         eval_word("A A C a a", g).m).norm() < 1e-10);
  CHECK_THROWS_AS(eval_word("Q", g), UsageError);
  CHECK_THROWS_AS(eval_word("C^x", g), UsageError);
  CHECK(eval_word("C B c", g).word == "C B c");
}
