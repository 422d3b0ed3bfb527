#include <doctest.h>

#include "meanlab/means.hpp"

using namespace meanlab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

double entry(const HermitianMatrix& m, int i, int j) { return m.entries(i, j).real(); }

}  // namespace

TEST_CASE("mean kind normalization and parsing") {
  CHECK(MeanKind::power(1.0).tag == MeanKind::Tag::Arithmetic);
  CHECK(MeanKind::power(0.0).tag == MeanKind::Tag::Geometric);
  CHECK(MeanKind::power(-1.0).tag == MeanKind::Tag::Harmonic);
  CHECK(MeanKind::power(2.0).tag == MeanKind::Tag::Power);
  CHECK(MeanKind::parse("harmonic").exponent() == -1.0);
  CHECK(MeanKind::parse("power:0.5").exponent() == 0.5);
  CHECK(MeanKind::parse(MeanKind::power(2.0).name()).exponent() == 2.0);
  CHECK_THROWS_AS(MeanKind::parse("median"), Error);
}

TEST_CASE("arithmetic mean") {
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK(spectral_norm(arithmetic_mean(eye, 3.0 * eye).entries - 2.0 * eye.entries) < 1e-14);
  const HermitianMatrix a = random_psd(3, 4, RandomKind::PositiveDefinite);
  CHECK(spectral_norm(arithmetic_mean(a, a).entries - a.entries) < 1e-14);
  const HermitianMatrix d =
      arithmetic_mean(HermitianMatrix::diagonal(vec({1, 4})), HermitianMatrix::diagonal(vec({9, 1})));
  CHECK(entry(d, 0, 0) == doctest::Approx(5.0));
  CHECK(entry(d, 1, 1) == doctest::Approx(2.5));
}

TEST_CASE("geometric mean") {
  const HermitianMatrix a = random_psd(3, 7, RandomKind::PositiveDefinite);
  CHECK(spectral_norm(geometric_mean(a, a).entries - a.entries) < 1e-9 * (1 + op_norm(a)));

  // Commuting case is the entrywise sqrt(ab).
  const HermitianMatrix d =
      geometric_mean(HermitianMatrix::diagonal(vec({1, 4})), HermitianMatrix::diagonal(vec({9, 1})));
  CHECK(entry(d, 0, 0) == doctest::Approx(3.0));
  CHECK(entry(d, 1, 1) == doctest::Approx(2.0));

  // Riccati identity X A^{-1} X = B is the oracle for the formula.
  const HermitianMatrix b = random_psd(3, 8, RandomKind::PositiveDefinite);
  const HermitianMatrix x = geometric_mean(a, b);
  const CMatrix resid = x.entries * matrix_inverse(a).entries * x.entries - b.entries;
  CHECK(spectral_norm(resid) <= 1e-7 * (1 + op_norm(b)));

  CHECK_THROWS_AS(geometric_mean(HermitianMatrix::diagonal(vec({1, 0, 0})), b),
                  NotPositiveDefiniteError);

  // A singular PSD second argument is accepted; the commuting case is still
  // the entrywise sqrt.
  const HermitianMatrix s =
      geometric_mean(HermitianMatrix::diagonal(vec({1, 4})), HermitianMatrix::diagonal(vec({9, 0})));
  CHECK(entry(s, 0, 0) == doctest::Approx(3.0));
  CHECK(entry(s, 1, 1) == doctest::Approx(0.0));
  CHECK(is_psd(s));
}

TEST_CASE("harmonic mean") {
  const HermitianMatrix a = random_psd(4, 3, RandomKind::PositiveDefinite);
  CHECK(spectral_norm(harmonic_mean(a, a).entries - a.entries) < 1e-9 * (1 + op_norm(a)));

  const HermitianMatrix d =
      harmonic_mean(HermitianMatrix::diagonal(vec({2, 1})), HermitianMatrix::diagonal(vec({2, 4})));
  CHECK(entry(d, 0, 0) == doctest::Approx(2.0));
  CHECK(entry(d, 1, 1) == doctest::Approx(1.6));

  // (I+P)!(I+Q) with complementary rank-1 projections equals (4/3) I.
  const HermitianMatrix p = HermitianMatrix::diagonal(vec({1, 0}));
  const HermitianMatrix q = HermitianMatrix::diagonal(vec({0, 1}));
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const HermitianMatrix h = harmonic_mean(eye + p, eye + q);
  CHECK(entry(h, 0, 0) == doctest::Approx(4.0 / 3.0));
  CHECK(entry(h, 1, 1) == doctest::Approx(4.0 / 3.0));

  CHECK_THROWS_AS(harmonic_mean(HermitianMatrix::diagonal(vec({1, 0})), eye),
                  NotPositiveDefiniteError);
}

TEST_CASE("order witnesses on scalar multiples") {
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK(order_leq_witness(eye, 2.0 * eye));
  CHECK_FALSE(order_leq_witness(2.0 * eye, eye));
  const HermitianMatrix b = random_psd(3, 5, RandomKind::PositiveDefinite);
  CHECK(hm_order_witness(b, b));
  CHECK_FALSE(hm_order_witness(2.0 * HermitianMatrix::identity(2), eye));
}

TEST_CASE("harmonic witness pivot has norm 2/t") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const HermitianMatrix b = random_psd(4, seed, RandomKind::PositiveDefinite);
    const double t = 2.0 / decompose(b).eigenvalues.minCoeff();
    const HermitianMatrix x =
        functional_calculus(b, [t](double v) { return v / (t * v - 1.0); });
    CHECK(std::abs(op_norm(harmonic_mean(b, x)) - 2.0 / t) <= 1e-9 * (1.0 + 2.0 / t));
  }
}

TEST_CASE("max-norm orthogonality check") {
  const HermitianMatrix a = HermitianMatrix::diagonal(vec({1, 0}));
  const HermitianMatrix b = HermitianMatrix::diagonal(vec({0, 1}));
  CHECK(orthogonality_maxnorm_check(a, b, {0.5}));
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK_FALSE(orthogonality_maxnorm_check(eye, eye, {0.5}));
}

TEST_CASE("harmonic orthogonality bound report") {
  const HermitianMatrix u = HermitianMatrix::diagonal(vec({1, 0}));
  const HermitianMatrix v = HermitianMatrix::diagonal(vec({0, 1}));
  const auto r = hm_orthogonality_bound(1.0, u, v);
  CHECK(r.lhs == doctest::Approx(4.0 / 3.0));
  CHECK(r.rhs == doctest::Approx(4.0 / 3.0));
  CHECK(r.satisfied);

  const auto z = hm_orthogonality_bound(1.0, HermitianMatrix::zero(2), HermitianMatrix::zero(2));
  CHECK(z.lhs == doctest::Approx(1.0));
  CHECK(z.rhs == doctest::Approx(1.0));
  CHECK(z.satisfied);

  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const auto w = hm_orthogonality_bound(1.0, eye, eye);
  CHECK(w.lhs == doctest::Approx(2.0));
  CHECK(w.rhs == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(w.satisfied);
}

TEST_CASE("spectral family") {
  const HermitianMatrix x = HermitianMatrix::diagonal(vec({1, 2, 3}));
  const HermitianMatrix e = spectral_family_tilde(x, 1.5);
  CHECK(entry(e, 0, 0) == doctest::Approx(0.0));
  CHECK(entry(e, 1, 1) == doctest::Approx(1.0));
  CHECK(entry(e, 2, 2) == doctest::Approx(1.0));

  // t E <= X E <= X and X(I - E) <= t (I - E).
  const HermitianMatrix xe{CMatrix(x.entries * e.entries)};
  CHECK(loewner_leq(1.5 * e, xe, 1e-9));
  CHECK(loewner_leq(xe, x, 1e-9));
  const HermitianMatrix comp = HermitianMatrix::identity(3) - e;
  const HermitianMatrix xcomp{CMatrix(x.entries * comp.entries)};
  CHECK(loewner_leq(xcomp, 1.5 * comp, 1e-9));

  const HermitianMatrix pd = random_psd(3, 6, RandomKind::PositiveDefinite);
  CHECK(spectral_norm(spectral_family_tilde(pd, 0.0).entries - CMatrix::Identity(3, 3)) <
        kReconTol);
  CHECK(spectral_norm(spectral_family_tilde(pd, op_norm(pd) + 1.0).entries) < kReconTol);
}

TEST_CASE("aw orthogonality check") {
  const HermitianMatrix x = HermitianMatrix::diagonal(vec({1, 0}));
  const HermitianMatrix y = HermitianMatrix::diagonal(vec({0, 1}));
  CHECK(aw_ortho_check(x, y, {0.5}));
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK_FALSE(aw_ortho_check(eye, eye, {0.5}));
}

TEST_CASE("equality witness hand case") {
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  CHECK_FALSE(equality_witness(HermitianMatrix::diagonal(vec({1, 2})),
                               HermitianMatrix::diagonal(vec({1, 2})))
                  .has_value());

  // A = 2I, B = I: T = A^-1 - B^-1 = -I/2, lambda0 = -1/4, E = I, delta = 2,
  // X = 2I <= A but not <= B; the norm gap is 1 >= 0.5 + 0.25.
  const auto w = equality_witness(2.0 * eye, eye);
  REQUIRE(w.has_value());
  CHECK_FALSE(w->swapped);
  CHECK(w->lambda0 == doctest::Approx(-0.25));
  CHECK(w->delta == doctest::Approx(2.0));
  CHECK(spectral_norm(w->projection.entries - eye.entries) < kReconTol);
  CHECK(op_norm(w->violating_x) == doctest::Approx(2.0));
  CHECK(w->side_norms.first == doctest::Approx(0.5));
  CHECK(w->side_norms.second == doctest::Approx(1.0));
  CHECK(loewner_leq(w->violating_x, 2.0 * eye, 1e-8));
  CHECK_FALSE(loewner_leq(w->violating_x, eye, 1e-8));

  // Reversed arguments force the swap.
  const auto ws = equality_witness(eye, 2.0 * eye);
  REQUIRE(ws.has_value());
  CHECK(ws->swapped);
  CHECK(ws->lambda0 == doctest::Approx(-0.25));
}

TEST_CASE("shift conjugation") {
  const HermitianMatrix a = random_psd(3, 12, RandomKind::PositiveSemidefinite);

  const PsdMap ident = [](const HermitianMatrix& m) { return m; };
  const HermitianMatrix same = shift_conjugate(ident, 1.0)(a);
  CHECK(spectral_norm(same.entries - a.entries) < 1e-12 * (1 + op_norm(a)));

  // Unitary conjugation commutes with the shift.
  Eigen::MatrixXd rot(2, 2);
  const double c = std::cos(0.3), s = std::sin(0.3);
  rot << c, -s, s, c;
  const CMatrix u = rot.cast<Complex>();
  const PsdMap conj = [&u](const HermitianMatrix& m) {
    return HermitianMatrix(CMatrix(u * m.entries * u.adjoint()));
  };
  const HermitianMatrix b = HermitianMatrix::diagonal(vec({2, 1}));
  const HermitianMatrix lhs = shift_conjugate(conj, 0.5)(b);
  CHECK(spectral_norm(lhs.entries - conj(b).entries) < 1e-12);

  // A norm- and order-preserving map stays so after the shift.
  const PsdMap shifted = shift_conjugate(conj, 0.25);
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const HermitianMatrix x = random_psd(2, seed, RandomKind::PositiveSemidefinite);
    const HermitianMatrix y = x + random_psd(2, seed + 50, RandomKind::PositiveSemidefinite);
    CHECK(op_norm(shifted(x)) == doctest::Approx(op_norm(x)));
    CHECK(loewner_leq(shifted(x), shifted(y), 1e-8));
  }

  // Squaring is not norm-preserving, and neither is its shift conjugate.
  const PsdMap square = [](const HermitianMatrix& m) {
    return HermitianMatrix(CMatrix(m.entries * m.entries));
  };
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const HermitianMatrix tripled = shift_conjugate(square, 1.0)(eye);
  CHECK(op_norm(tripled) == doctest::Approx(3.0));
  CHECK(op_norm(tripled) != doctest::Approx(op_norm(eye)));
}

TEST_CASE("level grids avoid the spectrum") {
  const HermitianMatrix a = random_psd(4, 21, RandomKind::PositiveSemidefinite);
  const HermitianMatrix b = random_psd(4, 22, RandomKind::PositiveSemidefinite);
  const auto levels = refined_level_grid(a, b);
  REQUIRE(!levels.empty());
  const RVector ea = decompose(a).eigenvalues;
  const RVector eb = decompose(b).eigenvalues;
  for (double level : levels) {
    CHECK(level > 0.0);
    for (int i = 0; i < ea.size(); ++i) CHECK(std::abs(ea(i) - level) > kEigGapTol);
    for (int i = 0; i < eb.size(); ++i) CHECK(std::abs(eb(i) - level) > kEigGapTol);
  }
}
