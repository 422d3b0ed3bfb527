#include <doctest.h>

#include "meanlab/gallery.hpp"
#include "meanlab/suites.hpp"

using namespace meanlab;

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> v) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

ConeFunction fn(const SpacePtr& sp, std::initializer_list<double> v) {
  return ConeFunction(sp, arr(v));
}

// Identity composition operator with the full indicator family.
PreserverMap identity_map(int n) {
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  auto space = make_space(labels);
  FunctionFamily fam(space);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Eigen::ArrayXd vals(n);
    for (int i = 0; i < n; ++i) vals(i) = (mask & (1u << i)) ? 1.0 : 0.5;
    fam.add("K" + std::to_string(mask), vals);
  }
  PreserverMap map(std::move(fam), space);
  for (const auto& f : map.domain.members) map.add_image(f.values);
  return map;
}

}  // namespace

TEST_CASE("peak sets") {
  auto sp = make_space({"1", "2"});
  CHECK(pk(fn(sp, {1.0, 0.5})) == PointSet{0});
  CHECK(pk(fn(sp, {2.0, 2.0})) == PointSet{0, 1});
  CHECK(pk(fn(sp, {0.0, 0.0})) == PointSet{0, 1});  // zero function: whole space
  auto sp3 = make_space({"a", "b", "c"});
  CHECK(pk(fn(sp3, {1.0, 1.0, 0.3})) == PointSet{0, 1});
}

TEST_CASE("pkat on the three-member family") {
  const GalleryInstance g = gallery("supp_not_psupp");
  CHECK(pkat(g.map.domain, 0) == std::vector<int>{0, 2});  // f1, f3 peak at 1
  CHECK(pkat(g.map.domain, 1) == std::vector<int>{1, 2});  // f2, f3 peak at 2
  CHECK_THROWS_AS(pkat(g.map.domain, 7), UnknownPointError);

  auto sp = make_space({"1", "2"});
  FunctionFamily constant(sp);
  constant.add("c", arr({1.0, 1.0}));
  CHECK(pkat(constant, 0) == std::vector<int>{0});
}

TEST_CASE("psupp and supp tables") {
  const GalleryInstance g = gallery("supp_not_psupp");
  CHECK(psupp(g.map, 0).set == PointSet{0, 2});
  CHECK(psupp(g.map, 1).set == PointSet{1});
  CHECK(supp(g.map, 0) == PointSet{0});
  CHECK(supp(g.map, 1) == PointSet{1});

  const PreserverMap id = identity_map(3);
  for (int x = 0; x < 3; ++x) {
    CHECK(psupp(id, x).set == PointSet{x});
    CHECK(supp(id, x) == PointSet{x});
  }
}

TEST_CASE("psupp flags an empty PKat") {
  auto x_space = make_space({"a", "b"});
  auto y_space = make_space({"u"});
  FunctionFamily fam(x_space);
  fam.add("f", arr({1.0, 0.5}));  // peaks only at a
  PreserverMap map(std::move(fam), y_space);
  map.add_image(arr({1.0}));
  const PsuppResult r = psupp(map, 1);  // nothing peaks at b
  CHECK(r.empty_pkat);
  CHECK(r.set == PointSet{0});  // convention: all of Y
}

TEST_CASE("n-ary power means") {
  auto sp = make_space({"x"});
  const ConeFunction f = fn(sp, {2.0});
  const ConeFunction g = fn(sp, {4.0});
  const ConeFunction h = fn(sp, {8.0});

  CHECK(n_ary_power_mean(MeanKind::arithmetic(), {f}).values(0) == doctest::Approx(2.0));
  CHECK(n_ary_power_mean(MeanKind::harmonic(), {f, g}).values(0) ==
        doctest::Approx(8.0 / 3.0));
  CHECK(n_ary_power_mean(MeanKind::geometric(), {f, h}).values(0) == doctest::Approx(4.0));

  // Power(+-1) agrees with the named means bit-for-bit.
  auto sp2 = make_space({"a", "b"});
  const ConeFunction u = fn(sp2, {0.3, 1.7});
  const ConeFunction v = fn(sp2, {2.1, 0.9});
  const MeanKind p1{MeanKind::Tag::Power, 1.0};   // bypass normalization
  const MeanKind pm1{MeanKind::Tag::Power, -1.0};
  CHECK((n_ary_power_mean(p1, {u, v}).values ==
         n_ary_power_mean(MeanKind::arithmetic(), {u, v}).values)
            .all());
  const auto hm_direct = n_ary_power_mean(MeanKind::harmonic(), {u, v});
  const auto hm_power = n_ary_power_mean(pm1, {u, v});
  CHECK((hm_direct.values - hm_power.values).abs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(n_ary_power_mean(MeanKind::arithmetic(), {}), EmptyCollectionError);
  CHECK_THROWS_AS(n_ary_power_mean(MeanKind::harmonic(), {fn(sp2, {1.0, 0.0}), u}),
                  NotStrictlyPositiveError);
  // Geometric tolerates zeros.
  CHECK(n_ary_power_mean(MeanKind::geometric(), {fn(sp2, {1.0, 0.0}), u}).values(1) == 0.0);
}

TEST_CASE("peak richness") {
  const GalleryInstance g = gallery("supp_not_psupp");
  const RichnessReport full = check_peak_richness(g.map.domain, 8);
  CHECK(full.exhaustive);
  CHECK(full.rich);

  const RichnessReport probe = check_peak_richness(g.map.domain, 1);
  CHECK_FALSE(probe.exhaustive);
  CHECK(probe.rich);

  auto sp = make_space({"1", "2"});
  FunctionFamily constant(sp);
  constant.add("c", arr({1.0, 1.0}));
  const RichnessReport poor = check_peak_richness(constant, 8);
  CHECK_FALSE(poor.rich);
  CHECK(!poor.unpeaked.empty());

  CHECK(check_peak_richness(identity_map(4).domain, 8).rich);
}

TEST_CASE("mean preservation on the identity map") {
  const PreserverMap id = identity_map(3);
  for (const MeanKind kind : {MeanKind::arithmetic(), MeanKind::geometric(),
                              MeanKind::harmonic(), MeanKind::power(2.0),
                              MeanKind::power(-2.0)}) {
    const PreservationReport r = check_mean_preservation(id, kind, 3, 1e-12);
    CHECK(r.preserved());
  }
}

TEST_CASE("violation detection is exhaustive in the multiset size") {
  const GalleryInstance g = gallery("2notn");
  const std::vector<int> triple{0, 1, 2};
  for (int size = 3; size <= 4; ++size) {
    const PreservationReport r =
        check_mean_preservation(g.map, MeanKind::arithmetic(), size, 1e-9);
    bool found = false;
    for (const auto& v : r.violations) found = found || v.members == triple;
    CHECK(found);
  }
  CHECK(check_mean_preservation(g.map, MeanKind::arithmetic(), 2, 1e-9).preserved());
}

TEST_CASE("multiset cap sets the truncation flag") {
  auto sp = make_space({"x"});
  FunctionFamily fam(sp);
  for (int i = 0; i < 30; ++i) fam.add("m" + std::to_string(i), arr({1.0 + i}));
  PreserverMap map(std::move(fam), sp);
  for (const auto& f : map.domain.members) map.add_image(f.values);
  // C(34,5) multisets up to size 5 exceed the 200000 cap.
  const PreservationReport r = check_mean_preservation(map, MeanKind::arithmetic(), 5);
  CHECK(r.truncated);
  CHECK(r.multisets_checked == 200000);
  CHECK_FALSE(r.preserved());
}

TEST_CASE("reconstruction of the identity map") {
  const PreserverMap id = identity_map(3);
  const ReconstructionResult r = reconstruct(id);
  CHECK(r.y0 == PointSet{0, 1, 2});
  CHECK(r.tau == std::vector<int>{0, 1, 2});
  CHECK(r.residual == 0.0);
  CHECK(r.injective_t);

  const HomeomorphismReport h = check_homeomorphism_case(id, r, 8);
  CHECK(h.image_rich);
  CHECK(h.y0_is_all);
  CHECK(h.bijective);
}

TEST_CASE("reconstruction failure modes") {
  CHECK_THROWS_AS(reconstruct(gallery("2notn").map), NotAPreserverError);

  // A family that cannot separate two points makes supp sets collide.
  auto x_space = make_space({"a", "b"});
  auto y_space = make_space({"u"});
  FunctionFamily fam(x_space);
  fam.add("c", arr({1.0, 1.0}));
  PreserverMap map(std::move(fam), y_space);
  map.add_image(arr({1.0}));
  CHECK_THROWS_AS(reconstruct(map), DisjointnessViolationError);
}

TEST_CASE("arithmetic limit sequence") {
  auto sp = make_space({"1", "2"});
  const ConeFunction g0 = fn(sp, {2.0, 1.0});
  const LimitSequence s = am_limit_sequence(g0, fn(sp, {5.0, 7.0}), 10);
  CHECK(s.target == 5.0);
  CHECK(s.predicted_n == 2);
  CHECK(s.stabilized_at == 2);
  CHECK(s.values[0] == doctest::Approx(6.0));  // max(2n+5, n+7) - 2n at n=1
  for (int n = 2; n <= 10; ++n) CHECK(s.values[n - 1] == 5.0);

  const LimitSequence z = am_limit_sequence(g0, fn(sp, {0.0, 0.0}), 5);
  CHECK(z.target == 0.0);
  for (double v : z.values) CHECK(v == 0.0);

  const LimitSequence c = am_limit_sequence(fn(sp, {3.0, 3.0}), fn(sp, {5.0, 7.0}), 5);
  CHECK(c.target == 7.0);
  CHECK(c.stabilized_at == 1);

  CHECK_THROWS_AS(am_limit_sequence(fn(sp, {0.0, 0.0}), g0, 5), ZeroFunctionError);
}

TEST_CASE("geometric limit sequence") {
  auto sp = make_space({"1", "2"});
  const ConeFunction g0 = fn(sp, {2.0, 1.0});
  const LimitSequence r = gm_limit_sequence(g0, fn(sp, {5.0, 7.0}), 10);
  CHECK(r.target == 5.0);
  CHECK(r.stabilized_at == 1);  // max(5*2^n, 7)/2^n = 5 from n = 1
  for (double v : r.values) CHECK(v == doctest::Approx(5.0));

  // f vanishing on pk(g0): the limit is 0, approached as 7/2^n.
  const LimitSequence zero_case = gm_limit_sequence(g0, fn(sp, {0.0, 7.0}), 40);
  CHECK(zero_case.target == 0.0);
  CHECK(zero_case.values[0] == doctest::Approx(3.5));
  CHECK(zero_case.stabilized_at > 1);
  CHECK(zero_case.values.back() <= 1e-9);

  const LimitSequence c = gm_limit_sequence(fn(sp, {3.0, 3.0}), fn(sp, {5.0, 7.0}), 5);
  CHECK(c.target == 7.0);
  CHECK(c.values[0] == doctest::Approx(7.0));
}

TEST_CASE("harmonic limit sequence") {
  auto sp = make_space({"1", "2"});
  const ConeFunction g0 = fn(sp, {2.0, 1.0});
  const LimitSequence h = hm_limit_sequence(g0, fn(sp, {5.0, 7.0}), 10);
  CHECK(h.target == 5.0);
  CHECK(h.predicted_n == 1);  // the inner min sits at the peak point already
  CHECK(h.stabilized_at == 1);
  for (double v : h.values) CHECK(v == doctest::Approx(5.0));

  const LimitSequence c = hm_limit_sequence(g0, fn(sp, {3.0, 3.0}), 5);
  CHECK(c.target == 3.0);
  for (double v : c.values) CHECK(v == doctest::Approx(3.0));

  CHECK_THROWS_AS(hm_limit_sequence(g0, fn(sp, {1.0, 0.0}), 5), NotStrictlyPositiveError);
}

TEST_CASE("power reduce") {
  const GalleryInstance g = gallery("supp_not_psupp");
  const PreserverMap same = power_reduce(g.map, 1.0);
  CHECK((same.images[0].values == g.map.images[0].values).all());

  // p = -1 is the identity conjugation: the harmonic case reduces to itself.
  const PreserverMap minus = power_reduce(g.map, -1.0);
  CHECK((minus.images[1].values == g.map.images[1].values).all());

  const PreserverMap squared = power_reduce(g.map, 2.0);
  CHECK(squared.domain.members[0].values(1) == doctest::Approx(0.25));
  CHECK(squared.images[1].values(2) == doctest::Approx(1.0 / 9.0));

  CHECK_THROWS_AS(power_reduce(g.map, 0.0), Error);

  // Negative exponents demand strict positivity of family and images.
  auto sp = make_space({"a", "b"});
  FunctionFamily fam(sp);
  fam.add("f", arr({1.0, 0.0}));
  PreserverMap with_zero(std::move(fam), sp);
  with_zero.add_image(arr({1.0, 0.0}));
  CHECK_THROWS_AS(power_reduce(with_zero, -2.0), NotStrictlyPositiveError);
  CHECK_THROWS_AS(check_mean_preservation(with_zero, MeanKind::harmonic(), 2),
                  NotStrictlyPositiveError);
}

TEST_CASE("random preserver generator invariants") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const CompositionInstance inst = random_composition_preserver(mix_seed(7, 0xbeef, s));
    CHECK(check_peak_richness(inst.map.domain, 12).rich);
    CHECK(inst.map.domain.strict_flag);
    CHECK(inst.map.images_strictly_positive());
    const ReconstructionResult r = reconstruct(inst.map, 1e-12);
    CHECK(r.y0 == inst.clean_y);
    CHECK(r.residual == 0.0);
  }
}
