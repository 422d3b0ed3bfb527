#include <doctest.h>

#include "meanlab/json_io.hpp"
#include "meanlab/suites.hpp"

using namespace meanlab;

TEST_CASE("every gallery expectation holds") {
  for (const std::string& id : gallery_ids()) {
    const GalleryInstance g = gallery(id);
    for (const CheckRecord& r : verify_gallery(g)) {
      INFO(r.name, ": ", r.detail);
      CHECK(r.status == "pass");
    }
  }
}

TEST_CASE("norm-additive map violates the triple sum") {
  const GalleryInstance g = gallery("2notn");
  // T1 starts at 1/2, climbs to 1 at y = 1/2, stays 1; T2 dips to 1 at the
  // midpoint; T3 falls to 3/2 at y = 1.
  const Eigen::ArrayXd& t1 = g.map.images[0].values;
  const Eigen::ArrayXd& t2 = g.map.images[1].values;
  const Eigen::ArrayXd& t3 = g.map.images[2].values;
  const int last = static_cast<int>(t1.size()) - 1;
  CHECK(t1(0) == 0.5);
  CHECK(t1(last) == doctest::Approx(1.0));
  CHECK(t2(0) == 2.0);
  CHECK(t2(last) == doctest::Approx(2.0));
  CHECK(t3(0) == 3.0);
  CHECK(t3(last) == doctest::Approx(1.5));
  // The sum is 11/2 - y, so its norm is exactly 11/2 while ||1+2+3|| = 6.
  CHECK((t1 + t2 + t3).maxCoeff() == 5.5);

  const PreservationReport r = check_mean_preservation(g.map, MeanKind::arithmetic(), 3, 1e-9);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].members == std::vector<int>{0, 1, 2});
  CHECK(r.violations[0].lhs == 5.5);
  CHECK(r.violations[0].rhs == 6.0);
}

TEST_CASE("non-extendability witness of the good-part example") {
  const GalleryInstance g = gallery("not_full");
  const int i2 = g.map.domain.index_of("2");
  const int i1 = g.map.domain.index_of("1");
  const double diff = (g.map.images[i2].values - g.map.images[i1].values).abs().maxCoeff();
  CHECK(diff == doctest::Approx(1.5));
  CHECK(diff >= 1.5);
}

TEST_CASE("hm_nco keeps the unit-weight endpoint in the good part") {
  const GalleryInstance g = gallery("hm_nco");
  const ReconstructionResult r = reconstruct(g.map, 1e-12);
  bool found = false;
  for (std::size_t k = 0; k < r.y0.size(); ++k) {
    if (g.map.target->points[r.y0[k]] == "1.5") {
      found = true;
      CHECK(g.map.domain.space->points[r.tau[k]] == "0");
    }
  }
  CHECK(found);
}

TEST_CASE("gallery rejects bad arguments") {
  CHECK_THROWS_AS(gallery("nonsense"), UnknownExampleError);
  CHECK_THROWS_AS(gallery("2notn", 2), Error);
}

TEST_CASE("instance JSON round trip preserves verdicts") {
  const GalleryInstance g = gallery("supp_not_psupp");
  const PreserverMap back = instance_from_json(instance_to_json(g.map));
  CHECK(back.domain.names == g.map.domain.names);
  CHECK(back.domain.strict_flag);
  for (const MeanKind kind :
       {MeanKind::arithmetic(), MeanKind::geometric(), MeanKind::harmonic()}) {
    CHECK(check_mean_preservation(back, kind, 3, 1e-12).preserved());
  }
  const ReconstructionResult r = reconstruct(back, 1e-12);
  CHECK(r.y0 == PointSet{0, 1});
  CHECK(r.residual == 0.0);
}
