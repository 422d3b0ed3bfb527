#include "meanlab/gallery.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace meanlab {

namespace {

Eigen::ArrayXd arr(std::initializer_list<double> values) {
  Eigen::ArrayXd out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out(i++) = v;
  return out;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = lo + (hi - lo) * k / (n - 1);
  return out;
}

// Sample of (0, inf) covering the breakpoints of the piecewise examples.
const std::vector<double>& default_domain_sample() {
  static const std::vector<double> sample{0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0};
  return sample;
}

// (1-2y) a1 + 2y a2 on [0,1/2], (2-2y) a2 + (2y-1) a3 on (1/2,1].
double two_piece(double y, double a1, double a2, double a3) {
  if (y <= 0.5) return (1.0 - 2.0 * y) * a1 + 2.0 * y * a2;
  return (2.0 - 2.0 * y) * a2 + (2.0 * y - 1.0) * a3;
}

bool in_interval(double t, double lo, double hi) { return t > lo && t <= hi; }

SpacePtr grid_space(const std::vector<double>& pts) {
  std::vector<std::string> labels;
  labels.reserve(pts.size());
  for (double v : pts) labels.push_back(fmt_label(v));
  return make_space(std::move(labels));
}

// All 2^n - 1 indicator-like members: peak value 1 on K, 0.5 off K.
FunctionFamily rich_indicator_family(const SpacePtr& space) {
  const int n = space->size();
  if (n > 10) throw Error("rich family would have 2^" + std::to_string(n) + " members");
  FunctionFamily fam(space);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Eigen::ArrayXd vals(n);
    for (int i = 0; i < n; ++i) vals(i) = (mask & (1u << i)) ? 1.0 : 0.5;
    fam.add("K" + std::to_string(mask), std::move(vals));
  }
  return fam;
}

MeanClaim preserved_claim(MeanKind kind, int max_multiset, double tol) {
  MeanClaim c;
  c.kind = kind;
  c.max_multiset = max_multiset;
  c.preserved = true;
  c.tol = tol;
  return c;
}

MeanClaim violated_claim(MeanKind kind, int max_multiset, double tol,
                         std::vector<std::string> witness, double lhs, double rhs,
                         bool exact, double witness_tol) {
  MeanClaim c;
  c.kind = kind;
  c.max_multiset = max_multiset;
  c.preserved = false;
  c.tol = tol;
  c.witness_multiset = std::move(witness);
  c.witness_lhs = lhs;
  c.witness_rhs = rhs;
  c.exact_witness = exact;
  c.witness_tol = witness_tol;
  return c;
}

GalleryInstance make_supp_not_psupp() {
  auto x_space = make_space({"1", "2"});
  auto y_space = make_space({"1", "2", "3"});
  FunctionFamily fam(x_space);
  fam.add("f1", arr({1.0, 0.5}));
  fam.add("f2", arr({0.5, 1.0}));
  fam.add("f3", arr({1.0, 1.0}));
  PreserverMap map(std::move(fam), y_space);
  for (const auto& f : map.domain.members) {
    map.add_image(arr({f.values(0), f.values(1), (4.0 * f.values(0) - 1.0) / 3.0}));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::arithmetic(), 3, 1e-12),
              preserved_claim(MeanKind::geometric(), 3, 1e-12),
              preserved_claim(MeanKind::harmonic(), 3, 1e-12)};
  e.reconstructible = true;
  e.supp_tol = 1e-12;
  e.y0 = {"1", "2"};
  e.tau = {{"1", "1"}, {"2", "2"}};
  e.psupp_table = {{"1", {"1", "3"}}, {"2", {"2"}}};
  e.supp_table = {{"1", {"1"}}, {"2", {"2"}}};
  e.image_rich = false;
  return GalleryInstance{"supp_not_psupp", std::move(map), std::move(e)};
}

GalleryInstance make_2notn(int grid_size) {
  auto x_space = make_space({"x0"});
  FunctionFamily fam(x_space);
  for (double t : {1.0, 2.0, 3.0}) fam.add(fmt_label(t), arr({t}));
  const std::vector<double> grid = uniform_grid(0.0, 1.0, grid_size);
  PreserverMap map(std::move(fam), grid_space(grid));
  for (const auto& f : map.domain.members) {
    const double t = f.values(0);
    const double p1 = in_interval(t, 0.0, 1.0) ? t / 2.0 : t;
    const double p2 = in_interval(t, 1.0, 2.0) ? t / 2.0 : t;
    const double p3 = t > 2.0 ? t / 2.0 : t;
    Eigen::ArrayXd img(grid_size);
    for (int k = 0; k < grid_size; ++k) img(k) = two_piece(grid[k], p1, p2, p3);
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::arithmetic(), 2, 1e-9),
              violated_claim(MeanKind::arithmetic(), 3, 1e-9, {"1", "2", "3"},
                             5.5, 6.0, /*exact=*/true, 0.0)};
  e.reconstructible = false;
  return GalleryInstance{"2notn", std::move(map), std::move(e)};
}

GalleryInstance make_not_full(int grid_size) {
  auto x_space = make_space({"x0"});
  FunctionFamily fam(x_space);
  for (double t : default_domain_sample()) fam.add(fmt_label(t), arr({t}));
  const std::vector<double> grid = uniform_grid(0.0, 1.0, grid_size);
  PreserverMap map(std::move(fam), grid_space(grid));
  for (const auto& f : map.domain.members) {
    const double t = f.values(0);
    Eigen::ArrayXd img(grid_size);
    for (int k = 0; k < grid_size; ++k) img(k) = t <= 1.0 ? t * (1.0 - grid[k] / 2.0) : t;
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::arithmetic(), 4, 1e-9)};
  e.reconstructible = true;
  e.supp_tol = 1e-12;
  e.y0 = {fmt_label(0.0)};
  e.tau = {{fmt_label(0.0), "x0"}};
  e.image_rich = false;
  e.nonextend_members = {{"2", "1"}};
  e.nonextend_lower = 1.5;
  return GalleryInstance{"not_full", std::move(map), std::move(e)};
}

GalleryInstance make_am_y0_not_closed(int grid_size) {
  std::vector<double> sample(grid_size);
  for (int k = 0; k < grid_size; ++k) sample[k] = 0.5 * k;
  auto x_space = grid_space(sample);
  FunctionFamily fam = rich_indicator_family(x_space);

  std::vector<double> y_points;
  for (int k = grid_size - 1; k >= 1; --k) y_points.push_back(-sample[k]);
  for (int k = 0; k < grid_size; ++k) y_points.push_back(sample[k]);
  auto y_space = grid_space(y_points);

  PreserverMap map(std::move(fam), y_space);
  for (const auto& f : map.domain.members) {
    Eigen::ArrayXd img(static_cast<Eigen::Index>(y_points.size()));
    for (std::size_t k = 0; k < y_points.size(); ++k) {
      const double y = y_points[k];
      const int xi = static_cast<int>(std::lround(std::abs(y) / 0.5));
      img(static_cast<Eigen::Index>(k)) =
          y >= 0.0 ? f.values(xi) : std::exp(y) * f.values(xi);
    }
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::arithmetic(), 3, 1e-9),
              preserved_claim(MeanKind::geometric(), 3, 1e-9)};
  e.reconstructible = true;
  e.supp_tol = 1e-9;
  for (int k = 0; k < grid_size; ++k) {
    e.y0.push_back(fmt_label(sample[k]));
    e.tau.emplace_back(fmt_label(sample[k]), fmt_label(sample[k]));
  }
  e.image_rich = false;
  return GalleryInstance{"am_y0_not_closed", std::move(map), std::move(e)};
}

GalleryInstance make_gm_not_co(int grid_size) {
  auto x_space = make_space({"x0"});
  FunctionFamily fam(x_space);
  for (double t : default_domain_sample()) fam.add(fmt_label(t), arr({t}));
  const std::vector<double> grid = uniform_grid(0.0, 1.0, grid_size);
  PreserverMap map(std::move(fam), grid_space(grid));
  for (const auto& f : map.domain.members) {
    const double t = f.values(0);
    Eigen::ArrayXd img(grid_size);
    if (t <= 1.0) {
      img.setConstant(t);
    } else {
      const double l = std::log(t);
      const double p1 = in_interval(t, 1.0, 2.0) ? l / 2.0 : l;
      const double p2 = in_interval(t, 2.0, 3.0) ? l / 2.0 : l;
      const double p3 = t > 3.0 ? l / 2.0 : l;
      for (int k = 0; k < grid_size; ++k) img(k) = std::exp(two_piece(grid[k], p1, p2, p3));
    }
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::geometric(), 2, 1e-9),
              violated_claim(MeanKind::geometric(), 3, 1e-9, {"1.5", "2.5", "4"},
                             15.0 / std::sqrt(1.5), 15.0, /*exact=*/false, 1e-6)};
  e.reconstructible = false;
  return GalleryInstance{"gm_not_co", std::move(map), std::move(e)};
}

GalleryInstance make_hm_not_co(int grid_size) {
  auto x_space = make_space({"x0"});
  FunctionFamily fam(x_space);
  for (double t : default_domain_sample()) fam.add(fmt_label(t), arr({t}));
  const std::vector<double> grid = uniform_grid(0.0, 1.0, grid_size);
  PreserverMap map(std::move(fam), grid_space(grid));
  for (const auto& f : map.domain.members) {
    const double s = 1.0 / f.values(0);
    const double p1 = in_interval(s, 0.0, 1.0) ? 2.0 * s : s;
    const double p2 = in_interval(s, 1.0, 2.0) ? 2.0 * s : s;
    const double p3 = s > 2.0 ? 2.0 * s : s;
    Eigen::ArrayXd img(grid_size);
    for (int k = 0; k < grid_size; ++k) img(k) = 1.0 / two_piece(grid[k], p1, p2, p3);
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::harmonic(), 2, 1e-9),
              violated_claim(MeanKind::harmonic(), 3, 1e-9, {"0.25", "0.5", "1"},
                             0.125, 1.0 / 7.0, /*exact=*/false, 1e-12)};
  e.reconstructible = false;
  return GalleryInstance{"hm_not_co", std::move(map), std::move(e)};
}

GalleryInstance make_hm_nco(int grid_size) {
  const std::vector<double> x_pts = uniform_grid(0.0, 1.0, grid_size);
  auto x_space = grid_space(x_pts);
  FunctionFamily fam = rich_indicator_family(x_space);

  std::vector<double> y_pts;
  for (double x : x_pts) y_pts.push_back(x / 2.0);
  const std::vector<double> tail = uniform_grid(1.25, 1.5, grid_size);
  y_pts.insert(y_pts.end(), tail.begin(), tail.end());
  auto y_space = grid_space(y_pts);

  PreserverMap map(std::move(fam), y_space);
  for (const auto& f : map.domain.members) {
    Eigen::ArrayXd img(static_cast<Eigen::Index>(y_pts.size()));
    for (int k = 0; k < grid_size; ++k) img(k) = f.values(k);  // y = x/2
    for (int k = 0; k < grid_size; ++k) {
      img(grid_size + k) = (2.0 * tail[k] - 2.0) * f.values(0);
    }
    map.add_image(std::move(img));
  }

  GalleryExpectation e;
  e.claims = {preserved_claim(MeanKind::harmonic(), 3, 1e-12)};
  e.reconstructible = true;
  e.supp_tol = 1e-12;
  for (double x : x_pts) {
    e.y0.push_back(fmt_label(x / 2.0));
    e.tau.emplace_back(fmt_label(x / 2.0), fmt_label(x));
  }
  // The right endpoint of the second piece carries weight 2y - 2 = 1, so it
  // reproduces f(0) for every member and lands in supp(0).
  e.y0.push_back(fmt_label(1.5));
  e.tau.emplace_back(fmt_label(1.5), fmt_label(0.0));
  e.image_rich = false;
  return GalleryInstance{"hm_nco", std::move(map), std::move(e)};
}

int default_grid(const std::string& id) {
  if (id == "2notn" || id == "gm_not_co" || id == "hm_not_co") return 101;
  if (id == "not_full") return 11;
  if (id == "am_y0_not_closed" || id == "hm_nco") return 5;
  return 0;
}

}  // namespace

std::string fmt_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::string> gallery_ids() {
  return {"supp_not_psupp", "2notn",     "not_full", "am_y0_not_closed",
          "gm_not_co",      "hm_not_co", "hm_nco"};
}

GalleryInstance gallery(const std::string& id, int grid_size) {
  const auto ids = gallery_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
    throw UnknownExampleError("unknown gallery example '" + id + "'");
  }
  if (grid_size == 0) grid_size = default_grid(id);
  if (id != "supp_not_psupp" && grid_size < 3) {
    throw Error("gallery '" + id + "' needs grid_size >= 3");
  }
  if (id == "supp_not_psupp") return make_supp_not_psupp();
  if (id == "2notn") return make_2notn(grid_size);
  if (id == "not_full") return make_not_full(grid_size);
  if (id == "am_y0_not_closed") return make_am_y0_not_closed(grid_size);
  if (id == "gm_not_co") return make_gm_not_co(grid_size);
  if (id == "hm_not_co") return make_hm_not_co(grid_size);
  if (id == "hm_nco") return make_hm_nco(grid_size);
  throw UnknownExampleError("unknown gallery example '" + id + "'");
}

}  // namespace meanlab
