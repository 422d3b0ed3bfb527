#include "meanlab/cones.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

namespace meanlab {

namespace {

constexpr std::size_t kMultisetCap = 200000;

void check_shared_space(const ConeFunction& a, const ConeFunction& b) {
  if (a.space != b.space && !(*a.space == *b.space)) {
    throw DimensionMismatchError("cone functions live on different spaces");
  }
}

bool is_member_of(const PointSet& set, int x) {
  return std::binary_search(set.begin(), set.end(), x);
}

PointSet intersect(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet all_points(int n) {
  PointSet out(n);
  for (int i = 0; i < n; ++i) out[i] = i;
  return out;
}

// Aggregate combination of transformed member columns, as in the preservation
// hypothesis ||((f_1)^p + ... + (f_n)^p)^{1/p}||. `product` for the geometric
// mean, `use_min` for negative exponents (sup of a decreasing transform).
struct AggregateRule {
  bool product = false;
  bool use_min = false;
  double inv_exponent = 0.0;  // 0: identity; -1: reciprocal; else pow

  double finish(double extremum) const {
    if (inv_exponent == 0.0) return extremum;
    if (inv_exponent == -1.0) return 1.0 / extremum;
    return std::pow(extremum, inv_exponent);
  }
};

AggregateRule aggregate_rule(MeanKind kind) {
  switch (kind.tag) {
    case MeanKind::Tag::Arithmetic: return {false, false, 0.0};
    case MeanKind::Tag::Geometric: return {true, false, 0.0};
    case MeanKind::Tag::Harmonic: return {false, true, -1.0};
    case MeanKind::Tag::Power: break;
  }
  return {false, kind.p < 0.0, 1.0 / kind.p};
}

Eigen::ArrayXd transformed_column(MeanKind kind, const Eigen::ArrayXd& vals) {
  switch (kind.tag) {
    case MeanKind::Tag::Arithmetic:
    case MeanKind::Tag::Geometric: return vals;
    case MeanKind::Tag::Harmonic: return vals.inverse();
    case MeanKind::Tag::Power: break;
  }
  return vals.pow(kind.p);
}

double aggregate_norm(const AggregateRule& rule,
                      const std::vector<const Eigen::ArrayXd*>& columns) {
  Eigen::ArrayXd acc = *columns.front();
  for (std::size_t i = 1; i < columns.size(); ++i) {
    if (rule.product) {
      acc *= *columns[i];
    } else {
      acc += *columns[i];
    }
  }
  const double extremum = rule.use_min ? acc.minCoeff() : acc.maxCoeff();
  return rule.finish(extremum);
}

// Combinations with repetition of {0..m-1}, sizes 1..max_size, lexicographic.
// Returns false when the cap was hit.
template <typename Fn>
bool for_each_multiset(int m, int max_size, std::size_t cap, std::size_t& count, Fn&& fn) {
  for (int size = 1; size <= max_size; ++size) {
    std::vector<int> idx(size, 0);
    while (true) {
      if (count >= cap) return false;
      ++count;
      fn(idx);
      int j = size - 1;
      while (j >= 0 && idx[j] == m - 1) --j;
      if (j < 0) break;
      const int next = idx[j] + 1;
      for (int k = j; k < size; ++k) idx[k] = next;
    }
  }
  return true;
}

std::uint64_t to_mask(const PointSet& set) {
  std::uint64_t mask = 0;
  for (int x : set) mask |= (std::uint64_t{1} << x);
  return mask;
}

PointSet from_mask(std::uint64_t mask, int n) {
  PointSet out;
  for (int i = 0; i < n; ++i)
    if (mask & (std::uint64_t{1} << i)) out.push_back(i);
  return out;
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> pts) : points(std::move(pts)) {
  if (points.empty()) throw Error("finite space must be nonempty");
  std::set<std::string> seen;
  for (const auto& p : points) {
    if (!seen.insert(p).second) throw Error("duplicate point label '" + p + "'");
  }
}

int FiniteSpace::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i)
    if (points[i] == label) return i;
  throw UnknownPointError("unknown point '" + label + "'");
}

SpacePtr make_space(std::vector<std::string> pts) {
  return std::make_shared<const FiniteSpace>(std::move(pts));
}

ConeFunction::ConeFunction(SpacePtr sp, Eigen::ArrayXd vals)
    : space(std::move(sp)), values(std::move(vals)) {
  if (!space) throw Error("cone function needs a space");
  if (values.size() != space->size()) {
    throw DimensionMismatchError("cone function has " + std::to_string(values.size()) +
                                 " values on a space of size " +
                                 std::to_string(space->size()));
  }
  if (values.size() && values.minCoeff() < 0.0) {
    throw Error("cone function values must be nonnegative");
  }
}

void FunctionFamily::add(std::string name, Eigen::ArrayXd vals) {
  for (const auto& n : names)
    if (n == name) throw Error("duplicate family member '" + name + "'");
  ConeFunction f(space, std::move(vals));
  strict_flag = strict_flag && f.strictly_positive();
  names.push_back(std::move(name));
  members.push_back(std::move(f));
}

int FunctionFamily::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names[i] == name) return i;
  throw Error("unknown family member '" + name + "'");
}

void PreserverMap::add_image(Eigen::ArrayXd vals_on_target) {
  images.emplace_back(target, std::move(vals_on_target));
}

bool PreserverMap::images_strictly_positive() const {
  for (const auto& g : images)
    if (!g.strictly_positive()) return false;
  return true;
}

void PreserverMap::validate() const {
  if (static_cast<int>(images.size()) != domain.size()) {
    throw Error("preserver map has " + std::to_string(images.size()) +
                " images for " + std::to_string(domain.size()) + " members");
  }
}

PointSet pk(const ConeFunction& f) {
  const double norm = f.sup_norm();
  if (norm == 0.0) return all_points(f.space->size());
  PointSet out;
  const double cut = norm - kPeakTol * norm;
  for (int i = 0; i < f.values.size(); ++i)
    if (f.values(i) >= cut) out.push_back(i);
  return out;
}

std::vector<int> pkat(const FunctionFamily& fam, int x) {
  if (x < 0 || x >= fam.space->size()) {
    throw UnknownPointError("point index " + std::to_string(x) + " out of range");
  }
  std::vector<int> out;
  for (int i = 0; i < fam.size(); ++i) {
    if (is_member_of(pk(fam.members[i]), x)) out.push_back(i);
  }
  return out;
}

PsuppResult psupp(const PreserverMap& t, int x) {
  t.validate();
  PsuppResult result;
  bool first = true;
  for (int i : pkat(t.domain, x)) {
    if (t.domain.members[i].sup_norm() == 0.0) continue;  // pk(0) is vacuous
    const PointSet peak = pk(t.images[i]);
    result.set = first ? peak : intersect(result.set, peak);
    first = false;
    if (result.set.empty()) return result;
  }
  if (first) {
    result.set = all_points(t.target->size());
    result.empty_pkat = true;
  }
  return result;
}

PointSet supp(const PreserverMap& t, int x, double tol) {
  const PsuppResult ps = psupp(t, x);
  PointSet out;
  for (int y : ps.set) {
    bool ok = true;
    for (int i = 0; i < t.domain.size(); ++i) {
      const double fx = t.domain.members[i].values(x);
      const double bound = tol * (1.0 + t.domain.members[i].sup_norm());
      if (std::abs(t.images[i].values(y) - fx) > bound) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(y);
  }
  return out;
}

ConeFunction n_ary_power_mean(MeanKind kind, const std::vector<ConeFunction>& fs) {
  if (fs.empty()) throw EmptyCollectionError("n_ary_power_mean: empty collection");
  for (std::size_t i = 1; i < fs.size(); ++i) check_shared_space(fs[0], fs[i]);
  const double n = static_cast<double>(fs.size());

  if (kind.p < 0.0) {
    for (const auto& f : fs) {
      if (!f.strictly_positive()) {
        throw NotStrictlyPositiveError("power mean with p < 0 needs strictly positive functions");
      }
    }
  }

  Eigen::ArrayXd out;
  switch (kind.tag) {
    case MeanKind::Tag::Arithmetic: {
      out = fs[0].values;
      for (std::size_t i = 1; i < fs.size(); ++i) out += fs[i].values;
      out /= n;
      break;
    }
    case MeanKind::Tag::Geometric: {
      out = fs[0].values;
      for (std::size_t i = 1; i < fs.size(); ++i) out *= fs[i].values;
      out = out.pow(1.0 / n);
      break;
    }
    case MeanKind::Tag::Harmonic: {
      out = fs[0].values.inverse();
      for (std::size_t i = 1; i < fs.size(); ++i) out += fs[i].values.inverse();
      out = n * out.inverse();
      break;
    }
    case MeanKind::Tag::Power: {
      out = fs[0].values.pow(kind.p);
      for (std::size_t i = 1; i < fs.size(); ++i) out += fs[i].values.pow(kind.p);
      out = (out / n).pow(1.0 / kind.p);
      break;
    }
  }
  return ConeFunction(fs[0].space, std::move(out));
}

RichnessReport check_peak_richness(const FunctionFamily& fam, int subset_cap) {
  RichnessReport report;
  const int n = fam.space->size();
  if (n <= subset_cap && n < 63) {
    report.exhaustive = true;
    std::set<std::uint64_t> peaked;
    for (const auto& f : fam.members) {
      if (f.sup_norm() > 0.0) peaked.insert(to_mask(pk(f)));
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      if (!peaked.count(mask)) {
        if (report.unpeaked.size() < 50) report.unpeaked.push_back(from_mask(mask, n));
        if (report.unpeaked.size() >= 50) break;
      }
    }
    report.rich = report.unpeaked.empty();
    return report;
  }

  // Probe mode: singletons plus level sets of members, the two shapes the
  // reconstruction lemmas actually peak on.
  std::set<std::uint64_t> peaked;
  for (const auto& f : fam.members) {
    if (f.sup_norm() > 0.0) peaked.insert(to_mask(pk(f)));
  }
  std::set<std::uint64_t> wanted;
  for (int x = 0; x < n && x < 63; ++x) wanted.insert(std::uint64_t{1} << x);
  for (const auto& f : fam.members) {
    const double bound = kPeakTol * (1.0 + f.sup_norm());
    for (int x0 = 0; x0 < n && x0 < 63; ++x0) {
      std::uint64_t mask = 0;
      for (int x = 0; x < n && x < 63; ++x) {
        if (std::abs(f.values(x) - f.values(x0)) <= bound) mask |= (std::uint64_t{1} << x);
      }
      wanted.insert(mask);
    }
  }
  for (std::uint64_t mask : wanted) {
    if (!peaked.count(mask) && report.unpeaked.size() < 50) {
      report.unpeaked.push_back(from_mask(mask, std::min(n, 63)));
    }
  }
  report.rich = report.unpeaked.empty();
  return report;
}

PreservationReport check_mean_preservation(const PreserverMap& t, MeanKind kind,
                                           int max_multiset, double tol) {
  t.validate();
  if (max_multiset < 1) throw Error("max_multiset must be >= 1");
  if (kind.negative_exponent()) {
    if (!t.domain.strict_flag || !t.images_strictly_positive()) {
      throw NotStrictlyPositiveError(
          "mean with negative exponent needs a strictly positive family and images");
    }
  }

  PreservationReport report;
  report.kind = kind;
  report.max_multiset = max_multiset;
  report.tol = tol;

  const AggregateRule rule = aggregate_rule(kind);
  const int m = t.domain.size();
  std::vector<Eigen::ArrayXd> dom_cols(m), img_cols(m);
  for (int i = 0; i < m; ++i) {
    dom_cols[i] = transformed_column(kind, t.domain.members[i].values);
    img_cols[i] = transformed_column(kind, t.images[i].values);
  }

  std::vector<const Eigen::ArrayXd*> dom_sel, img_sel;
  const bool complete = for_each_multiset(
      m, max_multiset, kMultisetCap, report.multisets_checked,
      [&](const std::vector<int>& idx) {
        dom_sel.clear();
        img_sel.clear();
        for (int i : idx) {
          dom_sel.push_back(&dom_cols[i]);
          img_sel.push_back(&img_cols[i]);
        }
        const double rhs = aggregate_norm(rule, dom_sel);
        const double lhs = aggregate_norm(rule, img_sel);
        const double gap = std::abs(lhs - rhs);
        if (gap > tol) {
          report.max_violation = std::max(report.max_violation, gap);
          if (report.violations.size() < 100) {
            report.violations.push_back(MultisetViolation{idx, lhs, rhs});
          }
        }
      });
  report.truncated = !complete;
  return report;
}

ReconstructionResult reconstruct(const PreserverMap& t, double supp_tol) {
  t.validate();
  ReconstructionResult result;
  const int ny = t.target->size();
  std::vector<int> owner(ny, -1);
  for (int x = 0; x < t.domain.space->size(); ++x) {
    const PointSet sx = supp(t, x, supp_tol);
    if (sx.empty()) {
      throw NotAPreserverError("supp is empty at point '" + t.domain.space->points[x] + "'");
    }
    for (int y : sx) {
      if (owner[y] != -1) {
        throw DisjointnessViolationError(
            "supp sets of '" + t.domain.space->points[owner[y]] + "' and '" +
            t.domain.space->points[x] + "' overlap at '" + t.target->points[y] + "'");
      }
      owner[y] = x;
    }
  }
  for (int y = 0; y < ny; ++y) {
    if (owner[y] != -1) {
      result.y0.push_back(y);
      result.tau.push_back(owner[y]);
    }
  }
  result.surjective_tau = true;  // every x contributed at least one point
  for (std::size_t k = 0; k < result.y0.size(); ++k) {
    for (int i = 0; i < t.domain.size(); ++i) {
      const double diff = std::abs(t.images[i].values(result.y0[k]) -
                                   t.domain.members[i].values(result.tau[k]));
      result.residual = std::max(result.residual, diff);
    }
  }
  result.injective_t = true;
  for (int i = 0; i < t.domain.size() && result.injective_t; ++i) {
    for (int j = i + 1; j < t.domain.size(); ++j) {
      if ((t.images[i].values - t.images[j].values).abs().maxCoeff() <= 1e-12) {
        result.injective_t = false;
        break;
      }
    }
  }
  return result;
}

HomeomorphismReport check_homeomorphism_case(const PreserverMap& t,
                                             const ReconstructionResult& r,
                                             int subset_cap) {
  HomeomorphismReport report;
  FunctionFamily image_family(t.target);
  for (int i = 0; i < t.domain.size(); ++i) {
    image_family.add(t.domain.names[i], t.images[i].values);
  }
  report.image_richness = check_peak_richness(image_family, subset_cap);
  report.image_rich = report.image_richness.rich;
  report.y0_is_all = static_cast<int>(r.y0.size()) == t.target->size();
  std::set<int> distinct(r.tau.begin(), r.tau.end());
  report.bijective = report.y0_is_all &&
                     distinct.size() == r.tau.size() &&
                     static_cast<int>(r.tau.size()) == t.domain.space->size();
  return report;
}

namespace {

double peak_target(const ConeFunction& g0, const ConeFunction& f, PointSet& peak_out) {
  peak_out = pk(g0);
  double target = 0.0;
  for (int x : peak_out) target = std::max(target, f.values(x));
  return target;
}

}  // namespace

LimitSequence am_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max) {
  check_shared_space(g0, f);
  if (g0.sup_norm() == 0.0) throw ZeroFunctionError("am_limit_sequence: g0 is zero");
  LimitSequence seq;
  PointSet peak;
  seq.target = peak_target(g0, f, peak);
  const double norm = g0.sup_norm();

  seq.predicted_n = 1;
  for (int x = 0; x < g0.values.size(); ++x) {
    if (is_member_of(peak, x)) continue;
    const double excess = f.values(x) - seq.target;
    if (excess > 0.0) {
      // The -1e-9 guard keeps an exactly-integer threshold from rounding up
      // on one ulp of noise.
      const double need = excess / (norm - g0.values(x));
      seq.predicted_n = std::max(seq.predicted_n, static_cast<int>(std::ceil(need - 1e-9)));
    }
  }

  // ||n g0 + f|| - n ||g0|| evaluated as max_x (n (g0(x) - ||g0||) + f(x));
  // the shift is exactly zero on pk(g0), so stabilization is bit-exact.
  for (int n = 1; n <= n_max; ++n) {
    double best = -std::numeric_limits<double>::infinity();
    for (int x = 0; x < g0.values.size(); ++x) {
      best = std::max(best, n * (g0.values(x) - norm) + f.values(x));
    }
    seq.values.push_back(best);
  }
  for (int n = n_max; n >= 1; --n) {
    if (seq.values[n - 1] == seq.target) {
      seq.stabilized_at = n;
    } else {
      break;
    }
  }
  return seq;
}

LimitSequence gm_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max) {
  check_shared_space(g0, f);
  if (g0.sup_norm() == 0.0) throw ZeroFunctionError("gm_limit_sequence: g0 is zero");
  LimitSequence seq;
  PointSet peak;
  seq.target = peak_target(g0, f, peak);
  const double norm = g0.sup_norm();

  // ||g0^n f|| / ||g0||^n via the ratio form (g0(x)/||g0||)^n f(x); the ratio
  // is exactly 1 on pk(g0), so no overflow and no peak-side rounding.
  const Eigen::ArrayXd ratio = g0.values / norm;
  for (int n = 1; n <= n_max; ++n) {
    double best = 0.0;
    for (int x = 0; x < g0.values.size(); ++x) {
      best = std::max(best, std::pow(ratio(x), n) * f.values(x));
    }
    seq.values.push_back(best);
  }
  const double tol = 1e-9 * (1.0 + seq.target);
  for (int n = n_max; n >= 1; --n) {
    if (std::abs(seq.values[n - 1] - seq.target) <= tol) {
      seq.stabilized_at = n;
    } else {
      break;
    }
  }
  return seq;
}

LimitSequence hm_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max) {
  check_shared_space(g0, f);
  if (!g0.strictly_positive() || !f.strictly_positive()) {
    throw NotStrictlyPositiveError("hm_limit_sequence needs strictly positive g0 and f");
  }
  LimitSequence seq;
  PointSet peak;
  seq.target = peak_target(g0, f, peak);
  const double norm = g0.sup_norm();
  const double inv_norm = 1.0 / norm;

  seq.predicted_n = 1;
  for (int x = 0; x < g0.values.size(); ++x) {
    if (is_member_of(peak, x)) continue;
    const double excess = 1.0 / seq.target - 1.0 / f.values(x);
    if (excess > 0.0) {
      const double need = excess / (1.0 / g0.values(x) - inv_norm);
      seq.predicted_n = std::max(seq.predicted_n, static_cast<int>(std::ceil(need - 1e-9)));
    }
  }

  // (||(n g0^-1 + f^-1)^-1||^-1 - n ||g0||^-1)^-1 evaluated through the
  // shifted reciprocal form min_x (n (1/g0(x) - 1/||g0||) + 1/f(x)).
  for (int n = 1; n <= n_max; ++n) {
    double best = std::numeric_limits<double>::infinity();
    for (int x = 0; x < g0.values.size(); ++x) {
      best = std::min(best, n * (1.0 / g0.values(x) - inv_norm) + 1.0 / f.values(x));
    }
    seq.values.push_back(1.0 / best);
  }
  const double tol = 1e-12 * (1.0 + seq.target);
  for (int n = n_max; n >= 1; --n) {
    if (std::abs(seq.values[n - 1] - seq.target) <= tol) {
      seq.stabilized_at = n;
    } else {
      break;
    }
  }
  return seq;
}

PreserverMap power_reduce(const PreserverMap& t, double p) {
  if (p == 0.0) throw Error("power_reduce: p must be nonzero");
  t.validate();
  if (p < 0.0 && (!t.domain.strict_flag || !t.images_strictly_positive())) {
    throw NotStrictlyPositiveError("power_reduce with p < 0 needs strict positivity");
  }
  const double e = std::abs(p);
  if (e == 1.0) return t;
  FunctionFamily family(t.domain.space);
  for (int i = 0; i < t.domain.size(); ++i) {
    family.add(t.domain.names[i], t.domain.members[i].values.pow(e));
  }
  PreserverMap reduced(std::move(family), t.target);
  for (int i = 0; i < t.domain.size(); ++i) {
    reduced.add_image(t.images[i].values.pow(e));
  }
  return reduced;
}

}  // namespace meanlab
