#ifndef MEANLAB_CONES_HPP
#define MEANLAB_CONES_HPP

// Finite commutative model: cone functions on finite discrete spaces,
// peak-set machinery, psupp/supp computation, norm-of-mean preservation
// checks, composition-operator reconstruction and the limit-formula
// sequences. On a finite discrete space every nonempty subset is compact
// and G-delta, so "peaks on compact G-delta sets" means "peaks on subsets".

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "meanlab/means.hpp"

namespace meanlab {

inline constexpr double kPeakTol = 1e-12;  // relative, pk membership
inline constexpr double kSuppTol = 1e-12;  // default supp equality tolerance

struct FiniteSpace {
  std::vector<std::string> points;

  explicit FiniteSpace(std::vector<std::string> pts);
  int size() const { return static_cast<int>(points.size()); }
  int index_of(const std::string& label) const;  // UnknownPointError
  bool operator==(const FiniteSpace& other) const { return points == other.points; }
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;
SpacePtr make_space(std::vector<std::string> pts);

// Element of C(X)+ at finite scale: one nonnegative value per point.
struct ConeFunction {
  SpacePtr space;
  Eigen::ArrayXd values;

  ConeFunction(SpacePtr sp, Eigen::ArrayXd vals);
  double sup_norm() const { return values.size() ? values.maxCoeff() : 0.0; }
  bool strictly_positive() const { return values.size() && values.minCoeff() > 0.0; }
};

// Named finite family F(X) on one space.
struct FunctionFamily {
  SpacePtr space;
  std::vector<std::string> names;
  std::vector<ConeFunction> members;
  bool strict_flag = true;  // all members strictly positive

  explicit FunctionFamily(SpacePtr sp) : space(std::move(sp)) {}
  void add(std::string name, Eigen::ArrayXd vals);
  int size() const { return static_cast<int>(members.size()); }
  int index_of(const std::string& name) const;
};

// The map T under test: one image on Y per family member.
struct PreserverMap {
  FunctionFamily domain;
  SpacePtr target;
  std::vector<ConeFunction> images;

  PreserverMap(FunctionFamily dom, SpacePtr tgt) : domain(std::move(dom)), target(std::move(tgt)) {}
  void add_image(Eigen::ArrayXd vals_on_target);
  bool images_strictly_positive() const;
  void validate() const;  // image count == member count
};

using PointSet = std::vector<int>;  // sorted ascending point indices

// pk(f) = {x : f(x) = ||f||} within kPeakTol * ||f||. pk(0) is the whole
// space by convention.
PointSet pk(const ConeFunction& f);

// Member indices peaking at x.
std::vector<int> pkat(const FunctionFamily& fam, int x);

struct PsuppResult {
  PointSet set;
  bool empty_pkat = false;  // no nonzero member peaks at x; set is all of Y
};

// Intersection of pk(Th) over nonzero h in PKat(x).
PsuppResult psupp(const PreserverMap& t, int x);

// psupp(x) cut down to {y : |Tf(y) - f(x)| <= tol * (1 + ||f||) for all f}.
PointSet supp(const PreserverMap& t, int x, double tol = kSuppTol);

// Pointwise power mean; Arithmetic/Harmonic match Power(+-1) exactly and
// Geometric is the n-th root of the product (zeros allowed).
ConeFunction n_ary_power_mean(MeanKind kind, const std::vector<ConeFunction>& fs);

struct RichnessReport {
  bool rich = false;
  bool exhaustive = false;            // full 2^|X|-1 enumeration vs probe mode
  std::vector<PointSet> unpeaked;     // offending subsets (at most 50 listed)
};

// Exhaustive when |X| <= subset_cap, otherwise probes singletons and the
// level sets of members.
RichnessReport check_peak_richness(const FunctionFamily& fam, int subset_cap);

struct MultisetViolation {
  std::vector<int> members;  // member indices, nondecreasing
  double lhs = 0.0;          // image-side aggregate norm
  double rhs = 0.0;          // domain-side aggregate norm
};

struct PreservationReport {
  MeanKind kind;
  int max_multiset = 0;
  double tol = 0.0;
  std::size_t multisets_checked = 0;
  bool truncated = false;  // hit the 200000-multiset cap
  double max_violation = 0.0;
  std::vector<MultisetViolation> violations;  // first 100

  bool preserved() const { return violations.empty() && !truncated; }
};

// Enumerates every multiset of members of size 1..max_multiset and compares
// the aggregate mean norms (||sum f_i^p||-style, as in the preservation
// hypothesis) on X vs Y within tol.
PreservationReport check_mean_preservation(const PreserverMap& t, MeanKind kind,
                                           int max_multiset, double tol = 1e-10);

struct ReconstructionResult {
  PointSet y0;
  std::vector<int> tau;  // parallel to y0, indices into X
  double residual = 0.0;
  bool surjective_tau = false;
  bool injective_t = false;
};

// Y0 = disjoint union of the supp sets, tau(y) = x for y in supp(x).
// NotAPreserverError when some supp is empty, DisjointnessViolationError when
// two supp sets overlap; both indicate the input is not a preserver.
ReconstructionResult reconstruct(const PreserverMap& t, double supp_tol = kSuppTol);

struct HomeomorphismReport {
  RichnessReport image_richness;
  bool image_rich = false;
  bool y0_is_all = false;
  bool bijective = false;
};

// When the image family is also rich, Y0 must be all of Y and tau a bijection
// (on finite spaces a bijection is a homeomorphism).
HomeomorphismReport check_homeomorphism_case(const PreserverMap& t,
                                             const ReconstructionResult& r,
                                             int subset_cap);

struct LimitSequence {
  std::vector<double> values;  // values[n-1] is the n-th term
  double target = 0.0;         // max of f over pk(g0)
  int stabilized_at = -1;      // first n from which the sequence sits at target
  int predicted_n = -1;        // exact finite-space stabilization bound (am/hm)
};

// s_n = ||n g0 + f|| - n ||g0||  ->  target (exactly, for n >= N*).
LimitSequence am_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max);
// r_n = ||g0^n f|| / ||g0||^n  ->  target (geometrically).
LimitSequence gm_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max);
// h_n = (||(n g0^-1 + f^-1)^-1||^-1 - n ||g0||^-1)^-1  ->  target (exactly).
LimitSequence hm_limit_sequence(const ConeFunction& g0, const ConeFunction& f, int n_max);

// Power-mean reduction: conjugates T by t -> t^|p| on members and images, so
// that T preserves the norm of the m^p mean iff the conjugate preserves the
// arithmetic (p > 0) or harmonic (p < 0) one.
PreserverMap power_reduce(const PreserverMap& t, double p);

}  // namespace meanlab

#endif
