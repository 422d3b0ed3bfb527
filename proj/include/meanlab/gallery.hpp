#ifndef MEANLAB_GALLERY_HPP
#define MEANLAB_GALLERY_HPP

// Counterexample gallery: finite discretizations of the classical
// counterexample maps, each bundled with the verdicts it is expected to
// produce (which mean norms are preserved at which multiset sizes, whether
// reconstruction succeeds, psupp/supp tables where known exactly).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meanlab/cones.hpp"

namespace meanlab {

struct MeanClaim {
  MeanKind kind;
  int max_multiset = 3;
  bool preserved = true;
  double tol = 1e-9;
  // When !preserved: one violating multiset (member names) and the two
  // aggregate norms it must produce. exact_witness compares them bit-for-bit,
  // otherwise within witness_tol.
  std::vector<std::string> witness_multiset;
  double witness_lhs = 0.0;
  double witness_rhs = 0.0;
  bool exact_witness = false;
  double witness_tol = 1e-6;
};

struct GalleryExpectation {
  std::vector<MeanClaim> claims;
  bool reconstructible = false;
  double supp_tol = kSuppTol;
  std::vector<std::string> y0;                                  // expected labels
  std::vector<std::pair<std::string, std::string>> tau;         // y -> x
  bool image_rich = false;
  std::vector<std::pair<std::string, std::vector<std::string>>> psupp_table;
  std::vector<std::pair<std::string, std::vector<std::string>>> supp_table;
  // Non-extendability witness: lower bound for max |T a - T b|.
  std::optional<std::pair<std::string, std::string>> nonextend_members;
  double nonextend_lower = 0.0;
};

struct GalleryInstance {
  std::string id;
  PreserverMap map;
  GalleryExpectation expected;
};

// grid_size 0 picks the per-example default. Throws UnknownExampleError.
GalleryInstance gallery(const std::string& id, int grid_size = 0);

std::vector<std::string> gallery_ids();

// Short decimal label for grid points (stable across the library).
std::string fmt_label(double v);

}  // namespace meanlab

#endif
