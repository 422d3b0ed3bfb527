#ifndef MEANLAB_SUITES_HPP
#define MEANLAB_SUITES_HPP

// Seeded property suites: every invariant bullet of the library run as
// reproducible trials, plus the gallery regression checks. Each trial's
// inputs are derived from (seed, trial index) only.

#include <cstdint>
#include <utility>
#include <vector>

#include "meanlab/gallery.hpp"
#include "meanlab/report.hpp"

namespace meanlab {

struct SuiteConfig {
  std::uint64_t seed = 0;
  int trials = 300;
  std::vector<int> dims = {2, 3, 4, 5, 6};
};

// Lemma-by-lemma suites. Counts are per the acceptance criteria when called
// with the default config.

// order_leq_witness and hm_order_witness vs the loewner_leq oracle;
// `trials` pairs per dim, mixing comparable and incomparable pairs.
std::vector<CheckRecord> order_witness_suite(const SuiteConfig& cfg);

// Constructive equality witness on PD pairs with ||A-B|| > 0.1 plus the
// NoWitness branch; dims are clamped to <= 5.
std::vector<CheckRecord> equality_witness_suite(const SuiteConfig& cfg);

// Max-norm orthogonality characterization on constructed orthogonal-range
// pairs, a forced negative case, and the refined-grid converse contract.
std::vector<CheckRecord> maxnorm_ortho_suite(const SuiteConfig& cfg);

// Spectral-family orthogonality check against ||XY||.
std::vector<CheckRecord> aw_ortho_suite(const SuiteConfig& cfg);

// Harmonic orthogonality bound: equality when UV = 0, strict violation for
// overlapping projections with ||PQ|| > 0.1 at t = 1.
std::vector<CheckRecord> hm_ortho_bound_suite(const SuiteConfig& cfg);

// AM-GM-HM Loewner chain, Riccati residual, symmetry of #, and unitary
// invariance of all three means.
std::vector<CheckRecord> mean_chain_suite(const SuiteConfig& cfg);

// Spectral-core invariants: decomposition round trip, functional-calculus
// composition, projection complement, partial-order sampling.
std::vector<CheckRecord> spectral_core_suite(const SuiteConfig& cfg);

// am/gm/hm limit formulas on seeded (g0, f) pairs (spaces of size <= 12).
std::vector<CheckRecord> limit_lemma_suite(const SuiteConfig& cfg);

// Round-trip: random composition-operator instances preserve all three mean
// norms and reconstruct back to tau with residual 0.
std::vector<CheckRecord> roundtrip_reconstruction_suite(const SuiteConfig& cfg);

// Verdict equivalence of the power-mean reduction for p in {2, 0.5, -1, -2}
// on gallery and seeded instances.
std::vector<CheckRecord> power_reduce_suite(const SuiteConfig& cfg);

// All of the above.
SuiteReport lemma_suite(const SuiteConfig& cfg);

// Gallery expectations for one instance / all instances.
std::vector<CheckRecord> verify_gallery(const GalleryInstance& instance);
SuiteReport gallery_suite(int grid_size = 0);

// Generators shared with the tests.
// Random finite X (2..4 points), rich strict family, random surjection tau
// from the clean part of Y, junk points dominated by s * f(x_y) with s <= 7/8.
struct CompositionInstance {
  PreserverMap map;
  std::vector<int> clean_y;   // indices into Y
  std::vector<int> tau;       // parallel, indices into X
};
CompositionInstance random_composition_preserver(std::uint64_t seed);

// Lattice-valued (g0, f) pair for the limit lemmas: off-peak g0 values are at
// most 0.6 * ||g0|| and f is strictly positive.
std::pair<ConeFunction, ConeFunction> random_limit_pair(std::uint64_t seed);

// Stream splitter for reproducible per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t index);

}  // namespace meanlab

#endif
