#ifndef MEANLAB_MEANS_HPP
#define MEANLAB_MEANS_HPP

// The three fundamental operator means on positive matrices plus the
// witness-based characterizations of order, orthogonality and equality,
// each cross-checked against the spectral oracle in spectral.hpp.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meanlab/spectral.hpp"

namespace meanlab {

// Arithmetic / Geometric / Harmonic / Power(p). Power(1), Power(0) and
// Power(-1) collapse to the named tags at construction.
struct MeanKind {
  enum class Tag { Arithmetic, Geometric, Harmonic, Power };

  Tag tag = Tag::Arithmetic;
  double p = 1.0;  // exponent: 1, 0, -1 for the named tags

  static MeanKind arithmetic() { return {Tag::Arithmetic, 1.0}; }
  static MeanKind geometric() { return {Tag::Geometric, 0.0}; }
  static MeanKind harmonic() { return {Tag::Harmonic, -1.0}; }
  static MeanKind power(double p);

  double exponent() const { return p; }
  bool negative_exponent() const { return p < 0.0; }
  std::string name() const;
  // Accepts "arithmetic" | "geometric" | "harmonic" | "power:<p>".
  static MeanKind parse(const std::string& text);
};

// (A + B) / 2.
HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b);

// A^{1/2} (A^{-1/2} B A^{-1/2})^{1/2} A^{1/2}; A strictly PD, B PSD. The
// Riccati identity X A^{-1} X = B is a test oracle, not the algorithm.
HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b);

// 2 (A^{-1} + B^{-1})^{-1}; both strictly PD.
HermitianMatrix harmonic_mean(const HermitianMatrix& a, const HermitianMatrix& b);

// Order via norms of sums: picks X = tI - B at t = ||B|| + 1 and tests
// ||A + X|| <= t + 1e-9. Agrees with loewner_leq on PSD pairs.
bool order_leq_witness(const HermitianMatrix& a, const HermitianMatrix& b);

// Order via harmonic means: X = (tB - I)^{-1} B at t = 2 / min_eig(B), where
// ||B!X|| = 2/t; tests ||A!X|| <= ||B!X|| + 1e-9. Agrees with loewner_leq on
// PD pairs.
bool hm_order_witness(const HermitianMatrix& a, const HermitianMatrix& b);

// Orthogonality via max-norm: for each level a forms C = a E_A(a,inf),
// D = a E_B(a,inf) and requires ||C + D|| = max(||C||, ||D||) within 1e-9.
bool orthogonality_maxnorm_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                 const std::vector<double>& levels);

struct OrthogonalityBoundReport {
  double t = 0.0;
  double lhs = 0.0;       // ||(tI + U)!(tI + V)||
  double rhs = 0.0;       // 2t(t + m) / (2t + m), m = max(||U||, ||V||)
  double max_norm = 0.0;  // m
  bool satisfied = false; // lhs <= rhs + 1e-9
};

// Harmonic orthogonality bound; equality within 1e-9 whenever UV = 0.
OrthogonalityBoundReport hm_orthogonality_bound(double t, const HermitianMatrix& u,
                                                const HermitianMatrix& v);

// Finite-dimensional spectral family: E_X(t, inf) for t >= 0 off the spectrum.
HermitianMatrix spectral_family_tilde(const HermitianMatrix& x, double t);

// True iff ||tilde_E_X(t) tilde_E_Y(t)|| <= 1e-9 at every supplied level.
bool aw_ortho_check(const HermitianMatrix& x, const HermitianMatrix& y,
                    const std::vector<double>& levels);

struct EqualityWitness {
  double lambda0;   // negative cut point, half the most negative eig of T
  double epsilon;   // spectral margin below lambda0
  double delta;     // 1 / ||E A^{-1} E||
  HermitianMatrix projection;    // E = E_T(-inf, lambda0)
  HermitianMatrix violating_x;   // delta * E: <= A but not <= B
  std::pair<double, double> side_norms;  // (||E A^-1 E||, ||E B^-1 E||)
  bool swapped;     // roles of (A, B) exchanged so T has a negative eig
};

// Constructive witness separating A from B (Loewner-order sub-level sets):
// nullopt when ||A - B|| <= 1e-9. Both inputs strictly PD. The returned
// witness is verified internally: violating_x <= (first) but not <= (second),
// and the norm-gap inequality ||E B^-1 E|| >= ||E A^-1 E|| + |lambda0| holds
// within 1e-8.
std::optional<EqualityWitness> equality_witness(const HermitianMatrix& a,
                                                const HermitianMatrix& b);

using PsdMap = std::function<HermitianMatrix(const HermitianMatrix&)>;

// psi(A) = map(A + eps I) - eps I.
PsdMap shift_conjugate(PsdMap map, double epsilon);

// Geometric grid max(||X||,||Y||)/2^k, k = 1..20, each level nudged upward by
// 1e-6 while it sits within eig_gap_tol of an eigenvalue of X or Y.
std::vector<double> default_level_grid(const HermitianMatrix& x,
                                       const HermitianMatrix& y);

// default_level_grid extended until it reaches below half the smallest
// positive eigenvalue of both arguments.
std::vector<double> refined_level_grid(const HermitianMatrix& x,
                                       const HermitianMatrix& y);

// Spectral norm of a general (possibly non-Hermitian) product such as P Q.
double spectral_norm(const CMatrix& m);

}  // namespace meanlab

#endif
