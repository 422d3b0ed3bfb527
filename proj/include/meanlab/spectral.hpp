#ifndef MEANLAB_SPECTRAL_HPP
#define MEANLAB_SPECTRAL_HPP

// Dense Hermitian linear algebra: eigendecomposition, functional calculus,
// spectral projections, operator norm and the Loewner-order oracle that the
// rest of the library cross-checks against.

#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "meanlab/errors.hpp"

namespace meanlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Tolerances (double precision, dims <= ~16).
inline constexpr double kHermitTol = 1e-10;  // relative, Hermitian symmetry
inline constexpr double kReconTol = 1e-9;    // relative, U diag(l) U* round trip
inline constexpr double kPdFloor = 1e-12;    // absolute, strict positivity
inline constexpr double kEigGapTol = 1e-8;   // projection endpoint vs spectrum

// Element of a matrix C*-algebra. Entries must satisfy
// entries(i,j) == conj(entries(j,i)) within kHermitTol * max(1, max|entry|);
// the constructor verifies this and then symmetrizes exactly, so downstream
// code may rely on entries == entries.adjoint() bit-for-bit.
struct HermitianMatrix {
  CMatrix entries;
  std::string label;

  explicit HermitianMatrix(CMatrix m, std::string lbl = {});
  HermitianMatrix(Eigen::MatrixXd m, std::string lbl = {});

  int dim() const { return static_cast<int>(entries.rows()); }

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(const RVector& d);
};

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator*(double s, const HermitianMatrix& a);

// Ascending eigenvalues, orthonormal eigenvector columns.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
};

// Extended-real interval; endpoints may be +-infinity.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_open = true;
  bool upper_open = true;

  static Interval all();
  static Interval open(double lo, double hi);
  static Interval less_than(double a);       // (-inf, a)
  static Interval greater_than(double a);    // (a, inf)
  static Interval at_least(double a);        // [a, inf)
  static Interval up_to(double a);           // (-inf, a]

  bool contains(double t) const;
};

// Deterministic for a fixed input: Eigen's self-adjoint solver with ascending
// eigenvalues. Throws NonHermitianError if the symmetry check fails.
SpectralDecomposition decompose(const HermitianMatrix& a);

// U diag(f(l_i)) U*. Throws DomainError when f returns a non-finite value at
// some eigenvalue.
HermitianMatrix functional_calculus(const HermitianMatrix& a,
                                    const std::function<double(double)>& f);

// Orthogonal projection onto the eigenspaces with eigenvalue inside `iv`.
// Finite endpoints must stay further than kEigGapTol from every eigenvalue;
// otherwise AmbiguousBoundaryError.
HermitianMatrix spectral_projection(const HermitianMatrix& a, const Interval& iv);

// C*-norm: max |eigenvalue|.
double op_norm(const HermitianMatrix& a);

// Loewner order oracle: true iff min eig(B - A) >= -tol * (1 + ||B - A||).
bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol);

// min eigenvalue > tol (absolute); the default is the pd floor.
bool is_pd(const HermitianMatrix& a, double tol = kPdFloor);
// min eigenvalue >= -tol * (1 + ||A||).
bool is_psd(const HermitianMatrix& a, double tol = 1e-10);

enum class RandomKind { PositiveDefinite, PositiveSemidefinite, Projection };

// Seeded instance generator. pd: G G* + 1e-3 I; psd: G G* with a forced zero
// eigenvalue with probability 1/2; projection: U diag(0/1) U*. Reproducible
// per (dim, seed, kind).
HermitianMatrix random_psd(int dim, std::uint64_t seed, RandomKind kind);

// Random Hermitian (not necessarily positive); used by round-trip suites.
HermitianMatrix random_hermitian(int dim, std::uint64_t seed);

// A^{-1} through functional calculus, guarded by is_pd.
HermitianMatrix matrix_inverse(const HermitianMatrix& a);
// A^{1/2} for PSD input; eigenvalues within -1e-10*(1+||A||) of zero are
// clamped to zero, anything more negative is a DomainError.
HermitianMatrix matrix_sqrt(const HermitianMatrix& a);

}  // namespace meanlab

#endif
