#include "meanlab/spectral.hpp"

#include <cmath>
#include <random>

namespace meanlab {

namespace {

void check_square(const CMatrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw DimensionMismatchError("matrix must be square with dim >= 1, got " +
                                 std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()));
  }
}

void check_hermitian(const CMatrix& m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > kHermitTol * scale) {
    throw NonHermitianError("matrix is not Hermitian: max |A - A*| = " +
                            std::to_string(dev));
  }
}

void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("dimension mismatch: " + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()));
  }
}

// Uniform in [0,1) from the top 53 bits; mt19937_64 is fully specified by the
// standard, so sequences are reproducible per seed.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  // Box-Muller; avoids the implementation-defined std::normal_distribution.
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

CMatrix complex_gaussian(int rows, int cols, std::mt19937_64& rng) {
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = Complex(gaussian(rng), gaussian(rng));
  return g;
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m, std::string lbl) : label(std::move(lbl)) {
  check_square(m);
  check_hermitian(m);
  entries = 0.5 * (m + m.adjoint().eval());
}

HermitianMatrix::HermitianMatrix(Eigen::MatrixXd m, std::string lbl)
    : HermitianMatrix(CMatrix(m.cast<Complex>()), std::move(lbl)) {}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(CMatrix(CMatrix::Identity(dim, dim)));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(CMatrix(CMatrix::Zero(dim, dim)));
}

HermitianMatrix HermitianMatrix::diagonal(const RVector& d) {
  CMatrix m = CMatrix::Zero(d.size(), d.size());
  for (int i = 0; i < d.size(); ++i) m(i, i) = d(i);
  return HermitianMatrix(std::move(m));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  return HermitianMatrix(CMatrix(a.entries + b.entries));
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  return HermitianMatrix(CMatrix(a.entries - b.entries));
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix(CMatrix(s * a.entries));
}

Interval Interval::all() { return Interval{}; }

Interval Interval::open(double lo, double hi) {
  if (lo > hi) throw Error("interval lower > upper");
  return Interval{lo, hi, true, true};
}

Interval Interval::less_than(double a) {
  Interval iv;
  iv.upper = a;
  return iv;
}

Interval Interval::greater_than(double a) {
  Interval iv;
  iv.lower = a;
  return iv;
}

Interval Interval::at_least(double a) {
  Interval iv;
  iv.lower = a;
  iv.lower_open = false;
  return iv;
}

Interval Interval::up_to(double a) {
  Interval iv;
  iv.upper = a;
  iv.upper_open = false;
  return iv;
}

bool Interval::contains(double t) const {
  if (lower_open ? !(t > lower) : !(t >= lower)) return false;
  if (upper_open ? !(t < upper) : !(t <= upper)) return false;
  return true;
}

SpectralDecomposition decompose(const HermitianMatrix& a) {
  check_hermitian(a.entries);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.entries);
  if (solver.info() != Eigen::Success) {
    throw Error("eigendecomposition failed for '" + a.label + "'");
  }
  return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix functional_calculus(const HermitianMatrix& a,
                                    const std::function<double(double)>& f) {
  const SpectralDecomposition sd = decompose(a);
  RVector mapped(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i) {
    const double v = f(sd.eigenvalues(i));
    if (!std::isfinite(v)) {
      throw DomainError("functional calculus: f undefined at eigenvalue " +
                        std::to_string(sd.eigenvalues(i)));
    }
    mapped(i) = v;
  }
  CMatrix m = sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
  return HermitianMatrix(std::move(m));
}

HermitianMatrix spectral_projection(const HermitianMatrix& a, const Interval& iv) {
  const SpectralDecomposition sd = decompose(a);
  for (const double endpoint : {iv.lower, iv.upper}) {
    if (!std::isfinite(endpoint)) continue;
    for (int i = 0; i < sd.eigenvalues.size(); ++i) {
      if (std::abs(sd.eigenvalues(i) - endpoint) <= kEigGapTol) {
        throw AmbiguousBoundaryError(
            "interval endpoint " + std::to_string(endpoint) +
            " lies within eig_gap_tol of eigenvalue " +
            std::to_string(sd.eigenvalues(i)));
      }
    }
  }
  RVector indicator(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i)
    indicator(i) = iv.contains(sd.eigenvalues(i)) ? 1.0 : 0.0;
  CMatrix m = sd.eigenvectors * indicator.asDiagonal() * sd.eigenvectors.adjoint();
  return HermitianMatrix(std::move(m));
}

double op_norm(const HermitianMatrix& a) {
  const SpectralDecomposition sd = decompose(a);
  return sd.eigenvalues.cwiseAbs().maxCoeff();
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
  check_same_dim(a, b);
  const SpectralDecomposition sd = decompose(b - a);
  const double min_eig = sd.eigenvalues.minCoeff();
  const double norm = sd.eigenvalues.cwiseAbs().maxCoeff();
  return min_eig >= -tol * (1.0 + norm);
}

bool is_pd(const HermitianMatrix& a, double tol) {
  return decompose(a).eigenvalues.minCoeff() > tol;
}

bool is_psd(const HermitianMatrix& a, double tol) {
  const SpectralDecomposition sd = decompose(a);
  const double norm = sd.eigenvalues.cwiseAbs().maxCoeff();
  return sd.eigenvalues.minCoeff() >= -tol * (1.0 + norm);
}

HermitianMatrix random_psd(int dim, std::uint64_t seed, RandomKind kind) {
  if (dim < 1) throw DimensionMismatchError("random_psd: dim must be >= 1");
  // Offset the stream per kind so the three generators are independent.
  std::mt19937_64 rng(seed * 6364136223846793005ULL +
                      static_cast<std::uint64_t>(kind) + 1442695040888963407ULL);
  switch (kind) {
    case RandomKind::PositiveDefinite: {
      const CMatrix g = complex_gaussian(dim, dim, rng);
      CMatrix m = g * g.adjoint() + 1e-3 * CMatrix::Identity(dim, dim);
      return HermitianMatrix(std::move(m));
    }
    case RandomKind::PositiveSemidefinite: {
      const bool force_singular = uniform01(rng) < 0.5 && dim > 1;
      const int cols = force_singular ? dim - 1 : dim;
      const CMatrix g = complex_gaussian(dim, cols, rng);
      return HermitianMatrix(CMatrix(g * g.adjoint()));
    }
    case RandomKind::Projection: {
      const CMatrix g = complex_gaussian(dim, dim, rng);
      const Eigen::HouseholderQR<CMatrix> qr(g);
      const CMatrix u = qr.householderQ() * CMatrix::Identity(dim, dim);
      RVector d(dim);
      for (int i = 0; i < dim; ++i) d(i) = uniform01(rng) < 0.5 ? 1.0 : 0.0;
      return HermitianMatrix(CMatrix(u * d.asDiagonal() * u.adjoint()));
    }
  }
  throw Error("random_psd: unknown kind");
}

HermitianMatrix random_hermitian(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionMismatchError("random_hermitian: dim must be >= 1");
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const CMatrix g = complex_gaussian(dim, dim, rng);
  return HermitianMatrix(CMatrix(0.5 * (g + g.adjoint().eval())));
}

HermitianMatrix matrix_inverse(const HermitianMatrix& a) {
  if (!is_pd(a)) {
    throw NotPositiveDefiniteError("matrix_inverse requires a positive definite input");
  }
  return functional_calculus(a, [](double t) { return 1.0 / t; });
}

HermitianMatrix matrix_sqrt(const HermitianMatrix& a) {
  const double floor = -1e-10 * (1.0 + op_norm(a));
  return functional_calculus(a, [floor](double t) {
    if (t < floor) {
      throw DomainError("matrix_sqrt: negative eigenvalue " + std::to_string(t));
    }
    return std::sqrt(std::max(t, 0.0));
  });
}

}  // namespace meanlab
