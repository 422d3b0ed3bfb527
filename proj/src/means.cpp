#include "meanlab/means.hpp"

#include <algorithm>
#include <cmath>

namespace meanlab {

namespace {

void check_same_dim(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatchError("dimension mismatch: " + std::to_string(a.dim()) +
                                 " vs " + std::to_string(b.dim()));
  }
}

void require_pd(const HermitianMatrix& a, const char* who) {
  if (!is_pd(a)) {
    throw NotPositiveDefiniteError(std::string(who) + ": input is not positive definite");
  }
}

double smallest_positive_eigenvalue(const HermitianMatrix& a) {
  const SpectralDecomposition sd = decompose(a);
  const double floor = 1e-8 * (1.0 + sd.eigenvalues.cwiseAbs().maxCoeff());
  double best = 0.0;
  for (int i = 0; i < sd.eigenvalues.size(); ++i) {
    const double v = sd.eigenvalues(i);
    if (v > floor && (best == 0.0 || v < best)) best = v;
  }
  return best;  // 0 when the matrix is (numerically) zero
}

double nudge_off_spectrum(double level, const RVector& eigs_x, const RVector& eigs_y) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    bool clear = true;
    for (const RVector* eigs : {&eigs_x, &eigs_y}) {
      for (int i = 0; i < eigs->size(); ++i) {
        if (std::abs((*eigs)(i) - level) <= kEigGapTol) {
          clear = false;
          break;
        }
      }
      if (!clear) break;
    }
    if (clear) return level;
    level += 1e-6;
  }
  throw AmbiguousBoundaryError("could not nudge level off the spectrum");
}

}  // namespace

MeanKind MeanKind::power(double p) {
  if (p == 1.0) return arithmetic();
  if (p == 0.0) return geometric();
  if (p == -1.0) return harmonic();
  return {Tag::Power, p};
}

std::string MeanKind::name() const {
  switch (tag) {
    case Tag::Arithmetic: return "arithmetic";
    case Tag::Geometric: return "geometric";
    case Tag::Harmonic: return "harmonic";
    case Tag::Power: break;
  }
  std::string s = std::to_string(p);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return "power:" + s;
}

MeanKind MeanKind::parse(const std::string& text) {
  if (text == "arithmetic") return arithmetic();
  if (text == "geometric") return geometric();
  if (text == "harmonic") return harmonic();
  if (text.rfind("power:", 0) == 0) {
    try {
      return power(std::stod(text.substr(6)));
    } catch (const std::exception&) {
      throw Error("cannot parse power mean exponent in '" + text + "'");
    }
  }
  throw Error("unknown mean kind '" + text + "'");
}

HermitianMatrix arithmetic_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  return 0.5 * (a + b);
}

HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  require_pd(a, "geometric_mean");
  const SpectralDecomposition sd = decompose(a);
  RVector sqrt_eigs(sd.eigenvalues.size()), inv_sqrt_eigs(sd.eigenvalues.size());
  for (int i = 0; i < sd.eigenvalues.size(); ++i) {
    sqrt_eigs(i) = std::sqrt(sd.eigenvalues(i));
    inv_sqrt_eigs(i) = 1.0 / sqrt_eigs(i);
  }
  const CMatrix root = sd.eigenvectors * sqrt_eigs.asDiagonal() * sd.eigenvectors.adjoint();
  const CMatrix inv_root =
      sd.eigenvectors * inv_sqrt_eigs.asDiagonal() * sd.eigenvectors.adjoint();
  const HermitianMatrix inner{CMatrix(inv_root * b.entries * inv_root)};
  const HermitianMatrix inner_sqrt = matrix_sqrt(inner);
  return HermitianMatrix(CMatrix(root * inner_sqrt.entries * root));
}

HermitianMatrix harmonic_mean(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  require_pd(a, "harmonic_mean");
  require_pd(b, "harmonic_mean");
  const HermitianMatrix sum = matrix_inverse(a) + matrix_inverse(b);
  return 2.0 * matrix_inverse(sum);
}

bool order_leq_witness(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  const double t = op_norm(b) + 1.0;
  const HermitianMatrix x = t * HermitianMatrix::identity(b.dim()) - b;
  return op_norm(a + x) <= t + 1e-9;
}

bool hm_order_witness(const HermitianMatrix& a, const HermitianMatrix& b) {
  check_same_dim(a, b);
  require_pd(a, "hm_order_witness");
  require_pd(b, "hm_order_witness");
  const double t = 2.0 / decompose(b).eigenvalues.minCoeff();
  // X = (tB - I)^{-1} B commutes with B, so it is a scalar function of B.
  const HermitianMatrix x =
      functional_calculus(b, [t](double v) { return v / (t * v - 1.0); });
  const double rhs = op_norm(harmonic_mean(b, x));  // equals 2/t
  return op_norm(harmonic_mean(a, x)) <= rhs + 1e-9;
}

bool orthogonality_maxnorm_check(const HermitianMatrix& a, const HermitianMatrix& b,
                                 const std::vector<double>& levels) {
  check_same_dim(a, b);
  for (const double level : levels) {
    if (level <= 0.0) throw Error("orthogonality levels must be positive");
    const HermitianMatrix c = level * spectral_projection(a, Interval::greater_than(level));
    const HermitianMatrix d = level * spectral_projection(b, Interval::greater_than(level));
    const double max_norm = std::max(op_norm(c), op_norm(d));
    if (op_norm(c + d) > max_norm + 1e-9) return false;
  }
  return true;
}

OrthogonalityBoundReport hm_orthogonality_bound(double t, const HermitianMatrix& u,
                                                const HermitianMatrix& v) {
  check_same_dim(u, v);
  if (t <= 0.0) throw Error("hm_orthogonality_bound: t must be positive");
  const HermitianMatrix eye = HermitianMatrix::identity(u.dim());
  OrthogonalityBoundReport report;
  report.t = t;
  report.max_norm = std::max(op_norm(u), op_norm(v));
  report.lhs = op_norm(harmonic_mean(t * eye + u, t * eye + v));
  report.rhs = 2.0 * t * (t + report.max_norm) / (2.0 * t + report.max_norm);
  report.satisfied = report.lhs <= report.rhs + 1e-9;
  return report;
}

HermitianMatrix spectral_family_tilde(const HermitianMatrix& x, double t) {
  if (t < 0.0) throw Error("spectral_family_tilde: t must be nonnegative");
  return spectral_projection(x, Interval::greater_than(t));
}

bool aw_ortho_check(const HermitianMatrix& x, const HermitianMatrix& y,
                    const std::vector<double>& levels) {
  check_same_dim(x, y);
  for (const double level : levels) {
    if (level <= 0.0) throw Error("aw_ortho_check levels must be positive");
    const HermitianMatrix px = spectral_family_tilde(x, level);
    const HermitianMatrix py = spectral_family_tilde(y, level);
    if (spectral_norm(px.entries * py.entries) > 1e-9) return false;
  }
  return true;
}

std::optional<EqualityWitness> equality_witness(const HermitianMatrix& a_in,
                                                const HermitianMatrix& b_in) {
  check_same_dim(a_in, b_in);
  require_pd(a_in, "equality_witness");
  require_pd(b_in, "equality_witness");
  if (op_norm(a_in - b_in) <= 1e-9) return std::nullopt;

  HermitianMatrix a = a_in;
  HermitianMatrix b = b_in;
  HermitianMatrix t_mat = matrix_inverse(a) - matrix_inverse(b);
  SpectralDecomposition sd = decompose(t_mat);
  // Orient so that T = A^{-1} - B^{-1} has its dominant eigenvalue negative.
  const bool swapped = sd.eigenvalues.maxCoeff() > -sd.eigenvalues.minCoeff();
  if (swapped) {
    std::swap(a, b);
    t_mat = matrix_inverse(a) - matrix_inverse(b);
    sd = decompose(t_mat);
  }

  const double lambda0 = sd.eigenvalues.minCoeff() / 2.0;
  const double epsilon = std::abs(lambda0) / 2.0;
  const HermitianMatrix projection =
      spectral_projection(t_mat, Interval::less_than(lambda0));

  const CMatrix e = projection.entries;
  const HermitianMatrix eae{CMatrix(e * matrix_inverse(a).entries * e)};
  const HermitianMatrix ebe{CMatrix(e * matrix_inverse(b).entries * e)};
  const std::pair<double, double> side_norms{op_norm(eae), op_norm(ebe)};
  const double delta =
      side_norms.first > kPdFloor ? 1.0 / side_norms.first : 1.0 / kPdFloor;
  EqualityWitness w{lambda0,          epsilon,    delta, projection,
                    delta * projection, side_norms, swapped};

  // The lemma guarantees all three; failure would mean a numerical breakdown.
  if (!loewner_leq(w.violating_x, a, 1e-8)) {
    throw Error("equality_witness: X <= A verification failed");
  }
  if (loewner_leq(w.violating_x, b, 1e-8)) {
    throw Error("equality_witness: X <= B unexpectedly holds");
  }
  if (w.side_norms.second < w.side_norms.first + std::abs(w.lambda0) - 1e-8) {
    throw Error("equality_witness: norm-gap inequality failed");
  }
  return w;
}

PsdMap shift_conjugate(PsdMap map, double epsilon) {
  if (epsilon <= 0.0) throw Error("shift_conjugate: epsilon must be positive");
  return [map = std::move(map), epsilon](const HermitianMatrix& a) {
    const HermitianMatrix eye = HermitianMatrix::identity(a.dim());
    return map(a + epsilon * eye) - epsilon * eye;
  };
}

std::vector<double> default_level_grid(const HermitianMatrix& x,
                                       const HermitianMatrix& y) {
  const RVector eigs_x = decompose(x).eigenvalues;
  const RVector eigs_y = decompose(y).eigenvalues;
  const double top = std::max(eigs_x.cwiseAbs().maxCoeff(), eigs_y.cwiseAbs().maxCoeff());
  std::vector<double> levels;
  if (top <= 0.0) return levels;
  for (int k = 1; k <= 20; ++k) {
    const double level = nudge_off_spectrum(top / std::pow(2.0, k), eigs_x, eigs_y);
    if (level > 0.0) levels.push_back(level);
  }
  return levels;
}

std::vector<double> refined_level_grid(const HermitianMatrix& x,
                                       const HermitianMatrix& y) {
  const RVector eigs_x = decompose(x).eigenvalues;
  const RVector eigs_y = decompose(y).eigenvalues;
  const double top = std::max(eigs_x.cwiseAbs().maxCoeff(), eigs_y.cwiseAbs().maxCoeff());
  std::vector<double> levels;
  if (top <= 0.0) return levels;
  const double px = smallest_positive_eigenvalue(x);
  const double py = smallest_positive_eigenvalue(y);
  const double goal = std::min(px > 0.0 ? px : top, py > 0.0 ? py : top) / 2.0;
  double raw = top / 2.0;
  for (int k = 0; k < 200; ++k) {
    levels.push_back(nudge_off_spectrum(raw, eigs_x, eigs_y));
    if (raw <= goal) break;
    raw /= 2.0;
  }
  return levels;
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace meanlab
