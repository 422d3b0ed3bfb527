#include "meanlab/suites.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace meanlab {

namespace {

constexpr std::uint64_t kOrderSalt = 0xa1;
constexpr std::uint64_t kEqualitySalt = 0xa2;
constexpr std::uint64_t kMaxnormSalt = 0xa3;
constexpr std::uint64_t kAwSalt = 0xa4;
constexpr std::uint64_t kHmBoundSalt = 0xa5;
constexpr std::uint64_t kChainSalt = 0xa6;
constexpr std::uint64_t kSpectralSalt = 0xa7;
constexpr std::uint64_t kLimitSalt = 0xa8;
constexpr std::uint64_t kRoundtripSalt = 0xa9;
constexpr std::uint64_t kPowerSalt = 0xaa;

std::string count_detail(long bad, long total, const char* what) {
  std::ostringstream os;
  os << bad << " of " << total << " " << what;
  return os.str();
}

CheckRecord trial_record(std::string name, long bad, long total, const char* what) {
  CheckRecord r = make_record(std::move(name), bad == 0, count_detail(bad, total, what));
  r.metrics = {{"failures", static_cast<double>(bad)}, {"trials", static_cast<double>(total)}};
  return r;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CMatrix random_unitary(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(uniform01(rng) - 0.5, uniform01(rng) - 0.5);
  const Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

// PSD supported inside the range of the projection p.
HermitianMatrix compress(const HermitianMatrix& p, const HermitianMatrix& r) {
  return HermitianMatrix(CMatrix(p.entries * r.entries * p.entries));
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt, std::uint64_t index) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ULL * (salt + 1) + 0xbf58476d1ce4e5b9ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::vector<CheckRecord> order_witness_suite(const SuiteConfig& cfg) {
  long bad_arith = 0, bad_harm = 0, total = 0;
  for (int dim : cfg.dims) {
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t s = mix_seed(cfg.seed, kOrderSalt, dim * 100000 + t);
      HermitianMatrix a = random_psd(dim, s, RandomKind::PositiveDefinite);
      HermitianMatrix b = a;
      switch (t % 3) {
        case 0:  // comparable, A <= B
          b = a + random_psd(dim, s + 1, RandomKind::PositiveSemidefinite);
          break;
        case 1:  // comparable the other way
          b = a;
          a = b + random_psd(dim, s + 1, RandomKind::PositiveSemidefinite);
          break;
        default:  // generic pair, typically incomparable
          b = random_psd(dim, s + 2, RandomKind::PositiveDefinite);
      }
      const bool oracle = loewner_leq(a, b, 1e-8);
      if (order_leq_witness(a, b) != oracle) ++bad_arith;
      if (hm_order_witness(a, b) != oracle) ++bad_harm;
      ++total;
    }
  }
  return {trial_record("lemma/order-norm-sums", bad_arith, total, "pairs disagree with loewner_leq"),
          trial_record("lemma/order-harmonic", bad_harm, total, "pairs disagree with loewner_leq")};
}

std::vector<CheckRecord> equality_witness_suite(const SuiteConfig& cfg) {
  long bad = 0, bad_nowitness = 0, total = 0;
  for (int dim : cfg.dims) {
    if (dim > 5) continue;
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t s = mix_seed(cfg.seed, kEqualitySalt, dim * 100000 + t);
      const HermitianMatrix a = random_psd(dim, s, RandomKind::PositiveDefinite);
      HermitianMatrix b = a;
      for (int k = 1; k <= 10; ++k) {
        b = random_psd(dim, s + k, RandomKind::PositiveDefinite);
        if (op_norm(a - b) > 0.1) break;
      }
      ++total;
      try {
        const auto w = equality_witness(a, b);
        if (!w) {
          ++bad;
          continue;
        }
        // Type invariants: X is PSD of norm delta, lambda0 negative.
        if (!is_psd(w->violating_x) || op_norm(w->violating_x) > w->delta * (1.0 + 1e-9) ||
            w->lambda0 >= 0.0) {
          ++bad;
        }
      } catch (const Error&) {
        ++bad;
      }
      if (equality_witness(a, a).has_value()) ++bad_nowitness;
    }
  }
  std::vector<CheckRecord> out;
  out.push_back(trial_record("lemma/equality-witness", bad, total, "pairs without a valid witness"));
  out.push_back(trial_record("lemma/equality-nowitness", bad_nowitness, total,
                             "identical pairs produced a witness"));
  return out;
}

std::vector<CheckRecord> maxnorm_ortho_suite(const SuiteConfig& cfg) {
  long bad_ortho = 0, bad_converse = 0, total = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const int dim = cfg.dims[t % cfg.dims.size()];
    const std::uint64_t s = mix_seed(cfg.seed, kMaxnormSalt, t);
    const HermitianMatrix p = random_psd(dim, s, RandomKind::Projection);
    const HermitianMatrix q = HermitianMatrix::identity(dim) - p;
    const HermitianMatrix a = compress(p, random_psd(dim, s + 1, RandomKind::PositiveDefinite));
    const HermitianMatrix b = compress(q, random_psd(dim, s + 2, RandomKind::PositiveDefinite));
    if (!orthogonality_maxnorm_check(a, b, refined_level_grid(a, b))) ++bad_ortho;

    // Converse contract on a generic pair: a true verdict on the refined grid
    // must force ||XY|| <= 1e-6.
    const HermitianMatrix x = random_psd(dim, s + 3, RandomKind::PositiveSemidefinite);
    const HermitianMatrix y = random_psd(dim, s + 4, RandomKind::PositiveSemidefinite);
    if (orthogonality_maxnorm_check(x, y, refined_level_grid(x, y)) &&
        spectral_norm(x.entries * y.entries) > 1e-6) {
      ++bad_converse;
    }
    ++total;
  }
  // Forced negative: A = B = I at level 1/2 gives ||C+D|| = 1 > 1/2.
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const bool negative_ok = !orthogonality_maxnorm_check(eye, eye, {0.5});
  std::vector<CheckRecord> out;
  out.push_back(trial_record("lemma/maxnorm-ortho", bad_ortho, total, "orthogonal pairs rejected"));
  out.push_back(trial_record("lemma/maxnorm-converse", bad_converse, total,
                             "true verdicts with ||XY|| > 1e-6"));
  out.push_back(make_record("lemma/maxnorm-negative", negative_ok, "A=B=I at level 0.5"));
  return out;
}

std::vector<CheckRecord> aw_ortho_suite(const SuiteConfig& cfg) {
  long bad = 0, bad_agree = 0, total = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const int dim = cfg.dims[t % cfg.dims.size()];
    const std::uint64_t s = mix_seed(cfg.seed, kAwSalt, t);
    const HermitianMatrix p = random_psd(dim, s, RandomKind::Projection);
    const HermitianMatrix q = HermitianMatrix::identity(dim) - p;
    const HermitianMatrix x = compress(p, random_psd(dim, s + 1, RandomKind::PositiveDefinite));
    const HermitianMatrix y = compress(q, random_psd(dim, s + 2, RandomKind::PositiveDefinite));
    if (!aw_ortho_check(x, y, refined_level_grid(x, y))) ++bad;

    const HermitianMatrix u = random_psd(dim, s + 3, RandomKind::PositiveSemidefinite);
    const HermitianMatrix v = random_psd(dim, s + 4, RandomKind::PositiveSemidefinite);
    const bool verdict = aw_ortho_check(u, v, refined_level_grid(u, v));
    const bool products_vanish = spectral_norm(u.entries * v.entries) <= 1e-8;
    if (verdict != products_vanish) ++bad_agree;
    ++total;
  }
  const HermitianMatrix eye = HermitianMatrix::identity(2);
  const bool negative_ok = !aw_ortho_check(eye, eye, {0.5});
  std::vector<CheckRecord> out;
  out.push_back(trial_record("lemma/aw-ortho", bad, total, "orthogonal pairs rejected"));
  out.push_back(trial_record("lemma/aw-ortho-agreement", bad_agree, total,
                             "verdicts disagree with ||XY|| <= 1e-8"));
  out.push_back(make_record("lemma/aw-ortho-negative", negative_ok, "X=Y=I at level 0.5"));
  return out;
}

std::vector<CheckRecord> hm_ortho_bound_suite(const SuiteConfig& cfg) {
  long bad_equal = 0, bad_strict = 0, total = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.trials; ++t) {
    const int dim = cfg.dims[t % cfg.dims.size()];
    const std::uint64_t s = mix_seed(cfg.seed, kHmBoundSalt, t);
    std::mt19937_64 rng(s);

    // Complementary pair scaled by positive weights: UV = 0, equality case.
    const HermitianMatrix p = random_psd(dim, rng(), RandomKind::Projection);
    const HermitianMatrix u = (0.5 + 2.0 * uniform01(rng)) * p;
    const HermitianMatrix v =
        (0.5 + 2.0 * uniform01(rng)) * (HermitianMatrix::identity(dim) - p);
    for (double level : {0.5, 1.0, 2.0}) {
      const OrthogonalityBoundReport r = hm_orthogonality_bound(level, u, v);
      if (std::abs(r.lhs - r.rhs) > 1e-9 || !r.satisfied) ++bad_equal;
    }

    // Overlapping projections with ||PQ|| > 0.1: strict violation at t = 1.
    HermitianMatrix pp = random_psd(dim, rng(), RandomKind::Projection);
    HermitianMatrix qq = random_psd(dim, rng(), RandomKind::Projection);
    for (int k = 0; k < 40 && spectral_norm(pp.entries * qq.entries) <= 0.1; ++k) {
      pp = random_psd(dim, rng(), RandomKind::Projection);
      qq = random_psd(dim, rng(), RandomKind::Projection);
    }
    const OrthogonalityBoundReport r = hm_orthogonality_bound(1.0, pp, qq);
    const double margin = r.lhs - r.rhs;
    min_margin = std::min(min_margin, margin);
    if (!(margin > 0.0)) ++bad_strict;
    ++total;
  }
  std::vector<CheckRecord> out;
  out.push_back(trial_record("lemma/hm-bound-equality", bad_equal, 3 * total,
                             "UV=0 cases off the bound"));
  CheckRecord strict = trial_record("lemma/hm-bound-strict", bad_strict, total,
                                    "overlapping pairs without strict violation");
  strict.metrics.emplace_back("min_margin", min_margin);
  out.push_back(std::move(strict));
  return out;
}

std::vector<CheckRecord> mean_chain_suite(const SuiteConfig& cfg) {
  long bad_chain = 0, bad_riccati = 0, bad_symmetry = 0, bad_unitary = 0, total = 0;
  for (int dim : cfg.dims) {
    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t s = mix_seed(cfg.seed, kChainSalt, dim * 100000 + t);
      const HermitianMatrix a = random_psd(dim, s, RandomKind::PositiveDefinite);
      const HermitianMatrix b = random_psd(dim, s + 1, RandomKind::PositiveDefinite);

      const HermitianMatrix hm = harmonic_mean(a, b);
      const HermitianMatrix gm = geometric_mean(a, b);
      const HermitianMatrix am = arithmetic_mean(a, b);
      if (!loewner_leq(hm, gm, 1e-8) || !loewner_leq(gm, am, 1e-8)) ++bad_chain;

      const CMatrix riccati = gm.entries * matrix_inverse(a).entries * gm.entries - b.entries;
      if (spectral_norm(riccati) > 1e-7 * (1.0 + op_norm(b))) ++bad_riccati;

      const HermitianMatrix gm_ba = geometric_mean(b, a);
      if (spectral_norm(gm.entries - gm_ba.entries) > 1e-8 * (1.0 + op_norm(gm))) ++bad_symmetry;

      const CMatrix u = random_unitary(dim, s + 2);
      const HermitianMatrix ua{CMatrix(u * a.entries * u.adjoint())};
      const HermitianMatrix ub{CMatrix(u * b.entries * u.adjoint())};
      const HermitianMatrix means[3] = {am, gm, hm};
      const HermitianMatrix conj[3] = {arithmetic_mean(ua, ub), geometric_mean(ua, ub),
                                       harmonic_mean(ua, ub)};
      for (int k = 0; k < 3; ++k) {
        const CMatrix diff = u * means[k].entries * u.adjoint() - conj[k].entries;
        if (spectral_norm(diff) > 1e-8 * (1.0 + op_norm(means[k]))) ++bad_unitary;
      }
      ++total;
    }
  }
  return {trial_record("means/am-gm-hm-chain", bad_chain, total, "pairs break the chain"),
          trial_record("means/riccati-residual", bad_riccati, total, "pairs exceed 1e-7"),
          trial_record("means/geometric-symmetry", bad_symmetry, total, "pairs break symmetry"),
          trial_record("means/unitary-invariance", bad_unitary, 3 * total, "conjugations drift")};
}

std::vector<CheckRecord> spectral_core_suite(const SuiteConfig& cfg) {
  long bad_roundtrip = 0;
  const int roundtrip_trials = 500;
  for (int t = 0; t < roundtrip_trials; ++t) {
    const int dim = 1 + (t % 8);
    const HermitianMatrix a = random_hermitian(dim, mix_seed(cfg.seed, kSpectralSalt, t));
    const SpectralDecomposition sd = decompose(a);
    bool ok = true;
    for (int i = 1; i < sd.eigenvalues.size(); ++i) {
      ok = ok && sd.eigenvalues(i - 1) <= sd.eigenvalues(i);
    }
    const CMatrix rebuilt =
        sd.eigenvectors * sd.eigenvalues.asDiagonal() * sd.eigenvectors.adjoint();
    ok = ok && spectral_norm(rebuilt - a.entries) <= kReconTol * (1.0 + op_norm(a));
    ok = ok && spectral_norm(sd.eigenvectors.adjoint() * sd.eigenvectors -
                             CMatrix::Identity(dim, dim)) <= kReconTol;
    if (!ok) ++bad_roundtrip;
  }

  long bad_fc = 0, bad_complement = 0, bad_order = 0, total = 0;
  const auto g = [](double t) { return 0.5 * t * t + t; };
  const auto f = [](double t) { return t * t; };
  for (int t = 0; t < cfg.trials; ++t) {
    const int dim = cfg.dims[t % cfg.dims.size()];
    const std::uint64_t s = mix_seed(cfg.seed, kSpectralSalt, 1000000 + t);
    HermitianMatrix a = random_psd(dim, s, RandomKind::PositiveSemidefinite);
    a = (2.0 / (1.0 + op_norm(a))) * a;  // keep polynomial magnitudes tame

    const HermitianMatrix composed = functional_calculus(a, [&](double v) { return f(g(v)); });
    const HermitianMatrix chained = functional_calculus(functional_calculus(a, g), f);
    if (spectral_norm(composed.entries - chained.entries) > 1e-8) ++bad_fc;

    const HermitianMatrix h = random_hermitian(dim, s + 1);
    const RVector eigs = decompose(h).eigenvalues;
    if (dim >= 2) {
      const int i = dim / 2 - (dim > 2 ? 1 : 0);
      const double cut = 0.5 * (eigs(i) + eigs(i + 1));
      if (std::abs(eigs(i) - cut) > kEigGapTol && std::abs(eigs(i + 1) - cut) > kEigGapTol) {
        const HermitianMatrix above = spectral_projection(h, Interval::greater_than(cut));
        const HermitianMatrix below = spectral_projection(h, Interval::less_than(cut));
        const CMatrix diff = above.entries + below.entries - CMatrix::Identity(dim, dim);
        if (spectral_norm(diff) > kReconTol) ++bad_complement;
      }
    }

    // Partial-order sampling: reflexivity, constructed chains, antisymmetry.
    const HermitianMatrix base = random_psd(dim, s + 2, RandomKind::PositiveDefinite);
    const HermitianMatrix step1 = random_psd(dim, s + 3, RandomKind::PositiveSemidefinite);
    const HermitianMatrix step2 = random_psd(dim, s + 4, RandomKind::PositiveSemidefinite);
    const HermitianMatrix mid = base + step1;
    const HermitianMatrix top = mid + step2;
    bool ok = loewner_leq(base, base, 1e-8);
    ok = ok && loewner_leq(base, mid, 1e-8) && loewner_leq(mid, top, 1e-8) &&
         loewner_leq(base, top, 1e-8);
    if (loewner_leq(mid, base, 1e-8) && op_norm(step1) > 1e-6) ok = false;
    if (!ok) ++bad_order;
    ++total;
  }
  return {trial_record("spectral/roundtrip", bad_roundtrip, roundtrip_trials, "decompositions drift"),
          trial_record("spectral/fc-composition", bad_fc, total, "compositions disagree"),
          trial_record("spectral/projection-complement", bad_complement, total, "complements break"),
          trial_record("spectral/loewner-partial-order", bad_order, total, "order axioms break")};
}

std::pair<ConeFunction, ConeFunction> random_limit_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(rng() % 11);  // 2..12 points
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  auto space = make_space(std::move(labels));

  // Dyadic lattice values keep the exact-stabilization margins rational.
  const double peak = (8 + static_cast<int>(rng() % 17)) / 8.0;  // 1 .. 3
  const unsigned mask = 1 + static_cast<unsigned>(rng() % ((1u << n) - 1));
  Eigen::ArrayXd g0(n), f(n);
  for (int i = 0; i < n; ++i) {
    if (mask & (1u << i)) {
      g0(i) = peak;
    } else {
      const double ratio = (2 + static_cast<int>(rng() % 8)) / 16.0;  // 1/8 .. 9/16
      g0(i) = peak * ratio;
    }
    f(i) = (4 + static_cast<int>(rng() % 61)) / 16.0;  // 1/4 .. 4, strictly positive
  }
  return {ConeFunction(space, g0), ConeFunction(space, f)};
}

std::vector<CheckRecord> limit_lemma_suite(const SuiteConfig& cfg) {
  long bad_am = 0, bad_gm = 0, bad_hm = 0, total = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    const auto [g0, f] = random_limit_pair(mix_seed(cfg.seed, kLimitSalt, t));

    const LimitSequence am = am_limit_sequence(g0, f, 80);
    bool ok = am.stabilized_at == am.predicted_n &&
              am.values[am.predicted_n - 1] == am.target;
    if (am.predicted_n > 1) ok = ok && am.values[am.predicted_n - 2] != am.target;
    if (!ok) ++bad_am;

    const LimitSequence gm = gm_limit_sequence(g0, f, 60);
    if (gm.stabilized_at < 0 ||
        std::abs(gm.values.back() - gm.target) > 1e-9 * (1.0 + gm.target)) {
      ++bad_gm;
    }

    const LimitSequence hm = hm_limit_sequence(g0, f, 80);
    const double hm_tol = 1e-12 * (1.0 + hm.target);
    ok = hm.stabilized_at == hm.predicted_n &&
         std::abs(hm.values[hm.predicted_n - 1] - hm.target) <= hm_tol;
    if (hm.predicted_n > 1) {
      ok = ok && std::abs(hm.values[hm.predicted_n - 2] - hm.target) > hm_tol;
    }
    if (!ok) ++bad_hm;
    ++total;
  }
  return {trial_record("limits/arithmetic", bad_am, total, "pairs miss exact stabilization"),
          trial_record("limits/geometric", bad_gm, total, "pairs not converged by n=60"),
          trial_record("limits/harmonic", bad_hm, total, "pairs miss exact stabilization")};
}

CompositionInstance random_composition_preserver(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int nx = 2 + static_cast<int>(rng() % 3);  // 2..4 points
  std::vector<std::string> xlabels(nx);
  for (int i = 0; i < nx; ++i) xlabels[i] = "x" + std::to_string(i);
  auto x_space = make_space(std::move(xlabels));

  FunctionFamily fam(x_space);
  for (unsigned mask = 1; mask < (1u << nx); ++mask) {
    const double peak = (8 + static_cast<int>(rng() % 25)) / 16.0;   // 1/2 .. 2
    const double off = (4 + static_cast<int>(rng() % 9)) / 16.0;     // 1/4 .. 3/4
    Eigen::ArrayXd vals(nx);
    for (int i = 0; i < nx; ++i) vals(i) = (mask & (1u << i)) ? peak : peak * off;
    fam.add("K" + std::to_string(mask), std::move(vals));
  }

  const int n_clean = nx + static_cast<int>(rng() % 3);
  const int n_junk = static_cast<int>(rng() % 4);
  std::vector<int> tau(n_clean);
  for (int i = 0; i < nx; ++i) tau[i] = i;
  for (int i = nx - 1; i > 0; --i) std::swap(tau[i], tau[rng() % (i + 1)]);
  for (int i = nx; i < n_clean; ++i) tau[i] = static_cast<int>(rng() % nx);

  std::vector<std::string> ylabels(n_clean + n_junk);
  for (std::size_t i = 0; i < ylabels.size(); ++i) ylabels[i] = "y" + std::to_string(i);
  auto y_space = make_space(std::move(ylabels));

  std::vector<double> junk_scale(n_junk);
  std::vector<int> junk_anchor(n_junk);
  for (int j = 0; j < n_junk; ++j) {
    junk_scale[j] = (4 + static_cast<int>(rng() % 11)) / 16.0;  // 1/4 .. 7/8
    junk_anchor[j] = static_cast<int>(rng() % nx);
  }

  CompositionInstance inst{PreserverMap(std::move(fam), y_space), {}, tau};
  for (int k = 0; k < n_clean; ++k) inst.clean_y.push_back(k);
  for (const auto& f : inst.map.domain.members) {
    Eigen::ArrayXd img(n_clean + n_junk);
    for (int k = 0; k < n_clean; ++k) img(k) = f.values(tau[k]);
    for (int j = 0; j < n_junk; ++j) {
      img(n_clean + j) = junk_scale[j] * f.values(junk_anchor[j]);
    }
    inst.map.add_image(std::move(img));
  }
  return inst;
}

std::vector<CheckRecord> roundtrip_reconstruction_suite(const SuiteConfig& cfg) {
  long bad_preserve = 0, bad_recon = 0, bad_supp = 0, total = 0;
  const MeanKind kinds[3] = {MeanKind::arithmetic(), MeanKind::geometric(),
                             MeanKind::harmonic()};
  for (int t = 0; t < cfg.trials; ++t) {
    const CompositionInstance inst =
        random_composition_preserver(mix_seed(cfg.seed, kRoundtripSalt, t));
    for (const MeanKind& kind : kinds) {
      if (!check_mean_preservation(inst.map, kind, 3, 1e-12).preserved()) ++bad_preserve;
    }

    bool supp_ok = check_peak_richness(inst.map.domain, 12).rich;
    for (int x = 0; x < inst.map.domain.space->size(); ++x) {
      const PsuppResult ps = psupp(inst.map, x);
      const PointSet sx = supp(inst.map, x, 1e-12);
      supp_ok = supp_ok && !sx.empty() && !ps.empty_pkat;
      for (int y : sx) {
        supp_ok = supp_ok && std::binary_search(ps.set.begin(), ps.set.end(), y);
      }
    }
    if (!supp_ok) ++bad_supp;

    try {
      const ReconstructionResult r = reconstruct(inst.map, 1e-12);
      bool ok = r.y0 == inst.clean_y && r.residual == 0.0 && r.injective_t &&
                r.surjective_tau;
      ok = ok && r.tau.size() == inst.tau.size();
      for (std::size_t k = 0; ok && k < r.tau.size(); ++k) ok = r.tau[k] == inst.tau[k];
      if (!ok) ++bad_recon;
    } catch (const Error&) {
      ++bad_recon;
    }
    ++total;
  }
  return {trial_record("roundtrip/preservation", bad_preserve, 3 * total, "mean checks fail"),
          trial_record("roundtrip/supp-structure", bad_supp, total,
                       "supp/psupp invariants fail"),
          trial_record("roundtrip/reconstruction", bad_recon, total, "tau not recovered")};
}

std::vector<CheckRecord> power_reduce_suite(const SuiteConfig& cfg) {
  const double exponents[4] = {2.0, 0.5, -1.0, -2.0};
  long bad = 0, total = 0;

  const auto verdicts_match = [&](const PreserverMap& map) {
    bool match = true;
    for (double p : exponents) {
      const bool direct =
          check_mean_preservation(map, MeanKind::power(p), 3, 1e-9).violations.empty();
      const PreserverMap conj = power_reduce(map, p);
      const MeanKind reduced = p > 0 ? MeanKind::arithmetic() : MeanKind::harmonic();
      const bool via_conj =
          check_mean_preservation(conj, reduced, 3, 1e-9).violations.empty();
      match = match && direct == via_conj;
    }
    return match;
  };

  for (const std::string& id : gallery_ids()) {
    if (!verdicts_match(gallery(id).map)) ++bad;
    ++total;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    CompositionInstance inst =
        random_composition_preserver(mix_seed(cfg.seed, kPowerSalt, t));
    if (t % 2 == 1) {
      // Mutated twin: break norm preservation of the first member.
      inst.map.images[0].values(0) = 3.0 * inst.map.domain.members[0].sup_norm();
    }
    if (!verdicts_match(inst.map)) ++bad;
    ++total;
  }
  return {trial_record("power-reduce/verdict-equivalence", bad, total, "instances disagree")};
}

std::vector<CheckRecord> verify_gallery(const GalleryInstance& instance) {
  std::vector<CheckRecord> out;
  const PreserverMap& map = instance.map;
  const std::string prefix = "gallery/" + instance.id + "/";

  for (const MeanClaim& claim : instance.expected.claims) {
    const std::string name =
        prefix + claim.kind.name() + "@" + std::to_string(claim.max_multiset);
    PreservationReport report =
        check_mean_preservation(map, claim.kind, claim.max_multiset, claim.tol);
    bool pass;
    std::string detail;
    if (claim.preserved) {
      pass = report.preserved();
      detail = std::to_string(report.violations.size()) + " violations in " +
               std::to_string(report.multisets_checked) + " multisets";
    } else {
      std::vector<int> wanted;
      for (const auto& nm : claim.witness_multiset) {
        wanted.push_back(map.domain.index_of(nm));
      }
      std::sort(wanted.begin(), wanted.end());
      pass = !report.violations.empty();
      bool found = false;
      for (const auto& v : report.violations) {
        if (v.members != wanted) continue;
        found = true;
        if (claim.exact_witness) {
          pass = pass && v.lhs == claim.witness_lhs && v.rhs == claim.witness_rhs;
        } else {
          pass = pass && std::abs(v.lhs - claim.witness_lhs) <= claim.witness_tol &&
                 std::abs(v.rhs - claim.witness_rhs) <= claim.witness_tol;
        }
        detail = "violation " + std::to_string(v.lhs) + " vs " + std::to_string(v.rhs);
        break;
      }
      pass = pass && found;
      if (!found) detail = "expected violating multiset not reported";
    }
    out.push_back(make_record(name, pass, detail));
  }

  for (const auto& [label, expected_set] : instance.expected.psupp_table) {
    const PsuppResult ps = psupp(map, map.domain.space->index_of(label));
    std::vector<std::string> got;
    for (int y : ps.set) got.push_back(map.target->points[y]);
    out.push_back(make_record(prefix + "psupp(" + label + ")", got == expected_set));
  }
  for (const auto& [label, expected_set] : instance.expected.supp_table) {
    const PointSet sx = supp(map, map.domain.space->index_of(label), instance.expected.supp_tol);
    std::vector<std::string> got;
    for (int y : sx) got.push_back(map.target->points[y]);
    out.push_back(make_record(prefix + "supp(" + label + ")", got == expected_set));
  }

  if (instance.expected.reconstructible) {
    try {
      const ReconstructionResult r = reconstruct(map, instance.expected.supp_tol);
      std::vector<std::string> y0_labels;
      for (int y : r.y0) y0_labels.push_back(map.target->points[y]);
      std::vector<std::string> want_y0 = instance.expected.y0;
      std::sort(y0_labels.begin(), y0_labels.end());
      std::sort(want_y0.begin(), want_y0.end());
      bool pass = y0_labels == want_y0 && r.residual <= 1e-12 && r.surjective_tau;
      for (const auto& [ylabel, xlabel] : instance.expected.tau) {
        bool matched = false;
        for (std::size_t k = 0; k < r.y0.size(); ++k) {
          if (map.target->points[r.y0[k]] == ylabel) {
            matched = map.domain.space->points[r.tau[k]] == xlabel;
            break;
          }
        }
        pass = pass && matched;
      }
      out.push_back(make_record(prefix + "reconstruct", pass,
                                "residual " + std::to_string(r.residual)));

      const HomeomorphismReport h = check_homeomorphism_case(map, r, 12);
      bool rich_pass = h.image_rich == instance.expected.image_rich;
      if (h.image_rich) rich_pass = rich_pass && h.y0_is_all && h.bijective;
      out.push_back(make_record(prefix + "image-richness", rich_pass));
    } catch (const Error& e) {
      out.push_back(make_record(prefix + "reconstruct", false, e.what()));
    }
  } else {
    bool failed_as_expected = false;
    std::string detail;
    try {
      reconstruct(map, instance.expected.supp_tol);
      detail = "reconstruction unexpectedly succeeded";
    } catch (const NotAPreserverError&) {
      failed_as_expected = true;
    } catch (const DisjointnessViolationError&) {
      failed_as_expected = true;
    }
    out.push_back(make_record(prefix + "not-reconstructible", failed_as_expected, detail));
  }

  if (instance.expected.nonextend_members) {
    const auto& [na, nb] = *instance.expected.nonextend_members;
    const int ia = map.domain.index_of(na);
    const int ib = map.domain.index_of(nb);
    const double diff = (map.images[ia].values - map.images[ib].values).abs().maxCoeff();
    out.push_back(make_record(
        prefix + "nonextendability", diff >= instance.expected.nonextend_lower,
        "||T" + na + " - T" + nb + "|| = " + std::to_string(diff)));
  }
  return out;
}

SuiteReport gallery_suite(int grid_size) {
  SuiteReport report;
  for (const std::string& id : gallery_ids()) {
    const auto records = verify_gallery(gallery(id, grid_size));
    report.records.insert(report.records.end(), records.begin(), records.end());
  }
  return report;
}

SuiteReport lemma_suite(const SuiteConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  const auto add = [&report](std::vector<CheckRecord> records) {
    for (auto& r : records) report.records.push_back(std::move(r));
  };
  add(spectral_core_suite(cfg));
  add(order_witness_suite(cfg));
  add(equality_witness_suite(cfg));
  add(maxnorm_ortho_suite(cfg));
  add(aw_ortho_suite(cfg));
  add(hm_ortho_bound_suite(cfg));
  add(mean_chain_suite(cfg));
  add(limit_lemma_suite(cfg));
  add(roundtrip_reconstruction_suite(cfg));
  add(power_reduce_suite(cfg));
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace meanlab
