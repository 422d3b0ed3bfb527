// Acceptance suite: one check per criterion, each with its pinned tolerances
// and runtime budget. Prints a pass/fail line per criterion and exits nonzero
// when any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "meanlab/json_io.hpp"
#include "meanlab/suites.hpp"

using namespace meanlab;

namespace {

int g_failures = 0;

void run_criterion(int number, const std::string& title, double budget_seconds,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (elapsed >= budget_seconds) {
    pass = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over the runtime budget");
  }
  if (!pass) ++g_failures;
  std::printf("[%2d] %s  %s (%.2fs)%s%s\n", number, pass ? "PASS" : "FAIL", title.c_str(),
              elapsed, detail.empty() ? "" : " - ", detail.c_str());
}

bool records_pass(const std::vector<CheckRecord>& records, std::string& detail) {
  bool ok = true;
  for (const auto& r : records) {
    if (r.status == "fail") {
      ok = false;
      detail += r.name + " (" + r.detail + "); ";
    }
  }
  return ok;
}

std::vector<std::string> point_labels(const PreserverMap& map, const PointSet& set) {
  std::vector<std::string> out;
  for (int y : set) out.push_back(map.target->points[y]);
  return out;
}

bool criterion_supp_not_psupp(std::string& detail) {
  const GalleryInstance g = gallery("supp_not_psupp");
  bool ok = true;

  ok = ok && point_labels(g.map, psupp(g.map, 0).set) == std::vector<std::string>{"1", "3"};
  ok = ok && point_labels(g.map, psupp(g.map, 1).set) == std::vector<std::string>{"2"};
  ok = ok && point_labels(g.map, supp(g.map, 0, 1e-12)) == std::vector<std::string>{"1"};
  ok = ok && point_labels(g.map, supp(g.map, 1, 1e-12)) == std::vector<std::string>{"2"};
  if (!ok) detail += "psupp/supp tables differ; ";

  for (const MeanKind kind :
       {MeanKind::arithmetic(), MeanKind::geometric(), MeanKind::harmonic()}) {
    const PreservationReport r = check_mean_preservation(g.map, kind, 3, 1e-12);
    if (!r.preserved()) {
      ok = false;
      detail += kind.name() + " has violations; ";
    }
  }

  const ReconstructionResult r = reconstruct(g.map, 1e-12);
  const bool recon_ok = point_labels(g.map, r.y0) == std::vector<std::string>{"1", "2"} &&
                        r.tau == std::vector<int>{0, 1} && r.residual == 0.0;
  if (!recon_ok) detail += "reconstruction differs; ";
  return ok && recon_ok;
}

bool criterion_2notn(std::string& detail) {
  const GalleryInstance g = gallery("2notn", 101);
  const PreservationReport pairs =
      check_mean_preservation(g.map, MeanKind::arithmetic(), 2, 1e-9);
  if (!pairs.preserved()) {
    detail = "a pair violates norm-additivity";
    return false;
  }
  const PreservationReport triples =
      check_mean_preservation(g.map, MeanKind::arithmetic(), 3, 1e-9);
  for (const auto& v : triples.violations) {
    if (v.members == std::vector<int>{0, 1, 2}) {
      if (v.lhs == 5.5 && v.rhs == 6.0) return true;
      detail = "triple norms are " + std::to_string(v.lhs) + " vs " + std::to_string(v.rhs);
      return false;
    }
  }
  detail = "triple {1,2,3} not reported";
  return false;
}

bool criterion_not_full(std::string& detail) {
  const GalleryInstance g = gallery("not_full", 11);
  if (!check_mean_preservation(g.map, MeanKind::arithmetic(), 4, 1e-9).preserved()) {
    detail = "not finitely norm-additive up to size 4";
    return false;
  }
  const ReconstructionResult r = reconstruct(g.map, 1e-12);
  if (point_labels(g.map, r.y0) != std::vector<std::string>{"0"}) {
    detail = "Y0 is not the singleton {0}";
    return false;
  }
  const int i2 = g.map.domain.index_of("2");
  const int i1 = g.map.domain.index_of("1");
  const double diff = (g.map.images[i2].values - g.map.images[i1].values).abs().maxCoeff();
  if (diff < 1.5) {
    detail = "||T2 - T1|| = " + std::to_string(diff);
    return false;
  }
  return true;
}

bool criterion_order_witnesses(std::string& detail) {
  return records_pass(order_witness_suite({0, 300, {2, 3, 4, 5, 6}}), detail);
}

bool criterion_equality_witness(std::string& detail) {
  return records_pass(equality_witness_suite({0, 50, {2, 3, 4, 5}}), detail);
}

bool criterion_hm_bound(std::string& detail) {
  return records_pass(hm_ortho_bound_suite({0, 100, {2, 3, 4, 5, 6}}), detail);
}

bool criterion_chain_riccati(std::string& detail) {
  return records_pass(mean_chain_suite({0, 300, {2, 3, 4, 5, 6}}), detail);
}

bool criterion_limits(std::string& detail) {
  return records_pass(limit_lemma_suite({0, 200, {}}), detail);
}

bool criterion_roundtrip(std::string& detail) {
  return records_pass(roundtrip_reconstruction_suite({0, 100, {}}), detail);
}

bool criterion_power_reduce(std::string& detail) {
  return records_pass(power_reduce_suite({0, 50, {}}), detail);
}

}  // namespace

int main() {
  run_criterion(1, "supp/psupp tables, three means, reconstruction", 1.0,
                criterion_supp_not_psupp);
  run_criterion(2, "norm-additive but not finitely: 11/2 vs 6", 1.0, criterion_2notn);
  run_criterion(3, "good part {0} and non-extendability 3/2", 1.0, criterion_not_full);
  run_criterion(4, "order witnesses match the eigenvalue oracle", 10.0,
                criterion_order_witnesses);
  run_criterion(5, "constructive equality witness", 10.0, criterion_equality_witness);
  run_criterion(6, "harmonic orthogonality bound", 5.0, criterion_hm_bound);
  run_criterion(7, "AM-GM-HM chain and Riccati residual", 10.0, criterion_chain_riccati);
  run_criterion(8, "limit formulas stabilize as predicted", 5.0, criterion_limits);
  run_criterion(9, "round-trip composition-operator reconstruction", 10.0,
                criterion_roundtrip);
  run_criterion(10, "power-mean reduction verdict equivalence", 10.0,
                criterion_power_reduce);

  if (g_failures == 0) {
    std::printf("acceptance: all 10 criteria pass\n");
  } else {
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
