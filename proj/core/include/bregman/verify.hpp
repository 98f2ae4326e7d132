// SPDX-License-Identifier: MIT
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bregman/lp_subdiff.hpp"
#include "bregman/report.hpp"

namespace bregman {

/// Graph point (x, u) of a subdifferential; sigma bounds the numerical error
/// of u.
struct GraphPoint {
  double x;
  double u;
  double sigma = 0.0;
};

/// One instance plus a seed, with lazily computed pieces shared by the
/// checks (range probe, threshold status, sampled subdifferential graph).
class VerifyContext {
 public:
  VerifyContext(const Instance& inst, std::uint64_t seed, const Settings& s = Settings{});

  const ProxEnv& pe() const { return pe_; }
  const Instance& instance() const { return pe_.instance(); }
  const Settings& settings() const { return pe_.settings(); }
  std::uint64_t seed() const { return seed_; }

  const RangeProbe& range() const;
  /// Legendre, 1-coercive and lambda below threshold; reason on failure.
  bool base_hypotheses(std::string* why = nullptr) const;
  /// Samples of the left subdifferential graph: prox outputs through the
  /// resolvent identity plus probes of the support set at sampled points.
  const std::vector<GraphPoint>& subdiff_graph() const;

  /// Seeded draws for a given stream tag.
  std::vector<double> primal_samples(std::uint64_t tag, std::size_t n) const;
  std::vector<double> dual_samples(std::uint64_t tag, std::size_t n) const;

 private:
  struct Lazy;
  ProxEnv pe_;
  std::uint64_t seed_;
  std::shared_ptr<Lazy> lazy_;
};

/// (x - x')(u - u') >= -(tol + |x - x'| sigma') for every graph point.
bool monotonically_related(const std::vector<GraphPoint>& graph, double x, double u, double tol = 1e-9);

/// Searches a coarse (x, u) lattice, restricted to abscissae where the
/// subdifferential is empty, for a point monotonically related to the sampled
/// graph.
std::optional<GraphPoint> non_maximality_witness(const VerifyContext& ctx);

// Each check throws HypothesesUnmet (or DomainNotFull for check_bcoco) when
// its hypotheses fail; run_suite records those as skipped reports.
VerifyReport check_weak_convexity(const VerifyContext& ctx);
VerifyReport check_dfne(const VerifyContext& ctx);
VerifyReport check_env_convexity(const VerifyContext& ctx);
VerifyReport check_bcoco(const VerifyContext& ctx);
VerifyReport check_bsmooth(const VerifyContext& ctx);
VerifyReport check_two_sided(const VerifyContext& ctx);
VerifyReport check_strong_convexity_sufficient(const VerifyContext& ctx);

/// Theorem ids in run order.
const std::vector<std::string>& theorem_ids();
VerifyReport run_check(const std::string& theorem, const VerifyContext& ctx);

/// Every check on every named instance, sequentially and in order.
/// Throws UnknownInstance.
std::vector<VerifyReport> run_suite(const std::vector<std::string>& names, std::uint64_t seed,
                                    const Settings& s = Settings{});

std::size_t total_violations(const std::vector<VerifyReport>& reports);

}  // namespace bregman
