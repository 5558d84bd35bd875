#pragma once

#include <vector>

#include "fdt/distribution.hpp"
#include "fdt/function.hpp"
#include "fdt/tree.hpp"

namespace fdt {

// Numerical side of the ratio minimax: computes a distribution mu against
// which every forecasting decision tree has cost/score^+ at least the game
// value, certifies it by exhaustive best response, and verifies the
// transcript-Hellinger consequences.

struct OptScoreResult {
  double score = 0.0;  // sum over leaves of (sqrt(a) - sqrt(b))^2
  Tree labeled;        // shape with posterior leaf labels b/(a+b)
};

// Best achievable hs score of a shape against mu, with the labels that
// achieve it (label 1/2 where no mass arrives).
OptScoreResult opt_score(const Tree& shape, const InputDistribution& mu);

struct BestResponse {
  std::size_t shape_index = 0;
  Tree labeled;
  Rational cost_at_mu;
  double score_at_mu = 0.0;
  double ratio = 0.0;  // cost/score^+, +inf when score <= 0
};

// Minimizes cost(shape, mu) / opt_score(shape, mu)^+ over all enumerated
// shapes; ties broken by enumeration order.
BestResponse best_response(const PartialFunction& f, const InputDistribution& mu);

struct SupportTreeInfo {
  Tree tree;
  Rational cost_at_mu;
  double score_at_mu = 0.0;
  double ratio = 0.0;
};

struct HardCertificate {
  InputDistribution mu;       // exact rational, exactly balanced
  double lambda_star = 0.0;   // best-response value at mu (certified side)
  double upper_bound = 0.0;   // restricted-game value (other side)
  double tolerance = 0.0;
  int iterations = 0;
  bool converged = false;
  Rational imbalance;         // mu(f^{-1}(1)) - 1/2, exactly 0 on success
  std::vector<SupportTreeInfo> support_trees;  // active best responses at mu
};

// Double-oracle loop: restricted ratio game over a growing set of labeled
// trees (bisection on lambda, exact-rational feasibility LP over mu),
// alternating with exhaustive best responses. Throws on constant f;
// reports (not throws) non-convergence within max_iter.
HardCertificate solve_hard(const PartialFunction& f, double tol = 1e-6, int max_iter = 200);

struct SplitHardPair {
  InputDistribution mu0;  // conditional of mu on f^{-1}(0)
  InputDistribution mu1;  // conditional of mu on f^{-1}(1)
};

// Exact conditionals of the certificate's mu. Errors when mu is unbalanced
// by more than 10x the certificate tolerance.
SplitHardPair split(const PartialFunction& f, const HardCertificate& cert);

struct ShapeRatioRow {
  std::size_t shape_index = 0;
  Rational cost_mu;        // cost against the balanced mu
  Rational cost_mu0;
  Rational cost_mu1;
  double h2_transcripts = 0.0;  // h^2(tran(D, mu0), tran(D, mu1))
  double opt_score_value = 0.0; // must equal h2 within 1e-9
  double ratio = 0.0;           // cost(D, mu)/h2, +inf when h2 = 0
  bool pass = true;
};

struct RatioBoundReport {
  double lambda_star = 0.0;
  double min_ratio = 0.0;      // over shapes with h2 > 0
  double rhs = 0.0;            // R(f)/240
  double max_h2_gap = 0.0;     // worst |h2 - opt_score|
  bool all_pass = true;
  std::vector<ShapeRatioRow> rows;
};

// For every enumerated shape with posterior labels: checks
// cost(D,mu)/h^2 >= lambda_star - tol and h^2 == opt_score, and reports the
// minimum ratio next to R(f)/240.
RatioBoundReport verify_ratio_bound(const PartialFunction& f, const HardCertificate& cert,
                                    int r_f);

struct ShaltielRow {
  std::size_t shape_index = 0;
  Rational min_cost;       // min(cost(D,mu0), cost(D,mu1))
  double h2_transcripts = 0.0;
  bool pass = true;        // min_cost >= h2 * R(f)/3000 - 1e-9
};

struct ShaltielReport {
  double min_ratio = 0.0;  // over shapes with h2 > 0
  double rhs = 0.0;        // R(f)/3000
  bool all_pass = true;
  std::vector<ShaltielRow> rows;
};

ShaltielReport verify_shaltiel_free(const PartialFunction& f, const SplitHardPair& pair, int r_f);

}  // namespace fdt
