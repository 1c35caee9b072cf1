#pragma once

// Finite-size random matrix checks: Wigner and sample covariance ensembles,
// the corner embedding of S into a Wigner matrix of order p+n, and Monte Carlo
// estimates of normalized traces of S-words.

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "freeembed/free_calculus.hpp"
#include "freeembed/limits.hpp"
#include "freeembed/ypoly.hpp"
#include "json.hpp"

namespace freeembed {

/// Entry distributions; both have mean 0, variance 1 and all moments finite.
enum class EntryLaw { gaussian, rademacher };

std::string to_string(EntryLaw law);
/// Accepts "gaussian" and "rademacher"; throws ConfigError otherwise.
EntryLaw parse_entry_law(std::string_view text);

using Engine = std::mt19937_64;

/// Independent stream `index` of master seed `seed`. Streams depend only on
/// the pair, so replicate draws do not depend on scheduling.
Engine make_stream(std::uint64_t seed, std::uint64_t index);

double draw_entry(EntryLaw law, Engine& engine);

/// Real symmetric matrix with independent entries on and above the diagonal.
Eigen::MatrixXd gen_wigner(std::size_t size, EntryLaw law, Engine& engine);

struct SampleCovariance {
  Eigen::MatrixXd x;  // p x n
  Eigen::MatrixXd s;  // x x^T / n
};

SampleCovariance sample_cov(std::size_t p, std::size_t n, EntryLaw law, Engine& engine);

/// [[w_upper, x], [x^T, w_lower]]. Throws DomainError on non-conforming blocks.
Eigen::MatrixXd embed(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w_upper, const Eigen::MatrixXd& w_lower);

struct EmbeddingCheck {
  double max_abs_deviation = 0.0;
  double max_entry = 0.0;  // largest entry magnitude on either side

  double tolerance() const { return 1e-12 * (1.0 + max_entry); }
  bool passes() const { return max_abs_deviation <= tolerance(); }
};

/// Compares diag(S, 0) against ((n+p)/n) Ibar (W/sqrt(n+p)) Iunder (W/sqrt(n+p)) Ibar
/// built from the same draws, Ibar = diag(I_p, 0) and Iunder = diag(0, I_n).
EmbeddingCheck verify_embedding_identity(std::size_t p, std::size_t n, EntryLaw law, std::uint64_t seed);

struct CornerMoments {
  Rational upper;  // (n+p)^-1 Tr(Ibar^r)
  Rational lower;  // (n+p)^-1 Tr(Iunder^r)
};

CornerMoments corner_projection_moments(std::size_t p, std::size_t n, std::size_t r);

struct SimConfig {
  std::size_t p = 1;
  std::size_t n = 1;
  int m = 1;
  Word word;
  std::size_t replicates = 2;
  std::uint64_t seed = 0;
  EntryLaw law = EntryLaw::gaussian;

  Rational y() const;
  /// Throws ConfigError on an inconsistent configuration.
  void validate() const;
};

struct SimReport {
  SimConfig config;
  double y = 0.0;
  double estimate = 0.0;   // mean over replicates of p^-1 Tr(S^(tau_1) ... S^(tau_k))
  double std_error = 0.0;  // 0 for a single replicate
  double oracle_value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
};

/// Replicate r draws X^(1), ..., X^(m) from stream r of the master seed and
/// evaluates the word product left to right. Replicates run on `threads`
/// workers (0: hardware concurrency); the mean and standard error are reduced
/// serially in replicate order, so the report is bit-reproducible.
SimReport mc_trace_moment(const SimConfig& cfg, std::size_t threads = 0,
                          const Limits& limits = default_limits());

/// One report per (p, n) rung. All rungs must share y = p/n within 1%.
std::vector<SimReport> convergence_study(const Word& word, std::span<const std::pair<std::size_t, std::size_t>> ladder,
                                         std::size_t replicates, std::uint64_t seed,
                                         EntryLaw law = EntryLaw::gaussian, std::size_t threads = 0,
                                         const Limits& limits = default_limits());

void to_json(nlohmann::json& j, const SimConfig& cfg);
void to_json(nlohmann::json& j, const SimReport& report);

/// "p,n,y,word,replicates,seed,estimate,std_error,oracle,abs_error,rel_error"
std::string csv_header();
std::string to_csv_row(const SimReport& report);

}  // namespace freeembed
