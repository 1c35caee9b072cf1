#pragma once

// Mixed moments of free Marchenko-Pastur families: word statistics, the
// A- and B-partition classes, the chain-following bijection NC2(2k) -> NC(k),
// and the three routes to phi(g_{tau_1} ... g_{tau_k}).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "freeembed/free_calculus.hpp"
#include "freeembed/limits.hpp"
#include "freeembed/partition.hpp"
#include "freeembed/ypoly.hpp"
#include "json.hpp"

namespace freeembed {

/// Per-family position sets of a word. Vectors are indexed by family - 1 and
/// have length w.families(); absent families have empty sets.
struct WordStats {
  Word word;
  std::vector<GroundSet> positions;   // J_i = {j : tau_j = i}
  std::vector<std::size_t> counts;    // T_i = |J_i|
  std::vector<GroundSet> interlaced;  // union over j in J_i of {2j-1, 2j}

  /// Labels of the families with T_i >= 1, ascending.
  std::vector<int> present_families() const;
};

WordStats word_stats(const Word& w);

/// One entry t_i per present family (ascending label); the family's piece
/// has t_i + 1 blocks (A side) or t_i + 1 odd-first pairs (B side), so
/// 0 <= t_i <= T_i - 1.
using BlockProfile = std::vector<std::size_t>;

std::string to_string(const BlockProfile& t);

/// Every profile in the box 0 <= t_i <= T_i - 1 maps to its class; classes
/// may be empty.
std::map<BlockProfile, std::vector<SetPartition>> enumerate_A(const Word& w,
                                                              const Limits& limits = default_limits());
std::map<BlockProfile, std::vector<PairPartition>> enumerate_B(const Word& w,
                                                               const Limits& limits = default_limits());

/// Number of pairs whose smaller element is odd.
std::size_t odd_first_count(const PairPartition& p);

/// The piece of `p` living on `ground` (every pair of `p` must lie inside or
/// outside `ground`).
PairPartition restrict_to(const PairPartition& p, const GroundSet& ground);
SetPartition restrict_to(const SetPartition& p, const GroundSet& ground);

/// Chain-following map NC2(2k) -> NC(k). Every pair (2j-1, 2i) with odd first
/// element opens a block {i}; the chain continues from 2i-1 to its partner
/// 2i', adding i', until it returns to 2j. Requires ground {1, ..., 2k}.
/// Throws StructureError if a chain fails to close or blocks overlap.
SetPartition bijection_f(const PairPartition& p);

struct ParityCounts {
  std::size_t even_blocks = 0;
  std::size_t odd_blocks = 0;
  friend bool operator==(const ParityCounts&, const ParityCounts&) = default;
};

/// Kreweras complement of a pair partition of {1, ..., 2k} with the gaps of
/// the cyclic word numbered by the letter they precede: the gap after letter
/// j is gap j+1, the gap after letter 2k is gap 1. This is the numbering of
/// the projection word a0 s a1 s a0 s ... a1 s.
SetPartition kreweras_gap_blocks(const PairPartition& p, const Limits& limits = default_limits());

/// Parity split of kreweras_gap_blocks(p). Throws StructureError on a block
/// that mixes parities.
ParityCounts kreweras_parity_counts(const PairPartition& p, const Limits& limits = default_limits());

/// Closed form: sum over profiles of #A_t * y^(k - sum_i (t_i + 1)).
YPolynomial lemma2_moment(const Word& w, const Limits& limits = default_limits());

/// Free mixed moment of Marchenko-Pastur families (one per label 1..m).
YPolynomial mp_free_mixed_moment(const Word& w, const Limits& limits = default_limits());

/// The corner-embedding route: (1+y)^(k+1) / y times the sum over B_2k(tau)
/// of phi_{K(pi)} on the projection word, with a0 moments y/(1+y) on odd gaps
/// and a1 moments 1/(1+y) on even gaps. The phi_{K(pi)} factors are also
/// recomputed from kreweras_parity_counts and must agree. Throws
/// StructureError if the result is not a polynomial.
YPolynomial theorem2_rhs(const Word& w, const Limits& limits = default_limits());

/// {"word", "lemma2", "free_mixed", "theorem2_rhs", "profile_counts"}.
nlohmann::json word_report(const Word& w, const Limits& limits = default_limits());

}  // namespace freeembed
