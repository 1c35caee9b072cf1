#pragma once

// Non-crossing partitions of finite ordered ground sets: enumeration,
// refinement order, Moebius function and Kreweras complement.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freeembed/limits.hpp"
#include "json.hpp"

namespace freeembed {

using Block = std::vector<int>;

/// Strictly increasing list of positive integers.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<int> elements);

  /// {1, ..., n}
  static GroundSet range(std::size_t n);

  std::span<const int> elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  int operator[](std::size_t pos) const { return elements_[pos]; }

  /// Zero-based position of `element`, if present.
  std::optional<std::size_t> position_of(int element) const;
  bool contains(int element) const { return position_of(element).has_value(); }

  friend bool operator==(const GroundSet&, const GroundSet&) = default;
  friend auto operator<=>(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<int> elements_;
};

/// A set partition held in canonical form: blocks ascending internally and
/// ordered by their minimum element. Construction validates that the blocks
/// are non-empty, pairwise disjoint and cover the ground set.
class SetPartition {
 public:
  SetPartition() = default;
  SetPartition(GroundSet ground, std::vector<Block> blocks);

  /// Partition whose ground set is the union of `blocks`.
  static SetPartition from_blocks(std::vector<Block> blocks);
  /// 0 of the lattice: all singletons.
  static SetPartition singletons(const GroundSet& ground);
  /// 1 of the lattice: one block (empty partition on an empty ground set).
  static SetPartition one_block(const GroundSet& ground);

  /// Parses the text form "{{1,2},{3}}". Whitespace is ignored.
  static SetPartition parse(std::string_view text);

  const GroundSet& ground() const noexcept { return ground_; }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  std::size_t size() const noexcept { return ground_.size(); }

  /// Block index for every ground position (in ground order).
  std::vector<std::size_t> block_labels() const;

  /// Order-preserving transport onto another ground set of the same size.
  SetPartition relabeled(const GroundSet& target) const;
  /// Transport onto {1, ..., size()}.
  SetPartition standardized() const { return relabeled(GroundSet::range(size())); }

  std::string to_string() const;

  friend bool operator==(const SetPartition& a, const SetPartition& b) {
    return a.ground_ == b.ground_ && a.blocks_ == b.blocks_;
  }
  friend std::strong_ordering operator<=>(const SetPartition& a, const SetPartition& b) {
    if (auto c = a.ground_ <=> b.ground_; c != 0) return c;
    return a.blocks_ <=> b.blocks_;
  }

 private:
  GroundSet ground_;
  std::vector<Block> blocks_;
};

/// A partition all of whose blocks have exactly two elements.
class PairPartition {
 public:
  PairPartition() = default;
  explicit PairPartition(SetPartition underlying);

  const SetPartition& partition() const noexcept { return underlying_; }
  const GroundSet& ground() const noexcept { return underlying_.ground(); }
  const std::vector<Block>& pairs() const noexcept { return underlying_.blocks(); }
  std::size_t size() const noexcept { return underlying_.size(); }

  /// The element paired with `element`.
  int partner(int element) const;

  std::string to_string() const { return underlying_.to_string(); }

  friend bool operator==(const PairPartition&, const PairPartition&) = default;
  friend auto operator<=>(const PairPartition&, const PairPartition&) = default;

 private:
  SetPartition underlying_;
};

bool is_noncrossing(const SetPartition& p);

/// All non-crossing partitions of `ground` in lexicographic order of their
/// canonical forms. There are Catalan(|ground|) of them.
std::vector<SetPartition> enumerate_nc(const GroundSet& ground,
                                       const Limits& limits = default_limits());

/// All non-crossing pair partitions of `ground`, Catalan(|ground|/2) of them.
std::vector<PairPartition> enumerate_nc2(const GroundSet& ground,
                                         const Limits& limits = default_limits());

/// Refinement order: every block of `p` lies inside a block of `q`.
bool leq(const SetPartition& p, const SetPartition& q);

/// Moebius function of the non-crossing partition lattice, evaluated through
/// the recursion mu(s,s) = 1, mu(s,p) = -sum_{s <= r < p} mu(s,r) with r
/// ranging over non-crossing partitions only.
///
/// Rows mu(s, .) are memoized per instance; an instance is not meant to be
/// shared across threads. Create one per caller.
class MobiusFunction {
 public:
  explicit MobiusFunction(const Limits& limits = default_limits()) : limits_(limits) {}

  std::int64_t operator()(const SetPartition& s, const SetPartition& p);

  /// mu(s, r) for every non-crossing r >= s.
  const std::map<SetPartition, std::int64_t>& row(const SetPartition& s);

  /// mu(r, p) for every non-crossing r <= p, by the dual recursion
  /// mu(r, p) = -sum over r < q <= p of mu(q, p).
  const std::map<SetPartition, std::int64_t>& column(const SetPartition& p);

 private:
  const std::vector<SetPartition>& lattice(const GroundSet& ground);

  Limits limits_;
  std::map<GroundSet, std::vector<SetPartition>> lattices_;
  std::map<SetPartition, std::map<SetPartition, std::int64_t>> rows_;
  std::map<SetPartition, std::map<SetPartition, std::int64_t>> columns_;
};

std::int64_t mobius(const SetPartition& s, const SetPartition& p,
                    const Limits& limits = default_limits());

/// Kreweras complement. Points are interlaced as 1, 1', 2, 2', ..., n, n';
/// the result is the largest non-crossing partition of the primed points whose
/// union with `p` is non-crossing, reported on the ground set of `p`.
///
/// Two primed points may share a block of an admissible partition only if the
/// pair does not cross any block of `p`; the result is the closure of that
/// relation. It is verified to be admissible and to contain every pairwise
/// compatible pair, which makes it the maximum of the admissible set.
SetPartition kreweras(const SetPartition& p, const Limits& limits = default_limits());

void to_json(nlohmann::json& j, const SetPartition& p);
void from_json(const nlohmann::json& j, SetPartition& p);
void to_json(nlohmann::json& j, const PairPartition& p);
void from_json(const nlohmann::json& j, PairPartition& p);

}  // namespace freeembed
