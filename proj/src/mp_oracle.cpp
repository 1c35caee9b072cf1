#include "freeembed/mp_oracle.hpp"

#include <algorithm>
#include <utility>

#include "freeembed/errors.hpp"

namespace freeembed {

namespace {

void require_symbolic_cap(std::size_t k, const Limits& limits, const char* what) {
  if (k > limits.max_symbolic) throw SizeLimitError(what, k, limits.max_symbolic);
}

// Family carrying the interlaced point e of {1, ..., 2k}.
int interlaced_family(const Word& w, int e) { return w[static_cast<std::size_t>((e + 1) / 2 - 1)]; }

template <typename Part>
std::map<BlockProfile, std::vector<Part>> empty_profile_box(const WordStats& stats) {
  std::map<BlockProfile, std::vector<Part>> out;
  const auto families = stats.present_families();
  BlockProfile t(families.size(), 0);
  while (true) {
    out.emplace(t, std::vector<Part>{});
    std::size_t i = 0;
    for (; i < t.size(); ++i) {
      if (++t[i] < stats.counts[static_cast<std::size_t>(families[i] - 1)]) break;
      t[i] = 0;
    }
    if (i == t.size()) break;
  }
  return out;
}

}  // namespace

std::vector<int> WordStats::present_families() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.push_back(static_cast<int>(i + 1));
  }
  return out;
}

WordStats word_stats(const Word& w) {
  const auto m = static_cast<std::size_t>(w.families());
  std::vector<std::vector<int>> pos(m);
  std::vector<std::vector<int>> inter(m);
  for (std::size_t j = 0; j < w.size(); ++j) {
    const auto f = static_cast<std::size_t>(w[j] - 1);
    const int one_based = static_cast<int>(j + 1);
    pos[f].push_back(one_based);
    inter[f].push_back(2 * one_based - 1);
    inter[f].push_back(2 * one_based);
  }
  WordStats stats{w, {}, {}, {}};
  for (std::size_t f = 0; f < m; ++f) {
    stats.counts.push_back(pos[f].size());
    stats.positions.emplace_back(std::move(pos[f]));
    stats.interlaced.emplace_back(std::move(inter[f]));
  }
  return stats;
}

std::string to_string(const BlockProfile& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(t[i]);
  }
  return out + ")";
}

std::map<BlockProfile, std::vector<SetPartition>> enumerate_A(const Word& w, const Limits& limits) {
  require_symbolic_cap(w.size(), limits, "enumerate_A");
  const WordStats stats = word_stats(w);
  const auto families = stats.present_families();
  auto out = empty_profile_box<SetPartition>(stats);
  for (auto& pi : enumerate_nc(GroundSet::range(w.size()), limits)) {
    std::vector<std::size_t> blocks_per_family(static_cast<std::size_t>(w.families()), 0);
    bool pure = true;
    for (const auto& b : pi.blocks()) {
      const int f = w[static_cast<std::size_t>(b.front() - 1)];
      pure = std::all_of(b.begin(), b.end(), [&](int e) { return w[static_cast<std::size_t>(e - 1)] == f; });
      if (!pure) break;
      ++blocks_per_family[static_cast<std::size_t>(f - 1)];
    }
    if (!pure) continue;
    BlockProfile t;
    for (int f : families) t.push_back(blocks_per_family[static_cast<std::size_t>(f - 1)] - 1);
    out.at(t).push_back(std::move(pi));
  }
  return out;
}

std::size_t odd_first_count(const PairPartition& p) {
  return static_cast<std::size_t>(
      std::count_if(p.pairs().begin(), p.pairs().end(), [](const Block& b) { return b.front() % 2 != 0; }));
}

std::map<BlockProfile, std::vector<PairPartition>> enumerate_B(const Word& w, const Limits& limits) {
  require_symbolic_cap(w.size(), limits, "enumerate_B");
  const WordStats stats = word_stats(w);
  const auto families = stats.present_families();
  auto out = empty_profile_box<PairPartition>(stats);
  for (auto& pi : enumerate_nc2(GroundSet::range(2 * w.size()), limits)) {
    std::vector<std::size_t> odd_first(static_cast<std::size_t>(w.families()), 0);
    bool pure = true;
    for (const auto& b : pi.pairs()) {
      const int f = interlaced_family(w, b[0]);
      if (interlaced_family(w, b[1]) != f) {
        pure = false;
        break;
      }
      if (b[0] % 2 != 0) ++odd_first[static_cast<std::size_t>(f - 1)];
    }
    if (!pure) continue;
    BlockProfile t;
    for (int f : families) {
      const std::size_t s = odd_first[static_cast<std::size_t>(f - 1)];
      if (s == 0 || s > stats.counts[static_cast<std::size_t>(f - 1)]) {
        throw StructureError("pair partition " + pi.to_string() + " has an out-of-range odd-first count");
      }
      t.push_back(s - 1);
    }
    out.at(t).push_back(std::move(pi));
  }
  return out;
}

SetPartition restrict_to(const SetPartition& p, const GroundSet& ground) {
  std::vector<Block> blocks;
  for (const auto& b : p.blocks()) {
    const auto inside = std::count_if(b.begin(), b.end(), [&](int e) { return ground.contains(e); });
    if (inside == 0) continue;
    if (static_cast<std::size_t>(inside) != b.size()) {
      throw DomainError("block of " + p.to_string() + " straddles the restriction ground set");
    }
    blocks.push_back(b);
  }
  return SetPartition(ground, std::move(blocks));
}

PairPartition restrict_to(const PairPartition& p, const GroundSet& ground) {
  return PairPartition(restrict_to(p.partition(), ground));
}

SetPartition bijection_f(const PairPartition& p) {
  const std::size_t n = p.size();
  if (n % 2 != 0 || p.ground() != GroundSet::range(n)) {
    throw DomainError("bijection_f needs a pair partition of {1..2k}, got " + p.to_string());
  }
  const int k = static_cast<int>(n / 2);
  std::vector<int> partner(n + 1, 0);
  for (const auto& b : p.pairs()) {
    partner[static_cast<std::size_t>(b[0])] = b[1];
    partner[static_cast<std::size_t>(b[1])] = b[0];
  }

  std::vector<bool> used(static_cast<std::size_t>(k) + 1, false);
  std::vector<Block> blocks;
  auto take = [&](Block& block, int i) {
    if (used[static_cast<std::size_t>(i)]) {
      throw StructureError("bijection_f: index " + std::to_string(i) + " reached twice in " + p.to_string());
    }
    used[static_cast<std::size_t>(i)] = true;
    block.push_back(i);
  };

  for (int j = 1; j <= k; ++j) {
    const int start = 2 * j - 1;
    const int q = partner[static_cast<std::size_t>(start)];
    if (q < start) continue;  // not an odd first element
    if (q % 2 != 0) throw StructureError("bijection_f: odd element paired with odd element in " + p.to_string());
    Block block;
    int cur = q / 2;
    take(block, cur);
    for (int steps = 0; cur != j; ++steps) {
      const int r = partner[static_cast<std::size_t>(2 * cur - 1)];
      if (steps > k || r % 2 != 0 || r > 2 * cur - 1) {
        throw StructureError("bijection_f: chain from " + std::to_string(start) + " does not close in " +
                             p.to_string());
      }
      cur = r / 2;
      take(block, cur);
    }
    blocks.push_back(std::move(block));
  }

  SetPartition result(GroundSet::range(static_cast<std::size_t>(k)), std::move(blocks));
  if (!is_noncrossing(result)) {
    throw StructureError("bijection_f produced crossing partition " + result.to_string());
  }
  return result;
}

SetPartition kreweras_gap_blocks(const PairPartition& p, const Limits& limits) {
  const std::size_t n = p.size();
  if (p.ground() != GroundSet::range(n)) {
    throw DomainError("gap numbering needs a pair partition of {1..2k}, got " + p.to_string());
  }
  const SetPartition k = kreweras(p.partition(), limits);
  std::vector<Block> blocks = k.blocks();
  for (auto& b : blocks) {
    for (int& e : b) e = static_cast<int>(static_cast<std::size_t>(e) % n) + 1;
  }
  return SetPartition(GroundSet::range(n), std::move(blocks));
}

ParityCounts kreweras_parity_counts(const PairPartition& p, const Limits& limits) {
  ParityCounts counts;
  const SetPartition gaps = kreweras_gap_blocks(p, limits);
  for (const auto& b : gaps.blocks()) {
    const auto even = std::count_if(b.begin(), b.end(), [](int e) { return e % 2 == 0; });
    if (even == 0) {
      ++counts.odd_blocks;
    } else if (static_cast<std::size_t>(even) == b.size()) {
      ++counts.even_blocks;
    } else {
      throw StructureError("Kreweras block of " + p.to_string() + " mixes parities");
    }
  }
  if (counts.even_blocks + counts.odd_blocks != p.size() / 2 + 1) {
    throw StructureError("Kreweras complement of " + p.to_string() + " has the wrong block count");
  }
  return counts;
}

YPolynomial lemma2_moment(const Word& w, const Limits& limits) {
  const auto k = static_cast<std::uint32_t>(w.size());
  YPolynomial total;
  for (const auto& [t, cls] : enumerate_A(w, limits)) {
    if (cls.empty()) continue;
    std::uint32_t used = 0;
    for (std::size_t ti : t) used += static_cast<std::uint32_t>(ti + 1);
    total += YPolynomial::monomial(static_cast<std::int64_t>(cls.size()), k - used);
  }
  return total;
}

YPolynomial mp_free_mixed_moment(const Word& w, const Limits& limits) {
  std::vector<CumulantSpec> specs;
  for (int f = 1; f <= w.families(); ++f) specs.push_back(marchenko_pastur("g" + std::to_string(f)));
  return free_mixed_moment(specs, w, limits);
}

YPolynomial theorem2_rhs(const Word& w, const Limits& limits) {
  const std::size_t k = w.size();
  const MomentSpec a0 = upper_corner_projection();
  const MomentSpec a1 = lower_corner_projection();
  std::vector<MomentSpec> gaps;
  for (std::size_t g = 1; g <= 2 * k; ++g) gaps.push_back(g % 2 != 0 ? a0 : a1);

  const RationalFunction phi_a0 = a0.phi(1);
  const RationalFunction phi_a1 = a1.phi(1);
  RationalFunction sum(0);
  for (const auto& [t, cls] : enumerate_B(w, limits)) {
    for (const auto& pi : cls) {
      RationalFunction value;
      try {
        value = phi_pi(kreweras_gap_blocks(pi, limits), gaps);
      } catch (const UnsupportedMixedBlock&) {
        throw StructureError("Kreweras complement of " + pi.to_string() + " joins both projections");
      }
      const ParityCounts parity = kreweras_parity_counts(pi, limits);
      const RationalFunction by_parity = phi_a0.pow(static_cast<std::uint32_t>(parity.odd_blocks)) *
                                         phi_a1.pow(static_cast<std::uint32_t>(parity.even_blocks));
      if (value != by_parity) {
        throw StructureError("phi_K(pi) disagrees with its parity count for " + pi.to_string());
      }
      sum += value;
    }
  }
  const RationalFunction scale((YPolynomial(1) + YPolynomial::y()).pow(static_cast<std::uint32_t>(k + 1)),
                               YPolynomial::y());
  return (scale * sum).to_polynomial();
}

nlohmann::json word_report(const Word& w, const Limits& limits) {
  const auto a = enumerate_A(w, limits);
  const auto b = enumerate_B(w, limits);
  nlohmann::json profiles = nlohmann::json::object();
  for (const auto& [t, cls] : a) {
    profiles[to_string(t)] = {{"A", cls.size()}, {"B", b.at(t).size()}};
  }
  return {
      {"word", w.letters()},
      {"lemma2", lemma2_moment(w, limits)},
      {"free_mixed", mp_free_mixed_moment(w, limits)},
      {"theorem2_rhs", theorem2_rhs(w, limits)},
      {"profile_counts", profiles},
  };
}

}  // namespace freeembed
