#include "freeembed/partition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <numeric>
#include <utility>

#include "freeembed/errors.hpp"

namespace freeembed {

// ---------------------------------------------------------------------------
// GroundSet

GroundSet::GroundSet(std::vector<int> elements) : elements_(std::move(elements)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] < 1) {
      throw ValidationError("ground set elements must be positive, got " +
                            std::to_string(elements_[i]));
    }
    if (i > 0 && elements_[i] <= elements_[i - 1]) {
      throw ValidationError("ground set must be strictly increasing");
    }
  }
}

GroundSet GroundSet::range(std::size_t n) {
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  return GroundSet(std::move(e));
}

std::optional<std::size_t> GroundSet::position_of(int element) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), element);
  if (it == elements_.end() || *it != element) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

// ---------------------------------------------------------------------------
// SetPartition

SetPartition::SetPartition(GroundSet ground, std::vector<Block> blocks)
    : ground_(std::move(ground)), blocks_(std::move(blocks)) {
  std::vector<bool> seen(ground_.size(), false);
  std::size_t covered = 0;
  for (auto& block : blocks_) {
    if (block.empty()) throw ValidationError("partition has an empty block");
    std::sort(block.begin(), block.end());
    for (int e : block) {
      auto pos = ground_.position_of(e);
      if (!pos) throw ValidationError("block element " + std::to_string(e) + " not in ground set");
      if (seen[*pos]) throw ValidationError("element " + std::to_string(e) + " occurs in two blocks");
      seen[*pos] = true;
      ++covered;
    }
  }
  if (covered != ground_.size()) throw ValidationError("blocks do not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

SetPartition SetPartition::from_blocks(std::vector<Block> blocks) {
  std::vector<int> all;
  for (const auto& b : blocks) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
    throw ValidationError("an element occurs in two blocks");
  }
  return SetPartition(GroundSet(std::move(all)), std::move(blocks));
}

SetPartition SetPartition::singletons(const GroundSet& ground) {
  std::vector<Block> blocks;
  for (int e : ground.elements()) blocks.push_back({e});
  return SetPartition(ground, std::move(blocks));
}

SetPartition SetPartition::one_block(const GroundSet& ground) {
  if (ground.empty()) return SetPartition(ground, {});
  return SetPartition(ground, {Block(ground.elements().begin(), ground.elements().end())});
}

namespace {

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  SetPartition parse() {
    std::vector<Block> blocks;
    expect('{');
    if (peek() != '}') {
      blocks.push_back(block());
      while (peek() == ',') {
        ++pos_;
        blocks.push_back(block());
      }
    }
    expect('}');
    if (peek() != '\0') fail("trailing characters");
    return SetPartition::from_blocks(std::move(blocks));
  }

 private:
  Block block() {
    Block b;
    expect('{');
    b.push_back(integer());
    while (peek() == ',') {
      ++pos_;
      b.push_back(integer());
    }
    expect('}');
    return b;
  }

  int integer() {
    skip_space();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc{}) fail("expected an integer");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ValidationError("cannot parse partition literal '" + std::string(text_) + "': " + msg +
                          " at offset " + std::to_string(pos_));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

SetPartition SetPartition::parse(std::string_view text) { return LiteralParser(text).parse(); }

std::vector<std::size_t> SetPartition::block_labels() const {
  std::vector<std::size_t> labels(ground_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (int e : blocks_[b]) labels[*ground_.position_of(e)] = b;
  }
  return labels;
}

SetPartition SetPartition::relabeled(const GroundSet& target) const {
  if (target.size() != ground_.size()) {
    throw DomainError("relabeling needs a ground set of size " + std::to_string(ground_.size()));
  }
  std::vector<Block> blocks = blocks_;
  for (auto& b : blocks) {
    for (int& e : b) e = target[*ground_.position_of(e)];
  }
  return SetPartition(target, std::move(blocks));
}

std::string SetPartition::to_string() const {
  std::string out = "{";
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b > 0) out += ',';
    out += '{';
    for (std::size_t i = 0; i < blocks_[b].size(); ++i) {
      if (i > 0) out += ',';
      out += std::to_string(blocks_[b][i]);
    }
    out += '}';
  }
  out += '}';
  return out;
}

// ---------------------------------------------------------------------------
// PairPartition

PairPartition::PairPartition(SetPartition underlying) : underlying_(std::move(underlying)) {
  for (const auto& b : underlying_.blocks()) {
    if (b.size() != 2) throw ValidationError("pair partition has a block of size " + std::to_string(b.size()));
  }
}

int PairPartition::partner(int element) const {
  for (const auto& b : underlying_.blocks()) {
    if (b[0] == element) return b[1];
    if (b[1] == element) return b[0];
  }
  throw DomainError("element " + std::to_string(element) + " not in pair partition");
}

// ---------------------------------------------------------------------------
// Crossing test

namespace {

// Labels listed in ground order. A block revisited while some block opened
// after it is still unfinished is a crossing.
bool labels_noncrossing(std::span<const std::size_t> labels, std::size_t block_count) {
  std::vector<std::size_t> last(block_count, 0);
  std::vector<bool> opened(block_count, false);
  for (std::size_t i = 0; i < labels.size(); ++i) last[labels[i]] = i;
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const std::size_t b = labels[i];
    if (!opened[b]) {
      opened[b] = true;
      if (last[b] != i) stack.push_back(b);
      continue;
    }
    if (stack.empty() || stack.back() != b) return false;
    if (last[b] == i) stack.pop_back();
  }
  return true;
}

// p <= q on block-label vectors of a common ground.
bool labels_leq(std::span<const std::size_t> p, std::span<const std::size_t> q) {
  std::vector<std::size_t> rep(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (rep[p[i]] == p.size()) {
      rep[p[i]] = i;
    } else if (q[i] != q[rep[p[i]]]) {
      return false;
    }
  }
  return true;
}

void require_same_ground(const SetPartition& a, const SetPartition& b, const char* op) {
  if (a.ground() != b.ground()) throw DomainError(std::string(op) + ": partitions live on different ground sets");
}

}  // namespace

bool is_noncrossing(const SetPartition& p) {
  auto labels = p.block_labels();
  return labels_noncrossing(labels, p.block_count());
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

class NcEnumerator {
 public:
  explicit NcEnumerator(const GroundSet& ground) : ground_(ground), labels_(ground.size()) {}

  std::vector<SetPartition> run() {
    if (ground_.empty()) {
      out_.push_back(SetPartition(ground_, {}));
    } else {
      extend(0);
    }
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  // Joining position i to block b is safe iff every position strictly between
  // the current end of b and i belongs to a block that starts after that end.
  bool can_join(std::size_t b, std::size_t i) const {
    const std::size_t end = last_[b];
    for (std::size_t j = end + 1; j < i; ++j) {
      if (first_[labels_[j]] < end) return false;
    }
    return true;
  }

  void extend(std::size_t i) {
    if (i == ground_.size()) {
      emit();
      return;
    }
    for (std::size_t b = 0; b < last_.size(); ++b) {
      if (!can_join(b, i)) continue;
      labels_[i] = b;
      const std::size_t saved = last_[b];
      last_[b] = i;
      extend(i + 1);
      last_[b] = saved;
    }
    labels_[i] = last_.size();
    first_.push_back(i);
    last_.push_back(i);
    extend(i + 1);
    first_.pop_back();
    last_.pop_back();
  }

  void emit() {
    std::vector<Block> blocks(last_.size());
    for (std::size_t i = 0; i < labels_.size(); ++i) blocks[labels_[i]].push_back(ground_[i]);
    out_.emplace_back(ground_, std::move(blocks));
  }

  const GroundSet& ground_;
  std::vector<std::size_t> labels_;
  std::vector<std::size_t> first_;
  std::vector<std::size_t> last_;
  std::vector<SetPartition> out_;
};

// Non-crossing perfect matchings of positions [lo, hi).
void matchings(std::size_t lo, std::size_t hi,
               std::vector<std::pair<std::size_t, std::size_t>>& current,
               const std::function<void()>& emit);

void matchings_then(std::size_t lo, std::size_t hi, std::size_t lo2, std::size_t hi2,
                    std::vector<std::pair<std::size_t, std::size_t>>& current,
                    const std::function<void()>& emit) {
  matchings(lo, hi, current, [&] { matchings(lo2, hi2, current, emit); });
}

void matchings(std::size_t lo, std::size_t hi,
               std::vector<std::pair<std::size_t, std::size_t>>& current,
               const std::function<void()>& emit) {
  if (lo >= hi) {
    emit();
    return;
  }
  for (std::size_t j = lo + 1; j < hi; j += 2) {
    current.emplace_back(lo, j);
    matchings_then(lo + 1, j, j + 1, hi, current, emit);
    current.pop_back();
  }
}

}  // namespace

std::vector<SetPartition> enumerate_nc(const GroundSet& ground, const Limits& limits) {
  if (ground.size() > limits.max_nc) {
    throw SizeLimitError("non-crossing partition enumeration", ground.size(), limits.max_nc);
  }
  return NcEnumerator(ground).run();
}

std::vector<PairPartition> enumerate_nc2(const GroundSet& ground, const Limits& limits) {
  if (ground.size() % 2 != 0) {
    throw DomainError("pair partitions need an even ground set, got size " + std::to_string(ground.size()));
  }
  if (ground.size() > limits.max_nc2) {
    throw SizeLimitError("non-crossing pair partition enumeration", ground.size(), limits.max_nc2);
  }
  std::vector<PairPartition> out;
  std::vector<std::pair<std::size_t, std::size_t>> current;
  matchings(0, ground.size(), current, [&] {
    std::vector<Block> blocks;
    blocks.reserve(current.size());
    for (auto [a, b] : current) blocks.push_back({ground[a], ground[b]});
    out.emplace_back(SetPartition(ground, std::move(blocks)));
  });
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Order and Moebius function

bool leq(const SetPartition& p, const SetPartition& q) {
  require_same_ground(p, q, "leq");
  return labels_leq(p.block_labels(), q.block_labels());
}

const std::vector<SetPartition>& MobiusFunction::lattice(const GroundSet& ground) {
  auto it = lattices_.find(ground);
  if (it == lattices_.end()) it = lattices_.emplace(ground, enumerate_nc(ground, limits_)).first;
  return it->second;
}

const std::map<SetPartition, std::int64_t>& MobiusFunction::row(const SetPartition& s) {
  if (auto it = rows_.find(s); it != rows_.end()) return it->second;
  if (!is_noncrossing(s)) throw DomainError("Moebius function needs non-crossing partitions, got " + s.to_string());

  const auto s_labels = s.block_labels();
  struct Entry {
    const SetPartition* partition;
    std::vector<std::size_t> labels;
  };
  std::vector<Entry> upper;
  for (const auto& r : lattice(s.ground())) {
    auto labels = r.block_labels();
    if (labels_leq(s_labels, labels)) upper.push_back({&r, std::move(labels)});
  }
  // Strictly smaller elements have strictly more blocks, so this is a linear
  // extension of the interval order.
  std::stable_sort(upper.begin(), upper.end(), [](const Entry& a, const Entry& b) {
    return a.partition->block_count() > b.partition->block_count();
  });

  std::vector<std::int64_t> mu(upper.size(), 0);
  std::map<SetPartition, std::int64_t> result;
  for (std::size_t i = 0; i < upper.size(); ++i) {
    if (*upper[i].partition == s) {
      mu[i] = 1;
    } else {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < i; ++j) {
        if (upper[j].partition->block_count() > upper[i].partition->block_count() &&
            labels_leq(upper[j].labels, upper[i].labels)) {
          sum += mu[j];
        }
      }
      mu[i] = -sum;
    }
    result.emplace(*upper[i].partition, mu[i]);
  }
  return rows_.emplace(s, std::move(result)).first->second;
}

const std::map<SetPartition, std::int64_t>& MobiusFunction::column(const SetPartition& p) {
  if (auto it = columns_.find(p); it != columns_.end()) return it->second;
  if (!is_noncrossing(p)) throw DomainError("Moebius function needs non-crossing partitions, got " + p.to_string());

  const auto p_labels = p.block_labels();
  struct Entry {
    const SetPartition* partition;
    std::vector<std::size_t> labels;
  };
  std::vector<Entry> lower;
  for (const auto& r : lattice(p.ground())) {
    auto labels = r.block_labels();
    if (labels_leq(labels, p_labels)) lower.push_back({&r, std::move(labels)});
  }
  // Fewest blocks first: every q > r precedes r.
  std::stable_sort(lower.begin(), lower.end(), [](const Entry& a, const Entry& b) {
    return a.partition->block_count() < b.partition->block_count();
  });

  std::vector<std::int64_t> mu(lower.size(), 0);
  std::map<SetPartition, std::int64_t> result;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (*lower[i].partition == p) {
      mu[i] = 1;
    } else {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < i; ++j) {
        if (lower[j].partition->block_count() < lower[i].partition->block_count() &&
            labels_leq(lower[i].labels, lower[j].labels)) {
          sum += mu[j];
        }
      }
      mu[i] = -sum;
    }
    result.emplace(*lower[i].partition, mu[i]);
  }
  return columns_.emplace(p, std::move(result)).first->second;
}

std::int64_t MobiusFunction::operator()(const SetPartition& s, const SetPartition& p) {
  require_same_ground(s, p, "mobius");
  if (!is_noncrossing(p)) throw DomainError("Moebius function needs non-crossing partitions, got " + p.to_string());
  if (!leq(s, p)) throw DomainError("mobius(s, p) needs s <= p; " + s.to_string() + " does not refine " + p.to_string());
  return row(s).at(p);
}

std::int64_t mobius(const SetPartition& s, const SetPartition& p, const Limits& limits) {
  MobiusFunction mu(limits);
  return mu(s, p);
}

// ---------------------------------------------------------------------------
// Kreweras complement

SetPartition kreweras(const SetPartition& p, const Limits& limits) {
  const std::size_t n = p.size();
  const std::size_t cap = std::max(limits.max_nc, limits.max_nc2);
  if (n > cap) throw SizeLimitError("Kreweras complement", n, cap);
  if (!is_noncrossing(p)) throw DomainError("Kreweras complement needs a non-crossing partition, got " + p.to_string());

  // Interlaced positions: ground position i -> 2i, primed point i -> 2i + 1.
  const auto labels = p.block_labels();
  auto pair_compatible = [&](std::size_t i, std::size_t j) {
    const std::size_t a = 2 * i + 1;
    const std::size_t c = 2 * j + 1;
    std::vector<int> inside(p.block_count(), 0);
    std::vector<int> outside(p.block_count(), 0);
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t pos = 2 * q;
      (pos > a && pos < c ? inside : outside)[labels[q]] = 1;
    }
    for (std::size_t b = 0; b < p.block_count(); ++b) {
      if (inside[b] && outside[b]) return false;
    }
    return true;
  };

  std::vector<std::vector<bool>> compatible(n, std::vector<bool>(n, true));
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      compatible[i][j] = compatible[j][i] = pair_compatible(i, j);
      if (compatible[i][j]) parent[find(i)] = find(j);
    }
  }

  std::map<std::size_t, Block> by_root;
  for (std::size_t i = 0; i < n; ++i) by_root[find(i)].push_back(static_cast<int>(i));
  std::vector<Block> position_blocks;
  for (auto& [root, block] : by_root) {
    for (int a : block) {
      for (int b : block) {
        if (!compatible[a][b]) {
          throw StructureError("Kreweras closure of " + p.to_string() + " joins an incompatible pair");
        }
      }
    }
    position_blocks.push_back(std::move(block));
  }

  // Certify admissibility: p together with the result is non-crossing on the
  // interlaced points.
  std::vector<Block> joint;
  for (const auto& b : p.blocks()) {
    Block jb;
    for (int e : b) jb.push_back(static_cast<int>(2 * *p.ground().position_of(e) + 1));
    joint.push_back(std::move(jb));
  }
  for (const auto& b : position_blocks) {
    Block jb;
    for (int i : b) jb.push_back(2 * i + 2);
    joint.push_back(std::move(jb));
  }
  if (!is_noncrossing(SetPartition(GroundSet::range(2 * n), std::move(joint)))) {
    throw StructureError("Kreweras closure of " + p.to_string() + " is not admissible");
  }

  for (auto& b : position_blocks) {
    for (int& i : b) i = p.ground()[static_cast<std::size_t>(i)];
  }
  return SetPartition(p.ground(), std::move(position_blocks));
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const SetPartition& p) {
  j = nlohmann::json::array();
  for (const auto& b : p.blocks()) j.push_back(b);
}

void from_json(const nlohmann::json& j, SetPartition& p) {
  if (!j.is_array()) throw ValidationError("partition JSON must be an array of arrays");
  std::vector<Block> blocks;
  for (const auto& jb : j) {
    if (!jb.is_array()) throw ValidationError("partition JSON must be an array of arrays");
    Block b;
    for (const auto& e : jb) {
      if (!e.is_number_integer()) throw ValidationError("partition JSON elements must be integers");
      b.push_back(e.get<int>());
    }
    blocks.push_back(std::move(b));
  }
  p = SetPartition::from_blocks(std::move(blocks));
}

void to_json(nlohmann::json& j, const PairPartition& p) { to_json(j, p.partition()); }

void from_json(const nlohmann::json& j, PairPartition& p) {
  SetPartition sp;
  from_json(j, sp);
  p = PairPartition(std::move(sp));
}

}  // namespace freeembed
