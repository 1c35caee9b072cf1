#include "freeembed/free_calculus.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <utility>

#include "freeembed/errors.hpp"

namespace freeembed {

// ---------------------------------------------------------------------------
// Word

Word::Word(std::vector<int> letters, int families) : letters_(std::move(letters)), families_(families) {
  if (letters_.empty()) throw ValidationError("a word needs at least one letter");
  const int largest = *std::max_element(letters_.begin(), letters_.end());
  if (families_ == 0) families_ = largest;
  for (int l : letters_) {
    if (l < 1 || l > families_) {
      throw ValidationError("word letter " + std::to_string(l) + " outside 1.." + std::to_string(families_));
    }
  }
}

Word Word::parse(std::string_view text, int families) {
  std::vector<int> letters;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view field = text.substr(pos, comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    int value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size()) {
      throw ValidationError("cannot parse word '" + std::string(text) + "'");
    }
    letters.push_back(value);
    pos = comma + 1;
  }
  return Word(std::move(letters), families);
}

Word Word::subword(std::span<const int> positions) const {
  std::vector<int> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(letters_.at(static_cast<std::size_t>(p - 1)));
  return Word(std::move(out), families_);
}

std::size_t Word::distinct_families() const {
  return std::set<int>(letters_.begin(), letters_.end()).size();
}

std::string Word::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(letters_[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named laws

CumulantSpec semicircular(std::string label) {
  return {std::move(label), [](std::size_t k) { return YPolynomial(k == 2 ? 1 : 0); }};
}

CumulantSpec marchenko_pastur(std::string label) {
  return {std::move(label),
          [](std::size_t k) { return YPolynomial::monomial(1, static_cast<std::uint32_t>(k - 1)); }};
}

MomentSpec unit_moments(std::string label) {
  return {std::move(label), [](std::size_t) { return RationalFunction(1); }};
}

MomentSpec upper_corner_projection(std::string label) {
  return {std::move(label), [](std::size_t) {
            return RationalFunction(YPolynomial::y(), YPolynomial(1) + YPolynomial::y());
          }};
}

MomentSpec lower_corner_projection(std::string label) {
  return {std::move(label), [](std::size_t) {
            return RationalFunction(YPolynomial(1), YPolynomial(1) + YPolynomial::y());
          }};
}

MomentSpec moments_of(const CumulantSpec& spec, std::size_t max_order, const Limits& limits) {
  std::vector<RationalFunction> table;
  for (std::size_t k = 1; k <= max_order; ++k) table.emplace_back(moments_from_cumulants(spec, k, limits));
  return {spec.label, [table = std::move(table), label = spec.label](std::size_t k) {
            if (k == 0 || k > table.size()) {
              throw DomainError("moments of " + label + " tabulated only up to order " + std::to_string(table.size()));
            }
            return table[k - 1];
          }};
}

// ---------------------------------------------------------------------------
// Multiplicative extensions

namespace {

void require_symbolic_cap(std::size_t k, const Limits& limits, const char* what) {
  if (k > limits.max_symbolic) throw SizeLimitError(what, k, limits.max_symbolic);
}

template <typename Spec>
const Spec& block_family(const SetPartition& p, const Block& block, std::span<const Spec> per_position) {
  const Spec* family = nullptr;
  for (int e : block) {
    const Spec& here = per_position[*p.ground().position_of(e)];
    if (family == nullptr) {
      family = &here;
    } else if (family->label != here.label) {
      throw UnsupportedMixedBlock("block mixes families " + family->label + " and " + here.label);
    }
  }
  return *family;
}

template <typename Spec>
void require_position_count(const SetPartition& p, std::span<const Spec> per_position) {
  if (per_position.size() != p.size()) {
    throw DomainError("need one evaluator per ground position: " + std::to_string(p.size()) + " expected, " +
                      std::to_string(per_position.size()) + " given");
  }
}

bool is_semicircular_up_to(const CumulantSpec& spec, std::size_t n) {
  for (std::size_t k = 1; k <= n; ++k) {
    if (spec.kappa(k) != YPolynomial(k == 2 ? 1 : 0)) return false;
  }
  return true;
}

}  // namespace

RationalFunction phi_pi(const SetPartition& p, std::span<const MomentSpec> per_position) {
  require_position_count(p, per_position);
  RationalFunction value(1);
  for (const auto& block : p.blocks()) {
    value *= block_family(p, block, per_position).phi(block.size());
    if (value.is_zero()) break;
  }
  return value;
}

YPolynomial kappa_pi(const SetPartition& p, std::span<const CumulantSpec> per_position) {
  require_position_count(p, per_position);
  YPolynomial value(1);
  for (const auto& block : p.blocks()) {
    value *= block_family(p, block, per_position).kappa(block.size());
    if (value.is_zero()) break;
  }
  return value;
}

RationalFunction kappa_pi_by_mobius(const SetPartition& p, std::span<const MomentSpec> per_position,
                                    MobiusFunction& mu) {
  require_position_count(p, per_position);
  RationalFunction total(0);
  for (const auto& sigma : enumerate_nc(p.ground())) {
    if (!leq(sigma, p)) continue;
    total += phi_pi(sigma, per_position) * RationalFunction(mu(sigma, p));
  }
  return total;
}

// ---------------------------------------------------------------------------
// Moment <-> cumulant transforms

YPolynomial moments_from_cumulants(const CumulantSpec& spec, std::size_t k, const Limits& limits) {
  require_symbolic_cap(k, limits, "moments_from_cumulants");
  if (k == 0) throw DomainError("moment order must be at least 1");
  const std::vector<CumulantSpec> positions(k, spec);
  YPolynomial total;
  for (const auto& pi : enumerate_nc(GroundSet::range(k), limits)) total += kappa_pi(pi, positions);
  return total;
}

RationalFunction cumulants_from_moments(const MomentSpec& spec, std::size_t k, MobiusFunction& mu,
                                        const Limits& limits) {
  require_symbolic_cap(k, limits, "cumulants_from_moments");
  if (k == 0) throw DomainError("cumulant order must be at least 1");
  const GroundSet ground = GroundSet::range(k);
  const SetPartition top = SetPartition::one_block(ground);
  const std::vector<MomentSpec> positions(k, spec);
  const auto& to_top = mu.column(top);
  RationalFunction total(0);
  for (const auto& sigma : enumerate_nc(ground, limits)) {
    const std::int64_t m = to_top.at(sigma);
    if (m != 0) total += phi_pi(sigma, positions) * RationalFunction(m);
  }
  return total;
}

RationalFunction cumulants_from_moments(const MomentSpec& spec, std::size_t k, const Limits& limits) {
  MobiusFunction mu(limits);
  return cumulants_from_moments(spec, k, mu, limits);
}

// ---------------------------------------------------------------------------
// Free mixed moments

YPolynomial free_mixed_moment(std::span<const CumulantSpec> family_specs, const Word& w, const Limits& limits) {
  require_symbolic_cap(w.size(), limits, "free_mixed_moment");
  std::vector<CumulantSpec> positions;
  positions.reserve(w.size());
  for (int letter : w.letters()) {
    if (static_cast<std::size_t>(letter) > family_specs.size()) {
      throw DomainError("no cumulant spec for family " + std::to_string(letter));
    }
    positions.push_back(family_specs[static_cast<std::size_t>(letter - 1)]);
  }
  auto single_family = [&](const SetPartition& pi) {
    return std::all_of(pi.blocks().begin(), pi.blocks().end(), [&](const Block& b) {
      return std::all_of(b.begin(), b.end(), [&](int e) { return w[e - 1] == w[b.front() - 1]; });
    });
  };
  // Mixed free cumulants vanish, so only family-pure partitions contribute.
  YPolynomial total;
  for (const auto& pi : enumerate_nc(GroundSet::range(w.size()), limits)) {
    if (single_family(pi)) total += kappa_pi(pi, positions);
  }
  return total;
}

YPolynomial mixed_cumulant_vanishing_check(const JointMomentOracle& oracle, const Word& w, const Limits& limits) {
  require_symbolic_cap(w.size(), limits, "mixed_cumulant_vanishing_check");
  if (w.distinct_families() < 2) throw DomainError("mixed cumulant needs at least two families in " + w.to_string());
  const GroundSet ground = GroundSet::range(w.size());
  const SetPartition top = SetPartition::one_block(ground);
  MobiusFunction mu(limits);
  const auto& to_top = mu.column(top);
  YPolynomial total;
  for (const auto& sigma : enumerate_nc(ground, limits)) {
    const std::int64_t m = to_top.at(sigma);
    if (m == 0) continue;
    YPolynomial term(m);
    for (const auto& block : sigma.blocks()) term *= oracle(w.subword(block));
    total += term;
  }
  return total;
}

RationalFunction alternating_two_family_moment(const CumulantSpec& a, const MomentSpec& b, std::size_t n,
                                               const Limits& limits) {
  require_symbolic_cap(n, limits, "alternating_two_family_moment");
  if (n == 0) throw DomainError("alternating moment needs n >= 1");
  const GroundSet ground = GroundSet::range(n);
  const std::vector<CumulantSpec> a_positions(n, a);
  const std::vector<MomentSpec> b_positions(n, b);

  std::vector<SetPartition> support;
  if (is_semicircular_up_to(a, n)) {
    if (n % 2 != 0) return RationalFunction(0);
    for (auto& pp : enumerate_nc2(ground, limits)) support.push_back(pp.partition());
  } else {
    support = enumerate_nc(ground, limits);
  }

  RationalFunction total(0);
  for (const auto& pi : support) {
    const YPolynomial k = kappa_pi(pi, a_positions);
    if (k.is_zero()) continue;
    total += RationalFunction(k) * phi_pi(kreweras(pi, limits), b_positions);
  }
  return total;
}

}  // namespace freeembed
