#pragma once

// Moment-cumulant calculus over the non-crossing partition lattice.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "freeembed/limits.hpp"
#include "freeembed/partition.hpp"
#include "freeembed/ypoly.hpp"

namespace freeembed {

/// A product pattern tau = (tau_1, ..., tau_k) of 1-based family labels,
/// 1 <= tau_j <= m.
class Word {
 public:
  Word() = default;
  /// `families` defaults to the largest label used.
  explicit Word(std::vector<int> letters, int families = 0);

  /// Comma-separated labels, e.g. "1,2,1,2".
  static Word parse(std::string_view text, int families = 0);

  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  int families() const noexcept { return families_; }
  int operator[](std::size_t pos) const { return letters_[pos]; }

  /// Letters at the given 1-based positions, same family count.
  Word subword(std::span<const int> positions) const;
  std::size_t distinct_families() const;

  std::string to_string() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<int> letters_;
  int families_ = 0;
};

/// Free cumulant sequence kappa_k, k >= 1, of one family.
struct CumulantSpec {
  std::string label;
  std::function<YPolynomial(std::size_t)> kappa;
};

/// Moment sequence phi_k = phi(a^k), k >= 1, of one family. Values are exact
/// rational functions of y since some (corner projections) are not
/// polynomials.
struct MomentSpec {
  std::string label;
  std::function<RationalFunction(std::size_t)> phi;
};

/// kappa_2 = 1, every other cumulant 0.
CumulantSpec semicircular(std::string label = "s");
/// kappa_k = y^(k-1).
CumulantSpec marchenko_pastur(std::string label = "g");
/// phi_k = 1 for all k.
MomentSpec unit_moments(std::string label = "1");
/// Limit of the upper-left corner projection: phi_r = y/(1+y) for all r.
MomentSpec upper_corner_projection(std::string label = "a0");
/// Limit of the lower-right corner projection: phi_r = 1/(1+y) for all r.
MomentSpec lower_corner_projection(std::string label = "a1");
/// Moments generated from a cumulant sequence, tabulated up to `max_order`.
MomentSpec moments_of(const CumulantSpec& spec, std::size_t max_order,
                      const Limits& limits = default_limits());

/// phi_pi: product over blocks V of phi_{|V|} of the family sitting on V.
/// `per_position` is indexed by ground position. Throws UnsupportedMixedBlock
/// if a block carries two families.
RationalFunction phi_pi(const SetPartition& p, std::span<const MomentSpec> per_position);

/// kappa_pi by block multiplicativity: product over blocks of kappa_{|V|}.
/// Throws UnsupportedMixedBlock on a mixed block.
YPolynomial kappa_pi(const SetPartition& p, std::span<const CumulantSpec> per_position);

/// kappa_pi by its defining Moebius sum, sum over non-crossing sigma <= pi of
/// phi_sigma * mu(sigma, pi).
RationalFunction kappa_pi_by_mobius(const SetPartition& p, std::span<const MomentSpec> per_position,
                                    MobiusFunction& mu);

/// phi(a^k) = sum over NC(k) of kappa_pi.
YPolynomial moments_from_cumulants(const CumulantSpec& spec, std::size_t k,
                                   const Limits& limits = default_limits());

/// kappa_k = sum over NC(k) of phi_sigma * mu(sigma, 1_k).
RationalFunction cumulants_from_moments(const MomentSpec& spec, std::size_t k,
                                        const Limits& limits = default_limits());
/// Same, sharing one Moebius table across calls.
RationalFunction cumulants_from_moments(const MomentSpec& spec, std::size_t k, MobiusFunction& mu,
                                        const Limits& limits = default_limits());

/// phi(a_{tau_1} ... a_{tau_k}) for free families: sum over NC(k) of
/// kappa_pi with every mixed block contributing zero. `family_specs[i]` is the
/// spec of family i+1.
YPolynomial free_mixed_moment(std::span<const CumulantSpec> family_specs, const Word& w,
                              const Limits& limits = default_limits());

/// Joint moment functional: the value of phi on the product spelled by a word.
using JointMomentOracle = std::function<YPolynomial(const Word&)>;

/// Mixed free cumulant kappa_k(a_{tau_1}, ..., a_{tau_k}) obtained by Moebius
/// inversion of the oracle's moments. Zero for genuinely free families.
/// Throws DomainError if `w` uses a single family.
YPolynomial mixed_cumulant_vanishing_check(const JointMomentOracle& oracle, const Word& w,
                                           const Limits& limits = default_limits());

/// phi(a b a b ... a b) with n copies of each letter, a free from b:
/// sum over NC(n) of kappa_pi[a, ..., a] * phi_{K(pi)}[b, ..., b].
/// If `a` has semicircular cumulants up to order n the sum runs over NC2(n)
/// only, and is 0 for odd n.
RationalFunction alternating_two_family_moment(const CumulantSpec& a, const MomentSpec& b, std::size_t n,
                                               const Limits& limits = default_limits());

}  // namespace freeembed
