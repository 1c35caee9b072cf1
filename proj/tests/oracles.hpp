#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the enumeration, crossing, Moebius or Kreweras code under test.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

/// Restricted growth strings: every set partition of {0..n-1} as a label
/// vector, labels in order of first appearance.
inline std::vector<std::vector<int>> all_set_partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      out.push_back(labels);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      labels[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (n == 0) return {{}};
  rec(0, 0);
  return out;
}

/// Crossing test by checking every quadruple a < b < c < d.
inline bool crosses_brute(const std::vector<int>& labels) {
  const auto n = labels.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c)
        for (std::size_t d = c + 1; d < n; ++d)
          if (labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b]) return true;
  return false;
}

inline int block_count(const std::vector<int>& labels) {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

/// p refines q: positions sharing a p-block share a q-block.
inline bool refines(const std::vector<int>& p, const std::vector<int>& q) {
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p[i] == p[j] && q[i] != q[j]) return false;
  return true;
}

/// Non-crossing partitions of {0..n-1} by filtering all set partitions.
inline std::vector<std::vector<int>> nc_brute(int n) {
  std::vector<std::vector<int>> out;
  for (auto& l : all_set_partitions(n))
    if (!crosses_brute(l)) out.push_back(l);
  return out;
}

/// Kreweras complement by the literal definition: among all sigma on the
/// primed points with pi U sigma non-crossing on 1,1',2,2',..., return the
/// maximal ones (in refinement order).
inline std::vector<std::vector<int>> kreweras_maximal_brute(const std::vector<int>& pi) {
  const int n = static_cast<int>(pi.size());
  const int offset = block_count(pi);
  std::vector<std::vector<int>> admissible;
  for (auto& sigma : nc_brute(n)) {
    std::vector<int> joint(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      joint[2 * static_cast<std::size_t>(i)] = pi[static_cast<std::size_t>(i)];
      joint[2 * static_cast<std::size_t>(i) + 1] = offset + sigma[static_cast<std::size_t>(i)];
    }
    if (!crosses_brute(joint)) admissible.push_back(sigma);
  }
  std::vector<std::vector<int>> maximal;
  for (auto& s : admissible) {
    bool dominated = false;
    for (auto& t : admissible)
      if (t != s && refines(s, t)) dominated = true;
    if (!dominated) maximal.push_back(s);
  }
  return maximal;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline std::int64_t catalan(std::int64_t n) { return binomial(2 * n, n) / (n + 1); }

/// Narayana N(k, j) = C(k, j) C(k, j-1) / k.
inline std::int64_t narayana(std::int64_t k, std::int64_t j) { return binomial(k, j) * binomial(k, j - 1) / k; }

/// Moments from cumulants by the first-block recursion
/// m_n = sum_{s=1}^{n} kappa_s * sum_{i_1+...+i_s = n-s} m_{i_1} ... m_{i_s},
/// with coefficient vectors in y (index = power). Independent of NC(n).
using Poly = std::vector<std::int64_t>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

inline std::vector<Poly> moments_by_recursion(const std::function<Poly(int)>& kappa, int max_n) {
  std::vector<Poly> m(static_cast<std::size_t>(max_n) + 1);
  m[0] = {1};
  for (int n = 1; n <= max_n; ++n) {
    Poly total;
    for (int s = 1; s <= n; ++s) {
      // conv[r] = sum over compositions of r into s nonnegative parts of prod m
      std::vector<Poly> conv(static_cast<std::size_t>(n - s) + 1);
      conv[0] = {1};
      for (int part = 0; part < s; ++part) {
        std::vector<Poly> next(conv.size());
        for (std::size_t r = 0; r < conv.size(); ++r)
          for (std::size_t i = 0; i + r < conv.size(); ++i)
            next[r + i] = poly_add(next[r + i], poly_mul(conv[r], m[i]));
        conv = std::move(next);
      }
      total = poly_add(total, poly_mul(kappa(s), conv[static_cast<std::size_t>(n - s)]));
    }
    while (!total.empty() && total.back() == 0) total.pop_back();
    m[static_cast<std::size_t>(n)] = total;
  }
  return m;
}

}  // namespace oracle
