#include "freeembed/rmt_sim.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "freeembed/errors.hpp"
#include "freeembed/mp_oracle.hpp"

namespace freeembed {

std::string to_string(EntryLaw law) { return law == EntryLaw::gaussian ? "gaussian" : "rademacher"; }

EntryLaw parse_entry_law(std::string_view text) {
  if (text == "gaussian") return EntryLaw::gaussian;
  if (text == "rademacher") return EntryLaw::rademacher;
  throw ConfigError("unknown entry law '" + std::string(text) + "' (expected gaussian or rademacher)");
}

Engine make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U)};
  return Engine(seq);
}

double draw_entry(EntryLaw law, Engine& engine) {
  if (law == EntryLaw::rademacher) return (engine() >> 63U) != 0 ? 1.0 : -1.0;
  return std::normal_distribution<double>(0.0, 1.0)(engine);
}

Eigen::MatrixXd gen_wigner(std::size_t size, EntryLaw law, Engine& engine) {
  const auto d = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd w(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) w(i, j) = w(j, i) = draw_entry(law, engine);
  }
  return w;
}

SampleCovariance sample_cov(std::size_t p, std::size_t n, EntryLaw law, Engine& engine) {
  SampleCovariance out;
  out.x.resize(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < out.x.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.x.cols(); ++j) out.x(i, j) = draw_entry(law, engine);
  }
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(out.x.rows(), out.x.rows());
  lower.selfadjointView<Eigen::Lower>().rankUpdate(out.x, 1.0 / static_cast<double>(n));
  out.s = lower.selfadjointView<Eigen::Lower>();
  return out;
}

Eigen::MatrixXd embed(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w_upper, const Eigen::MatrixXd& w_lower) {
  const Eigen::Index p = x.rows();
  const Eigen::Index n = x.cols();
  if (w_upper.rows() != p || w_upper.cols() != p || w_lower.rows() != n || w_lower.cols() != n) {
    throw DomainError(fmt::format("embed: X is {}x{} but the diagonal blocks are {}x{} and {}x{}", p, n,
                                  w_upper.rows(), w_upper.cols(), w_lower.rows(), w_lower.cols()));
  }
  Eigen::MatrixXd w(p + n, p + n);
  w.topLeftCorner(p, p) = w_upper;
  w.topRightCorner(p, n) = x;
  w.bottomLeftCorner(n, p) = x.transpose();
  w.bottomRightCorner(n, n) = w_lower;
  return w;
}

EmbeddingCheck verify_embedding_identity(std::size_t p, std::size_t n, EntryLaw law, std::uint64_t seed) {
  if (p == 0 || n == 0) throw ConfigError("embedding check needs p, n >= 1");
  Engine engine = make_stream(seed, 0);
  const SampleCovariance sc = sample_cov(p, n, law, engine);
  const Eigen::MatrixXd w_upper = gen_wigner(p, law, engine);
  const Eigen::MatrixXd w_lower = gen_wigner(n, law, engine);
  const Eigen::MatrixXd w = embed(sc.x, w_upper, w_lower);

  const auto ip = static_cast<Eigen::Index>(p);
  const auto in = static_cast<Eigen::Index>(n);
  const Eigen::Index order = ip + in;
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(order, order);
  lhs.topLeftCorner(ip, ip) = sc.s;

  Eigen::MatrixXd upper_proj = Eigen::MatrixXd::Zero(order, order);
  upper_proj.topLeftCorner(ip, ip).setIdentity();
  Eigen::MatrixXd lower_proj = Eigen::MatrixXd::Zero(order, order);
  lower_proj.bottomRightCorner(in, in).setIdentity();
  const Eigen::MatrixXd scaled = w / std::sqrt(static_cast<double>(order));
  const double factor = static_cast<double>(order) / static_cast<double>(n);
  const Eigen::MatrixXd rhs = factor * (upper_proj * scaled * lower_proj * scaled * upper_proj);

  EmbeddingCheck check;
  check.max_abs_deviation = (lhs - rhs).cwiseAbs().maxCoeff();
  check.max_entry = std::max(lhs.cwiseAbs().maxCoeff(), rhs.cwiseAbs().maxCoeff());
  return check;
}

CornerMoments corner_projection_moments(std::size_t p, std::size_t n, std::size_t r) {
  if (r == 0) throw DomainError("corner projection moments need r >= 1");
  if (p == 0 || n == 0) throw DomainError("corner projection moments need p, n >= 1");
  // Diagonal idempotents: every diagonal entry d in {0, 1} satisfies d^r = d.
  auto trace_of_power = [r](std::size_t ones, std::size_t zeros) {
    std::int64_t trace = 0;
    for (std::size_t i = 0; i < ones + zeros; ++i) {
      std::int64_t d = i < ones ? 1 : 0;
      std::int64_t power = 1;
      for (std::size_t e = 0; e < r && power != 0; ++e) power *= d;
      trace += power;
    }
    return trace;
  };
  const auto order = static_cast<std::int64_t>(p + n);
  return {Rational(trace_of_power(p, n), order), Rational(trace_of_power(n, p), order)};
}

Rational SimConfig::y() const { return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(n)); }

void SimConfig::validate() const {
  if (p == 0 || n == 0) throw ConfigError("simulation needs p, n >= 1");
  if (replicates == 0) throw ConfigError("simulation needs at least one replicate");
  if (word.size() == 0) throw ConfigError("simulation needs a non-empty word");
  if (m < 1) throw ConfigError("simulation needs m >= 1");
  for (int letter : word.letters()) {
    if (letter > m) throw ConfigError(fmt::format("word letter {} exceeds family count m = {}", letter, m));
  }
}

namespace {

double replicate_trace(const SimConfig& cfg, std::size_t replicate) {
  Engine engine = make_stream(cfg.seed, replicate);
  std::vector<Eigen::MatrixXd> s;
  s.reserve(static_cast<std::size_t>(cfg.m));
  for (int f = 0; f < cfg.m; ++f) s.push_back(sample_cov(cfg.p, cfg.n, cfg.law, engine).s);

  const auto& letters = cfg.word.letters();
  auto factor = [&](std::size_t j) -> const Eigen::MatrixXd& { return s[static_cast<std::size_t>(letters[j] - 1)]; };
  double trace = 0.0;
  if (letters.size() == 1) {
    trace = factor(0).trace();
  } else {
    Eigen::MatrixXd prod = factor(0);
    for (std::size_t j = 1; j + 1 < letters.size(); ++j) prod = prod * factor(j);
    // Tr(A B) as an entrywise sum avoids forming the last product.
    trace = (prod.array() * factor(letters.size() - 1).transpose().array()).sum();
  }
  const double value = trace / static_cast<double>(cfg.p);
  if (!std::isfinite(value)) throw SimulationError("non-finite normalized trace", replicate);
  return value;
}

}  // namespace

SimReport mc_trace_moment(const SimConfig& cfg, std::size_t threads, const Limits& limits) {
  cfg.validate();
  SimReport report;
  report.config = cfg;
  const Rational y = cfg.y();
  report.y = boost::rational_cast<double>(y);
  report.oracle_value = boost::rational_cast<double>(lemma2_moment(cfg.word, limits).evaluate(y));

  std::vector<double> values(cfg.replicates, 0.0);
  if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, cfg.replicates);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t r = next++; r < cfg.replicates; r = next++) {
      try {
        values[r] = replicate_trace(cfg, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.replicates;
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(cfg.replicates);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  report.estimate = mean;
  report.std_error = cfg.replicates > 1
                         ? std::sqrt(sq / static_cast<double>(cfg.replicates - 1) / static_cast<double>(cfg.replicates))
                         : 0.0;
  report.abs_error = std::abs(report.estimate - report.oracle_value);
  report.rel_error = report.oracle_value != 0.0 ? report.abs_error / std::abs(report.oracle_value) : report.abs_error;
  return report;
}

std::vector<SimReport> convergence_study(const Word& word, std::span<const std::pair<std::size_t, std::size_t>> ladder,
                                         std::size_t replicates, std::uint64_t seed, EntryLaw law,
                                         std::size_t threads, const Limits& limits) {
  if (ladder.empty()) throw ConfigError("convergence study needs at least one (p, n) rung");
  for (auto [p, n] : ladder) {
    if (p == 0 || n == 0) throw ConfigError("convergence study rungs need p, n >= 1");
  }
  const double y0 = static_cast<double>(ladder[0].first) / static_cast<double>(ladder[0].second);
  for (auto [p, n] : ladder) {
    const double y = static_cast<double>(p) / static_cast<double>(n);
    if (std::abs(y - y0) > 0.01 * y0) {
      throw ConfigError(fmt::format("ladder rung {}x{} has y = {:.6g}, first rung has y = {:.6g}", p, n, y, y0));
    }
  }
  std::vector<SimReport> table;
  for (auto [p, n] : ladder) {
    SimConfig cfg;
    cfg.p = p;
    cfg.n = n;
    cfg.m = word.families();
    cfg.word = word;
    cfg.replicates = replicates;
    cfg.seed = seed;
    cfg.law = law;
    table.push_back(mc_trace_moment(cfg, threads, limits));
  }
  return table;
}

void to_json(nlohmann::json& j, const SimConfig& cfg) {
  j = nlohmann::json{{"p", cfg.p},
                     {"n", cfg.n},
                     {"m", cfg.m},
                     {"word", cfg.word.letters()},
                     {"replicates", cfg.replicates},
                     {"seed", cfg.seed},
                     {"law", to_string(cfg.law)}};
}

void to_json(nlohmann::json& j, const SimReport& report) {
  j = nlohmann::json{{"config", report.config},       {"y", report.y},
                     {"estimate", report.estimate},   {"std_error", report.std_error},
                     {"oracle", report.oracle_value}, {"abs_error", report.abs_error},
                     {"rel_error", report.rel_error}};
}

std::string csv_header() { return "p,n,y,word,replicates,seed,estimate,std_error,oracle,abs_error,rel_error"; }

std::string to_csv_row(const SimReport& r) {
  return fmt::format("{},{},{:.17g},\"{}\",{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}", r.config.p, r.config.n,
                     r.y, r.config.word.to_string(), r.config.replicates, r.config.seed, r.estimate, r.std_error,
                     r.oracle_value, r.abs_error, r.rel_error);
}

}  // namespace freeembed
