#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "freeembed/errors.hpp"
#include "freeembed/mp_oracle.hpp"
#include "freeembed/partition.hpp"
#include "freeembed/rmt_sim.hpp"
#include "json.hpp"

namespace freeembed::cli {

namespace {

using nlohmann::json;

enum class Format { text, json, csv };

const std::map<std::string, Format> format_names{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest(const std::string& subcommand, json config, std::optional<std::uint64_t> seed) {
  return json{{"subcommand", subcommand},
              {"config", std::move(config)},
              {"version", FREEEMBED_VERSION},
              {"timestamp", utc_timestamp()},
              {"seed", seed ? json(*seed) : json(nullptr)}};
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void add_format(CLI::App* sub, Format& format) {
  sub->add_option("--format", format, "Output format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case))
      ->default_str("text");
}

std::string format_name(Format f) { return f == Format::json ? "json" : f == Format::csv ? "csv" : "text"; }

// ---------------------------------------------------------------------------
// nc

struct NcArgs {
  std::size_t k = 0;
  std::string kreweras_of;
  std::vector<std::string> mobius_pair;
  bool pairs = false;
  Format format = Format::text;
};

SetPartition parse_on_range(const std::string& text, std::size_t k) {
  const GroundSet g = GroundSet::range(k);
  if (text == "0") return SetPartition::singletons(g);
  if (text == "1") return SetPartition::one_block(g);
  SetPartition p = SetPartition::parse(text);
  if (p.ground() != g) {
    throw ValidationError(fmt::format("partition {} is not a partition of {{1..{}}}", p.to_string(), k));
  }
  return p;
}

int cmd_nc(const NcArgs& a, std::ostream& out) {
  const json config{{"k", a.k},
                    {"kreweras", a.kreweras_of.empty() ? json(nullptr) : json(a.kreweras_of)},
                    {"mobius", a.mobius_pair.empty() ? json(nullptr) : json(a.mobius_pair)},
                    {"pairs", a.pairs},
                    {"format", format_name(a.format)}};

  if (!a.kreweras_of.empty()) {
    const SetPartition p = parse_on_range(a.kreweras_of, a.k);
    const SetPartition kp = kreweras(p);
    if (a.format == Format::json) {
      out << json{{"manifest", manifest("nc", config, std::nullopt)}, {"partition", p}, {"kreweras", kp}}.dump(2)
          << '\n';
    } else if (a.format == Format::csv) {
      out << "partition,kreweras\n" << csv_quote(p.to_string()) << ',' << csv_quote(kp.to_string()) << '\n';
    } else {
      out << kp.to_string() << '\n';
    }
    return ok;
  }

  if (!a.mobius_pair.empty()) {
    const SetPartition s = parse_on_range(a.mobius_pair[0], a.k);
    const SetPartition p = parse_on_range(a.mobius_pair[1], a.k);
    if (!leq(s, p)) throw DomainError(fmt::format("{} does not refine {}", s.to_string(), p.to_string()));
    const std::int64_t value = mobius(s, p);
    if (a.format == Format::json) {
      out << json{{"manifest", manifest("nc", config, std::nullopt)}, {"sigma", s}, {"pi", p}, {"mobius", value}}.dump(2)
          << '\n';
    } else if (a.format == Format::csv) {
      out << "sigma,pi,mobius\n" << csv_quote(s.to_string()) << ',' << csv_quote(p.to_string()) << ',' << value << '\n';
    } else {
      out << value << '\n';
    }
    return ok;
  }

  std::vector<std::string> listing;
  if (a.pairs) {
    for (const auto& pp : enumerate_nc2(GroundSet::range(a.k))) listing.push_back(pp.to_string());
  } else {
    for (const auto& p : enumerate_nc(GroundSet::range(a.k))) listing.push_back(p.to_string());
  }
  if (a.format == Format::json) {
    json parts = json::array();
    for (const auto& s : listing) parts.push_back(json(SetPartition::parse(s)));
    out << json{{"manifest", manifest("nc", config, std::nullopt)}, {"count", listing.size()}, {"partitions", parts}}
               .dump(2)
        << '\n';
  } else if (a.format == Format::csv) {
    out << "index,partition\n";
    for (std::size_t i = 0; i < listing.size(); ++i) out << i + 1 << ',' << csv_quote(listing[i]) << '\n';
  } else {
    for (const auto& s : listing) out << s << '\n';
    out << listing.size() << (a.pairs ? " non-crossing pair partitions\n" : " non-crossing partitions\n");
  }
  return ok;
}

// ---------------------------------------------------------------------------
// moment

struct MomentArgs {
  std::string word;
  std::string y;
  bool symbolic = false;
  std::string method = "lemma2";
  Format format = Format::text;
};

int cmd_moment(const MomentArgs& a, std::ostream& out) {
  const Word w = Word::parse(a.word);
  std::optional<Rational> y;
  if (!a.y.empty()) {
    y = parse_rational(a.y);
    if (*y <= Rational(0)) throw ValidationError("y must be positive, got " + a.y);
  }

  std::vector<std::pair<std::string, YPolynomial>> results;
  if (a.method == "lemma2" || a.method == "all") results.emplace_back("lemma2", lemma2_moment(w));
  if (a.method == "free" || a.method == "all") results.emplace_back("free", mp_free_mixed_moment(w));
  if (a.method == "theorem2" || a.method == "all") results.emplace_back("theorem2", theorem2_rhs(w));
  const bool agree = std::all_of(results.begin(), results.end(),
                                 [&](const auto& r) { return r.second == results.front().second; });
  const bool verdict = a.method == "all";

  const json config{{"word", w.letters()},
                    {"y", y ? json(to_string(*y)) : json(nullptr)},
                    {"method", a.method},
                    {"format", format_name(a.format)}};

  if (a.format == Format::json) {
    json body = json::object();
    for (const auto& [name, poly] : results) {
      json entry{{"polynomial", poly}, {"text", poly.to_string()}};
      if (y) entry["value"] = to_string(poly.evaluate(*y));
      body[name] = std::move(entry);
    }
    json doc{{"manifest", manifest("moment", config, std::nullopt)}, {"word", w.letters()}, {"results", body}};
    if (verdict) doc["verdict"] = agree ? "AGREE" : "DISAGREE";
    out << doc.dump(2) << '\n';
  } else if (a.format == Format::csv) {
    out << "method,polynomial,value\n";
    for (const auto& [name, poly] : results) {
      out << name << ',' << csv_quote(poly.to_string()) << ',' << (y ? to_string(poly.evaluate(*y)) : "") << '\n';
    }
  } else {
    for (const auto& [name, poly] : results) {
      const std::string value = y ? to_string(poly.evaluate(*y)) : poly.to_string();
      if (results.size() == 1) {
        out << value << '\n';
      } else {
        out << name << ": " << value << '\n';
      }
    }
    if (verdict) out << (agree ? "AGREE" : "DISAGREE") << '\n';
  }
  return agree ? ok : verification_failed;
}

// ---------------------------------------------------------------------------
// verify-embedding

struct EmbeddingArgs {
  std::size_t p = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  EntryLaw law = EntryLaw::gaussian;
  Format format = Format::text;
};

int cmd_verify_embedding(const EmbeddingArgs& a, std::ostream& out) {
  const EmbeddingCheck check = verify_embedding_identity(a.p, a.n, a.law, a.seed);
  const std::string verdict = check.passes() ? "PASS" : "FAIL";
  const json config{{"p", a.p}, {"n", a.n}, {"seed", a.seed}, {"law", to_string(a.law)}, {"format", format_name(a.format)}};
  if (a.format == Format::json) {
    out << json{{"manifest", manifest("verify-embedding", config, a.seed)},
                {"max_abs_deviation", check.max_abs_deviation},
                {"max_entry", check.max_entry},
                {"tolerance", check.tolerance()},
                {"verdict", verdict}}
               .dump(2)
        << '\n';
  } else if (a.format == Format::csv) {
    out << "p,n,law,seed,max_abs_deviation,max_entry,tolerance,verdict\n"
        << fmt::format("{},{},{},{},{:.17g},{:.17g},{:.17g},{}\n", a.p, a.n, to_string(a.law), a.seed,
                       check.max_abs_deviation, check.max_entry, check.tolerance(), verdict);
  } else {
    out << fmt::format("max deviation {:.3e} (tolerance {:.3e})\n{}\n", check.max_abs_deviation, check.tolerance(),
                       verdict);
  }
  return check.passes() ? ok : verification_failed;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
  std::string word;
  std::size_t p = 0;
  std::size_t n = 0;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  EntryLaw law = EntryLaw::gaussian;
  std::string ladder;
  int m = 0;
  std::size_t threads = 0;
  Format format = Format::text;
};

std::vector<std::pair<std::size_t, std::size_t>> parse_ladder(const std::string& text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto x = item.find('x');
    std::size_t p = 0;
    std::size_t n = 0;
    std::size_t used_p = 0;
    std::size_t used_n = 0;
    try {
      if (x == std::string::npos) throw std::invalid_argument(item);
      p = std::stoul(item.substr(0, x), &used_p);
      n = std::stoul(item.substr(x + 1), &used_n);
    } catch (const std::exception&) {
      throw ConfigError("bad ladder rung '" + item + "' (expected PxN, e.g. 50x100)");
    }
    if (used_p != x || used_n != item.size() - x - 1) {
      throw ConfigError("bad ladder rung '" + item + "' (expected PxN, e.g. 50x100)");
    }
    out.emplace_back(p, n);
  }
  if (out.empty()) throw ConfigError("empty ladder");
  return out;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const int m = a.m > 0 ? a.m : 0;
  const Word w = Word::parse(a.word, m);
  std::vector<SimReport> reports;
  json config{{"word", w.letters()},
              {"m", w.families()},
              {"reps", a.reps},
              {"seed", a.seed},
              {"law", to_string(a.law)},
              {"format", format_name(a.format)}};
  if (!a.ladder.empty()) {
    const auto ladder = parse_ladder(a.ladder);
    config["ladder"] = ladder;
    reports = convergence_study(w, ladder, a.reps, a.seed, a.law, a.threads);
  } else {
    if (a.p == 0 || a.n == 0) throw ConfigError("simulate needs --p and --n (or --ladder)");
    config["p"] = a.p;
    config["n"] = a.n;
    SimConfig cfg;
    cfg.p = a.p;
    cfg.n = a.n;
    cfg.m = w.families();
    cfg.word = w;
    cfg.replicates = a.reps;
    cfg.seed = a.seed;
    cfg.law = a.law;
    reports.push_back(mc_trace_moment(cfg, a.threads));
  }

  if (a.format == Format::json) {
    json doc{{"manifest", manifest("simulate", config, a.seed)}};
    if (a.ladder.empty()) {
      doc["report"] = reports.front();
    } else {
      doc["reports"] = reports;
    }
    out << doc.dump(2) << '\n';
  } else if (a.format == Format::csv) {
    out << csv_header() << '\n';
    for (const auto& r : reports) out << to_csv_row(r) << '\n';
  } else {
    out << fmt::format("{:>6} {:>6} {:>8} {:>14} {:>12} {:>14} {:>12}\n", "p", "n", "y", "estimate", "std_error",
                       "oracle", "abs_error");
    for (const auto& r : reports) {
      out << fmt::format("{:>6} {:>6} {:>8.4g} {:>14.8g} {:>12.4g} {:>14.8g} {:>12.4g}\n", r.config.p, r.config.n, r.y,
                         r.estimate, r.std_error, r.oracle_value, r.abs_error);
    }
  }
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Non-crossing partitions, free moments of Marchenko-Pastur families, and random matrix checks",
               "freeembed"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(FREEEMBED_VERSION));
  const std::map<std::string, EntryLaw> law_names{{"gaussian", EntryLaw::gaussian},
                                                  {"rademacher", EntryLaw::rademacher}};

  NcArgs nc;
  auto* nc_cmd = app.add_subcommand("nc", "Enumerate NC(k) or NC2(k), Kreweras complements and Moebius values");
  nc_cmd->add_option("k", nc.k, "Ground set size")->required();
  nc_cmd->add_option("--kreweras", nc.kreweras_of, "Kreweras complement of a partition such as {{1,2},{3}}");
  nc_cmd->add_option("--mobius", nc.mobius_pair, "mu(sigma, pi); 0 and 1 denote the bottom and top")->expected(2);
  nc_cmd->add_flag("--pairs", nc.pairs, "List non-crossing pair partitions instead");
  add_format(nc_cmd, nc.format);

  MomentArgs mom;
  auto* mom_cmd = app.add_subcommand("moment", "Mixed moment of free Marchenko-Pastur families");
  mom_cmd->add_option("word", mom.word, "Comma-separated family labels, e.g. 1,2,1,2")->required();
  auto* y_opt = mom_cmd->add_option("--y", mom.y, "Evaluate at a rational y such as 1/2");
  mom_cmd->add_flag("--symbolic", mom.symbolic, "Print the polynomial in y (default)")->excludes(y_opt);
  mom_cmd->add_option("--method", mom.method, "lemma2, free, theorem2 or all")
      ->check(CLI::IsMember({"lemma2", "free", "theorem2", "all"}))
      ->default_str("lemma2");
  add_format(mom_cmd, mom.format);

  EmbeddingArgs emb;
  auto* emb_cmd = app.add_subcommand("verify-embedding", "Check the corner embedding identity on one draw");
  emb_cmd->add_option("p", emb.p, "Rows of X")->required()->check(CLI::PositiveNumber);
  emb_cmd->add_option("n", emb.n, "Columns of X")->required()->check(CLI::PositiveNumber);
  emb_cmd->add_option("--seed", emb.seed, "Master seed")->default_str("0");
  emb_cmd->add_option("--law", emb.law, "gaussian or rademacher")
      ->transform(CLI::CheckedTransformer(law_names))
      ->default_str("gaussian");
  add_format(emb_cmd, emb.format);

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo normalized trace of an S-word against the oracle");
  sim_cmd->add_option("word", sim.word, "Comma-separated family labels")->required();
  auto* p_opt = sim_cmd->add_option("--p", sim.p, "Rows of each X")->check(CLI::PositiveNumber);
  auto* n_opt = sim_cmd->add_option("--n", sim.n, "Columns of each X")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--reps", sim.reps, "Replicates")->default_str("100")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Master seed")->default_str("0");
  sim_cmd->add_option("--law", sim.law, "gaussian or rademacher")
      ->transform(CLI::CheckedTransformer(law_names))
      ->default_str("gaussian");
  sim_cmd->add_option("--ladder", sim.ladder, "Convergence ladder, e.g. 50x100,100x200")
      ->excludes(p_opt)
      ->excludes(n_opt);
  sim_cmd->add_option("--m", sim.m, "Number of families (default: largest label)")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all cores)")->default_str("0");
  add_format(sim_cmd, sim.format);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    if (nc_cmd->parsed()) return cmd_nc(nc, out);
    if (mom_cmd->parsed()) return cmd_moment(mom, out);
    if (emb_cmd->parsed()) return cmd_verify_embedding(emb, out);
    if (sim_cmd->parsed()) return cmd_simulate(sim, out);
  } catch (const StructureError& e) {
    err << "verification failure: " << e.what() << '\n';
    return verification_failed;
  } catch (const SimulationError& e) {
    err << "simulation failed: " << e.what() << '\n';
    return internal_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return usage_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return internal_error;
  }
  return usage_error;
}

}  // namespace freeembed::cli
