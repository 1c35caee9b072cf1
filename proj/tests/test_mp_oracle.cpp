#include <doctest.h>

#include <numeric>
#include <set>
#include <vector>

#include "freeembed/errors.hpp"
#include "freeembed/mp_oracle.hpp"
#include "oracles.hpp"

using namespace freeembed;

namespace {

const YPolynomial Y = YPolynomial::y();

SetPartition P(const char* text) { return SetPartition::parse(text); }
PairPartition PP(const char* text) { return PairPartition(SetPartition::parse(text)); }

std::vector<Word> words_up_to(std::size_t max_length, int max_families) {
  std::vector<Word> out;
  for (int m = 1; m <= max_families; ++m) {
    for (std::size_t k = 1; k <= max_length; ++k) {
      std::vector<int> letters(k, 1);
      for (;;) {
        out.emplace_back(letters, m);
        std::size_t i = 0;
        while (i < k && letters[i] == m) letters[i++] = 1;
        if (i == k) break;
        ++letters[i];
      }
    }
  }
  return out;
}

// f applied to one family piece: standardize, map, relabel onto J_i.
SetPartition f_on_piece(const PairPartition& piece, const GroundSet& positions) {
  return bijection_f(PairPartition(piece.partition().standardized())).relabeled(positions);
}

}  // namespace

TEST_CASE("word_stats") {
  const auto s = word_stats(Word::parse("1,2,1,2"));
  CHECK(s.positions[0] == GroundSet({1, 3}));
  CHECK(s.positions[1] == GroundSet({2, 4}));
  CHECK(s.counts == std::vector<std::size_t>{2, 2});
  CHECK(s.interlaced[0] == GroundSet({1, 2, 5, 6}));
  CHECK(word_stats(Word::parse("1,1,1")).counts == std::vector<std::size_t>{3});
  const auto t = word_stats(Word::parse("2,1"));
  CHECK(t.positions[0] == GroundSet({2}));
  CHECK(t.positions[1] == GroundSet({1}));
  const auto absent = word_stats(Word({3, 1}, 3));
  CHECK(absent.counts == std::vector<std::size_t>{1, 0, 1});
  CHECK(absent.present_families() == std::vector<int>{1, 3});
}

TEST_CASE("enumerate_A") {
  const auto a = enumerate_A(Word::parse("1,2,1,2"));
  REQUIRE(a.size() == 4);
  CHECK(a.at({1, 1}).size() == 1);
  CHECK(a.at({1, 1}).front() == P("{{1},{2},{3},{4}}"));
  CHECK(a.at({0, 1}).size() == 1);
  CHECK(a.at({0, 1}).front() == P("{{1,3},{2},{4}}"));
  CHECK(a.at({1, 0}).size() == 1);
  CHECK(a.at({0, 0}).empty());

  const auto aa = enumerate_A(Word::parse("1,1"));
  CHECK(aa.at({0}).size() == 1);
  CHECK(aa.at({1}).size() == 1);
  const auto ab = enumerate_A(Word::parse("1,2"));
  REQUIRE(ab.size() == 1);
  CHECK(ab.at({0, 0}).size() == 1);

  Limits small;
  small.max_symbolic = 3;
  CHECK_THROWS_AS(enumerate_A(Word::parse("1,1,1,1"), small), SizeLimitError);
  CHECK_THROWS_AS(enumerate_B(Word::parse("1,1,1,1"), small), SizeLimitError);
}

TEST_CASE("enumerate_B") {
  const auto b = enumerate_B(Word::parse("1,1"));
  CHECK(b.at({1}) == std::vector<PairPartition>{PP("{{1,2},{3,4}}")});
  CHECK(b.at({0}) == std::vector<PairPartition>{PP("{{1,4},{2,3}}")});
  const auto b12 = enumerate_B(Word::parse("1,2"));
  REQUIRE(b12.size() == 1);
  CHECK(b12.at({0, 0}) == std::vector<PairPartition>{PP("{{1,2},{3,4}}")});
  CHECK(enumerate_B(Word::parse("1")).at({0}) == std::vector<PairPartition>{PP("{{1,2}}")});
}

TEST_CASE("restrict_to") {
  const auto p = PP("{{1,2},{3,6},{4,5}}");
  CHECK(restrict_to(p, GroundSet({1, 2})) == PP("{{1,2}}"));
  CHECK(restrict_to(p, GroundSet({3, 4, 5, 6})) == PP("{{3,6},{4,5}}"));
  CHECK_THROWS_AS(restrict_to(p, GroundSet({1, 2, 3, 4})), DomainError);
  CHECK(restrict_to(P("{{1,3},{2}}"), GroundSet({1, 3})) == P("{{1,3}}"));
  CHECK(odd_first_count(p) == 2);
}

TEST_CASE("bijection_f") {
  CHECK(bijection_f(PP("{{1,2},{3,4}}")) == P("{{1},{2}}"));
  CHECK(bijection_f(PP("{{1,4},{2,3}}")) == P("{{1,2}}"));
  CHECK(bijection_f(PP("{{1,2}}")) == P("{{1}}"));
  CHECK_THROWS_AS(bijection_f(PP("{{2,3},{4,5}}")), DomainError);

  SUBCASE("bijection NC2(2k) -> NC(k) with |f(p)| = S(p), k <= 7") {
    for (std::size_t k = 1; k <= 7; ++k) {
      std::set<SetPartition> images;
      for (const auto& p : enumerate_nc2(GroundSet::range(2 * k))) {
        const auto f = bijection_f(p);
        CHECK(f.ground() == GroundSet::range(k));
        CHECK(f.block_count() == odd_first_count(p));
        images.insert(f);
      }
      CHECK(static_cast<std::int64_t>(images.size()) == oracle::catalan(static_cast<std::int64_t>(k)));
    }
  }
}

TEST_CASE("bijection_f is profile preserving and respects the family decomposition") {
  for (const auto& w : words_up_to(5, 3)) {
    const auto a = enumerate_A(w);
    const auto b = enumerate_B(w);
    const auto stats = word_stats(w);
    const auto families = stats.present_families();
    REQUIRE(a.size() == b.size());
    for (const auto& [t, b_class] : b) {
      const auto& a_class = a.at(t);
      CHECK(a_class.size() == b_class.size());
      std::set<SetPartition> images;
      for (const auto& pi : b_class) {
        const auto image = bijection_f(pi);
        images.insert(image);
        std::vector<Block> pieces;
        for (std::size_t i = 0; i < families.size(); ++i) {
          const auto f = static_cast<std::size_t>(families[i] - 1);
          const auto piece = restrict_to(pi, stats.interlaced[f]);
          const auto image_piece = f_on_piece(piece, stats.positions[f]);
          CHECK(odd_first_count(piece) == image_piece.block_count());
          CHECK(odd_first_count(piece) == t[i] + 1);
          CHECK(restrict_to(image, stats.positions[f]) == image_piece);
          pieces.insert(pieces.end(), image_piece.blocks().begin(), image_piece.blocks().end());
        }
        CHECK(SetPartition(GroundSet::range(w.size()), pieces) == image);
      }
      CHECK(images == std::set<SetPartition>(a_class.begin(), a_class.end()));
    }
  }
}

TEST_CASE("Kreweras parity counts") {
  CHECK(kreweras_parity_counts(PP("{{1,2}}")) == ParityCounts{1, 1});
  CHECK(kreweras_parity_counts(PP("{{1,2},{3,4}}")) == ParityCounts{2, 1});
  CHECK(kreweras_parity_counts(PP("{{1,4},{2,3}}")) == ParityCounts{1, 2});
  CHECK(kreweras_gap_blocks(PP("{{1,2},{3,4}}")) == P("{{1,3},{2},{4}}"));

  SUBCASE("even count is the profile sum, words up to length 5") {
    for (const auto& w : words_up_to(5, 3)) {
      for (const auto& [t, cls] : enumerate_B(w)) {
        const std::size_t sum = std::accumulate(t.begin(), t.end(), std::size_t{0}) + t.size();
        for (const auto& pi : cls) {
          const auto c = kreweras_parity_counts(pi);
          CHECK(c.even_blocks == sum);
          CHECK(c.odd_blocks == w.size() + 1 - sum);
        }
      }
    }
  }
}

TEST_CASE("three moment routes") {
  CHECK(lemma2_moment(Word::parse("1,1")) == 1 + Y);
  CHECK(lemma2_moment(Word::parse("1,2")) == YPolynomial(1));
  CHECK(lemma2_moment(Word::parse("1,2,1,2")) == 1 + 2 * Y);
  CHECK(theorem2_rhs(Word::parse("1,1")) == 1 + Y);
  CHECK(theorem2_rhs(Word::parse("1,2")) == YPolynomial(1));
  CHECK(theorem2_rhs(Word::parse("1,2,1,2")) == 1 + 2 * Y);
  CHECK(lemma2_moment(Word::parse("1,1,1")) == 1 + 3 * Y + Y * Y);

  for (std::size_t k = 1; k <= 8; ++k) {
    CHECK(lemma2_moment(Word(std::vector<int>(k, 1))) == moments_from_cumulants(marchenko_pastur(), k));
  }

  SUBCASE("agreement on every word up to length 5") {
    for (const auto& w : words_up_to(5, 3)) {
      const auto l2 = lemma2_moment(w);
      CHECK(l2 == mp_free_mixed_moment(w));
      CHECK(l2 == theorem2_rhs(w));
    }
  }
}

TEST_CASE("word report") {
  const auto j = word_report(Word::parse("1,2,1,2"));
  CHECK(j.at("word") == nlohmann::json::array({1, 2, 1, 2}));
  CHECK(j.at("lemma2").get<YPolynomial>() == 1 + 2 * Y);
  CHECK(j.at("free_mixed").get<YPolynomial>() == 1 + 2 * Y);
  CHECK(j.at("theorem2_rhs").get<YPolynomial>() == 1 + 2 * Y);
  CHECK(j.at("profile_counts").at("(0,0)") == nlohmann::json{{"A", 0}, {"B", 0}});
  CHECK(j.at("profile_counts").at("(1,1)") == nlohmann::json{{"A", 1}, {"B", 1}});
}
