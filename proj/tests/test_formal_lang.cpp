#include <doctest.h>

#include <random>

#include "attrib/errors.hpp"
#include "attrib/formal_lang.hpp"
#include "oracles.hpp"

using namespace attrib;

namespace {

Dfa even_a_dfa() {
  Dfa d;
  d.state_count = 2;
  d.start = 0;
  d.accepting = {true, false};
  d.transitions = {1, 0, 0, 1};  // state 0: a->1 b->0; state 1: a->0 b->1
  return d;
}

const Alphabet kAb({'a', 'b'});

}  // namespace

TEST_CASE("alphabet rejects empty and duplicate symbols") {
  CHECK_THROWS_AS(Alphabet({}), InputError);
  CHECK_THROWS_AS(Alphabet({'a', 'a'}), InputError);
  CHECK(kAb.less("b", "aa"));
  CHECK(kAb.less("ab", "ba"));
  CHECK_FALSE(kAb.less("a", "a"));
}

TEST_CASE("even-a automaton enumerates in length-lex order") {
  auto l = Language::regular(kAb, even_a_dfa());
  CHECK(l.enumerate_up_to(2) == std::vector<std::string>{"", "b", "aa", "bb"});
  CHECK(l.members_of_length(3) == std::vector<std::string>{"aab", "aba", "baa", "bbb"});
  CHECK_FALSE(l.is_finite());
  CHECK_THROWS_AS(l.contains("abc"), InputError);
}

TEST_CASE("enumeration agrees with brute-force membership") {
  auto l = Language::regular(kAb, even_a_dfa());
  auto got = l.enumerate_up_to(6);
  std::vector<std::string> expect;
  for (const auto& s : oracle::all_strings("ab", 6)) {
    if (l.contains(s)) expect.push_back(s);
  }
  CHECK(got == expect);
}

TEST_CASE("unary nested family") {
  auto f = build_unary_nested_family(3);
  REQUIRE(f.size() == 4);
  CHECK(f.names.back() == "Linf");
  CHECK(f[0].contains("x"));
  CHECK_FALSE(f[0].contains("xx"));
  CHECK_FALSE(f[3].contains(""));
  CHECK(f[3].contains(std::string(500, 'x')));
  CHECK(is_proper_subset(f[1], f[2]));
  CHECK(is_proper_subset(f[2], f[3]));
  CHECK(difference_witness(f[3], f[1]) == std::string("xxx"));
  CHECK_FALSE(difference_witness(f[0], f[3]));
  CHECK_THROWS_AS(build_unary_nested_family(0), InputError);
}

TEST_CASE("difference witness is the length-lex smallest, checked by brute force") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 300; ++round) {
    auto f = oracle::random_finite_family(rng, 3, 4, 3);
    for (std::size_t i = 0; i < f.size(); ++i) {
      for (std::size_t j = 0; j < f.size(); ++j) {
        std::optional<std::string> expect;
        for (const auto& s : oracle::all_strings(oracle::symbols_of(f.alphabet()), 3)) {
          if (f[i].contains(s) && !f[j].contains(s)) {
            expect = s;
            break;
          }
        }
        CHECK(difference_witness(f[i], f[j]) == expect);
        CHECK(is_subset(f[i], f[j]) == !expect.has_value());
      }
    }
  }
}

TEST_CASE("product construction on mixed kinds") {
  auto even = Language::regular(kAb, even_a_dfa());
  auto fin = Language::finite(kAb, {"", "b", "aa"});
  CHECK(is_subset(fin, even));
  CHECK_FALSE(is_subset(even, fin));
  CHECK(difference_witness(even, fin) == std::string("bb"));
  CHECK(equivalent(even, Language::regular(kAb, even_a_dfa())));
  auto regular_unary = Language::unary_threshold(2).to_dfa();
  CHECK(equivalent(Language::regular(Alphabet::unary(), regular_unary), Language::unary_threshold(2)));
  CHECK(difference_witness(Language::unary_all(), Language::regular(Alphabet::unary(), regular_unary)) ==
        std::string("xxx"));
}

TEST_CASE("finite DFA trie agrees with membership") {
  auto fin = Language::finite(kAb, {"ab", "b", "bba"});
  auto as_dfa = Language::regular(kAb, fin.to_dfa());
  CHECK(equivalent(fin, as_dfa));
  CHECK(as_dfa.is_finite());
  CHECK(fin.longest_member_length() == 3);
}

TEST_CASE("family documents") {
  auto f = load_family(ATTRIB_FIXTURES "/three_chain.json");
  CHECK(f.size() == 3);
  CHECK(f.index_of("AB") == std::size_t{1});
  auto round = parse_family(family_to_json(f));
  CHECK(round.names == f.names);
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(equivalent(round[i], f[i]));

  auto even = load_family(ATTRIB_FIXTURES "/even_a.json");
  CHECK(even[0].enumerate_up_to(2) == std::vector<std::string>{"", "b", "aa", "bb"});

  CHECK_THROWS_AS(load_family(ATTRIB_FIXTURES "/indistinct.json"), ValidationError);
  CHECK_THROWS_AS(load_family(ATTRIB_FIXTURES "/broken.json"), ParseError);
  CHECK_THROWS_AS(load_family(ATTRIB_FIXTURES "/does_not_exist.json"), ParseError);
  CHECK_THROWS_AS(parse_family(nlohmann::json::parse(R"({"alphabet":["a"],"languages":[{"name":"x","kind":"finite","strings":["b"]}]})")),
                  ValidationError);
  CHECK_THROWS_AS(parse_family(nlohmann::json::parse(R"({"alphabet":["a"],"languages":[{"name":"x","kind":"dfa","states":1,"start":0,"accepting":[0],"transitions":[]}]})")),
                  ValidationError);
  try {
    load_family(ATTRIB_FIXTURES "/indistinct.json");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("one") != std::string::npos);
    CHECK(std::string(e.what()).find("same") != std::string::npos);
  }
}
