#include "attrib/formal_lang.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "attrib/errors.hpp"

namespace attrib {

// ---------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<char> symbols) : symbols_(std::move(symbols)) {
  index_.fill(-1);
  if (symbols_.empty()) throw InputError("alphabet must not be empty");
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    auto& slot = index_[static_cast<unsigned char>(symbols_[i])];
    if (slot >= 0) throw InputError(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
    slot = static_cast<int>(i);
  }
}

bool Alphabet::covers(std::string_view s) const {
  return std::all_of(s.begin(), s.end(), [this](char c) { return index_of(c) >= 0; });
}

void Alphabet::require_covers(std::string_view s) const {
  for (char c : s) {
    if (index_of(c) < 0) {
      throw InputError("symbol '" + std::string(1, c) + "' in \"" + std::string(s) +
                       "\" is outside the alphabet");
    }
  }
}

bool Alphabet::less(std::string_view a, std::string_view b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ia = index_of(a[i]);
    int ib = index_of(b[i]);
    if (ia != ib) return ia < ib;
  }
  return false;
}

// --------------------------------------------------------------------- Dfa

void Dfa::validate(std::size_t alphabet_size) const {
  if (state_count == 0) throw InputError("dfa needs at least one state");
  if (start >= state_count) throw InputError("dfa start state out of range");
  if (accepting.size() != state_count) throw InputError("dfa accepting mask has wrong size");
  if (transitions.size() != state_count * alphabet_size) {
    throw InputError("dfa transition table is not total over states x alphabet");
  }
  for (std::size_t t : transitions) {
    if (t >= state_count) throw InputError("dfa transition target out of range");
  }
}

namespace {

std::string repeat(char c, std::size_t n) { return std::string(n, c); }

/// States reachable from start and able to reach an accepting state.
std::vector<bool> useful_states(const Dfa& dfa, std::size_t k) {
  std::vector<bool> reach(dfa.state_count, false);
  std::deque<std::size_t> work{dfa.start};
  reach[dfa.start] = true;
  while (!work.empty()) {
    auto q = work.front();
    work.pop_front();
    for (std::size_t a = 0; a < k; ++a) {
      auto r = dfa.next(q, a, k);
      if (!reach[r]) {
        reach[r] = true;
        work.push_back(r);
      }
    }
  }
  std::vector<std::vector<std::size_t>> reverse(dfa.state_count);
  for (std::size_t q = 0; q < dfa.state_count; ++q) {
    for (std::size_t a = 0; a < k; ++a) reverse[dfa.next(q, a, k)].push_back(q);
  }
  std::vector<bool> coreach(dfa.state_count, false);
  for (std::size_t q = 0; q < dfa.state_count; ++q) {
    if (dfa.accepting[q]) {
      coreach[q] = true;
      work.push_back(q);
    }
  }
  while (!work.empty()) {
    auto q = work.front();
    work.pop_front();
    for (auto p : reverse[q]) {
      if (!coreach[p]) {
        coreach[p] = true;
        work.push_back(p);
      }
    }
  }
  std::vector<bool> useful(dfa.state_count);
  for (std::size_t q = 0; q < dfa.state_count; ++q) useful[q] = reach[q] && coreach[q];
  return useful;
}

/// Longest accepted length if the trimmed automaton is acyclic.
std::optional<std::size_t> longest_acyclic(const Dfa& dfa, std::size_t k) {
  auto useful = useful_states(dfa, k);
  if (!useful[dfa.start]) return std::nullopt;
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<int> color(dfa.state_count, 0);
  std::vector<long> longest(dfa.state_count, -1);
  bool cyclic = false;
  // Iterative DFS computing the longest path to acceptance.
  struct Frame {
    std::size_t state;
    std::size_t next_symbol;
  };
  std::vector<Frame> stack{{dfa.start, 0}};
  color[dfa.start] = 1;
  while (!stack.empty() && !cyclic) {
    auto& f = stack.back();
    if (f.next_symbol < k) {
      auto r = dfa.next(f.state, f.next_symbol++, k);
      if (!useful[r]) continue;
      if (color[r] == 1) {
        cyclic = true;
      } else if (color[r] == 0) {
        color[r] = 1;
        stack.push_back({r, 0});
      }
      continue;
    }
    long best = dfa.accepting[f.state] ? 0 : -1;
    for (std::size_t a = 0; a < k; ++a) {
      auto r = dfa.next(f.state, a, k);
      if (useful[r] && longest[r] >= 0) best = std::max(best, longest[r] + 1);
    }
    longest[f.state] = best;
    color[f.state] = 2;
    stack.pop_back();
  }
  if (cyclic) return std::nullopt;
  return static_cast<std::size_t>(longest[dfa.start]);
}

/// Shortest, then symbol-order-smallest, word accepted by A and rejected by B.
std::optional<std::string> product_witness(const Dfa& a, const Dfa& b, const Alphabet& alphabet) {
  const std::size_t k = alphabet.size();
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::vector<std::pair<std::size_t, std::size_t>> states;
  auto key = [&](std::size_t qa, std::size_t qb) {
    return static_cast<std::uint64_t>(qa) * b.state_count + qb;
  };
  auto intern = [&](std::size_t qa, std::size_t qb) {
    auto [it, inserted] = index.emplace(key(qa, qb), states.size());
    if (inserted) states.emplace_back(qa, qb);
    return std::pair{it->second, inserted};
  };
  intern(a.start, b.start);
  std::vector<std::vector<std::size_t>> succ;
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto [qa, qb] = states[i];
    std::vector<std::size_t> row(k);
    for (std::size_t s = 0; s < k; ++s) row[s] = intern(a.next(qa, s, k), b.next(qb, s, k)).first;
    succ.push_back(std::move(row));
  }
  const std::size_t n = states.size();
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : succ[i]) pred[j].push_back(i);
  }
  constexpr std::size_t kInf = static_cast<std::size_t>(-1);
  std::vector<std::size_t> dist(n, kInf);
  std::deque<std::size_t> work;
  for (std::size_t i = 0; i < n; ++i) {
    if (a.accepting[states[i].first] && !b.accepting[states[i].second]) {
      dist[i] = 0;
      work.push_back(i);
    }
  }
  while (!work.empty()) {
    auto q = work.front();
    work.pop_front();
    for (auto p : pred[q]) {
      if (dist[p] == kInf) {
        dist[p] = dist[q] + 1;
        work.push_back(p);
      }
    }
  }
  if (dist[0] == kInf) return std::nullopt;
  std::string word;
  std::size_t q = 0;
  while (dist[q] > 0) {
    for (std::size_t s = 0; s < k; ++s) {
      if (dist[succ[q][s]] == dist[q] - 1) {
        word.push_back(alphabet.symbols()[s]);
        q = succ[q][s];
        break;
      }
    }
  }
  return word;
}

bool is_unary_kind(const Language& l) {
  return std::holds_alternative<Language::UnaryThreshold>(l.kind()) ||
         std::holds_alternative<Language::UnaryAll>(l.kind());
}

/// Threshold of a unary kind; nullopt means unbounded (UnaryAll).
std::optional<std::size_t> unary_bound(const Language& l) {
  if (auto* t = std::get_if<Language::UnaryThreshold>(&l.kind())) return t->k;
  return std::nullopt;
}

void require_same_alphabet(const Language& a, const Language& b) {
  if (!(a.alphabet() == b.alphabet())) throw InputError("languages are over different alphabets");
}

}  // namespace

// ---------------------------------------------------------------- Language

Language Language::finite(Alphabet alphabet, std::vector<std::string> strings) {
  for (const auto& s : strings) alphabet.require_covers(s);
  std::sort(strings.begin(), strings.end(),
            [&](const std::string& x, const std::string& y) { return alphabet.less(x, y); });
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  return Language(std::move(alphabet), Finite{std::move(strings)});
}

Language Language::unary_threshold(Alphabet alphabet, std::size_t k) {
  if (!alphabet.is_unary()) throw InputError("unary_threshold requires a unary alphabet");
  if (k < 1) throw InputError("unary_threshold requires k >= 1");
  return Language(std::move(alphabet), UnaryThreshold{k});
}

Language Language::unary_all(Alphabet alphabet) {
  if (!alphabet.is_unary()) throw InputError("unary_all requires a unary alphabet");
  return Language(std::move(alphabet), UnaryAll{});
}

Language Language::regular(Alphabet alphabet, Dfa dfa) {
  dfa.validate(alphabet.size());
  return Language(std::move(alphabet), Regular{std::move(dfa)});
}

bool Language::contains(std::string_view s) const {
  alphabet_.require_covers(s);
  return contains_unchecked(s);
}

bool Language::contains_unchecked(std::string_view s) const {
  return std::visit(
      [&](const auto& k) -> bool {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Finite>) {
          return std::binary_search(k.strings.begin(), k.strings.end(), s,
                                    [this](std::string_view x, std::string_view y) {
                                      return alphabet_.less(x, y);
                                    });
        } else if constexpr (std::is_same_v<T, UnaryThreshold>) {
          return !s.empty() && s.size() <= k.k;
        } else if constexpr (std::is_same_v<T, UnaryAll>) {
          return !s.empty();
        } else {
          const auto n = alphabet_.size();
          std::size_t q = k.dfa.start;
          for (char c : s) q = k.dfa.next(q, static_cast<std::size_t>(alphabet_.index_of(c)), n);
          return k.dfa.accepting[q];
        }
      },
      kind_);
}

std::vector<std::string> Language::members_of_length(std::size_t len) const {
  const char x = alphabet_.symbols()[0];
  return std::visit(
      [&](const auto& k) -> std::vector<std::string> {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Finite>) {
          std::vector<std::string> out;
          for (const auto& s : k.strings) {
            if (s.size() == len) out.push_back(s);
          }
          return out;
        } else if constexpr (std::is_same_v<T, UnaryThreshold>) {
          if (len >= 1 && len <= k.k) return {repeat(x, len)};
          return {};
        } else if constexpr (std::is_same_v<T, UnaryAll>) {
          if (len >= 1) return {repeat(x, len)};
          return {};
        } else {
          const Dfa& dfa = k.dfa;
          const auto n = alphabet_.size();
          // exact[r][q]: an accepting state is reachable from q in exactly r steps
          std::vector<std::vector<bool>> exact(len + 1, std::vector<bool>(dfa.state_count));
          exact[0] = dfa.accepting;
          for (std::size_t r = 1; r <= len; ++r) {
            for (std::size_t q = 0; q < dfa.state_count; ++q) {
              for (std::size_t a = 0; a < n && !exact[r][q]; ++a) {
                if (exact[r - 1][dfa.next(q, a, n)]) exact[r][q] = true;
              }
            }
          }
          std::vector<std::string> out;
          if (!exact[len][dfa.start]) return out;
          std::string word;
          // Depth-first in symbol order yields length-lex order within one length.
          auto walk = [&](auto&& self, std::size_t q, std::size_t remaining) -> void {
            if (remaining == 0) {
              out.push_back(word);
              return;
            }
            for (std::size_t a = 0; a < n; ++a) {
              auto r = dfa.next(q, a, n);
              if (!exact[remaining - 1][r]) continue;
              word.push_back(alphabet_.symbols()[a]);
              self(self, r, remaining - 1);
              word.pop_back();
            }
          };
          walk(walk, dfa.start, len);
          return out;
        }
      },
      kind_);
}

std::vector<std::string> Language::enumerate_up_to(std::size_t max_len) const {
  if (auto* f = std::get_if<Finite>(&kind_)) {
    std::vector<std::string> out;
    for (const auto& s : f->strings) {
      if (s.size() <= max_len) out.push_back(s);
    }
    return out;
  }
  std::vector<std::string> out;
  for (std::size_t len = 0; len <= max_len; ++len) {
    auto level = members_of_length(len);
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

bool Language::is_empty() const {
  if (auto* f = std::get_if<Finite>(&kind_)) return f->strings.empty();
  if (auto* r = std::get_if<Regular>(&kind_)) return !useful_states(r->dfa, alphabet_.size())[r->dfa.start];
  return false;
}

bool Language::is_finite() const {
  if (std::holds_alternative<UnaryAll>(kind_)) return false;
  if (auto* r = std::get_if<Regular>(&kind_)) {
    if (is_empty()) return true;
    return longest_acyclic(r->dfa, alphabet_.size()).has_value();
  }
  return true;
}

std::size_t Language::longest_member_length() const {
  if (is_empty() || !is_finite()) throw InputError("longest_member_length needs a finite non-empty language");
  if (auto* f = std::get_if<Finite>(&kind_)) return f->strings.back().size();
  if (auto* t = std::get_if<UnaryThreshold>(&kind_)) return t->k;
  return *longest_acyclic(std::get<Regular>(kind_).dfa, alphabet_.size());
}

Dfa Language::to_dfa() const {
  const auto n = alphabet_.size();
  return std::visit(
      [&](const auto& k) -> Dfa {
        using T = std::decay_t<decltype(k)>;
        Dfa d;
        if constexpr (std::is_same_v<T, Finite>) {
          // state 0 is the dead sink, state 1 the trie root
          d.state_count = 2;
          d.start = 1;
          d.transitions.assign(2 * n, 0);
          d.accepting.assign(2, false);
          for (const auto& s : k.strings) {
            std::size_t q = 1;
            for (char c : s) {
              auto a = static_cast<std::size_t>(alphabet_.index_of(c));
              if (d.transitions[q * n + a] == 0) {
                d.transitions[q * n + a] = d.state_count++;
                d.transitions.resize(d.state_count * n, 0);
                d.accepting.push_back(false);
              }
              q = d.transitions[q * n + a];
            }
            d.accepting[q] = true;
          }
        } else if constexpr (std::is_same_v<T, UnaryThreshold>) {
          // state i = i symbols read; state k+1 is dead
          d.state_count = k.k + 2;
          d.start = 0;
          d.accepting.assign(d.state_count, false);
          d.transitions.resize(d.state_count);
          for (std::size_t i = 0; i < d.state_count; ++i) {
            d.transitions[i] = std::min(i + 1, k.k + 1);
            d.accepting[i] = i >= 1 && i <= k.k;
          }
        } else if constexpr (std::is_same_v<T, UnaryAll>) {
          d.state_count = 2;
          d.start = 0;
          d.accepting = {false, true};
          d.transitions = {1, 1};
        } else {
          d = k.dfa;
        }
        return d;
      },
      kind_);
}

std::size_t Language::dfa_size() const {
  if (auto* t = std::get_if<UnaryThreshold>(&kind_)) return t->k + 2;
  if (std::holds_alternative<UnaryAll>(kind_)) return 2;
  if (auto* r = std::get_if<Regular>(&kind_)) return r->dfa.state_count;
  return to_dfa().state_count;
}

std::string Language::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& k) {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Finite>) {
          os << "finite{";
          for (std::size_t i = 0; i < k.strings.size(); ++i) os << (i ? "," : "") << '"' << k.strings[i] << '"';
          os << "}";
        } else if constexpr (std::is_same_v<T, UnaryThreshold>) {
          os << "unary_threshold(" << k.k << ")";
        } else if constexpr (std::is_same_v<T, UnaryAll>) {
          os << "unary_all";
        } else {
          os << "dfa(" << k.dfa.state_count << " states)";
        }
      },
      kind_);
  return os.str();
}

// ------------------------------------------------------------- relations

std::optional<std::string> difference_witness(const Language& a, const Language& b) {
  require_same_alphabet(a, b);
  if (auto* f = std::get_if<Language::Finite>(&a.kind())) {
    for (const auto& s : f->strings) {
      if (!b.contains_unchecked(s)) return s;
    }
    return std::nullopt;
  }
  if (is_unary_kind(a) && is_unary_kind(b)) {
    auto ka = unary_bound(a);
    auto kb = unary_bound(b);
    if (!kb) return std::nullopt;
    if (!ka || *ka > *kb) return repeat(a.alphabet().symbols()[0], *kb + 1);
    return std::nullopt;
  }
  return product_witness(a.to_dfa(), b.to_dfa(), a.alphabet());
}

bool is_subset(const Language& a, const Language& b) { return !difference_witness(a, b).has_value(); }

bool is_proper_subset(const Language& a, const Language& b) { return is_subset(a, b) && !is_subset(b, a); }

bool equivalent(const Language& a, const Language& b) { return is_subset(a, b) && is_subset(b, a); }

std::size_t exactness_bound(const Language& a, const Language& b) {
  require_same_alphabet(a, b);
  if (auto* f = std::get_if<Language::Finite>(&a.kind())) {
    return f->strings.empty() ? 0 : f->strings.back().size();
  }
  if (is_unary_kind(a) && is_unary_kind(b)) {
    return std::max(unary_bound(a).value_or(0), unary_bound(b).value_or(0)) + 1;
  }
  return a.dfa_size() * b.dfa_size();
}

// ----------------------------------------------------------------- family

std::optional<std::size_t> LanguageFamily::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return std::nullopt;
}

LanguageFamily build_unary_nested_family(std::size_t max_k) {
  if (max_k < 1) throw InputError("unary nested family needs max_k >= 1");
  LanguageFamily family;
  family.languages.reserve(max_k + 1);
  for (std::size_t k = 1; k <= max_k; ++k) {
    family.languages.push_back(Language::unary_threshold(k));
    family.names.push_back("L" + std::to_string(k));
  }
  family.languages.push_back(Language::unary_all());
  family.names.push_back("Linf");
  return family;
}

namespace {

using nlohmann::json;

std::size_t require_index(const json& v, const std::string& what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ValidationError(what + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

char require_symbol(const json& v, const std::string& what) {
  if (!v.is_string() || v.get<std::string>().size() != 1) {
    throw ValidationError(what + " must be a one-character string");
  }
  return v.get<std::string>()[0];
}

Language parse_language(const json& doc, const Alphabet& alphabet, const std::string& name) {
  const std::string where = "language '" + name + "'";
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ValidationError(where + ": missing kind");
  const auto kind = doc["kind"].get<std::string>();
  try {
    if (kind == "finite") {
      if (!doc.contains("strings") || !doc["strings"].is_array()) {
        throw ValidationError(where + ": finite kind needs a strings array");
      }
      std::vector<std::string> strings;
      for (const auto& s : doc["strings"]) {
        if (!s.is_string()) throw ValidationError(where + ": strings must be strings");
        strings.push_back(s.get<std::string>());
      }
      return Language::finite(alphabet, std::move(strings));
    }
    if (kind == "unary_threshold") {
      if (!doc.contains("k") || !doc["k"].is_number_integer() || doc["k"].get<long long>() < 1) {
        throw ValidationError(where + ": unary_threshold needs integer k >= 1");
      }
      return Language::unary_threshold(alphabet, doc["k"].get<std::size_t>());
    }
    if (kind == "unary_all") return Language::unary_all(alphabet);
    if (kind == "dfa") {
      for (const char* field : {"states", "start", "accepting", "transitions"}) {
        if (!doc.contains(field)) throw ValidationError(where + ": dfa kind needs '" + field + "'");
      }
      Dfa dfa;
      dfa.state_count = require_index(doc["states"], where + " states");
      if (dfa.state_count == 0) throw ValidationError(where + ": dfa needs at least one state");
      dfa.start = require_index(doc["start"], where + " start");
      dfa.accepting.assign(dfa.state_count, false);
      if (!doc["accepting"].is_array()) throw ValidationError(where + ": accepting must be an array");
      for (const auto& q : doc["accepting"]) {
        auto s = require_index(q, where + " accepting state");
        if (s >= dfa.state_count) throw ValidationError(where + ": accepting state out of range");
        dfa.accepting[s] = true;
      }
      const auto n = alphabet.size();
      constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
      dfa.transitions.assign(dfa.state_count * n, kUnset);
      if (!doc["transitions"].is_array()) throw ValidationError(where + ": transitions must be an array");
      for (const auto& t : doc["transitions"]) {
        if (!t.is_array() || t.size() != 3) throw ValidationError(where + ": transition must be [from, symbol, to]");
        auto from = require_index(t[0], where + " transition source");
        auto sym = require_symbol(t[1], where + " transition symbol");
        auto to = require_index(t[2], where + " transition target");
        if (from >= dfa.state_count || to >= dfa.state_count) {
          throw ValidationError(where + ": transition state out of range");
        }
        int a = alphabet.index_of(sym);
        if (a < 0) throw ValidationError(where + ": transition symbol outside alphabet");
        auto& slot = dfa.transitions[from * n + static_cast<std::size_t>(a)];
        if (slot != kUnset) throw ValidationError(where + ": duplicate transition (not deterministic)");
        slot = to;
      }
      if (std::find(dfa.transitions.begin(), dfa.transitions.end(), kUnset) != dfa.transitions.end()) {
        throw ValidationError(where + ": transition function is not total");
      }
      return Language::regular(alphabet, std::move(dfa));
    }
  } catch (const InputError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  throw ValidationError(where + ": unknown kind '" + kind + "'");
}

}  // namespace

LanguageFamily parse_family(const json& document) {
  if (!document.is_object()) throw ValidationError("family document must be an object");
  if (!document.contains("alphabet") || !document["alphabet"].is_array()) {
    throw ValidationError("family document needs an 'alphabet' array");
  }
  std::vector<char> symbols;
  for (const auto& s : document["alphabet"]) symbols.push_back(require_symbol(s, "alphabet entry"));
  std::optional<Alphabet> alphabet;
  try {
    alphabet.emplace(std::move(symbols));
  } catch (const InputError& e) {
    throw ValidationError(e.what());
  }
  if (!document.contains("languages") || !document["languages"].is_array() || document["languages"].empty()) {
    throw ValidationError("family document needs a non-empty 'languages' array");
  }
  LanguageFamily family;
  std::set<std::string> seen;
  for (const auto& entry : document["languages"]) {
    if (!entry.is_object() || !entry.contains("name") || !entry["name"].is_string() ||
        entry["name"].get<std::string>().empty()) {
      throw ValidationError("every language needs a non-empty string 'name'");
    }
    auto name = entry["name"].get<std::string>();
    if (!seen.insert(name).second) throw ValidationError("duplicate language name '" + name + "'");
    family.languages.push_back(parse_language(entry, *alphabet, name));
    family.names.push_back(std::move(name));
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      if (equivalent(family[i], family[j])) {
        throw ValidationError("languages '" + family.names[i] + "' and '" + family.names[j] +
                              "' denote the same string set");
      }
    }
  }
  return family;
}

LanguageFamily load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open family file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("family file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_family(doc);
}

json family_to_json(const LanguageFamily& family) {
  json doc;
  doc["alphabet"] = json::array();
  for (char c : family.alphabet().symbols()) doc["alphabet"].push_back(std::string(1, c));
  doc["languages"] = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& lang = family[i];
    json entry{{"name", family.names[i]}};
    std::visit(
        [&](const auto& k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Language::Finite>) {
            entry["kind"] = "finite";
            entry["strings"] = k.strings;
          } else if constexpr (std::is_same_v<T, Language::UnaryThreshold>) {
            entry["kind"] = "unary_threshold";
            entry["k"] = k.k;
          } else if constexpr (std::is_same_v<T, Language::UnaryAll>) {
            entry["kind"] = "unary_all";
          } else {
            const auto n = lang.alphabet().size();
            entry["kind"] = "dfa";
            entry["states"] = k.dfa.state_count;
            entry["start"] = k.dfa.start;
            entry["accepting"] = json::array();
            for (std::size_t q = 0; q < k.dfa.state_count; ++q) {
              if (k.dfa.accepting[q]) entry["accepting"].push_back(q);
            }
            entry["transitions"] = json::array();
            for (std::size_t q = 0; q < k.dfa.state_count; ++q) {
              for (std::size_t a = 0; a < n; ++a) {
                entry["transitions"].push_back(
                    json::array({q, std::string(1, lang.alphabet().symbols()[a]), k.dfa.next(q, a, n)}));
              }
            }
          }
        },
        lang.kind());
    doc["languages"].push_back(std::move(entry));
  }
  return doc;
}

}  // namespace attrib
