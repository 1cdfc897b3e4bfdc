#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

namespace attrib {

/// Ordered set of single-character symbols. The declaration order fixes the
/// length-lexicographic order used by every enumeration in the library.
class Alphabet {
 public:
  explicit Alphabet(std::vector<char> symbols);

  static Alphabet unary(char symbol = 'x') { return Alphabet({symbol}); }

  std::span<const char> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool is_unary() const { return symbols_.size() == 1; }

  /// Position of `c` in the declared order, or -1.
  int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }
  bool covers(std::string_view s) const;
  void require_covers(std::string_view s) const;

  /// Strict length-lex comparison: shorter first, then symbol order.
  bool less(std::string_view a, std::string_view b) const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<char> symbols_;
  std::array<int, 256> index_{};
};

/// Complete deterministic automaton. `transitions[state * |alphabet| + symbol]`.
struct Dfa {
  std::size_t state_count = 1;
  std::size_t start = 0;
  std::vector<bool> accepting;
  std::vector<std::size_t> transitions;

  std::size_t next(std::size_t state, std::size_t symbol, std::size_t alphabet_size) const {
    return transitions[state * alphabet_size + symbol];
  }
  void validate(std::size_t alphabet_size) const;
};

class Language {
 public:
  struct Finite {
    std::vector<std::string> strings;  // length-lex sorted, unique
  };
  /// { x^n : 0 < n <= k }
  struct UnaryThreshold {
    std::size_t k;
  };
  /// { x^n : n >= 1 }
  struct UnaryAll {};
  struct Regular {
    Dfa dfa;
  };
  using Kind = std::variant<Finite, UnaryThreshold, UnaryAll, Regular>;

  static Language finite(Alphabet alphabet, std::vector<std::string> strings);
  static Language unary_threshold(Alphabet alphabet, std::size_t k);
  static Language unary_threshold(std::size_t k) { return unary_threshold(Alphabet::unary(), k); }
  static Language unary_all(Alphabet alphabet);
  static Language unary_all() { return unary_all(Alphabet::unary()); }
  static Language regular(Alphabet alphabet, Dfa dfa);

  const Alphabet& alphabet() const { return alphabet_; }
  const Kind& kind() const { return kind_; }

  /// Exact membership. Throws InputError for symbols outside the alphabet.
  bool contains(std::string_view s) const;
  /// Membership for a string already known to be over the alphabet.
  bool contains_unchecked(std::string_view s) const;

  /// Members with |s| <= max_len, in length-lex order.
  std::vector<std::string> enumerate_up_to(std::size_t max_len) const;
  /// Members with |s| == len, in length-lex order.
  std::vector<std::string> members_of_length(std::size_t len) const;

  bool is_empty() const;
  bool is_finite() const;
  /// Length of the longest member. Requires a finite, non-empty language.
  std::size_t longest_member_length() const;

  /// Equivalent complete DFA over the same alphabet.
  Dfa to_dfa() const;
  /// Number of states of to_dfa() without building it.
  std::size_t dfa_size() const;

  std::string describe() const;

 private:
  Language(Alphabet alphabet, Kind kind) : alphabet_(std::move(alphabet)), kind_(std::move(kind)) {}

  Alphabet alphabet_;
  Kind kind_;
};

/// a ⊆ b, decided exactly. Throws InputError on alphabet mismatch.
bool is_subset(const Language& a, const Language& b);
bool is_proper_subset(const Language& a, const Language& b);
bool equivalent(const Language& a, const Language& b);

/// Length-lex smallest member of a − b, if any.
std::optional<std::string> difference_witness(const Language& a, const Language& b);

/// A length B such that a ⊄ b implies a witness of length <= B exists.
std::size_t exactness_bound(const Language& a, const Language& b);

struct LanguageFamily {
  std::vector<Language> languages;
  std::vector<std::string> names;

  std::size_t size() const { return languages.size(); }
  const Language& operator[](std::size_t i) const { return languages[i]; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  const Alphabet& alphabet() const { return languages.front().alphabet(); }
};

/// [L_1, ..., L_max_k, L_inf] over the unary alphabet {x}.
LanguageFamily build_unary_nested_family(std::size_t max_k);

/// Validates a family document (see README for the schema). Distinctness is
/// checked pairwise; a violation names the offending pair.
LanguageFamily parse_family(const nlohmann::json& document);
LanguageFamily load_family(const std::string& path);
nlohmann::json family_to_json(const LanguageFamily& family);

}  // namespace attrib
