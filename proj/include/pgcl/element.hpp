// Exponent vectors and unreduced words over a power-commutator generating set.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgcl {

inline constexpr int kMaxGenerators = 32;

[[noreturn]] inline void fail(const std::string& msg) {
  throw std::runtime_error("pgcl: " + msg);
}

// Normal form g_1^{e_1} ... g_n^{e_n} with residues e_i in [0, p).
// Entries at positions >= n are kept zero so that comparison and hashing
// can run over the whole array.
struct Element {
  std::array<std::uint8_t, kMaxGenerators> e{};
  std::uint8_t n = 0;
  std::uint8_t p = 0;

  bool is_identity() const {
    for (int i = 0; i < n; ++i)
      if (e[i] != 0) return false;
    return true;
  }

  // 1-based index of the first nonzero exponent, 0 for the identity.
  int leading() const {
    for (int i = 0; i < n; ++i)
      if (e[i] != 0) return i + 1;
    return 0;
  }

  int exp_at(int gen) const { return e[gen - 1]; }

  friend bool operator==(const Element& a, const Element& b) {
    return a.n == b.n && a.p == b.p && a.e == b.e;
  }
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }
  // Lexicographic on the exponent vector; the identity sorts first.
  friend bool operator<(const Element& a, const Element& b) { return a.e < b.e; }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < n; ++i) {
      if (i) s += ",";
      s += std::to_string(int(e[i]));
    }
    return s + ")";
  }
};

struct ElementHash {
  std::size_t operator()(const Element& a) const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < a.n; ++i) {
      h ^= a.e[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

// One factor g^e of an unreduced word; exponents may be negative.
struct Syllable {
  int gen = 0;
  long long exp = 0;
};

using Word = std::vector<Syllable>;

inline Word word_of(std::initializer_list<Syllable> syl) { return Word(syl); }

}  // namespace pgcl
