// Power-commutator presentations of finite p-groups and collection to
// normal form.  Every generator has relative order exactly p, so a
// consistent presentation on n generators defines a group of order p^n.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pgcl/element.hpp"

namespace pgcl {

namespace detail {
inline bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}
}  // namespace detail

// Raw presentation data, before any validation.  Relation words must be in
// normal form: strictly increasing generator indices, exponents in (0, p).
//   power[i-1]        word for g_i^p, supported on generators > i
//   comm[t(j,i)]      word for [g_j, g_i] (j > i), supported on generators > j
// with the convention [x, y] = x^{-1} y^{-1} x y, so that
// g_j g_i = g_i g_j [g_j, g_i].
struct PcData {
  int p = 0;
  int n = 0;
  std::vector<Word> power;             // size n; empty word = trivial
  std::vector<Word> comm;              // size n(n-1)/2; empty word = trivial
  std::vector<std::string> names;      // optional, size 0 or n

  static std::size_t comm_index(int j, int i) {
    // j > i >= 1
    return std::size_t(j - 1) * (j - 2) / 2 + std::size_t(i - 1);
  }

  void resize_relations() {
    power.assign(std::size_t(n), {});
    comm.assign(std::size_t(n) * (n - 1) / 2, {});
  }

  void set_power(int i, Word w) { power[std::size_t(i - 1)] = std::move(w); }
  void set_comm(int j, int i, Word w) { comm[comm_index(j, i)] = std::move(w); }
};

struct ConsistencyReport {
  bool ok = true;
  // For failures: a human-readable description of the first offending
  // overlap or malformed relation.
  std::string failure;
};

class PcPresentation;
using PcGroup = std::shared_ptr<const PcPresentation>;

// Immutable, validated presentation.  All operations are pure; a PcGroup
// may be shared freely across threads.
class PcPresentation {
 public:
  int p() const { return p_; }
  int n() const { return n_; }
  std::uint64_t order() const { return order_; }
  const std::vector<std::string>& names() const { return names_; }
  std::string generator_name(int i) const {
    if (!names_.empty()) return names_[std::size_t(i - 1)];
    return "g" + std::to_string(i);
  }

  Element identity() const {
    Element a;
    a.n = std::uint8_t(n_);
    a.p = std::uint8_t(p_);
    return a;
  }

  Element generator(int i) const {
    check_gen(i);
    Element a = identity();
    a.e[i - 1] = 1;
    return a;
  }

  // Element from explicit exponents (reduced mod p).
  Element element(const std::vector<long long>& exps) const {
    if (int(exps.size()) != n_) fail("element: expected " + std::to_string(n_) + " exponents");
    Element a = identity();
    for (int i = 0; i < n_; ++i) a.e[i] = std::uint8_t(((exps[i] % p_) + p_) % p_);
    return a;
  }

  // The stored relation normal forms (identity when trivial).
  const Element& power_relation(int i) const { return power_[std::size_t(i - 1)]; }
  const Element& comm_relation(int j, int i) const { return comm_[PcData::comm_index(j, i)]; }

  // Collection from the left with an explicit work stack.  Deterministic
  // and total on valid words.
  Element collect(const Word& w) const {
    Element c = identity();
    Stack stack;
    push_word(stack, w);
    run(c, stack);
    return c;
  }

  Element mul(const Element& a, const Element& b) const {
    check_elem(a);
    check_elem(b);
    Element c = a;
    Stack stack;
    push_element(stack, b);
    run(c, stack);
    return c;
  }

  Element inv(const Element& a) const {
    check_elem(a);
    Element c = identity();
    Stack stack;
    // a^{-1} = g_n^{-e_n} ... g_1^{-e_1}; push so g_n pops first.
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] != 0) stack.push_back({i + 1, -(long long)a.e[i]});
    run(c, stack);
    return c;
  }

  Element pow(const Element& a, long long k) const {
    if (k < 0) return pow(inv(a), -k);
    Element acc = identity();
    Element base = a;
    while (k > 0) {
      if (k & 1) acc = mul(acc, base);
      k >>= 1;
      if (k) base = mul(base, base);
    }
    return acc;
  }

  // [a, b] = a^{-1} b^{-1} a b
  Element commutator(const Element& a, const Element& b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  // a^b = b^{-1} a b = a [a, b]
  Element conjugate(const Element& a, const Element& b) const {
    return mul(a, commutator(a, b));
  }

  // z with (xy)^k = x^k y^k z; z lies in the derived subgroup of <x,y>.
  Element hall_petrescu_defect(const Element& x, const Element& y, long long k) const {
    Element lhs = pow(mul(x, y), k);
    Element rhs = mul(pow(x, k), pow(y, k));
    return mul(inv(rhs), lhs);
  }

  std::uint64_t element_order(const Element& a) const {
    Element b = a;
    std::uint64_t o = 1;
    while (!b.is_identity()) {
      b = pow(b, p_);
      o *= std::uint64_t(p_);
    }
    return o;
  }

  // Validates and freezes a presentation; throws with the failing overlap
  // when the data is malformed or inconsistent.
  static PcGroup create(const PcData& data);

  // Present for completeness; prefer create().
  static ConsistencyReport validate(const PcData& data);

 private:
  friend ConsistencyReport check_consistency(const PcData&);

  int p_ = 0;
  int n_ = 0;
  std::uint64_t order_ = 1;
  std::vector<Element> power_;
  std::vector<Element> comm_;
  // conj_tail_[(comm_index(j,i))*(p-1) + e-1] = [g_j, g_i^e]; lets the
  // collector move whole syllables instead of single letters.
  std::vector<Element> conj_tail_;
  std::vector<std::string> names_;

  using Stack = std::vector<Syllable>;

  const Element& conj_tail(int j, int i, int e) const {
    return conj_tail_[PcData::comm_index(j, i) * std::size_t(p_ - 1) + std::size_t(e - 1)];
  }

  void build_conj_tails() {
    // Computed with conj_tail_ still empty, so the collector runs in its
    // single-letter bootstrap mode here.
    conj_tail_.clear();
    std::vector<Element> tails(comm_.size() * std::size_t(p_ - 1), identity());
    for (int j = 2; j <= n_; ++j)
      for (int i = 1; i < j; ++i) {
        if (comm_[PcData::comm_index(j, i)].is_identity()) continue;
        for (int e = 1; e < p_; ++e)
          tails[PcData::comm_index(j, i) * std::size_t(p_ - 1) + std::size_t(e - 1)] =
              commutator(generator(j), pow(generator(i), e));
      }
    conj_tail_ = std::move(tails);
  }

  void check_gen(int i) const {
    if (i < 1 || i > n_) fail("generator index out of range");
  }
  void check_elem(const Element& a) const {
    if (a.n != n_ || a.p != p_) fail("element belongs to a different presentation");
  }

  // Stack top is the leftmost uncollected syllable, so words are pushed in
  // reverse.
  void push_word(Stack& st, const Word& w) const {
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      if (it->exp != 0) st.push_back(*it);
  }
  void push_element(Stack& st, const Element& a) const {
    for (int i = a.n - 1; i >= 0; --i)
      if (a.e[i] != 0) st.push_back({i + 1, a.e[i]});
  }
  void push_element_inverse(Stack& st, const Element& a) const {
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] != 0) st.push_back({i + 1, -(long long)a.e[i]});
  }

  // Invariant: value = (normal form of c) * (stack top ... stack bottom).
  void run(Element& c, Stack& st) const {
    std::uint64_t steps = 0;
    while (!st.empty()) {
      if (++steps > kStepGuard) fail("collection step guard exceeded");
      Syllable s = st.back();
      st.pop_back();
      if (s.exp == 0) continue;
      const int g = s.gen;
      if (g < 1 || g > n_) fail("word references generator out of range");
      if (s.exp < 0 || s.exp >= p_) {
        // g^e = g^r (g^p)^q with e = qp + r, 0 <= r < p; powers of g commute.
        long long q = s.exp / p_;
        long long r = s.exp % p_;
        if (r < 0) {
          r += p_;
          q -= 1;
        }
        const Element& w = power_[std::size_t(g - 1)];
        if (q != 0 && !w.is_identity()) {
          if (q > 0)
            for (long long t = 0; t < q; ++t) push_element(st, w);
          else
            for (long long t = 0; t < -q; ++t) push_element_inverse(st, w);
        }
        if (r != 0) st.push_back({g, r});
        continue;
      }
      // Highest collected position to the right of g.
      int j = 0;
      for (int t = n_; t > g; --t)
        if (c.e[t - 1] != 0) {
          j = t;
          break;
        }
      if (j == 0) {
        int t = c.e[g - 1] + int(s.exp);
        if (t < p_) {
          c.e[g - 1] = std::uint8_t(t);
        } else {
          c.e[g - 1] = std::uint8_t(t - p_);
          const Element& w = power_[std::size_t(g - 1)];
          if (!w.is_identity()) push_element(st, w);
        }
      } else if (comm_[PcData::comm_index(j, g)].is_identity()) {
        // Commuting block: c = c'' g_j^f, so c g^e = c'' g^e g_j^f.
        int f = c.e[j - 1];
        c.e[j - 1] = 0;
        st.push_back({j, f});
        st.push_back({g, s.exp});
      } else if (!conj_tail_.empty()) {
        // c g^e = c'' g^e (g_j [g_j, g^e])^f with the tail precomputed.
        int f = c.e[j - 1];
        c.e[j - 1] = 0;
        const Element& w = conj_tail(j, g, int(s.exp));
        for (int t = 0; t < f; ++t) {
          push_element(st, w);
          st.push_back({j, 1});
        }
        st.push_back({g, s.exp});
      } else {
        // Bootstrap path while the tails are being computed:
        // c = c' g_j ; c g^e = c' g g_j [g_j, g] g^{e-1}.
        c.e[j - 1] -= 1;
        if (s.exp > 1) st.push_back({g, s.exp - 1});
        const Element& w = comm_[PcData::comm_index(j, g)];
        push_element(st, w);
        st.push_back({j, 1});
        st.push_back({g, 1});
      }
    }
  }

  static constexpr std::uint64_t kStepGuard = 1ull << 33;
};

namespace detail {

inline std::optional<Element> word_to_normal(const Word& w, int p, int n) {
  Element a;
  a.n = std::uint8_t(n);
  a.p = std::uint8_t(p);
  int last = 0;
  for (const auto& s : w) {
    if (s.gen <= last || s.gen > n) return std::nullopt;
    if (s.exp <= 0 || s.exp >= p) return std::nullopt;
    a.e[s.gen - 1] = std::uint8_t(s.exp);
    last = s.gen;
  }
  return a;
}

}  // namespace detail

// Full consistency test: validates the relation format, then collects all
// standard overlap word pairs
//   g_k (g_j g_i)   vs (g_k g_j) g_i      for k > j > i
//   g_j^p g_i       vs g_j^{p-1} (g_j g_i) for j > i
//   g_j (g_i^p)     vs (g_j g_i) g_i^{p-1} for j > i
//   g_i (g_i^p)     vs (g_i^p) g_i
// where the parenthesised product is rewritten once by its defining
// relation before collection.  All pairs agree iff |G| = p^n.
inline ConsistencyReport check_consistency(const PcData& data) {
  ConsistencyReport rep;
  auto bad = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.failure = msg;
    return rep;
  };

  if (!detail::is_prime(data.p)) return bad("p = " + std::to_string(data.p) + " is not prime");
  if (data.n < 0 || data.n > kMaxGenerators)
    return bad("generator count out of supported range [0, 32]");
  if (data.p > 251) return bad("p > 251 is not supported");
  if (int(data.power.size()) != data.n || data.comm.size() != std::size_t(data.n) * (data.n - 1) / 2)
    return bad("relation tables have wrong size");
  if (!data.names.empty() && int(data.names.size()) != data.n)
    return bad("generator name list has wrong size");

  PcPresentation pres;
  pres.p_ = data.p;
  pres.n_ = data.n;
  pres.names_ = data.names;
  pres.power_.reserve(data.power.size());
  pres.comm_.reserve(data.comm.size());

  for (int i = 1; i <= data.n; ++i) {
    auto nf = detail::word_to_normal(data.power[std::size_t(i - 1)], data.p, data.n);
    if (!nf) return bad("power relation of g" + std::to_string(i) + " is not a normal-form word");
    if (!nf->is_identity() && nf->leading() <= i)
      return bad("power relation of g" + std::to_string(i) +
                 " is not supported strictly to the right");
    pres.power_.push_back(*nf);
  }
  for (int j = 2; j <= data.n; ++j)
    for (int i = 1; i < j; ++i) {
      auto nf = detail::word_to_normal(data.comm[PcData::comm_index(j, i)], data.p, data.n);
      if (!nf)
        return bad("commutator relation [g" + std::to_string(j) + ",g" + std::to_string(i) +
                   "] is not a normal-form word");
      if (!nf->is_identity() && nf->leading() <= j)
        return bad("commutator relation [g" + std::to_string(j) + ",g" + std::to_string(i) +
                   "] is not supported strictly to the right");
      pres.comm_.push_back(*nf);
    }

  pres.order_ = 1;
  for (int i = 0; i < data.n; ++i) {
    if (pres.order_ > (std::uint64_t(1) << 62) / std::uint64_t(data.p))
      return bad("group order overflows 64 bits");
    pres.order_ *= std::uint64_t(data.p);
  }

  const int p = data.p;
  auto word_append_element = [](Word& w, const Element& a) {
    for (int i = 0; i < a.n; ++i)
      if (a.e[i] != 0) w.push_back({i + 1, a.e[i]});
  };
  auto mismatch = [&](const std::string& what, const Element& lhs, const Element& rhs) {
    return bad("inconsistent presentation at " + what + ": " + lhs.str() + " != " + rhs.str());
  };

  // Associativity overlaps, k > j > i.
  for (int k = 3; k <= data.n; ++k)
    for (int j = 2; j < k; ++j)
      for (int i = 1; i < j; ++i) {
        Word lhs{{k, 1}, {i, 1}, {j, 1}};
        word_append_element(lhs, pres.comm_[PcData::comm_index(j, i)]);
        Word rhs{{j, 1}, {k, 1}};
        word_append_element(rhs, pres.comm_[PcData::comm_index(k, j)]);
        rhs.push_back({i, 1});
        Element a = pres.collect(lhs);
        Element b = pres.collect(rhs);
        if (a != b)
          return mismatch("g" + std::to_string(k) + "(g" + std::to_string(j) + " g" +
                              std::to_string(i) + ") vs (g" + std::to_string(k) + " g" +
                              std::to_string(j) + ")g" + std::to_string(i),
                          a, b);
      }

  // Power overlaps, j > i.
  for (int j = 2; j <= data.n; ++j)
    for (int i = 1; i < j; ++i) {
      {
        Word lhs;
        word_append_element(lhs, pres.power_[std::size_t(j - 1)]);
        lhs.push_back({i, 1});
        Word rhs{{j, p - 1}, {i, 1}, {j, 1}};
        word_append_element(rhs, pres.comm_[PcData::comm_index(j, i)]);
        Element a = pres.collect(lhs);
        Element b = pres.collect(rhs);
        if (a != b)
          return mismatch("g" + std::to_string(j) + "^p g" + std::to_string(i), a, b);
      }
      {
        Word lhs{{j, 1}};
        word_append_element(lhs, pres.power_[std::size_t(i - 1)]);
        Word rhs{{i, 1}, {j, 1}};
        word_append_element(rhs, pres.comm_[PcData::comm_index(j, i)]);
        rhs.push_back({i, p - 1});
        Element a = pres.collect(lhs);
        Element b = pres.collect(rhs);
        if (a != b)
          return mismatch("g" + std::to_string(j) + " g" + std::to_string(i) + "^p", a, b);
      }
    }

  // Power-power self overlaps.
  for (int i = 1; i <= data.n; ++i) {
    Word lhs{{i, 1}};
    word_append_element(lhs, pres.power_[std::size_t(i - 1)]);
    Word rhs;
    word_append_element(rhs, pres.power_[std::size_t(i - 1)]);
    rhs.push_back({i, 1});
    Element a = pres.collect(lhs);
    Element b = pres.collect(rhs);
    if (a != b) return mismatch("g" + std::to_string(i) + " g" + std::to_string(i) + "^p", a, b);
  }

  return rep;
}

inline ConsistencyReport PcPresentation::validate(const PcData& data) {
  return check_consistency(data);
}

inline PcGroup PcPresentation::create(const PcData& data) {
  ConsistencyReport rep = check_consistency(data);
  if (!rep.ok) fail("PcPresentation::create: " + rep.failure);
  auto pres = std::make_shared<PcPresentation>();
  pres->p_ = data.p;
  pres->n_ = data.n;
  pres->names_ = data.names;
  for (int i = 1; i <= data.n; ++i)
    pres->power_.push_back(*detail::word_to_normal(data.power[std::size_t(i - 1)], data.p, data.n));
  for (int j = 2; j <= data.n; ++j)
    for (int i = 1; i < j; ++i)
      pres->comm_.push_back(
          *detail::word_to_normal(data.comm[PcData::comm_index(j, i)], data.p, data.n));
  pres->order_ = 1;
  for (int i = 0; i < data.n; ++i) pres->order_ *= std::uint64_t(data.p);
  pres->build_conj_tails();
  return pres;
}

}  // namespace pgcl
