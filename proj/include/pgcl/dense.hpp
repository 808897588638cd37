// Dense index arithmetic for small groups: elements are ranked by their
// exponent vector in mixed radix, and generator multiplication plus
// inversion are precomputed.  Commutator-heavy enumerations run an order
// of magnitude faster through these tables.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pgcl/gates.hpp"
#include "pgcl/presentation.hpp"

namespace pgcl {

class DenseGroup {
 public:
  static std::optional<DenseGroup> build(const PcGroup& G, const Gate& gate = Gate{}) {
    if (G->order() > gate.table_limit || G->n() == 0) return std::nullopt;
    DenseGroup d;
    d.G_ = G;
    d.order_ = std::uint32_t(G->order());
    d.n_ = G->n();
    d.p_ = G->p();
    d.gen_mul_.resize(std::size_t(d.order_) * std::size_t(d.n_));
    d.inv_.resize(d.order_);
    for (std::uint32_t idx = 0; idx < d.order_; ++idx) {
      Element a = d.element_at(idx);
      for (int i = 1; i <= d.n_; ++i)
        d.gen_mul_[std::size_t(idx) * std::size_t(d.n_) + std::size_t(i - 1)] =
            d.index_of(G->mul(a, G->generator(i)));
      d.inv_[idx] = d.index_of(G->inv(a));
    }
    return d;
  }

  const PcGroup& group() const { return G_; }
  std::uint32_t order() const { return order_; }

  std::uint32_t index_of(const Element& a) const {
    std::uint32_t idx = 0;
    for (int i = n_ - 1; i >= 0; --i) idx = idx * std::uint32_t(p_) + a.e[std::size_t(i)];
    return idx;
  }

  Element element_at(std::uint32_t idx) const {
    Element a = G_->identity();
    for (int i = 0; i < n_; ++i) {
      a.e[std::size_t(i)] = std::uint8_t(idx % std::uint32_t(p_));
      idx /= std::uint32_t(p_);
    }
    return a;
  }

  std::uint32_t mul_gen(std::uint32_t a, int gen, int times = 1) const {
    for (int t = 0; t < times; ++t)
      a = gen_mul_[std::size_t(a) * std::size_t(n_) + std::size_t(gen - 1)];
    return a;
  }

  std::uint32_t mul(std::uint32_t a, const Element& b) const {
    for (int i = 0; i < n_; ++i)
      if (b.e[std::size_t(i)] != 0) a = mul_gen(a, i + 1, b.e[std::size_t(i)]);
    return a;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul(a, element_at(b)); }

  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

  std::uint32_t commutator(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t t = mul(inv_[a], element_at(inv_[b]));
    t = mul(t, element_at(a));
    return mul(t, element_at(b));
  }

  std::uint32_t conjugate(std::uint32_t a, std::uint32_t b) const {
    return mul(mul(inv_[b], element_at(a)), element_at(b));
  }

 private:
  PcGroup G_;
  std::uint32_t order_ = 0;
  int n_ = 0;
  int p_ = 0;
  std::vector<std::uint32_t> gen_mul_;
  std::vector<std::uint32_t> inv_;
};

}  // namespace pgcl
