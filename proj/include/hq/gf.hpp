#pragma once

#include <array>

#include "hq/base.hpp"

namespace hq {

// Arithmetic context for GF(q), q a prime power in {2,3,4,5,7,8,9}.
// Elements are dense indices 0..q-1; index 0 is the additive identity and
// index 1 the multiplicative identity. For extension fields the index is the
// base-p digit expansion of the polynomial representative, so indexing is
// deterministic given the fixed modulus.
struct FieldCtx {
  int q = 0;
  int p = 0;  // characteristic
  int e = 1;  // extension degree, q = p^e
  std::array<int, 4> modulus{};  // modulus[i] = coeff of x^i; degree e, monic

  std::array<std::array<Felt, 9>, 9> add_tab{};
  std::array<std::array<Felt, 9>, 9> mul_tab{};
  std::array<Felt, 9> neg_tab{};
  std::array<Felt, 9> inv_tab{};

  Felt add(Felt a, Felt b) const { return add_tab[a][b]; }
  Felt mul(Felt a, Felt b) const { return mul_tab[a][b]; }
  Felt neg(Felt a) const { return neg_tab[a]; }
  Felt sub(Felt a, Felt b) const { return add_tab[a][neg_tab[b]]; }
  Felt inv(Felt a) const {
    if (a == 0) throw std::domain_error("FieldCtx::inv: zero has no inverse");
    return inv_tab[a];
  }
};

// Builds the context; rejects q outside the supported set.
FieldCtx make_field(int q);

}  // namespace hq
