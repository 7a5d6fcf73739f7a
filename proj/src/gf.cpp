#include "hq/gf.hpp"

#include <stdexcept>
#include <string>

namespace hq {

namespace {

// index <-> base-p digit vector (digit k = coeff of x^k)
void to_digits(int v, int p, int e, int* d) {
  for (int i = 0; i < e; ++i) {
    d[i] = v % p;
    v /= p;
  }
}

int from_digits(const int* d, int p, int e) {
  int v = 0;
  for (int i = e - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

int add_indices(int a, int b, int p, int e) {
  int da[4], db[4], dc[4];
  to_digits(a, p, e, da);
  to_digits(b, p, e, db);
  for (int i = 0; i < e; ++i) dc[i] = (da[i] + db[i]) % p;
  return from_digits(dc, p, e);
}

// polynomial product reduced by the monic modulus of degree e
int mul_indices(int a, int b, int p, int e, const std::array<int, 4>& mod) {
  int da[4], db[4];
  to_digits(a, p, e, da);
  to_digits(b, p, e, db);
  int prod[8] = {0};
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int d = 2 * e - 2; d >= e; --d) {
    int c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    // x^d = x^(d-e) * x^e = -x^(d-e) * (modulus - x^e)
    for (int i = 0; i < e; ++i)
      prod[d - e + i] = ((prod[d - e + i] - c * mod[i]) % p + p * p) % p;
  }
  return from_digits(prod, p, e);
}

}  // namespace

FieldCtx make_field(int q) {
  FieldCtx F;
  F.q = q;
  switch (q) {
    case 2: case 3: case 5: case 7:
      F.p = q; F.e = 1;
      break;
    case 4:
      F.p = 2; F.e = 2;
      F.modulus = {1, 1, 1, 0};  // x^2 + x + 1
      break;
    case 8:
      F.p = 2; F.e = 3;
      F.modulus = {1, 1, 0, 1};  // x^3 + x + 1
      break;
    case 9:
      F.p = 3; F.e = 2;
      F.modulus = {1, 0, 1, 0};  // x^2 + 1
      break;
    default:
      throw std::invalid_argument("make_field: q=" + std::to_string(q) +
                                  " is not a supported prime power (2..9)");
  }

  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (F.e == 1) {
        F.add_tab[a][b] = static_cast<Felt>((a + b) % F.p);
        F.mul_tab[a][b] = static_cast<Felt>((a * b) % F.p);
      } else {
        F.add_tab[a][b] = static_cast<Felt>(add_indices(a, b, F.p, F.e));
        F.mul_tab[a][b] = static_cast<Felt>(mul_indices(a, b, F.p, F.e, F.modulus));
      }
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (F.add_tab[a][b] == 0) F.neg_tab[a] = static_cast<Felt>(b);
      if (a != 0 && F.mul_tab[a][b] == 1) F.inv_tab[a] = static_cast<Felt>(b);
    }
  }
  return F;
}

}  // namespace hq
