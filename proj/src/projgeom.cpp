#include "hq/projgeom.hpp"

#include <algorithm>
#include <string>

namespace hq {

void for_each_point(const Subspace& s, const FieldCtx& F,
                    const std::function<bool(const Row&)>& fn) {
  int r = s.nrows;
  if (r == 0) return;
  int q = F.q;
  // Leading coefficient fixed to 1: coefficient vectors (0,..,0,1,c_{l+1},..)
  // hit every point exactly once.
  std::array<Felt, kMaxDim> coef{};
  Row pt;
  for (int lead = r - 1; lead >= 0; --lead) {
    int tail = r - 1 - lead;  // free positions after the lead
    long long span = 1;
    for (int i = 0; i < tail; ++i) span *= q;
    for (long long idx = 0; idx < span; ++idx) {
      long long v = idx;
      for (int i = 0; i < tail; ++i) {
        coef[lead + 1 + i] = static_cast<Felt>(v % q);
        v /= q;
      }
      pt.fill(0);
      // pt = row[lead] + sum coef_i * row[i]
      for (int c = 0; c < s.cols; ++c) pt[c] = s.row[lead][c];
      for (int i = lead + 1; i < r; ++i) {
        Felt f = coef[i];
        if (f == 0) continue;
        for (int c = 0; c < s.cols; ++c) pt[c] = F.add(pt[c], F.mul(f, s.row[i][c]));
      }
      if (!fn(pt)) return;
    }
  }
}

std::vector<Row> enumerate_points(const Subspace& s, const FieldCtx& F) {
  std::vector<Row> out;
  for_each_point(s, F, [&out](const Row& p) {
    out.push_back(p);
    return true;
  });
  return out;
}

std::vector<Subspace> enumerate_subspaces(const Subspace& ambient, int d, const FieldCtx& F,
                                          long long cap) {
  int ra = ambient.nrows;
  if (d < -1 || d > ambient.pdim()) throw std::invalid_argument("enumerate_subspaces: d out of range");
  if (d == -1) return {empty_subspace(ambient.cols)};
  int r = d + 1;
  Bint total = gauss_binom(ra, r, F.q);
  if (total > cap)
    throw FeasibilityError("enumerate_subspaces: " + total.str() + " subspaces exceeds cap " +
                           std::to_string(cap));
  std::vector<Subspace> out;
  out.reserve(static_cast<std::size_t>(total));

  // Pivot pattern: columns piv[0] < ... < piv[r-1] in coefficient space.
  std::vector<int> piv(r);
  for (int i = 0; i < r; ++i) piv[i] = i;

  std::vector<std::pair<int, int>> free_pos;  // (row, coeff-col) free slots
  std::vector<Felt> free_val;

  auto is_pivot = [&piv, r](int c) {
    for (int i = 0; i < r; ++i)
      if (piv[i] == c) return true;
    return false;
  };

  while (true) {
    free_pos.clear();
    for (int i = 0; i < r; ++i)
      for (int c = piv[i] + 1; c < ra; ++c)
        if (!is_pivot(c)) free_pos.emplace_back(i, c);
    free_val.assign(free_pos.size(), 0);

    // Odometer over free entries; coefficient matrix rows map through the
    // ambient basis. Because the ambient basis is itself RREF, the product
    // is already the canonical basis of the produced subspace.
    while (true) {
      Subspace s = empty_subspace(ambient.cols);
      s.nrows = static_cast<std::int16_t>(r);
      for (int i = 0; i < r; ++i) {
        for (int c = 0; c < ambient.cols; ++c) s.row[i][c] = ambient.row[piv[i]][c];
      }
      for (std::size_t t = 0; t < free_pos.size(); ++t) {
        Felt f = free_val[t];
        if (f == 0) continue;
        auto [i, cc] = free_pos[t];
        for (int c = 0; c < ambient.cols; ++c)
          s.row[i][c] = F.add(s.row[i][c], F.mul(f, ambient.row[cc][c]));
      }
      out.push_back(s);

      std::size_t t = 0;
      for (; t < free_val.size(); ++t) {
        if (++free_val[t] < F.q) break;
        free_val[t] = 0;
      }
      if (t == free_val.size()) break;
    }

    // next pivot combination (lexicographic)
    int i = r - 1;
    while (i >= 0 && piv[i] == ra - r + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

Bint count_skew_subspaces_oracle(int n, int k, int j, int q, long long cap) {
  if (n < 0 || k < 0 || j < 0 || k > n || j > n)
    throw std::invalid_argument("count_skew_subspaces_oracle: bad parameters");
  FieldCtx F = make_field(q);
  Subspace all = full_space(n + 1);  // throws when n+1 exceeds kMaxDim
  Subspace fixed = empty_subspace(n + 1);
  fixed.nrows = static_cast<std::int16_t>(k + 1);
  for (int i = 0; i <= k && i < kMaxDim; ++i) fixed.row[i][i] = 1;
  Bint count = 0;
  for (const Subspace& s : enumerate_subspaces(all, j, F, cap)) {
    if (!meets(s, fixed, F)) ++count;
  }
  return count;
}

}  // namespace hq
