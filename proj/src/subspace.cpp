#include "hq/subspace.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>

namespace hq {

namespace {

// Scratch matrix wide enough for the Zassenhaus double-width trick.
constexpr int kWork = 2 * kMaxDim;

struct Work {
  std::array<std::array<Felt, kWork>, kWork> m{};
  int rows = 0;
  int cols = 0;
};

// In-place reduced row echelon form; returns the rank. Nonzero rows end up
// on top in pivot-column order.
int rref(Work& w, const FieldCtx& F) {
  int r = 0;
  for (int c = 0; c < w.cols && r < w.rows; ++c) {
    int piv = -1;
    for (int i = r; i < w.rows; ++i) {
      if (w.m[i][c] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(w.m[r], w.m[piv]);
    Felt s = F.inv(w.m[r][c]);
    if (s != 1) {
      for (int j = c; j < w.cols; ++j) w.m[r][j] = F.mul(w.m[r][j], s);
    }
    for (int i = 0; i < w.rows; ++i) {
      if (i == r || w.m[i][c] == 0) continue;
      Felt f = w.m[i][c];
      for (int j = c; j < w.cols; ++j) w.m[i][j] = F.sub(w.m[i][j], F.mul(f, w.m[r][j]));
    }
    ++r;
  }
  return r;
}

// Incremental rank accumulator over rows already known to be in echelon
// shape or arbitrary; keeps one stored row per pivot column.
struct RankAcc {
  std::array<Row, kMaxDim> store{};
  std::array<int, kMaxDim> piv_of_col;  // -1 = free
  int rank = 0;

  RankAcc() { piv_of_col.fill(-1); }

  // Reduces cur against the accumulated rows; returns false when cur is
  // dependent (reduces to zero), true when a new pivot was added.
  bool add(Row cur, int cols, const FieldCtx& F) {
    int c = 0;
    while (c < cols) {
      if (cur[c] == 0) {
        ++c;
        continue;
      }
      int pr = piv_of_col[c];
      if (pr >= 0) {
        Felt f = cur[c];
        const Row& p = store[pr];
        for (int j = c; j < cols; ++j) cur[j] = F.sub(cur[j], F.mul(f, p[j]));
        ++c;
      } else {
        Felt s = F.inv(cur[c]);
        if (s != 1) {
          for (int j = c; j < cols; ++j) cur[j] = F.mul(cur[j], s);
        }
        store[rank] = cur;
        piv_of_col[c] = rank;
        ++rank;
        return true;
      }
    }
    return false;
  }
};

int first_nonzero(const Row& r, int cols) {
  for (int c = 0; c < cols; ++c)
    if (r[c] != 0) return c;
  return -1;
}

void check_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.cols != b.cols) throw std::invalid_argument("subspace ops: ambient dimension mismatch");
}

}  // namespace

bool subspace_less(const Subspace& a, const Subspace& b) {
  if (a.cols != b.cols) return a.cols < b.cols;
  if (a.nrows != b.nrows) return a.nrows < b.nrows;
  return std::memcmp(a.row.data(), b.row.data(), sizeof(a.row)) < 0;
}

Subspace empty_subspace(int cols) {
  if (cols < 1 || cols > kMaxDim) throw std::invalid_argument("empty_subspace: bad ambient");
  Subspace s;
  s.cols = static_cast<std::int16_t>(cols);
  return s;
}

Subspace full_space(int cols) {
  Subspace s = empty_subspace(cols);
  s.nrows = static_cast<std::int16_t>(cols);
  for (int i = 0; i < cols; ++i) s.row[i][i] = 1;
  return s;
}

void normalize_point(Row& p, int cols, const FieldCtx& F) {
  int c = first_nonzero(p, cols);
  if (c < 0) throw std::invalid_argument("normalize_point: zero vector");
  Felt s = F.inv(p[c]);
  if (s != 1) {
    for (int j = c; j < cols; ++j) p[j] = F.mul(p[j], s);
  }
}

Subspace point_subspace(const Row& p, int cols, const FieldCtx& F) {
  Subspace s = empty_subspace(cols);
  Row r = p;
  normalize_point(r, cols, F);
  s.row[0] = r;
  s.nrows = 1;
  return s;
}

Subspace canonicalize(std::span<const Row> rows, int cols, const FieldCtx& F) {
  if (cols < 1 || cols > kMaxDim) throw std::invalid_argument("canonicalize: bad ambient");
  if (rows.size() > static_cast<std::size_t>(kWork))
    throw std::invalid_argument("canonicalize: too many rows");
  Work w;
  w.rows = static_cast<int>(rows.size());
  w.cols = cols;
  for (int i = 0; i < w.rows; ++i)
    for (int c = 0; c < cols; ++c) w.m[i][c] = rows[i][c];
  int rank = rref(w, F);
  Subspace s = empty_subspace(cols);
  s.nrows = static_cast<std::int16_t>(rank);
  for (int i = 0; i < rank; ++i)
    for (int c = 0; c < cols; ++c) s.row[i][c] = w.m[i][c];
  return s;
}

Subspace span2(const Subspace& a, const Subspace& b, const FieldCtx& F) {
  check_same_ambient(a, b);
  std::array<Row, kWork> rows;
  int n = 0;
  for (int i = 0; i < a.nrows; ++i) rows[n++] = a.row[i];
  for (int i = 0; i < b.nrows; ++i) rows[n++] = b.row[i];
  return canonicalize(std::span<const Row>(rows.data(), n), a.cols, F);
}

Subspace intersect(const Subspace& a, const Subspace& b, const FieldCtx& F) {
  check_same_ambient(a, b);
  int c = a.cols;
  // Zassenhaus: rref of [A|A; B|0]; rows with zero left block carry an
  // intersection basis in the right block.
  Work w;
  w.rows = a.nrows + b.nrows;
  w.cols = 2 * c;
  int n = 0;
  for (int i = 0; i < a.nrows; ++i, ++n)
    for (int j = 0; j < c; ++j) {
      w.m[n][j] = a.row[i][j];
      w.m[n][c + j] = a.row[i][j];
    }
  for (int i = 0; i < b.nrows; ++i, ++n)
    for (int j = 0; j < c; ++j) w.m[n][j] = b.row[i][j];
  int rank = rref(w, F);
  std::array<Row, kMaxDim> out{};
  int cnt = 0;
  for (int i = 0; i < rank; ++i) {
    bool left_zero = true;
    for (int j = 0; j < c; ++j) {
      if (w.m[i][j] != 0) {
        left_zero = false;
        break;
      }
    }
    if (!left_zero) continue;
    for (int j = 0; j < c; ++j) out[cnt][j] = w.m[i][c + j];
    ++cnt;
  }
  return canonicalize(std::span<const Row>(out.data(), cnt), c, F);
}

bool meets(const Subspace& a, const Subspace& b, const FieldCtx& F) {
  check_same_ambient(a, b);
  if (a.nrows == 0 || b.nrows == 0) return false;
  if (a.nrows + b.nrows > a.cols) return true;  // dimension forces a common point
  RankAcc acc;
  for (int i = 0; i < a.nrows; ++i) acc.add(a.row[i], a.cols, F);
  for (int i = 0; i < b.nrows; ++i) {
    if (!acc.add(b.row[i], a.cols, F)) return true;
  }
  return false;
}

int intersection_pdim(const Subspace& a, const Subspace& b, const FieldCtx& F) {
  check_same_ambient(a, b);
  RankAcc acc;
  for (int i = 0; i < a.nrows; ++i) acc.add(a.row[i], a.cols, F);
  int rank = a.nrows;
  for (int i = 0; i < b.nrows; ++i) {
    if (acc.add(b.row[i], a.cols, F)) ++rank;
  }
  return a.nrows + b.nrows - rank - 1;
}

bool contains_point(const Subspace& s, const Row& p, const FieldCtx& F) {
  Row cur = p;
  for (int i = 0; i < s.nrows; ++i) {
    int c = first_nonzero(s.row[i], s.cols);
    if (cur[c] == 0) continue;
    Felt f = cur[c];
    for (int j = c; j < s.cols; ++j) cur[j] = F.sub(cur[j], F.mul(f, s.row[i][j]));
  }
  return first_nonzero(cur, s.cols) < 0;
}

bool subspace_leq(const Subspace& a, const Subspace& b, const FieldCtx& F) {
  check_same_ambient(a, b);
  for (int i = 0; i < a.nrows; ++i) {
    if (!contains_point(b, a.row[i], F)) return false;
  }
  return true;
}

bool try_extend_by_point(const Subspace& s, const Row& p, const FieldCtx& F, Subspace& out) {
  Row cur = p;
  for (int i = 0; i < s.nrows; ++i) {
    int c = first_nonzero(s.row[i], s.cols);
    if (cur[c] == 0) continue;
    Felt f = cur[c];
    for (int j = c; j < s.cols; ++j) cur[j] = F.sub(cur[j], F.mul(f, s.row[i][j]));
  }
  int c = first_nonzero(cur, s.cols);
  if (c < 0) return false;
  Felt sc = F.inv(cur[c]);
  if (sc != 1) {
    for (int j = c; j < s.cols; ++j) cur[j] = F.mul(cur[j], sc);
  }
  out = empty_subspace(s.cols);
  int n = 0;
  bool placed = false;
  for (int i = 0; i < s.nrows; ++i) {
    int pc = first_nonzero(s.row[i], s.cols);
    if (!placed && pc > c) {
      out.row[n++] = cur;
      placed = true;
    }
    Row r = s.row[i];
    if (r[c] != 0) {  // clear the new pivot column above/below
      Felt f = r[c];
      for (int j = c; j < s.cols; ++j) r[j] = F.sub(r[j], F.mul(f, cur[j]));
    }
    out.row[n++] = r;
  }
  if (!placed) out.row[n++] = cur;
  out.nrows = static_cast<std::int16_t>(n);
  return true;
}

Subspace extend_by_point(const Subspace& s, const Row& p, const FieldCtx& F) {
  Subspace out;
  if (!try_extend_by_point(s, p, F, out))
    throw std::invalid_argument("extend_by_point: point already in subspace");
  return out;
}

}  // namespace hq
