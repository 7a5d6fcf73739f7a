#pragma once

#include <cstring>
#include <span>
#include <vector>

#include "hq/base.hpp"
#include "hq/gf.hpp"

namespace hq {

// A projective subspace of PG(cols-1, q), stored as the reduced row echelon
// basis of its underlying vector space. RREF is the canonical representative:
// pivots are 1, pivot columns are zero elsewhere and strictly increasing, so
// equality of subspaces is equality of the stored bytes. nrows = 0 encodes the
// empty space (projective dimension -1). Unused entries stay zero so whole
// structs can be compared and hashed bytewise.
struct Subspace {
  std::array<Row, kMaxDim> row{};
  std::int16_t nrows = 0;
  std::int16_t cols = 0;

  int pdim() const { return nrows - 1; }

  bool operator==(const Subspace& o) const {
    return nrows == o.nrows && cols == o.cols &&
           std::memcmp(row.data(), o.row.data(), sizeof(row)) == 0;
  }
};

struct SubspaceHash {
  std::size_t operator()(const Subspace& s) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ULL;
    };
    mix(static_cast<std::uint64_t>(s.nrows) << 32 | static_cast<std::uint32_t>(s.cols));
    for (int r = 0; r < s.nrows; ++r)
      for (int c = 0; c < s.cols; ++c) mix(s.row[r][c]);
    return static_cast<std::size_t>(h);
  }
};

// Deterministic total order: dims first, then row-major digit-lexicographic.
bool subspace_less(const Subspace& a, const Subspace& b);

Subspace empty_subspace(int cols);
Subspace full_space(int cols);
Subspace point_subspace(const Row& p, int cols, const FieldCtx& F);

// RREF canonical form of the row span; dependent rows are absorbed.
Subspace canonicalize(std::span<const Row> rows, int cols, const FieldCtx& F);

Subspace span2(const Subspace& a, const Subspace& b, const FieldCtx& F);
Subspace intersect(const Subspace& a, const Subspace& b, const FieldCtx& F);

// Nonempty-intersection predicate; rank computation with early exit, no
// intersection basis is formed.
bool meets(const Subspace& a, const Subspace& b, const FieldCtx& F);

// Projective dimension of a cap b (-1 when disjoint).
int intersection_pdim(const Subspace& a, const Subspace& b, const FieldCtx& F);

// Membership of a (projective) point.
bool contains_point(const Subspace& s, const Row& p, const FieldCtx& F);

// a subseteq b
bool subspace_leq(const Subspace& a, const Subspace& b, const FieldCtx& F);

// Extends s by one point, keeping canonical form, in O(rank * cols).
// try_extend_by_point returns false when p already lies in s; the throwing
// variant treats that as a contract violation.
bool try_extend_by_point(const Subspace& s, const Row& p, const FieldCtx& F, Subspace& out);
Subspace extend_by_point(const Subspace& s, const Row& p, const FieldCtx& F);

// Scales p so its first nonzero coordinate is 1. Throws on the zero vector.
void normalize_point(Row& p, int cols, const FieldCtx& F);

}  // namespace hq
