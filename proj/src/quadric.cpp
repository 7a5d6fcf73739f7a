#include "hq/quadric.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <string>
#include <unordered_set>

namespace hq {

namespace {

// ---------------------------------------------------------------------------
// GF(2) packed kernels. Column c maps to bit c; a canonical RREF row's pivot
// is its lowest set bit.
// ---------------------------------------------------------------------------

constexpr std::uint32_t kEvenBits = 0x55555555u;

inline std::uint32_t pack_row2(const Row& r, int cols) {
  std::uint32_t m = 0;
  for (int c = 0; c < cols; ++c)
    if (r[c]) m |= 1u << c;
  return m;
}

inline void unpack_row2(std::uint32_t m, int cols, Row& r) {
  for (int c = 0; c < cols; ++c) r[c] = static_cast<Felt>((m >> c) & 1u);
}

inline int eval_form2(std::uint32_t x) {
  return std::popcount(x & (x >> 1) & kEvenBits) & 1;
}

// sum x_{2i} y_{2i+1} + x_{2i+1} y_{2i} mod 2
inline int bilin2(std::uint32_t x, std::uint32_t y) {
  std::uint32_t t = x & (y >> 1) & kEvenBits;
  std::uint32_t u = (x >> 1) & y & kEvenBits;
  return (std::popcount(t) + std::popcount(u)) & 1;
}

// swap each even/odd coordinate pair: the bilinear-form gradient of a vector
inline std::uint32_t partner_swap2(std::uint32_t x) {
  return ((x & kEvenBits) << 1) | ((x >> 1) & kEvenBits);
}

// RREF of up to kMaxDim bitmask rows; returns rank, rows compacted on top
// sorted by pivot.
int rref2(std::array<std::uint32_t, kMaxDim>& rows, int n) {
  std::array<std::uint32_t, kMaxDim> by_piv{};
  std::uint32_t used = 0;
  for (int i = 0; i < n; ++i) {
    std::uint32_t cur = rows[i];
    while (cur) {
      int p = std::countr_zero(cur);
      if (by_piv[p]) {
        cur ^= by_piv[p];
      } else {
        by_piv[p] = cur;
        used |= 1u << p;
        break;
      }
    }
  }
  int rank = 0;
  rows.fill(0);
  for (int p = 0; p < kMaxDim; ++p)
    if (used & (1u << p)) rows[rank++] = by_piv[p];
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j) {
      int pj = std::countr_zero(rows[j]);
      if ((rows[i] >> pj) & 1u) rows[i] ^= rows[j];
    }
  return rank;
}

// Kernel basis of an RREF bit matrix (rows[0..r), ncols columns).
int kernel2(const std::array<std::uint32_t, kMaxDim>& rows, int r, int ncols,
            std::array<std::uint32_t, kMaxDim>& ker) {
  std::uint32_t pivmask = 0;
  std::array<int, kMaxDim> pivcol{};
  for (int i = 0; i < r; ++i) {
    pivcol[i] = std::countr_zero(rows[i]);
    pivmask |= 1u << pivcol[i];
  }
  int kn = 0;
  for (int f = 0; f < ncols; ++f) {
    if (pivmask & (1u << f)) continue;
    std::uint32_t v = 1u << f;
    for (int i = 0; i < r; ++i)
      if ((rows[i] >> f) & 1u) v |= 1u << pivcol[i];
    ker[kn++] = v;
  }
  return kn;
}

// Packed singular-subspace ladder item: RREF bitmask rows.
struct Packed2 {
  std::array<std::uint32_t, 6> row{};
};

// 12-bit lanes, at most 5 rows -> unique 60-bit key. This bounds the packed
// ladder to m <= 4 (10 columns); larger quadrics take the generic path.
inline std::uint64_t key2(const Packed2& s, int r) {
  std::uint64_t k = 0;
  for (int i = 0; i < r; ++i) k |= static_cast<std::uint64_t>(s.row[i]) << (12 * i);
  return k;
}

// Levels of totally singular subspaces over GF(2), level k = pdim-k spaces.
std::vector<Packed2> singular_ladder2(int m, int upto, long long cap) {
  int cols = 2 * m + 2;
  std::vector<Packed2> level;
  for (std::uint32_t v = 1; v < (1u << cols); ++v) {
    if (eval_form2(v)) continue;
    Packed2 s;
    s.row[0] = v;
    level.push_back(s);
  }
  for (int lvl = 0; lvl < upto; ++lvl) {
    int r = lvl + 1;
    std::vector<Packed2> next;
    std::unordered_set<std::uint64_t> seen;
    std::array<std::uint32_t, kMaxDim> mat{};
    std::array<std::uint32_t, kMaxDim> ker{};
    for (const Packed2& s : level) {
      for (int i = 0; i < r; ++i) mat[i] = partner_swap2(s.row[i]);
      int rk = rref2(mat, r);
      int kn = kernel2(mat, rk, cols, ker);
      // Gray walk over the nonzero vectors of the perp.
      std::uint32_t cur = 0;
      std::uint32_t end = 1u << kn;
      for (std::uint32_t g = 1; g < end; ++g) {
        cur ^= ker[std::countr_zero(g)];
        if (eval_form2(cur)) continue;
        std::uint32_t red = cur;
        for (int i = 0; i < r && red; ++i) {
          int p = std::countr_zero(s.row[i]);
          if ((red >> p) & 1u) red ^= s.row[i];
        }
        if (!red) continue;  // already inside s
        // insert keeping pivot order, then clear the new pivot bit above
        int pc = std::countr_zero(red);
        Packed2 t;
        int n = 0;
        bool placed = false;
        for (int i = 0; i < r; ++i) {
          std::uint32_t rw = s.row[i];
          if (!placed && std::countr_zero(rw) > pc) {
            t.row[n++] = red;
            placed = true;
          }
          if ((rw >> pc) & 1u) rw ^= red;
          t.row[n++] = rw;
        }
        if (!placed) t.row[n++] = red;
        std::uint64_t k = key2(t, n);
        if (seen.insert(k).second) {
          next.push_back(t);
          if (static_cast<long long>(next.size()) > cap)
            throw FeasibilityError("singular_subspaces: level " + std::to_string(lvl + 1) +
                                   " exceeds cap " + std::to_string(cap));
        }
      }
    }
    level = std::move(next);
  }
  return level;
}

// Generic ladder for q > 2.
std::vector<Subspace> singular_ladder_generic(const QuadricModel& Q, int upto, long long cap) {
  const FieldCtx& F = Q.field;
  int cols = Q.ambient_cols();
  std::vector<Subspace> level;
  {
    Subspace all = full_space(cols);
    for_each_point(all, F, [&](const Row& p) {
      if (eval_form(Q, p) == 0) level.push_back(point_subspace(p, cols, F));
      return true;
    });
  }
  for (int lvl = 0; lvl < upto; ++lvl) {
    std::vector<Subspace> next;
    std::unordered_set<Subspace, SubspaceHash> seen;
    for (const Subspace& s : level) {
      Subspace tan = tangent_space(Q, s);
      for_each_point(tan, F, [&](const Row& p) {
        if (eval_form(Q, p) != 0) return true;
        // p lies in perp(s), so s+p is totally singular once Q(p) = 0.
        Subspace t;
        if (try_extend_by_point(s, p, F, t)) {
          if (seen.insert(t).second) {
            next.push_back(t);
            if (static_cast<long long>(next.size()) > cap)
              throw FeasibilityError("singular_subspaces: level " + std::to_string(lvl + 1) +
                                     " exceeds cap " + std::to_string(cap));
          }
        }
        return true;
      });
    }
    level = std::move(next);
  }
  return level;
}

std::vector<Subspace> materialize2(const std::vector<Packed2>& packed, int r, int cols) {
  std::vector<Subspace> out;
  out.reserve(packed.size());
  for (const Packed2& p : packed) {
    Subspace s = empty_subspace(cols);
    s.nrows = static_cast<std::int16_t>(r);
    for (int i = 0; i < r; ++i) unpack_row2(p.row[i], cols, s.row[i]);
    out.push_back(s);
  }
  return out;
}

int pair_pdim2(const std::uint32_t* a, const std::uint32_t* b, int r) {
  std::array<std::uint32_t, kMaxDim> by_piv{};
  for (int i = 0; i < r; ++i) by_piv[std::countr_zero(a[i])] = a[i];
  int rank = r;
  for (int i = 0; i < r; ++i) {
    std::uint32_t cur = b[i];
    while (cur) {
      int p = std::countr_zero(cur);
      if (by_piv[p]) {
        cur ^= by_piv[p];
      } else {
        by_piv[p] = cur;
        ++rank;
        break;
      }
    }
  }
  return 2 * r - rank - 1;
}

}  // namespace

QuadricModel make_quadric(int m, int q) {
  if (m < 0 || 2 * m + 2 > kMaxDim)
    throw std::invalid_argument("make_quadric: m out of range");
  QuadricModel Q;
  Q.m = m;
  Q.field = make_field(q);
  return Q;
}

Felt eval_form(const QuadricModel& Q, const Row& v) {
  const FieldCtx& F = Q.field;
  Felt acc = 0;
  for (int i = 0; i <= Q.m; ++i) acc = F.add(acc, F.mul(v[2 * i], v[2 * i + 1]));
  return acc;
}

Felt bilin(const QuadricModel& Q, const Row& u, const Row& v) {
  const FieldCtx& F = Q.field;
  Felt acc = 0;
  for (int i = 0; i <= Q.m; ++i) {
    acc = F.add(acc, F.mul(u[2 * i], v[2 * i + 1]));
    acc = F.add(acc, F.mul(u[2 * i + 1], v[2 * i]));
  }
  return acc;
}

bool is_singular_point(const QuadricModel& Q, const Row& v) { return eval_form(Q, v) == 0; }

bool is_singular_subspace(const QuadricModel& Q, const Subspace& s) {
  for (int i = 0; i < s.nrows; ++i) {
    if (eval_form(Q, s.row[i]) != 0) return false;
    for (int j = i + 1; j < s.nrows; ++j)
      if (bilin(Q, s.row[i], s.row[j]) != 0) return false;
  }
  return true;
}

Subspace tangent_space(const QuadricModel& Q, const Subspace& s) {
  if (s.cols != Q.ambient_cols()) throw std::invalid_argument("tangent_space: ambient mismatch");
  if (!is_singular_subspace(Q, s)) throw std::invalid_argument("tangent_space: input not singular");
  const FieldCtx& F = Q.field;
  int cols = s.cols;
  // Gradient rows: M[i][c] = b(e_c, s_i) = s_i[partner(c)].
  std::array<Row, kMaxDim> grad{};
  for (int i = 0; i < s.nrows; ++i)
    for (int c = 0; c < cols; ++c) grad[i][c] = s.row[i][c ^ 1];
  Subspace M = canonicalize(std::span<const Row>(grad.data(), s.nrows), cols, F);
  // Kernel of M: one vector per free column.
  std::array<int, kMaxDim> pivcol{};
  std::array<bool, kMaxDim> is_piv{};
  for (int i = 0; i < M.nrows; ++i) {
    int c = 0;
    while (M.row[i][c] == 0) ++c;
    pivcol[i] = c;
    is_piv[c] = true;
  }
  std::array<Row, kMaxDim> ker{};
  int kn = 0;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    ker[kn].fill(0);
    ker[kn][f] = 1;
    for (int i = 0; i < M.nrows; ++i) ker[kn][pivcol[i]] = F.neg(M.row[i][f]);
    ++kn;
  }
  return canonicalize(std::span<const Row>(ker.data(), kn), cols, F);
}

Subspace reference_generator(const QuadricModel& Q) {
  Subspace s = empty_subspace(Q.ambient_cols());
  s.nrows = static_cast<std::int16_t>(Q.m + 1);
  for (int i = 0; i <= Q.m; ++i) s.row[i][2 * i] = 1;
  return s;
}

std::vector<Subspace> singular_subspaces(const QuadricModel& Q, int k, long long cap) {
  if (k < 0 || k > Q.m) throw std::invalid_argument("singular_subspaces: k out of range");
  std::vector<Subspace> out;
  if (Q.field.q == 2 && Q.m <= 4) {
    out = materialize2(singular_ladder2(Q.m, k, cap), k + 1, Q.ambient_cols());
  } else {
    out = singular_ladder_generic(Q, k, cap);
  }
  std::sort(out.begin(), out.end(), subspace_less);
  return out;
}

std::array<long long, 2> GeneratorSet::class_counts() const {
  std::array<long long, 2> c{0, 0};
  for (std::uint8_t l : label) ++c[l];
  return c;
}

GeneratorSet enumerate_generators(const QuadricModel& Q, long long max_generators) {
  Bint predicted = 1;
  for (int i = 0; i <= Q.m; ++i) predicted *= ipow(Q.field.q, i) + 1;
  if (predicted > max_generators)
    throw FeasibilityError("enumerate_generators: expected " + predicted.str() +
                           " generators exceeds cap " + std::to_string(max_generators));

  GeneratorSet gs;
  gs.model = Q;
  // Intermediate ladder levels are far larger than the generator list itself,
  // so they run under the global subspace cap.
  gs.gens = singular_subspaces(Q, Q.m, kDefaultSubspaceCap);
  if (Bint(gs.gens.size()) != predicted)
    throw std::logic_error("enumerate_generators: count mismatch vs product formula");

  int n = gs.size();
  gs.pos.reserve(n * 2);
  for (int i = 0; i < n; ++i) gs.pos.emplace(gs.gens[i], i);

  if (Q.field.q == 2) {
    int r = Q.m + 1;
    gs.packed.resize(static_cast<std::size_t>(n) * r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j)
        gs.packed[static_cast<std::size_t>(i) * r + j] = pack_row2(gs.gens[i].row[j], Q.ambient_cols());
  }

  Subspace ref = reference_generator(Q);
  int ref_idx = gs.find(ref);
  if (ref_idx < 0) throw std::logic_error("enumerate_generators: reference generator missing");
  gs.label.resize(n);
  for (int i = 0; i < n; ++i) {
    int pd = pair_pdim(gs, i, ref_idx);
    gs.label[i] = static_cast<std::uint8_t>((pd - Q.m) & 1);
  }
  return gs;
}

int pair_pdim(const GeneratorSet& gs, int i, int j) {
  int r = gs.model.m + 1;
  if (!gs.packed.empty()) {
    return pair_pdim2(&gs.packed[static_cast<std::size_t>(i) * r],
                      &gs.packed[static_cast<std::size_t>(j) * r], r);
  }
  return intersection_pdim(gs.gens[i], gs.gens[j], gs.model.field);
}

std::vector<std::int8_t> pdims_vs_all(const GeneratorSet& gs, const Subspace& s) {
  int n = gs.size();
  std::vector<std::int8_t> out(n);
  int r = gs.model.m + 1;
  if (!gs.packed.empty()) {
    std::array<std::uint32_t, kMaxDim> smask{};
    for (int i = 0; i < s.nrows; ++i) smask[i] = pack_row2(s.row[i], s.cols);
    for (int g = 0; g < n; ++g) {
      const std::uint32_t* a = &gs.packed[static_cast<std::size_t>(g) * r];
      std::array<std::uint32_t, kMaxDim> by_piv{};
      for (int i = 0; i < r; ++i) by_piv[std::countr_zero(a[i])] = a[i];
      int rank = r;
      for (int i = 0; i < s.nrows; ++i) {
        std::uint32_t cur = smask[i];
        while (cur) {
          int p = std::countr_zero(cur);
          if (by_piv[p]) {
            cur ^= by_piv[p];
          } else {
            by_piv[p] = cur;
            ++rank;
            break;
          }
        }
      }
      out[g] = static_cast<std::int8_t>(r + s.nrows - rank - 1);
    }
  } else {
    for (int g = 0; g < n; ++g)
      out[g] = static_cast<std::int8_t>(intersection_pdim(gs.gens[g], s, gs.model.field));
  }
  return out;
}

std::vector<long long> intersection_profile(const GeneratorSet& gs, int pivot) {
  if (pivot < 0 || pivot >= gs.size())
    throw std::invalid_argument("intersection_profile: pivot not in generator set");
  std::vector<long long> counts(gs.model.m + 2, 0);
  for (int g = 0; g < gs.size(); ++g) ++counts[pair_pdim(gs, pivot, g) + 1];
  return counts;
}

long long count_skew_to_both_oracle(const GeneratorSet& gs, int i, int j) {
  long long c = 0;
  for (int g = 0; g < gs.size(); ++g)
    if (pair_pdim(gs, g, i) < 0 && pair_pdim(gs, g, j) < 0) ++c;
  return c;
}

long long count_meeting_one_oracle(const GeneratorSet& gs, int i, int j) {
  long long c = 0;
  for (int g = 0; g < gs.size(); ++g)
    if (pair_pdim(gs, g, i) >= 0 && pair_pdim(gs, g, j) < 0) ++c;
  return c;
}

long long count_missing_any_oracle(const GeneratorSet& gs, int i, int j) {
  long long c = 0;
  for (int g = 0; g < gs.size(); ++g)
    if (pair_pdim(gs, g, i) < 0 || pair_pdim(gs, g, j) < 0) ++c;
  return c;
}

std::array<long long, 2> class_skew_counts_oracle(const GeneratorSet& gs, const Subspace& s) {
  std::array<long long, 2> c{0, 0};
  std::vector<std::int8_t> pd = pdims_vs_all(gs, s);
  for (int g = 0; g < gs.size(); ++g)
    if (pd[g] < 0) ++c[gs.label[g]];
  return c;
}

// ---------------------------------------------------------------------------
// cache io
// ---------------------------------------------------------------------------

namespace {
constexpr std::uint32_t kCacheMagic = 0x4851'4753u;  // "HQGS"
constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::ostream& o, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  o.write(reinterpret_cast<const char*>(b), 4);
}
void put_u64(std::ostream& o, std::uint64_t v) {
  put_u32(o, static_cast<std::uint32_t>(v));
  put_u32(o, static_cast<std::uint32_t>(v >> 32));
}
std::uint32_t get_u32(std::istream& i) {
  unsigned char b[4];
  i.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
std::uint64_t get_u64(std::istream& i) {
  std::uint64_t lo = get_u32(i);
  std::uint64_t hi = get_u32(i);
  return lo | (hi << 32);
}
}  // namespace

std::filesystem::path cache_file_name(const QuadricModel& Q) {
  return "gens-m" + std::to_string(Q.m) + "-q" + std::to_string(Q.field.q) + "-v" +
         std::to_string(kCacheVersion) + ".bin";
}

void save_generators(const GeneratorSet& gs, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("save_generators: cannot open " + file.string());
  put_u32(out, kCacheMagic);
  put_u32(out, kCacheVersion);
  put_u32(out, static_cast<std::uint32_t>(gs.model.m));
  put_u32(out, static_cast<std::uint32_t>(gs.model.field.q));
  put_u64(out, gs.gens.size());
  int r = gs.model.m + 1, cols = gs.model.ambient_cols();
  for (const Subspace& g : gs.gens)
    for (int i = 0; i < r; ++i)
      out.write(reinterpret_cast<const char*>(g.row[i].data()), cols);
  if (!out) throw std::runtime_error("save_generators: write failed for " + file.string());
}

GeneratorSet load_generators(const QuadricModel& Q, const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("load_generators: cannot open " + file.string());
  if (get_u32(in) != kCacheMagic) throw std::runtime_error("load_generators: bad magic");
  if (get_u32(in) != kCacheVersion) throw std::runtime_error("load_generators: bad version");
  if (get_u32(in) != static_cast<std::uint32_t>(Q.m) ||
      get_u32(in) != static_cast<std::uint32_t>(Q.field.q))
    throw std::runtime_error("load_generators: (m,q) mismatch");
  std::uint64_t count = get_u64(in);

  GeneratorSet gs;
  gs.model = Q;
  int r = Q.m + 1, cols = Q.ambient_cols();
  gs.gens.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Subspace s = empty_subspace(cols);
    s.nrows = static_cast<std::int16_t>(r);
    for (int i = 0; i < r; ++i) in.read(reinterpret_cast<char*>(s.row[i].data()), cols);
    if (!in) throw std::runtime_error("load_generators: truncated file");
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < cols; ++c)
        if (s.row[i][c] >= Q.field.q)
          throw std::runtime_error("load_generators: field index out of range");
    // Validate canonical form and singularity before trusting the cache.
    Subspace canon = canonicalize(std::span<const Row>(s.row.data(), r), cols, Q.field);
    if (!(canon == s) || !is_singular_subspace(Q, s))
      throw std::runtime_error("load_generators: corrupt basis at index " + std::to_string(k));
    gs.gens.push_back(s);
  }
  for (std::size_t i = 1; i < gs.gens.size(); ++i)
    if (!subspace_less(gs.gens[i - 1], gs.gens[i]))
      throw std::runtime_error("load_generators: list not in canonical order");

  int n = gs.size();
  gs.pos.reserve(n * 2);
  for (int i = 0; i < n; ++i) gs.pos.emplace(gs.gens[i], i);
  if (Q.field.q == 2) {
    gs.packed.resize(static_cast<std::size_t>(n) * r);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < r; ++j)
        gs.packed[static_cast<std::size_t>(i) * r + j] = pack_row2(gs.gens[i].row[j], cols);
  }
  Subspace ref = reference_generator(Q);
  int ref_idx = gs.find(ref);
  if (ref_idx < 0) throw std::runtime_error("load_generators: reference generator missing");
  gs.label.resize(n);
  for (int i = 0; i < n; ++i)
    gs.label[i] = static_cast<std::uint8_t>((pair_pdim(gs, i, ref_idx) - Q.m) & 1);
  return gs;
}

GeneratorSet load_or_enumerate(const QuadricModel& Q, const std::filesystem::path& cache_dir,
                               long long max_generators) {
  if (cache_dir.empty()) return enumerate_generators(Q, max_generators);
  std::filesystem::path file = cache_dir / cache_file_name(Q);
  if (std::filesystem::exists(file)) {
    try {
      return load_generators(Q, file);
    } catch (const std::exception&) {
      // fall through to a fresh enumeration
    }
  }
  GeneratorSet gs = enumerate_generators(Q, max_generators);
  std::error_code ec;
  std::filesystem::create_directories(cache_dir, ec);
  if (!ec) {
    try {
      save_generators(gs, file);
    } catch (const std::exception&) {
      // cache write is best effort
    }
  }
  return gs;
}

}  // namespace hq
