#include "hq/ekr.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "hq/parallel.hpp"
#include "json.hpp"

namespace hq {

namespace {

void require_even_m(const GeneratorSet& gs, const char* who) {
  if (gs.model.m % 2 != 0)
    throw std::invalid_argument(std::string(who) +
                                ": construction needs even m (same-class generators must meet)");
}

void require_index(const GeneratorSet& gs, int i, const char* who) {
  if (i < 0 || i >= gs.size())
    throw std::invalid_argument(std::string(who) + ": generator index out of range");
}

std::vector<std::uint64_t> member_bits(const EkrSet& s, int words) {
  std::vector<std::uint64_t> w(words, 0);
  for (int m : s.members) w[m >> 6] |= 1ull << (m & 63);
  return w;
}

}  // namespace

const char* tag_name(EkrTag t) {
  switch (t) {
    case EkrTag::OneClass: return "one-class";
    case EkrTag::Second: return "second";
    case EkrTag::PointPencil: return "point-pencil";
    case EkrTag::TypeI: return "I";
    case EkrTag::TypeII: return "II";
    case EkrTag::TypeIII: return "III";
    default: return "ad-hoc";
  }
}

bool EkrSet::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

MeetsGraph build_meets_graph(const GeneratorSet& gs, int threads) {
  MeetsGraph g;
  g.n = gs.size();
  g.words = (g.n + 63) / 64;
  g.bits.assign(static_cast<std::size_t>(g.n) * g.words, 0);
  // Each worker fills whole rows, so writes never overlap.
  parallel_for(g.n, threads, [&gs, &g](long long lo, long long hi) {
    for (long long i = lo; i < hi; ++i) {
      std::uint64_t* row = &g.bits[static_cast<std::size_t>(i) * g.words];
      for (int j = 0; j < g.n; ++j) {
        if (j == i) continue;
        if (pair_pdim(gs, static_cast<int>(i), j) >= 0) row[j >> 6] |= 1ull << (j & 63);
      }
    }
  });
  return g;
}

PairWitness is_ekr(const GeneratorSet& gs, const EkrSet& s, const MeetsGraph* g) {
  PairWitness w;
  int n = s.size();
  if (g != nullptr) {
    std::vector<std::uint64_t> mem = member_bits(s, g->words);
    for (int idx = 0; idx < n; ++idx) {
      int i = s.members[idx];
      const std::uint64_t* row = g->row(i);
      for (int wd = 0; wd < g->words; ++wd) {
        std::uint64_t want = mem[wd];
        if (wd == (i >> 6)) want &= ~(1ull << (i & 63));
        std::uint64_t missing = want & ~row[wd];
        if (missing) {
          w.ok = false;
          w.a = i;
          w.b = wd * 64 + std::countr_zero(missing);
          return w;
        }
      }
    }
    return w;
  }
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      if (pair_pdim(gs, s.members[x], s.members[y]) < 0) {
        w.ok = false;
        w.a = s.members[x];
        w.b = s.members[y];
        return w;
      }
    }
  }
  return w;
}

ExtendWitness is_maximal(const GeneratorSet& gs, const EkrSet& s, const MeetsGraph* g) {
  if (!is_ekr(gs, s, g).ok)
    throw std::invalid_argument("is_maximal: input is not pairwise intersecting");
  ExtendWitness w;
  int n = gs.size();
  if (g != nullptr) {
    std::vector<std::uint64_t> mem = member_bits(s, g->words);
    for (int c = 0; c < n; ++c) {
      if (s.contains(c)) continue;
      const std::uint64_t* row = g->row(c);
      bool all = true;
      for (int wd = 0; wd < g->words && all; ++wd)
        if (mem[wd] & ~row[wd]) all = false;
      if (all) {
        w.maximal = false;
        w.extender = c;
        return w;
      }
    }
    return w;
  }
  for (int c = 0; c < n; ++c) {
    if (s.contains(c)) continue;
    bool all = true;
    for (int m : s.members) {
      if (pair_pdim(gs, c, m) < 0) {
        all = false;
        break;
      }
    }
    if (all) {
      w.maximal = false;
      w.extender = c;
      return w;
    }
  }
  return w;
}

EkrSet build_one_class(const GeneratorSet& gs, int class_bit) {
  require_even_m(gs, "build_one_class");
  if (class_bit != 0 && class_bit != 1)
    throw std::invalid_argument("build_one_class: class bit must be 0 or 1");
  EkrSet s;
  s.tag = EkrTag::OneClass;
  s.class_bit = class_bit;
  for (int i = 0; i < gs.size(); ++i)
    if (gs.label[i] == class_bit) s.members.push_back(i);
  return s;
}

EkrSet build_second(const GeneratorSet& gs, int pivot) {
  require_even_m(gs, "build_second");
  require_index(gs, pivot, "build_second");
  EkrSet s;
  s.tag = EkrTag::Second;
  s.params.emplace_back("pi", gs.gens[pivot]);
  int other = 1 - gs.label[pivot];
  for (int i = 0; i < gs.size(); ++i) {
    if (i == pivot) {
      s.members.push_back(i);
    } else if (gs.label[i] == other && pair_pdim(gs, i, pivot) >= 0) {
      s.members.push_back(i);
    }
  }
  return s;
}

EkrSet build_point_pencil(const GeneratorSet& gs, const Row& point) {
  require_even_m(gs, "build_point_pencil");
  if (!is_singular_point(gs.model, point))
    throw std::invalid_argument("build_point_pencil: point not on the quadric");
  Subspace p = point_subspace(point, gs.model.ambient_cols(), gs.model.field);
  EkrSet s;
  s.tag = EkrTag::PointPencil;
  s.params.emplace_back("P", p);
  std::vector<std::int8_t> pd = pdims_vs_all(gs, p);
  for (int i = 0; i < gs.size(); ++i)
    if (pd[i] == 0) s.members.push_back(i);
  return s;
}

EkrSet build_type_I(const GeneratorSet& gs, const Subspace& tau, int j, int omega1) {
  require_even_m(gs, "build_type_I");
  if (!is_singular_subspace(gs.model, tau))
    throw std::invalid_argument("build_type_I: tau not totally singular");
  int k = tau.pdim();
  if (k < 0 || k > gs.model.m || j < 0 || j > k)
    throw std::invalid_argument("build_type_I: need 0 <= j <= k <= m");
  if (omega1 != 0 && omega1 != 1) throw std::invalid_argument("build_type_I: bad class bit");
  if (k == gs.model.m) {
    int t = gs.find(tau);
    if (t < 0) throw std::logic_error("build_type_I: generator tau not found");
    omega1 = gs.label[t];  // forced, so the k = 2n identifications hold
  }
  EkrSet s;
  s.tag = EkrTag::TypeI;
  s.params.emplace_back("tau", tau);
  s.k = k;
  s.j = j;
  s.class_bit = omega1;
  std::vector<std::int8_t> pd = pdims_vs_all(gs, tau);
  for (int i = 0; i < gs.size(); ++i) {
    int need = (gs.label[i] == omega1) ? j : k - j;
    if (pd[i] >= need) s.members.push_back(i);
  }
  return s;
}

EkrSet build_type_II(const GeneratorSet& gs, int pivot, const Subspace& tau) {
  require_even_m(gs, "build_type_II");
  require_index(gs, pivot, "build_type_II");
  int m = gs.model.m;
  int k = tau.pdim();
  if (k < 0 || k > m - 2) throw std::invalid_argument("build_type_II: need 0 <= pdim(tau) <= m-2");
  if (!subspace_leq(tau, gs.gens[pivot], gs.model.field))
    throw std::invalid_argument("build_type_II: tau must lie inside the pivot generator");
  EkrSet s;
  s.tag = EkrTag::TypeII;
  s.params.emplace_back("pi", gs.gens[pivot]);
  s.params.emplace_back("tau", tau);
  s.k = k;
  int omega1 = gs.label[pivot];
  s.class_bit = omega1;
  std::vector<std::int8_t> pd = pdims_vs_all(gs, tau);
  for (int i = 0; i < gs.size(); ++i) {
    if (gs.label[i] == omega1) {
      if (pd[i] >= 0 || pair_pdim(gs, i, pivot) >= 2) s.members.push_back(i);
    } else {
      if (pd[i] == k && pair_pdim(gs, i, pivot) == m - 1) s.members.push_back(i);
    }
  }
  return s;
}

EkrSet build_type_III(const GeneratorSet& gs, int pi1, int pi2) {
  require_even_m(gs, "build_type_III");
  require_index(gs, pi1, "build_type_III");
  require_index(gs, pi2, "build_type_III");
  int m = gs.model.m;
  if (m < 4) throw std::invalid_argument("build_type_III: needs m >= 4");
  if (gs.label[pi1] != gs.label[pi2])
    throw std::invalid_argument("build_type_III: generators must share a class");
  if (pair_pdim(gs, pi1, pi2) != m - 4)
    throw std::invalid_argument("build_type_III: generators must meet in an (m-4)-space");
  EkrSet s;
  s.tag = EkrTag::TypeIII;
  s.params.emplace_back("pi", gs.gens[pi1]);
  s.params.emplace_back("pi2", gs.gens[pi2]);
  int other = 1 - gs.label[pi1];
  for (int i = 0; i < gs.size(); ++i) {
    if (i == pi1 || i == pi2) {
      s.members.push_back(i);
    } else if (gs.label[i] == other && pair_pdim(gs, i, pi1) >= 0 && pair_pdim(gs, i, pi2) >= 0) {
      s.members.push_back(i);
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// maximal cliques
// ---------------------------------------------------------------------------

namespace {

using Bits = std::vector<std::uint64_t>;

bool bits_empty(const Bits& b) {
  for (std::uint64_t w : b)
    if (w) return false;
  return true;
}

int and_count(const Bits& a, const std::uint64_t* row) {
  int c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & row[i]);
  return c;
}

void bk(const MeetsGraph& g, std::vector<int>& R, Bits P, Bits X,
        std::vector<std::vector<int>>& out) {
  if (bits_empty(P) && bits_empty(X)) {
    out.push_back(R);
    return;
  }
  // pivot: vertex of P|X with the most neighbours inside P, smallest index on ties
  int best = -1, best_cnt = -1;
  for (int wd = 0; wd < g.words; ++wd) {
    std::uint64_t both = P[wd] | X[wd];
    while (both) {
      int u = wd * 64 + std::countr_zero(both);
      both &= both - 1;
      int c = and_count(P, g.row(u));
      if (c > best_cnt) {
        best_cnt = c;
        best = u;
      }
    }
  }
  const std::uint64_t* nu = g.row(best);
  for (int wd = 0; wd < g.words; ++wd) {
    std::uint64_t ext = P[wd] & ~nu[wd];
    while (ext) {
      int v = wd * 64 + std::countr_zero(ext);
      ext &= ext - 1;
      const std::uint64_t* nv = g.row(v);
      Bits P2(g.words), X2(g.words);
      for (int i = 0; i < g.words; ++i) {
        P2[i] = P[i] & nv[i];
        X2[i] = X[i] & nv[i];
      }
      R.push_back(v);
      bk(g, R, std::move(P2), std::move(X2), out);
      R.pop_back();
      P[wd] &= ~(1ull << (v & 63));
      X[wd] |= 1ull << (v & 63);
    }
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const MeetsGraph& g, long long vertex_cap) {
  if (g.n > vertex_cap)
    throw FeasibilityError("maximal_cliques: " + std::to_string(g.n) +
                           " vertices exceeds cap " + std::to_string(vertex_cap) +
                           " (use --force to override)");
  Bits P(g.words, 0), X(g.words, 0);
  for (int v = 0; v < g.n; ++v) P[v >> 6] |= 1ull << (v & 63);
  std::vector<std::vector<int>> out;
  std::vector<int> R;
  bk(g, R, std::move(P), std::move(X), out);
  for (auto& c : out) std::sort(c.begin(), c.end());
  std::sort(out.begin(), out.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

Q5Classification classify_quadric5(const GeneratorSet& gs, const MeetsGraph& g,
                                   long long vertex_cap) {
  if (gs.model.m != 2) throw std::invalid_argument("classify_quadric5: needs m = 2");
  const FieldCtx& F = gs.model.field;
  Q5Classification cls;
  cls.cliques = maximal_cliques(g, vertex_cap);
  cls.type.resize(cls.cliques.size());
  cls.match_count.resize(cls.cliques.size());
  cls.all_matched_exactly_one = true;
  cls.sizes_uniform = true;
  std::array<long long, 3> size_seen{-1, -1, -1};

  for (std::size_t ci = 0; ci < cls.cliques.size(); ++ci) {
    const std::vector<int>& cl = cls.cliques[ci];

    bool one_class = true;
    for (std::size_t i = 1; i < cl.size() && one_class; ++i)
      if (gs.label[cl[i]] != gs.label[cl[0]]) one_class = false;

    // common point?
    Subspace common = gs.gens[cl[0]];
    for (std::size_t i = 1; i < cl.size() && common.nrows > 0; ++i)
      common = intersect(common, gs.gens[cl[i]], F);
    bool pencil = common.nrows > 0;

    // some generator met by every member in at least a line?
    bool fixed_gen = false;
    for (int cand = 0; cand < gs.size() && !fixed_gen; ++cand) {
      bool all = true;
      for (int mem : cl) {
        if (pair_pdim(gs, mem, cand) < 1) {
          all = false;
          break;
        }
      }
      fixed_gen = all;
    }

    int matches = (one_class ? 1 : 0) + (pencil ? 1 : 0) + (fixed_gen ? 1 : 0);
    cls.match_count[ci] = matches;
    if (matches != 1) cls.all_matched_exactly_one = false;
    Q5Type t = one_class  ? Q5Type::OneClass
               : pencil   ? Q5Type::PointPencil
                          : Q5Type::FixedGenerator;
    cls.type[ci] = t;
    int ti = static_cast<int>(t);
    ++cls.counts[ti];
    long long sz = static_cast<long long>(cl.size());
    if (size_seen[ti] < 0) size_seen[ti] = sz;
    if (size_seen[ti] != sz) cls.sizes_uniform = false;
  }
  cls.sizes = size_seen;
  return cls;
}

Report classification_report(const GeneratorSet& gs, const Q5Classification& cls) {
  long q = gs.model.field.q;
  std::string pq = "q=" + std::to_string(q);
  Report rep;

  rep.add(compare_row("classification", "classify-types", "every maximal clique matches one type",
                      pq, Bint(std::count(cls.match_count.begin(), cls.match_count.end(), 1)),
                      "==", Bint(cls.cliques.size())));

  Bint points = (ipow(q, 2) + 1) * (ipow(q, 2) + q + 1);
  rep.add(compare_row("classification", "classify-count", "one-class families", pq,
                      Bint(cls.counts[0]), "==", Bint(2)));
  rep.add(compare_row("classification", "classify-count", "fixed-generator families", pq,
                      Bint(cls.counts[1]), "==", generator_count(2, q)));
  rep.add(compare_row("classification", "classify-count", "point-pencils", pq,
                      Bint(cls.counts[2]), "==", points));

  rep.add(compare_row("classification", "classify-size", "one-class size", pq,
                      Bint(cls.sizes[0]), "==", one_class_size(1, q)));
  rep.add(compare_row("classification", "classify-size", "fixed-generator size", pq,
                      Bint(cls.sizes[1]), "==", second_size(1, q)));
  rep.add(compare_row("classification", "classify-size", "point-pencil size", pq,
                      Bint(cls.sizes[2]), "==", point_pencil_size(1, q)));

  // Families beyond the two largest obey the missing-pair bound (tight here).
  rep.add(compare_row("classification", "third-bound",
                      "other family size <= 2 prod - 2 min W", pq, Bint(cls.sizes[2]),
                      "<=", third_family_bound(1, q)));

  std::vector<long long> sizes;
  for (const auto& c : cls.cliques) sizes.push_back(static_cast<long long>(c.size()));
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  Bint largest = sizes.empty() ? 0 : sizes[0];
  Bint second = sizes.size() > 1 ? sizes[1] : 0;
  Bint third = sizes.size() > 2 ? sizes[2] : 0;
  rep.add(compare_row("classification", "ordering", "largest family is one class", pq, largest,
                      "==", one_class_size(1, q)));
  rep.add(compare_row("classification", "ordering", "second largest meets a fixed generator", pq,
                      second, "==", second_size(1, q)));
  rep.add(compare_row("classification", "ordering", "remaining families strictly smaller", pq,
                      third, "<", second_size(1, q)));
  return rep;
}

std::string ekr_set_to_json(const GeneratorSet& gs, const EkrSet& s) {
  nlohmann::json j;
  j["schema"] = 1;
  j["quadric"] = {{"m", gs.model.m}, {"q", gs.model.field.q}};
  j["tag"] = tag_name(s.tag);
  if (s.class_bit >= 0) j["class"] = s.class_bit;
  if (s.k >= 0) j["k"] = s.k;
  if (s.j >= 0) j["j"] = s.j;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& [name, sub] : s.params) {
    nlohmann::json rows = nlohmann::json::array();
    for (int r = 0; r < sub.nrows; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < sub.cols; ++c) row.push_back(static_cast<int>(sub.row[r][c]));
      rows.push_back(row);
    }
    params[name] = rows;
  }
  j["params"] = params;
  j["member_indices"] = s.members;
  j["size"] = s.members.size();
  return j.dump(2);
}

}  // namespace hq
