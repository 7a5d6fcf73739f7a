#pragma once

#include <string>
#include <vector>

#include "hq/formulas.hpp"
#include "hq/quadric.hpp"
#include "hq/report.hpp"

namespace hq {

// Packed symmetric adjacency: vertices are generators, adjacent iff they
// meet. Diagonal bits are stored 0; clique semantics treat a vertex as
// meeting itself.
struct MeetsGraph {
  int n = 0;
  int words = 0;
  std::vector<std::uint64_t> bits;

  bool meets(int i, int j) const {
    return (bits[static_cast<std::size_t>(i) * words + (j >> 6)] >> (j & 63)) & 1u;
  }
  const std::uint64_t* row(int i) const { return &bits[static_cast<std::size_t>(i) * words]; }
};

MeetsGraph build_meets_graph(const GeneratorSet& gs, int threads = 1);

enum class EkrTag { OneClass, Second, PointPencil, TypeI, TypeII, TypeIII, AdHoc };
const char* tag_name(EkrTag t);

// A tagged family of pairwise-meeting generators: sorted member indices into
// the GeneratorSet plus the defining objects.
struct EkrSet {
  EkrTag tag = EkrTag::AdHoc;
  std::vector<int> members;
  std::vector<std::pair<std::string, Subspace>> params;
  int class_bit = -1;
  int k = -1;
  int j = -1;

  int size() const { return static_cast<int>(members.size()); }
  bool contains(int g) const;
};

struct PairWitness {
  bool ok = true;
  int a = -1, b = -1;  // first disjoint pair when !ok
};

struct ExtendWitness {
  bool maximal = true;
  int extender = -1;  // a generator outside the set meeting every member
};

// Every two members meet. Early exit with the witness pair.
PairWitness is_ekr(const GeneratorSet& gs, const EkrSet& s, const MeetsGraph* g = nullptr);

// No outside generator meets every member. Requires is_ekr input.
ExtendWitness is_maximal(const GeneratorSet& gs, const EkrSet& s, const MeetsGraph* g = nullptr);

// Constructions. All require even m (the setting where same-class generators
// pairwise meet).
EkrSet build_one_class(const GeneratorSet& gs, int class_bit);
// pivot plus every other-class generator meeting it
EkrSet build_second(const GeneratorSet& gs, int pivot);
// all generators through a fixed singular point
EkrSet build_point_pencil(const GeneratorSet& gs, const Row& point);
// generators of class omega1 meeting tau in pdim >= j, union the other class
// meeting tau in pdim >= k-j (k = pdim tau). When tau is itself a generator,
// omega1 is forced to tau's class so the k = 2n identifications hold.
EkrSet build_type_I(const GeneratorSet& gs, const Subspace& tau, int j, int omega1 = 0);
// tau inside the pivot generator, pdim tau = k <= m-2: same-class generators
// not skew to tau or meeting the pivot in pdim >= 2, union other-class
// generators through tau meeting the pivot in a hyperplane of it
EkrSet build_type_II(const GeneratorSet& gs, int pivot, const Subspace& tau);
// two same-class generators meeting in an (m-4)-space plus every other-class
// generator meeting both
EkrSet build_type_III(const GeneratorSet& gs, int pi1, int pi2);

// Every maximal clique exactly once (Bron-Kerbosch with pivoting,
// deterministic vertex order).
std::vector<std::vector<int>> maximal_cliques(const MeetsGraph& g,
                                              long long vertex_cap = kDefaultCliqueVertexCap);

enum class Q5Type { OneClass = 0, FixedGenerator = 1, PointPencil = 2 };

struct Q5Classification {
  std::vector<std::vector<int>> cliques;
  std::vector<Q5Type> type;           // per clique
  std::vector<int> match_count;       // how many type matchers fired (must be 1)
  std::array<long long, 3> counts{};  // cliques per type
  std::array<long long, 3> sizes{};   // uniform member count per type
  bool all_matched_exactly_one = false;
  bool sizes_uniform = false;
};

// Full classification of the maximal pairwise-meeting families on a rank-3
// quadric (m = 2): every maximal clique must be one generator class, the
// family of generators meeting a fixed generator in at least a line, or a
// point-pencil.
Q5Classification classify_quadric5(const GeneratorSet& gs, const MeetsGraph& g,
                                   long long vertex_cap = kDefaultCliqueVertexCap);

// Report rows: per-type tallies against the closed-form sizes, the bound on
// families of the third kind, and the size ordering of the two largest.
Report classification_report(const GeneratorSet& gs, const Q5Classification& cls);

std::string ekr_set_to_json(const GeneratorSet& gs, const EkrSet& s);

}  // namespace hq
