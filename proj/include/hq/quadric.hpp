#pragma once

#include <filesystem>
#include <unordered_map>
#include <vector>

#include "hq/projgeom.hpp"

namespace hq {

// The hyperbolic quadric X0*X1 + X2*X3 + ... + X_{2m}*X_{2m+1} = 0 in
// PG(2m+1, q). Generators (maximal totally singular subspaces) have
// projective dimension m.
struct QuadricModel {
  int m = 0;
  FieldCtx field;
  int ambient_cols() const { return 2 * m + 2; }
};

QuadricModel make_quadric(int m, int q);

Felt eval_form(const QuadricModel& Q, const Row& v);
// Polarization b(x,y) = Q(x+y) - Q(x) - Q(y); symmetric, bilinear, and the
// right perpendicularity notion in every characteristic (in char 2 it is
// alternating and Q is not recoverable from it, so singularity tests always
// go through Q on basis vectors plus pairwise polarization).
Felt bilin(const QuadricModel& Q, const Row& u, const Row& v);

bool is_singular_point(const QuadricModel& Q, const Row& v);
bool is_singular_subspace(const QuadricModel& Q, const Subspace& s);

// Perp of a singular subspace under the polarization; pdim 2m - pdim(s),
// always contains s. Throws on non-singular input.
Subspace tangent_space(const QuadricModel& Q, const Subspace& s);

// <e0, e2, ..., e_{2m}>, the fixed reference generator used for class labels.
Subspace reference_generator(const QuadricModel& Q);

// All totally singular k-spaces, sorted canonically.
std::vector<Subspace> singular_subspaces(const QuadricModel& Q, int k,
                                         long long cap = kDefaultSubspaceCap);

struct GeneratorSet {
  QuadricModel model;
  std::vector<Subspace> gens;        // sorted canonically; index = identity
  std::vector<std::uint8_t> label;   // 0 = class of the reference generator
  std::unordered_map<Subspace, int, SubspaceHash> pos;
  std::vector<std::uint32_t> packed; // q == 2 only: m+1 bitmask rows per generator

  int size() const { return static_cast<int>(gens.size()); }
  int find(const Subspace& s) const {
    auto it = pos.find(s);
    return it == pos.end() ? -1 : it->second;
  }
  std::array<long long, 2> class_counts() const;
};

GeneratorSet enumerate_generators(const QuadricModel& Q,
                                  long long max_generators = kDefaultGeneratorCap);

// pdim of gens[i] cap gens[j]; -1 when disjoint. Same-class pairs satisfy
// pdim == m (mod 2), the empty intersection counting as pdim -1.
int pair_pdim(const GeneratorSet& gs, int i, int j);

// pdim(gens[g] cap s) for every g, in one pass.
std::vector<std::int8_t> pdims_vs_all(const GeneratorSet& gs, const Subspace& s);

// Histogram of pair_pdim(pivot, .) indexed by j+1 for j = -1..m; sums to |gens|.
std::vector<long long> intersection_profile(const GeneratorSet& gs, int pivot);

// Brute-force pair counts; independent oracles for the closed-form counting
// functions. i == j is the coincident pair.
long long count_skew_to_both_oracle(const GeneratorSet& gs, int i, int j);
long long count_meeting_one_oracle(const GeneratorSet& gs, int i, int j);
long long count_missing_any_oracle(const GeneratorSet& gs, int i, int j);
// Generators skew to a fixed singular subspace, split by class.
std::array<long long, 2> class_skew_counts_oracle(const GeneratorSet& gs, const Subspace& s);

// Cache: header {magic, version, m, q, count} then canonical basis matrices
// in row-major field-index bytes. Round trip is bit-exact.
std::filesystem::path cache_file_name(const QuadricModel& Q);
void save_generators(const GeneratorSet& gs, const std::filesystem::path& file);
GeneratorSet load_generators(const QuadricModel& Q, const std::filesystem::path& file);
GeneratorSet load_or_enumerate(const QuadricModel& Q, const std::filesystem::path& cache_dir,
                               long long max_generators = kDefaultGeneratorCap);

}  // namespace hq
