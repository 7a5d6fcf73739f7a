#pragma once

#include <functional>
#include <vector>

#include "hq/bigint.hpp"
#include "hq/subspace.hpp"

namespace hq {

// Projective points of a subspace in deterministic order (each point appears
// once, first nonzero coordinate 1). Count is (q^rank - 1)/(q - 1).
std::vector<Row> enumerate_points(const Subspace& s, const FieldCtx& F);

// Allocation-free variant for hot loops; fn may return false to stop early.
void for_each_point(const Subspace& s, const FieldCtx& F,
                    const std::function<bool(const Row&)>& fn);

// Every d-dimensional projective subspace of the given ambient subspace,
// each exactly once, in deterministic order. Subspaces are generated directly
// in canonical form by running over RREF pivot-column patterns and filling
// the free entries, so no deduplication is needed.
std::vector<Subspace> enumerate_subspaces(const Subspace& ambient, int d, const FieldCtx& F,
                                          long long cap = kDefaultSubspaceCap);

// Brute-force count of j-spaces of PG(n,q) skew to the fixed k-space
// <e_0,...,e_k>. Independent check for the closed-form count.
Bint count_skew_subspaces_oracle(int n, int k, int j, int q,
                                 long long cap = kDefaultSubspaceCap);

}  // namespace hq
