#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptv/prym.hpp"

namespace ptv {

// Witness that a covering of the line with given branch data exists:
// an ordered tuple whose product is the identity, whose i-th entry
// generates a subgroup of the i-th assigned class, and which generates
// the whole group.
struct BranchTuple {
  std::vector<ElemIdx> elements;
  std::vector<int> class_ids;  // 1-based cyclic class id per element
};

inline constexpr long kDefaultSearchBudget = 100000;

// Seeded random search for a branch tuple realizing `cov`. Every slot
// but the last is filled with a random conjugate of a random generator
// of the class subgroup; the last slot takes the inverse of the running
// product and the attempt is kept only if that inverse lands in the
// required class and the tuple generates the group.
//
// Attempts are independently seeded (a fixed 64-bit mix of `seed` and
// the attempt index), so the result depends only on (seed, budget) and
// not on evaluation order. Raw modular reduction of the generator output
// keeps the stream identical across platforms.
//
// An empty result is inconclusive: the budget ran out, which proves
// nothing about nonexistence. A single branch point is rejected without
// sampling, since one nonidentity element never has trivial product.
std::optional<BranchTuple> find_branch_tuple(const FiniteMatrixGroup& g,
                                             const CoveringData& cov,
                                             std::uint64_t seed,
                                             long max_attempts = kDefaultSearchBudget);

// Re-checks the three tuple invariants from scratch: trivial product,
// class membership per slot, generation of the full group. Never throws;
// malformed tuples simply fail.
bool verify_tuple(const FiniteMatrixGroup& g, const BranchTuple& t);

}  // namespace ptv
