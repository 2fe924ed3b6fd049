#include "ptv/existence.hpp"

#include <numeric>
#include <random>
#include <string>

#include "ptv/errors.hpp"

namespace ptv {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One sampling slot: the class representative, its class id, and the
// exponents coprime to its order (the generators of the cyclic subgroup).
struct Slot {
  ElemIdx representative;
  int class_id;
  std::vector<long> units;
};

}  // namespace

std::optional<BranchTuple> find_branch_tuple(const FiniteMatrixGroup& g,
                                             const CoveringData& cov,
                                             std::uint64_t seed,
                                             long max_attempts) {
  if (cov.branch.empty())
    throw ValidationError("EmptyBranchData",
                          "branch data must name at least one class");
  if (max_attempts < 1)
    throw ValidationError("BadBranchData", "attempt budget must be positive");

  std::vector<Slot> slots;
  for (const auto& b : cov.branch) {
    if (b.multiplicity < 1)
      throw ValidationError("BadBranchData",
                            "multiplicity must be at least 1, got " +
                                std::to_string(b.multiplicity));
    Slot s;
    s.representative = b.representative;
    s.class_id = g.cyclic_class_id(b.representative);
    const long ord = g.element_order(b.representative);
    for (long m = 1; m < ord; ++m)
      if (std::gcd(m, ord) == 1) s.units.push_back(m);
    for (long k = 0; k < b.multiplicity; ++k) slots.push_back(s);
  }

  const std::size_t total = slots.size();
  // One branch point cannot multiply to the identity.
  if (total < 2) return std::nullopt;

  const ElemIdx id = g.identity();
  const std::size_t order = g.order();
  BranchTuple t;
  t.elements.resize(total);
  t.class_ids.reserve(total);
  for (const auto& s : slots) t.class_ids.push_back(s.class_id);

  for (long attempt = 0; attempt < max_attempts; ++attempt) {
    std::mt19937_64 rng(
        splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(attempt))));
    ElemIdx prod = id;
    for (std::size_t i = 0; i + 1 < total; ++i) {
      const Slot& s = slots[i];
      const long m = s.units[static_cast<std::size_t>(
          rng() % static_cast<std::uint64_t>(s.units.size()))];
      const ElemIdx u = static_cast<ElemIdx>(
          rng() % static_cast<std::uint64_t>(order));
      const ElemIdx x = g.conjugate(u, g.power(s.representative, m));
      t.elements[i] = x;
      prod = g.multiply(prod, x);
    }
    const ElemIdx last = g.inverse(prod);
    if (last == id) continue;
    if (g.cyclic_class_id(last) != slots[total - 1].class_id) continue;
    t.elements[total - 1] = last;
    if (!g.generates_group(t.elements)) continue;
    if (!verify_tuple(g, t))
      throw IdentityError("TupleRecheckFailed",
                          "accepted tuple failed independent verification");
    return t;
  }
  return std::nullopt;
}

bool verify_tuple(const FiniteMatrixGroup& g, const BranchTuple& t) {
  if (t.elements.empty()) return false;
  if (t.elements.size() != t.class_ids.size()) return false;
  const ElemIdx id = g.identity();
  for (ElemIdx x : t.elements)
    if (x < 0 || static_cast<std::size_t>(x) >= g.order()) return false;
  ElemIdx prod = id;
  for (ElemIdx x : t.elements) prod = g.multiply(prod, x);
  if (prod != id) return false;
  for (std::size_t i = 0; i < t.elements.size(); ++i) {
    if (t.elements[i] == id) return false;
    if (g.cyclic_class_id(t.elements[i]) != t.class_ids[i]) return false;
  }
  return g.generates_group(t.elements);
}

}  // namespace ptv
