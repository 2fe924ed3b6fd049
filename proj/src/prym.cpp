#include "ptv/prym.hpp"

#include <string>
#include <vector>

#include "ptv/correspond.hpp"
#include "ptv/errors.hpp"

namespace ptv {

namespace {

// Branch entry after validation: class id resolved, same-class entries
// merged, cyclic subgroup materialized once.
struct ResolvedClass {
  int class_id;
  ElemIdx representative;
  Subgroup subgroup;
  long multiplicity;
};

std::vector<ResolvedClass> resolve_branch(const FiniteMatrixGroup& g,
                                          const CoveringData& cov) {
  if (cov.branch.empty())
    throw ValidationError("EmptyBranchData",
                          "branch data must name at least one class");
  std::vector<ResolvedClass> out;
  for (const auto& b : cov.branch) {
    if (b.multiplicity < 1)
      throw ValidationError("BadBranchData",
                            "multiplicity must be at least 1, got " +
                                std::to_string(b.multiplicity));
    const int id = g.cyclic_class_id(b.representative);
    bool merged = false;
    for (auto& r : out) {
      if (r.class_id == id) {
        r.multiplicity += b.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged)
      out.push_back({id, b.representative,
                     g.subgroup_from_generators({b.representative}),
                     b.multiplicity});
  }
  return out;
}

void require_same_group(const LatticeRep& rep, const WeightOrbit& orbit) {
  if (rep.share().get() != orbit.group_ptr().get())
    throw ValidationError("GroupMismatch",
                          "orbit was built from a different group object");
}

Rat half_sum_genus(const WeightOrbit& orbit,
                   const std::vector<ResolvedClass>& classes) {
  const Int d(static_cast<unsigned long>(orbit.size()));
  Rat total = Rat(1) - Rat(d, 1);
  for (const auto& c : classes) {
    const Int dc(
        static_cast<unsigned long>(double_cosets_via_orbit(orbit, c.subgroup)));
    total += Rat(Int(c.multiplicity) * (d - dc), 2);
  }
  return total;
}

Rat half_sum_dimension(const LatticeRep& rep,
                       const std::vector<ResolvedClass>& classes) {
  const Int n(static_cast<unsigned long>(rep.group().rank()));
  Rat total = -Rat(n, 1);
  for (const auto& c : classes) {
    const Int fix(
        static_cast<long>(fixed_subspace_dim(rep, c.subgroup)));
    total += Rat(Int(c.multiplicity) * (n - fix), 2);
  }
  return total;
}

}  // namespace

std::size_t double_cosets_via_orbit(const WeightOrbit& orbit,
                                    const Subgroup& k) {
  const auto& g = orbit.group();
  const int d = orbit.size();

  // Permutation action of each generator: k·rep(p) sends w to k·point(p).
  std::vector<std::vector<int>> perms;
  perms.reserve(k.generators.size());
  for (ElemIdx gen : k.generators) {
    std::vector<int> perm(static_cast<std::size_t>(d));
    for (int p = 0; p < d; ++p)
      perm[static_cast<std::size_t>(p)] =
          orbit.point_of(g.multiply(gen, orbit.rep(p)));
    perms.push_back(std::move(perm));
  }

  std::vector<char> seen(static_cast<std::size_t>(d), 0);
  std::size_t components = 0;
  std::vector<int> stack;
  for (int start = 0; start < d; ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    ++components;
    seen[static_cast<std::size_t>(start)] = 1;
    stack.assign(1, start);
    while (!stack.empty()) {
      const int p = stack.back();
      stack.pop_back();
      for (const auto& perm : perms) {
        const int q = perm[static_cast<std::size_t>(p)];
        if (!seen[static_cast<std::size_t>(q)]) {
          seen[static_cast<std::size_t>(q)] = 1;
          stack.push_back(q);
        }
      }
    }
  }
  return components;
}

Int genus_of_c(const WeightOrbit& orbit, const CoveringData& cov) {
  const auto classes = resolve_branch(orbit.group(), cov);
  const Rat g = half_sum_genus(orbit, classes);
  if (!g.is_integer())
    throw ValidationError("NonIntegerGenus",
                          "genus formula gives " + g.str());
  if (g.sign() < 0)
    throw ValidationError("NegativeGenus", "genus formula gives " + g.str());
  return g.to_integer();
}

Int prym_dimension(const LatticeRep& rep, const WeightOrbit& orbit,
                   const CoveringData& cov) {
  require_same_group(rep, orbit);
  const auto classes = resolve_branch(orbit.group(), cov);
  const Rat dim = half_sum_dimension(rep, classes);
  if (!dim.is_integer())
    throw ValidationError("NonIntegerDimension",
                          "dimension formula gives " + dim.str());
  if (dim.sign() < 0)
    throw ValidationError("NegativeDimension",
                          "dimension formula gives " + dim.str());
  return dim.to_integer();
}

Int fixed_point_count(const LatticeRep& rep, const WeightOrbit& orbit,
                      const CoveringData& cov) {
  require_same_group(rep, orbit);
  const auto classes = resolve_branch(orbit.group(), cov);
  const Int e = exponent(orbit);
  const Int d(static_cast<unsigned long>(orbit.size()));
  const Int n(static_cast<unsigned long>(rep.group().rank()));
  Int total = 0;
  for (const auto& c : classes) {
    const Int dc(
        static_cast<unsigned long>(double_cosets_via_orbit(orbit, c.subgroup)));
    const Int fix(static_cast<long>(fixed_subspace_dim(rep, c.subgroup)));
    total += Int(c.multiplicity) * (e * (n - fix) - (d - dc));
  }
  if (total < 0)
    throw ValidationError("NegativeFixedPointCount",
                          "fixed point formula gives " + total.get_str());
  return total;
}

bool consistency_check(const PrymReport& r) {
  // e * dim_p == genus - degree + fixed_points / 2, cleared of the half.
  return 2 * r.e * r.dim_p == 2 * r.genus - 2 * r.degree + r.fixed_points;
}

PrymReport analyze(const LatticeRep& rep, const WeightOrbit& orbit,
                   const CoveringData& cov) {
  require_same_group(rep, orbit);
  const auto& g = orbit.group();
  const auto classes = resolve_branch(g, cov);

  PrymReport r;
  r.d = orbit.size();
  r.group_order = g.order();
  r.stab_order = orbit.stabilizer().order();
  r.ww = orbit.ww();
  r.e = exponent(orbit);
  r.degree = kanev_degree(orbit);

  const Int d(static_cast<unsigned long>(r.d));
  const Int n(static_cast<unsigned long>(g.rank()));

  long total_points = 0;
  Int f_total = 0;
  for (const auto& c : classes) {
    ClassRow row;
    row.class_id = c.class_id;
    row.representative = c.representative;
    row.subgroup_order = static_cast<int>(c.subgroup.order());
    row.multiplicity = c.multiplicity;
    row.double_cosets = double_cosets_via_orbit(orbit, c.subgroup);
    row.fix_dim = fixed_subspace_dim(rep, c.subgroup);
    const Int dc(static_cast<unsigned long>(row.double_cosets));
    const Int fix(static_cast<long>(row.fix_dim));
    row.f_contribution =
        Int(c.multiplicity) * (r.e * (n - fix) - (d - dc));
    f_total += row.f_contribution;
    total_points += c.multiplicity;
    r.classes.push_back(std::move(row));
  }

  const Rat genus = half_sum_genus(orbit, classes);
  if (!genus.is_integer())
    throw ValidationError("NonIntegerGenus",
                          "genus formula gives " + genus.str());
  if (genus.sign() < 0)
    throw ValidationError("NegativeGenus",
                          "genus formula gives " + genus.str());
  r.genus = genus.to_integer();

  const Rat dim = half_sum_dimension(rep, classes);
  if (!dim.is_integer())
    throw ValidationError("NonIntegerDimension",
                          "dimension formula gives " + dim.str());
  if (dim.sign() < 0)
    throw ValidationError("NegativeDimension",
                          "dimension formula gives " + dim.str());
  r.dim_p = dim.to_integer();

  if (f_total < 0)
    throw ValidationError("NegativeFixedPointCount",
                          "fixed point formula gives " + f_total.get_str());
  r.fixed_points = f_total;
  r.fixed_point_free = (f_total == 0);
  r.verdict = r.fixed_point_free && r.e >= 1;
  r.family_dim = total_points - 3;
  // Group elements are identified with their matrices, so the lattice
  // action is faithful by construction.
  r.faithful = true;

  if (!consistency_check(r))
    throw IdentityError("ConsistencyBroken",
                        "e*dimP != g - deg + F/2 for these invariants");
  return r;
}

}  // namespace ptv
