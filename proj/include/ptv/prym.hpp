#pragma once

#include <vector>

#include "ptv/weightlat.hpp"

namespace ptv {

// One branch type: a nonidentity element whose cyclic subgroup names a
// conjugacy class of cyclic subgroups, with the number of branch points
// of that type.
struct BranchDatum {
  ElemIdx representative;
  long multiplicity;  // must be >= 1
};

// Branch data of a covering of the line. Entries naming the same class
// are merged; the formulas below only see (class, total multiplicity).
struct CoveringData {
  std::vector<BranchDatum> branch;
};

// Per-class slice of the analysis.
struct ClassRow {
  int class_id;
  ElemIdx representative;
  int subgroup_order;
  long multiplicity;          // alpha_j
  std::size_t double_cosets;  // |H\G/G_j|
  int fix_dim;                // dim of the common fixed space of G_j
  Int f_contribution;         // alpha_j (e (n - fix) - (d - dc))
};

struct PrymReport {
  int d;
  std::size_t group_order;
  std::size_t stab_order;
  Rat ww;
  Int e;
  Int degree;
  Int genus;
  Int dim_p;
  Int fixed_points;
  bool fixed_point_free;
  bool verdict;      // fixed_point_free and e >= 1
  long family_dim;   // (total branch points) - 3
  bool faithful;
  std::vector<ClassRow> classes;
};

// Number of orbits of K on the d orbit points. Equals the double coset
// count |H\G/K| through the bijection Hg -> g^-1 w, and is computed
// without touching the group beyond K's generators, which makes it an
// independent check on the elementwise double-coset routine.
std::size_t double_cosets_via_orbit(const WeightOrbit& orbit, const Subgroup& k);

// Genus of the intermediate quotient:
//   g = -d + 1 + (1/2) sum_j alpha_j (d - |H\G/G_j|).
// Must come out a nonnegative integer; otherwise the branch data are
// inconsistent (NonIntegerGenus / NegativeGenus).
Int genus_of_c(const WeightOrbit& orbit, const CoveringData& cov);

// Dimension of the distinguished abelian subvariety:
//   dim = -n + (1/2) sum_j alpha_j (n - dim Fix_{G_j}).
// NonIntegerDimension / NegativeDimension on inconsistent data.
Int prym_dimension(const LatticeRep& rep, const WeightOrbit& orbit,
                   const CoveringData& cov);

// Fixed points of the Kanev correspondence:
//   F = sum_j alpha_j (e (n - fix_j) - (d - dc_j)).
// Requires the exponent to be integral; a negative total signals
// inconsistent inputs (NegativeFixedPointCount).
Int fixed_point_count(const LatticeRep& rep, const WeightOrbit& orbit,
                      const CoveringData& cov);

// Exact cross-check tying the five invariants together:
//   e * dim_p == genus - degree + fixed_points / 2.
bool consistency_check(const PrymReport& r);

// Full pipeline over resolved branch data. Computes every field, then
// refuses (ConsistencyBroken) if the cross-check fails, which would mean
// a defect in one of the four routines rather than in the input.
PrymReport analyze(const LatticeRep& rep, const WeightOrbit& orbit,
                   const CoveringData& cov);

}  // namespace ptv
