#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptv/weightlat.hpp"

namespace ptv {

// A ready-made analysis instance: group, weight, normalized form, orbit,
// and named nontrivial cyclic subgroup classes.
struct CatalogEntry {
  std::string name;
  LatticeRep rep;
  Weight weight;
  InvariantForm form;
  WeightOrbit orbit;
  std::vector<std::pair<std::string, ElemIdx>> named_classes;

  ElemIdx named_class(const std::string& cls) const;  // throws ParseError on unknown
};

// Known names: "e6" and "a4" through "a9". Entries are built on first
// use and cached for the process lifetime.
const CatalogEntry& catalog_entry(const std::string& name);
std::vector<std::string> catalog_names();

// Uncached builders.
//
// e6: the reflection group of the rank-6 exceptional root lattice acting
// in the simple-root basis (nodes numbered 1,3,4,5,6 along the chain
// with node 2 hanging off node 4), weight dual to node 6. Named classes:
// C1 generated by a simple reflection, C2 by a rotation of order 3.
CatalogEntry build_weyl_e6();

// a<n>: the alternating group on n letters acting on the rank n-1
// sum-zero sublattice in the difference basis E_i = e_i - e_{i+1},
// with the weight whose orbit is the set of unordered pairs. Named
// class: C3 generated by a 3-cycle.
CatalogEntry build_alternating(int n);

}  // namespace ptv
