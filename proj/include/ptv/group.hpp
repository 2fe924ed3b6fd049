#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ptv/linalg.hpp"

namespace ptv {

// Elements of an enumerated group are referred to by index into the
// canonical element order (ascending serialization key). All algebra
// after enumeration runs on index permutation tables; matrices are only
// materialized on demand.
using ElemIdx = std::int32_t;

struct GroupElement {
  ElemIdx index;
  QMat matrix;
  std::string key;
};

// Validated subgroup handle: sorted element list plus a small generating
// set. Built once (validation is linear in the subgroup order times the
// generating set size) and passed to the coset routines.
struct Subgroup {
  std::vector<ElemIdx> elements;    // sorted ascending
  std::vector<ElemIdx> generators;  // greedy minimal generating subset
  std::size_t order() const { return elements.size(); }
};

// A left coset decomposition G = ∪ reps[k]·H. reps[0] is always the
// identity and coset_of[reps[k]] == k for every k. The coset containing
// the identity comes first; the rest are ordered by their least element.
struct CosetSystem {
  std::vector<ElemIdx> reps;
  std::vector<std::int32_t> coset_of;  // one entry per group element
  std::vector<ElemIdx> subgroup;       // sorted
  std::size_t count() const { return reps.size(); }
};

// Conjugacy class of nontrivial cyclic subgroups. Two cyclic subgroups
// are identified when some group element conjugates one onto the other;
// at the element level this merges conjugacy classes of x and x^u for
// every u coprime to ord(x). `id` is 1-based and stable: classes are
// ordered by (subgroup_order, representative).
struct CyclicSubgroupClass {
  int id;
  ElemIdx representative;  // least element generating a subgroup of the class
  int subgroup_order;
  std::size_t class_size;  // number of subgroups in the class
};

class FiniteMatrixGroup {
public:
  static constexpr std::size_t kDefaultCap = 200000;

  // Breadth-first closure of the generators. Throws CapExceeded if more
  // than `cap` distinct elements appear, NonInvertibleGenerator if a
  // generator is singular. Uses a machine-integer store with automatic
  // fallback to full rational arithmetic.
  static FiniteMatrixGroup enumerate(int rank, const std::vector<QMat>& generators,
                                     std::size_t cap = kDefaultCap);

  int rank() const { return n_; }
  std::size_t order() const { return keys_.size(); }
  ElemIdx identity() const { return identity_; }
  const std::vector<ElemIdx>& generator_elements() const { return gen_elem_; }
  const std::vector<QMat>& generator_matrices() const { return gen_mats_; }
  bool integer_store() const { return integral_store_; }

  QMat element_matrix(ElemIdx i) const;
  GroupElement element(ElemIdx i) const { return {i, element_matrix(i), keys_[static_cast<std::size_t>(i)]}; }
  const std::string& element_key(ElemIdx i) const { return keys_[static_cast<std::size_t>(i)]; }
  std::optional<ElemIdx> find_key(const std::string& key) const;
  std::optional<ElemIdx> find(const QMat& m) const { return find_key(m.key()); }

  ElemIdx multiply(ElemIdx a, ElemIdx b) const;
  ElemIdx inverse(ElemIdx a) const { return inv_[static_cast<std::size_t>(a)]; }
  ElemIdx power(ElemIdx a, long k) const;
  ElemIdx conjugate(ElemIdx t, ElemIdx x) const;  // t·x·t⁻¹
  int element_order(ElemIdx a) const;
  QVec apply(ElemIdx g, const QVec& v) const;

  // Orbit of a vector. points[0] == v; point_of[g] is the index of g·v.
  struct VecOrbit {
    std::vector<QVec> points;
    std::vector<std::int32_t> point_of;
  };
  VecOrbit vector_orbit(const QVec& v) const;

  // Sorted element sets.
  std::vector<ElemIdx> stabilizer(const QVec& v) const;
  std::vector<ElemIdx> closure(const std::vector<ElemIdx>& seeds) const;
  bool generates_group(const std::vector<ElemIdx>& seeds) const;
  std::vector<ElemIdx> subgroup_generators(const std::vector<ElemIdx>& subgroup) const;
  bool is_subgroup(const std::vector<ElemIdx>& sorted_set) const;
  std::vector<ElemIdx> cyclic_subgroup(ElemIdx x) const;

  // Validates that the sorted element list is closed; throws NotASubgroup.
  Subgroup make_subgroup(const std::vector<ElemIdx>& sorted_elements) const;
  // Closure of the seeds; no validation needed.
  Subgroup subgroup_from_generators(const std::vector<ElemIdx>& seeds) const;

  CosetSystem left_cosets(const Subgroup& subgroup) const;

  // Left coset decomposition whose representatives simultaneously
  // represent the right cosets: the map reps[k] -> H·reps[k] hits every
  // right coset exactly once. Found by perfect matching on the coset
  // intersection graph; reps[0] is the identity.
  CosetSystem hall_representatives(const Subgroup& subgroup) const;

  std::size_t double_coset_count(const Subgroup& h, const Subgroup& k) const;

  const std::vector<CyclicSubgroupClass>& cyclic_subgroup_classes() const;
  const CyclicSubgroupClass& conjugacy_class_of_cyclic(ElemIdx x) const;
  int cyclic_class_id(ElemIdx x) const;  // 1-based; throws on the identity

  // Σ_g gᵀ·g over the whole group; exact.
  QMat sum_mtm() const;

  // Entrywise sums Σ{ g : bucket_of[g] == b } for b in [0, nbuckets);
  // elements with bucket_of[g] < 0 are skipped.
  std::vector<QMat> bucket_matrix_sums(const std::vector<std::int32_t>& bucket_of,
                                       int nbuckets) const;

private:
  FiniteMatrixGroup() = default;

  void int_bfs(std::size_t cap);
  void rat_bfs(std::size_t cap);
  void reset_enumeration();
  void sort_and_remap();
  void build_tables();  // rtab_inv_, inv_ (after sort/remap)
  std::vector<int> word_of(ElemIdx i) const;
  std::vector<ElemIdx> right_mul_table(ElemIdx h) const;
  void left_mul_table(ElemIdx h, std::vector<ElemIdx>& out) const;
  void build_classes() const;
  void require_valid(ElemIdx i) const;

  int n_ = 0;
  bool integral_store_ = false;
  std::vector<std::int64_t> imats_;  // order*n*n when integral_store_
  std::vector<Rat> qmats_;           // order*n*n otherwise
  std::vector<std::string> keys_;
  std::unordered_map<std::string, ElemIdx> index_of_;
  std::vector<std::int32_t> parent_;      // BFS tree, -1 at identity
  std::vector<std::int32_t> parent_gen_;  // generator applied on the left
  std::vector<ElemIdx> bfs_order_;        // discovery order (parents precede children)
  std::vector<std::vector<ElemIdx>> ltab_;      // per generator: i -> s·i
  std::vector<std::vector<ElemIdx>> rtab_inv_;  // per generator: i -> i·s⁻¹
  std::vector<ElemIdx> inv_;
  std::vector<ElemIdx> gen_elem_;
  std::vector<QMat> gen_mats_;
  ElemIdx identity_ = 0;

  mutable bool classes_built_ = false;
  mutable std::vector<CyclicSubgroupClass> classes_;
  mutable std::vector<std::int32_t> class_id_of_;
};

}  // namespace ptv
