#pragma once

#include <memory>

#include "ptv/group.hpp"

namespace ptv {

// A finite matrix group acting on the standard lattice Z^n: every
// generator (hence every element) must have integer entries.
class LatticeRep {
public:
  explicit LatticeRep(std::shared_ptr<const FiniteMatrixGroup> g);
  int rank() const { return g_->rank(); }
  const FiniteMatrixGroup& group() const { return *g_; }
  const std::shared_ptr<const FiniteMatrixGroup>& share() const { return g_; }

private:
  std::shared_ptr<const FiniteMatrixGroup> g_;
};

// A vector w with (g - 1)·w integral for every g; such vectors pair
// integrally with the lattice under the normalized invariant form.
// Constructed only through validate_weight.
class Weight {
public:
  const QVec& coords() const { return v_; }

private:
  friend Weight validate_weight(const LatticeRep&, const QVec&);
  explicit Weight(QVec v) : v_(std::move(v)) {}
  QVec v_;
};

// Checks the defining condition on the generators (sufficient by the
// cocycle identity) and rejects the zero vector.
Weight validate_weight(const LatticeRep& rep, const QVec& v);

class InvariantForm {
public:
  explicit InvariantForm(QMat gram);  // must be symmetric negative definite
  const QMat& gram() const { return gram_; }
  Rat pair(const QVec& a, const QVec& b) const;

private:
  QMat gram_;
};

// The invariant symmetric negative definite form, normalized so that
// pairing with w is an integral primitive functional on the lattice.
// Requires a scalar commutant, which makes the form unique up to scale.
InvariantForm invariant_form(const LatticeRep& rep, const Weight& w);

// Dimension of the algebra of matrices commuting with the whole group.
int commutant_dimension(const LatticeRep& rep);
bool check_commutant(const LatticeRep& rep);  // true iff the commutant is scalar

// Dimension of the common fixed space of a subgroup.
int fixed_subspace_dim(const LatticeRep& rep, const Subgroup& k);

// Orbit of a weight with aligned coset representatives:
//   point(0) == w, the remaining points in ascending lexicographic order;
//   rep(p)·w == point(p) with rep(0) == identity;
//   the representatives simultaneously represent left and right cosets
//   of the stabilizer.
class WeightOrbit {
public:
  int size() const { return static_cast<int>(points_.size()); }
  const QVec& point(int p) const { return points_[static_cast<std::size_t>(p)]; }
  ElemIdx rep(int p) const { return reps_[static_cast<std::size_t>(p)]; }
  const Subgroup& stabilizer() const { return stab_; }
  std::int32_t point_of(ElemIdx g) const { return point_of_[static_cast<std::size_t>(g)]; }
  const Rat& pair(int i, int j) const {
    return pair_[static_cast<std::size_t>(i) * points_.size() + static_cast<std::size_t>(j)];
  }
  const Rat& ww() const { return pair(0, 0); }
  const FiniteMatrixGroup& group() const { return *g_; }
  const std::shared_ptr<const FiniteMatrixGroup>& group_ptr() const { return g_; }
  const InvariantForm& form() const { return form_; }
  const QVec& weight() const { return w_; }

private:
  friend WeightOrbit weight_orbit(const LatticeRep&, const Weight&, const InvariantForm&);
  WeightOrbit(std::shared_ptr<const FiniteMatrixGroup> g, QVec w, InvariantForm form)
      : g_(std::move(g)), w_(std::move(w)), form_(std::move(form)), stab_{} {}

  std::shared_ptr<const FiniteMatrixGroup> g_;
  QVec w_;
  InvariantForm form_;
  Subgroup stab_;
  std::vector<QVec> points_;
  std::vector<ElemIdx> reps_;
  std::vector<std::int32_t> point_of_;
  std::vector<Rat> pair_;
};

WeightOrbit weight_orbit(const LatticeRep& rep, const Weight& w, const InvariantForm& form);

}  // namespace ptv
