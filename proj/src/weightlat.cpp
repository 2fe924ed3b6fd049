#include "ptv/weightlat.hpp"

#include <algorithm>
#include <numeric>

namespace ptv {

LatticeRep::LatticeRep(std::shared_ptr<const FiniteMatrixGroup> g) : g_(std::move(g)) {
  if (!g_) throw ValidationError("NullGroup", "lattice representation needs a group");
  const auto& gens = g_->generator_matrices();
  for (std::size_t s = 0; s < gens.size(); ++s)
    if (!gens[s].is_integral())
      throw ValidationError("LatticeNotPreserved",
                            "generator " + std::to_string(s) + " has non-integer entries");
}

Weight validate_weight(const LatticeRep& rep, const QVec& v) {
  if (v.dim() != rep.rank())
    throw ValidationError("DimensionMismatch", "weight dimension differs from lattice rank");
  if (v.is_zero()) throw ValidationError("ZeroWeight", "weight must be nonzero");
  const auto& gens = rep.group().generator_matrices();
  for (std::size_t s = 0; s < gens.size(); ++s) {
    QVec moved = gens[s] * v;
    if (!(moved - v).is_integral())
      throw ValidationError("NotAWeight", "generator " + std::to_string(s) +
                                              " moves the vector by a non-lattice amount");
  }
  return Weight(v);
}

InvariantForm::InvariantForm(QMat gram) : gram_(std::move(gram)) {
  if (!gram_.is_symmetric())
    throw ValidationError("NotSymmetric", "form matrix must be symmetric");
  if (!is_negative_definite(gram_))
    throw ValidationError("NotNegativeDefinite", "form matrix must be negative definite");
}

Rat InvariantForm::pair(const QVec& a, const QVec& b) const {
  if (a.dim() != gram_.rows() || b.dim() != gram_.rows())
    throw ValidationError("DimensionMismatch", "pairing vectors of wrong dimension");
  Rat acc;
  for (int i = 0; i < gram_.rows(); ++i) {
    if (a[i].is_zero()) continue;
    Rat row;
    for (int j = 0; j < gram_.cols(); ++j) {
      if (!gram_.at(i, j).is_zero() && !b[j].is_zero()) row += gram_.at(i, j) * b[j];
    }
    acc += a[i] * row;
  }
  return acc;
}

InvariantForm invariant_form(const LatticeRep& rep, const Weight& w) {
  if (!check_commutant(rep))
    throw ValidationError("CommutantNotScalar",
                          "invariant form is not unique: commutant has dimension " +
                              std::to_string(commutant_dimension(rep)));
  // Averaging a definite form over the group yields an invariant one;
  // starting from -I it is automatically symmetric negative definite.
  QMat base = Rat(-1) * rep.group().sum_mtm();
  QVec values = base * w.coords();
  Rat c = primitive_scale(values);
  return InvariantForm(c * base);
}

int commutant_dimension(const LatticeRep& rep) {
  const int n = rep.rank();
  const auto& gens = rep.group().generator_matrices();
  if (gens.empty()) return n * n;
  // Linear system M·X - X·M = 0 for each generator; unknowns X_{ab}
  // flattened as a*n + b.
  QMat sys(static_cast<int>(gens.size()) * n * n, n * n);
  int row = 0;
  for (const QMat& m : gens) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            Rat coeff;
            if (b == j) coeff += m.at(i, a);
            if (a == i) coeff -= m.at(b, j);
            if (!coeff.is_zero()) sys.at(row, a * n + b) = coeff;
          }
        ++row;
      }
  }
  return nullspace_dim(sys);
}

bool check_commutant(const LatticeRep& rep) { return commutant_dimension(rep) == 1; }

int fixed_subspace_dim(const LatticeRep& rep, const Subgroup& k) {
  const auto& g = rep.group();
  std::vector<std::int32_t> bucket(g.order(), -1);
  for (ElemIdx x : k.elements) bucket[static_cast<std::size_t>(x)] = 0;
  QMat sum = g.bucket_matrix_sums(bucket, 1)[0];
  // Fixed vectors are the |K|-eigenspace of the element sum.
  QMat shifted = sum - Rat(static_cast<long>(k.order())) * QMat::identity(g.rank());
  return nullspace_dim(shifted);
}

WeightOrbit weight_orbit(const LatticeRep& rep, const Weight& w, const InvariantForm& form) {
  const FiniteMatrixGroup& g = rep.group();
  FiniteMatrixGroup::VecOrbit raw = g.vector_orbit(w.coords());
  const std::size_t d = raw.points.size();

  Subgroup stab = g.make_subgroup(g.stabilizer(w.coords()));
  if (stab.order() * d != g.order())
    throw IdentityError("OrbitStabilizerBroken", "orbit times stabilizer misses the group order");

  CosetSystem cs = g.hall_representatives(stab);
  if (cs.count() != d)
    throw IdentityError("OrbitStabilizerBroken", "coset count differs from orbit size");

  // Reorder points: the weight first, the rest ascending lexicographic.
  std::vector<std::int32_t> old_order(d);
  std::iota(old_order.begin(), old_order.end(), 0);
  std::sort(old_order.begin() + 1, old_order.end(), [&](std::int32_t a, std::int32_t b) {
    return QVec::lex_less(raw.points[static_cast<std::size_t>(a)],
                          raw.points[static_cast<std::size_t>(b)]);
  });
  std::vector<std::int32_t> new_of_old(d);
  for (std::size_t p = 0; p < d; ++p)
    new_of_old[static_cast<std::size_t>(old_order[p])] = static_cast<std::int32_t>(p);

  WeightOrbit orbit(rep.share(), w.coords(), form);
  orbit.stab_ = std::move(stab);
  orbit.points_.resize(d);
  for (std::size_t p = 0; p < d; ++p)
    orbit.points_[static_cast<std::size_t>(new_of_old[p])] = std::move(raw.points[p]);

  orbit.reps_.assign(d, -1);
  for (std::size_t k = 0; k < d; ++k) {
    ElemIdx r = cs.reps[k];
    std::int32_t p = new_of_old[static_cast<std::size_t>(raw.point_of[static_cast<std::size_t>(r)])];
    if (orbit.reps_[static_cast<std::size_t>(p)] != -1)
      throw IdentityError("OrbitStabilizerBroken", "two representatives map to one orbit point");
    orbit.reps_[static_cast<std::size_t>(p)] = r;
  }
  if (orbit.reps_[0] != g.identity())
    throw IdentityError("OrbitStabilizerBroken", "identity does not represent the weight itself");

  orbit.point_of_.resize(g.order());
  for (std::size_t i = 0; i < g.order(); ++i)
    orbit.point_of_[i] = new_of_old[static_cast<std::size_t>(raw.point_of[i])];

  orbit.pair_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      Rat v = form.pair(orbit.points_[i], orbit.points_[j]);
      orbit.pair_[i * d + j] = v;
      orbit.pair_[j * d + i] = v;
    }
  return orbit;
}

}  // namespace ptv
