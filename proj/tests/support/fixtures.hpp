#pragma once

// Shared test fixtures: small matrix groups with hand-checkable structure.

#include <vector>

#include "ptv/group.hpp"
#include "ptv/linalg.hpp"

namespace ptv::testsupport {

// Permutation matrix: maps basis vector e_j to e_{image[j]} (0-based).
inline QMat perm_matrix(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  QMat m(n, n);
  for (int j = 0; j < n; ++j) m.at(image[static_cast<std::size_t>(j)], j) = Rat(1);
  return m;
}

inline QMat mat_l(const std::vector<std::vector<long>>& rows) {
  std::vector<std::vector<Rat>> r;
  for (const auto& row : rows) {
    std::vector<Rat> rr;
    for (long v : row) rr.emplace_back(v);
    r.push_back(std::move(rr));
  }
  return QMat::from_rows(r);
}

// Full symmetric group on n letters: adjacent transposition and n-cycle.
inline std::vector<QMat> symmetric_group_gens(int n) {
  std::vector<int> t(static_cast<std::size_t>(n)), c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = i;
  t[0] = 1;
  t[1] = 0;
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = (i + 1) % n;
  return {perm_matrix(t), perm_matrix(c)};
}

// Dihedral group of order 8: quarter turn and a reflection, as 2x2
// integer matrices.
inline std::vector<QMat> d4_gens() {
  return {mat_l({{0, -1}, {1, 0}}), mat_l({{1, 0}, {0, -1}})};
}

// Same group conjugated by diag(1,2); entries become non-integral, which
// forces the rational store.
inline std::vector<QMat> d4_gens_rational() {
  QMat t = mat_l({{1, 0}, {0, 2}});
  QMat tinv = QMat::from_rows({{Rat(1), Rat(0)}, {Rat(0), Rat(1, 2)}});
  std::vector<QMat> out;
  for (const QMat& g : d4_gens()) out.push_back(t * g * tinv);
  return out;
}

}  // namespace ptv::testsupport
