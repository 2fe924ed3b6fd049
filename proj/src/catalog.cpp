#include "ptv/catalog.hpp"

#include <map>
#include <memory>

namespace ptv {

namespace {

CatalogEntry make_entry(std::string name, int rank, const std::vector<QMat>& gens,
                        const QVec& wvec,
                        const std::vector<std::pair<std::string, QMat>>& class_mats) {
  auto g = std::make_shared<const FiniteMatrixGroup>(FiniteMatrixGroup::enumerate(rank, gens));
  LatticeRep rep(g);
  Weight w = validate_weight(rep, wvec);
  InvariantForm f = invariant_form(rep, w);
  WeightOrbit orbit = weight_orbit(rep, w, f);
  std::vector<std::pair<std::string, ElemIdx>> named;
  for (const auto& [cls, m] : class_mats) {
    auto idx = g->find(m);
    if (!idx)
      throw IdentityError("CatalogBroken", "named class generator missing from " + name);
    named.emplace_back(cls, *idx);
  }
  return CatalogEntry{std::move(name), std::move(rep), std::move(w), std::move(f),
                      std::move(orbit), std::move(named)};
}

}  // namespace

CatalogEntry build_weyl_e6() {
  constexpr int kAdj[6][6] = {
      // chain 1-3-4-5-6 with 2 attached to 4
      {0, 0, 1, 0, 0, 0},
      {0, 0, 0, 1, 0, 0},
      {1, 0, 0, 1, 0, 0},
      {0, 1, 1, 0, 1, 0},
      {0, 0, 0, 1, 0, 1},
      {0, 0, 0, 0, 1, 0},
  };
  // Reflection in node i: identity except row i, where the entry at a
  // neighbor becomes 1 and the diagonal becomes -1.
  std::vector<QMat> gens;
  for (int i = 0; i < 6; ++i) {
    QMat m = QMat::identity(6);
    m.at(i, i) = Rat(-1);
    for (int j = 0; j < 6; ++j)
      if (kAdj[i][j]) m.at(i, j) = Rat(1);
    gens.push_back(std::move(m));
  }

  QVec w(6);
  w[0] = Rat(2, 3);
  w[1] = Rat(1);
  w[2] = Rat(4, 3);
  w[3] = Rat(2);
  w[4] = Rat(5, 3);
  w[5] = Rat(4, 3);

  // C1: a simple reflection. C2: the rotation s1·s3 of order three
  // (nodes 1 and 3 are adjacent).
  QMat c2 = gens[0] * gens[2];
  return make_entry("e6", 6, gens, w, {{"C1", gens[0]}, {"C2", c2}});
}

namespace {

// Matrix of a permutation of {0..n-1} acting on the sum-zero lattice in
// the basis E_i = e_i - e_{i+1}.
QMat perm_on_difference_basis(const std::vector<int>& image) {
  const int n = static_cast<int>(image.size());
  QMat m(n - 1, n - 1);
  for (int col = 0; col < n - 1; ++col) {
    int a = image[static_cast<std::size_t>(col)];
    int b = image[static_cast<std::size_t>(col + 1)];
    // sigma(E_col) = e_a - e_b
    if (a < b)
      for (int k = a; k < b; ++k) m.at(k, col) = Rat(1);
    else
      for (int k = b; k < a; ++k) m.at(k, col) = Rat(-1);
  }
  return m;
}

std::vector<int> three_cycle(int n) {
  std::vector<int> im(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
  im[0] = 1;
  im[1] = 2;
  im[2] = 0;
  return im;
}

}  // namespace

CatalogEntry build_alternating(int n) {
  if (n < 4 || n > 9)
    throw ValidationError("BadCatalogParameter", "alternating entries cover n = 4 .. 9");

  std::vector<int> cyc(static_cast<std::size_t>(n));
  if (n % 2 == 1) {
    // full cycle (0 1 ... n-1), even permutation for odd n
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
  } else {
    // cycle on {1..n-1}, fixing 0
    cyc[0] = 0;
    for (int i = 1; i < n; ++i) cyc[static_cast<std::size_t>(i)] = i % (n - 1) + 1;
  }
  QMat g3 = perm_on_difference_basis(three_cycle(n));
  QMat gc = perm_on_difference_basis(cyc);

  // Weight with orbit the unordered pairs: coordinates 2i/n on the chain
  // and (n-2)/n at the end.
  QVec w(n - 1);
  for (int i = 1; i <= n - 2; ++i) w[i - 1] = Rat(2 * i, n);
  w[n - 2] = Rat(n - 2, n);

  return make_entry("a" + std::to_string(n), n - 1, {g3, gc}, w, {{"C3", g3}});
}

ElemIdx CatalogEntry::named_class(const std::string& cls) const {
  for (const auto& [name2, idx] : named_classes)
    if (name2 == cls) return idx;
  throw ParseError("UnknownClassName",
                   "catalog entry '" + name + "' has no class named '" + cls + "'");
}

const CatalogEntry& catalog_entry(const std::string& name) {
  static std::map<std::string, CatalogEntry> cache;
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;

  CatalogEntry entry = [&]() -> CatalogEntry {
    if (name == "e6") return build_weyl_e6();
    if (name.size() == 2 && name[0] == 'a' && name[1] >= '4' && name[1] <= '9')
      return build_alternating(name[1] - '0');
    throw ParseError("UnknownCatalogName", "no catalog entry named '" + name + "'");
  }();
  return cache.emplace(name, std::move(entry)).first->second;
}

std::vector<std::string> catalog_names() {
  return {"e6", "a4", "a5", "a6", "a7", "a8", "a9"};
}

}  // namespace ptv
