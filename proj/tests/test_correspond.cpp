#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <set>

#include "ptv/catalog.hpp"
#include "ptv/correspond.hpp"
#include "support/fixtures.hpp"

using namespace ptv;
using namespace ptv::testsupport;

namespace {

std::vector<QMat> weyl_a2_gens() {
  return {mat_l({{-1, 1}, {0, 1}}), mat_l({{1, 0}, {1, -1}})};
}

LatticeRep make_rep(int rank, const std::vector<QMat>& gens) {
  return LatticeRep(
      std::make_shared<const FiniteMatrixGroup>(FiniteMatrixGroup::enumerate(rank, gens)));
}

QVec vec2(const Rat& a, const Rat& b) {
  QVec v(2);
  v[0] = a;
  v[1] = b;
  return v;
}

WeightOrbit make_orbit(const LatticeRep& rep, const QVec& coords) {
  Weight w = validate_weight(rep, coords);
  InvariantForm form = invariant_form(rep, w);
  return weight_orbit(rep, w, form);
}

// The Schur matrix straight from its definition: push the group-algebra
// correspondence down along the stabilizer. Row i collects, over every
// stabilizer element h and every group element u, the coefficient
// (w, uw) at the column of rep(i)·h·u·w. No coset representative
// properties are assumed, which is what makes this an oracle for the
// closed form. O(d·|H|·|G|), so only run on small groups.
QMat pushdown_oracle(const WeightOrbit& o) {
  const FiniteMatrixGroup& g = o.group();
  const int d = o.size();
  QMat s(d, d);
  for (int i = 0; i < d; ++i) {
    for (ElemIdx h : o.stabilizer().elements) {
      ElemIdx ih = g.multiply(o.rep(i), h);
      for (ElemIdx u = 0; u < static_cast<ElemIdx>(g.order()); ++u) {
        int col = o.point_of(g.multiply(ih, u));
        Rat coeff = o.pair(0, o.point_of(u));
        s.at(i, col) = s.at(i, col) + coeff;
      }
    }
  }
  return s;
}

// Kanev matrix by the index route: for row i, column point_of(rep_i·rep_j)
// receives (w, p_j) - (w,w) - 1 for each j >= 1 (j = 0 lands on the
// diagonal, which stays zero). Independent of the pointwise route, which
// never multiplies group elements.
QMat kanev_index_route(const WeightOrbit& o) {
  const int d = o.size();
  const Rat shift = o.ww() + Rat(1);
  QMat k(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 1; j < d; ++j) {
      int col = o.point_of(o.group().multiply(o.rep(i), o.rep(j)));
      k.at(i, col) = o.pair(0, j) - shift;
    }
  return k;
}

QMat pair_matrix_scaled(const WeightOrbit& o) {
  const int d = o.size();
  Int h(static_cast<unsigned long>(o.stabilizer().order()));
  const Rat h2(h * h, 1);
  QMat p(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p.at(i, j) = h2 * o.pair(i, j);
  return p;
}

}  // namespace

TEST_CASE("schur matrix matches the push-down definition") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  CHECK(schur_matrix(fund) == pushdown_oracle(fund));

  // Highest-root orbit of the same group: six points, trivial stabilizer.
  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  CHECK(root.size() == 6);
  CHECK(schur_matrix(root) == pushdown_oracle(root));

  // Rank-one sign group.
  QVec half1(1);
  half1[0] = Rat(1, 2);
  auto sign = make_rep(1, {mat_l({{-1}})});
  auto so = make_orbit(sign, half1);
  CHECK(schur_matrix(so) == pushdown_oracle(so));

  for (const char* name : {"a4", "a5", "a6"}) {
    const CatalogEntry& e = catalog_entry(name);
    CHECK(schur_matrix(e.orbit) == pushdown_oracle(e.orbit));
  }
}

TEST_CASE("schur matrix equals the scaled pairing matrix") {
  // Third route: with aligned representatives, entry (i, c) of the index
  // construction is |H|^2 (p_i, p_c) by invariance of the form.
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  CHECK(schur_matrix(fund) == pair_matrix_scaled(fund));

  for (const char* name : {"a4", "a5", "a6", "a7"}) {
    const CatalogEntry& e = catalog_entry(name);
    CHECK(schur_matrix(e.orbit) == pair_matrix_scaled(e.orbit));
  }
}

TEST_CASE("kanev matrix: pointwise route equals index route") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  CHECK(kanev_matrix(fund) == kanev_index_route(fund));
  CHECK(kanev_matrix(root) == kanev_index_route(root));
  for (const char* name : {"a4", "a5", "a6"}) {
    const CatalogEntry& e = catalog_entry(name);
    CHECK(kanev_matrix(e.orbit) == kanev_index_route(e.orbit));
  }
}

TEST_CASE("kanev matrix values") {
  // Fundamental-weight orbit of the rank-2 group: off-diagonal pairings
  // are all 1/3 and (w,w) = -2/3, so every entry vanishes.
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  CHECK(kanev_matrix(fund).is_zero());

  // Highest-root orbit: each row sees the two 60-degree neighbours at 0,
  // the two 120-degree roots at 2 and the opposite root at 3. Entries
  // stay nonnegative even off the minuscule case, since the pairing of
  // distinct points strictly exceeds (w,w).
  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  QMat kr = kanev_matrix(root);
  CHECK(kr.is_integral());
  for (int i = 0; i < kr.rows(); ++i) {
    std::multiset<long> row;
    for (int j = 0; j < kr.cols(); ++j) {
      CHECK(kr.at(i, j).sign() >= 0);
      if (j != i) row.insert(kr.at(i, j).to_long());
    }
    CHECK(row == std::multiset<long>({0, 0, 2, 2, 3}));
  }

  // The pair orbit of the alternating group on four letters: the
  // correspondence matches each pair with its complement, a symmetric
  // permutation matrix with zero diagonal.
  const CatalogEntry& a4 = catalog_entry("a4");
  QMat k4 = kanev_matrix(a4.orbit);
  CHECK(k4 == k4.transpose());
  CHECK(k4 * k4 == QMat::identity(6));
  for (int i = 0; i < 6; ++i) {
    CHECK(k4.at(i, i).is_zero());
    Rat row(0);
    for (int j = 0; j < 6; ++j) {
      CHECK((k4.at(i, j).is_zero() || k4.at(i, j) == Rat(1)));
      row = row + k4.at(i, j);
    }
    CHECK(row == Rat(1));
  }

  // Non-integer entries are rejected. A sign-flip action with a lopsided
  // (still invariant) form gives pairings in quarters.
  auto pm = make_rep(2, {mat_l({{-1, 0}, {0, -1}})});
  Weight w = validate_weight(pm, vec2(Rat(1, 2), Rat(1, 2)));
  InvariantForm lopsided(mat_l({{-1, 0}, {0, -2}}));
  auto orbit = weight_orbit(pm, w, lopsided);
  CHECK_THROWS_WITH_AS(kanev_matrix(orbit), doctest::Contains("NonIntegerEntry"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(d_effective(orbit), doctest::Contains("NonIntegerEntry"),
                       ValidationError);
}

TEST_CASE("master identity holds and violations are caught") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  CHECK_NOTHROW(verify_master_identity(fund));
  CHECK_NOTHROW(verify_master_identity(root));
  for (const char* name : {"a4", "a5", "a6"}) {
    CHECK_NOTHROW(verify_master_identity(catalog_entry(name).orbit));
  }

  // The residual is exactly zero, and any perturbation shows up in it.
  QMat s = schur_matrix(fund);
  QMat k = kanev_matrix(fund);
  std::size_t h = fund.stabilizer().order();
  CHECK(master_identity_residual(s, k, fund.ww(), h).is_zero());

  QMat s_bad = s;
  s_bad.at(0, 1) = s_bad.at(0, 1) + Rat(1);
  QMat r = master_identity_residual(s_bad, k, fund.ww(), h);
  CHECK(!r.is_zero());
  CHECK(r.at(0, 1) == Rat(1));

  QMat k_bad = k;
  k_bad.at(2, 0) = k_bad.at(2, 0) + Rat(1);
  CHECK(!master_identity_residual(s, k_bad, fund.ww(), h).is_zero());
}

TEST_CASE("kanev degree: row sums match the closed form") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  CHECK(kanev_degree(fund) == 0);
  CHECK(kanev_degree(root) == 7);

  long expected_deg[3] = {1, 3, 6};
  const char* names[3] = {"a4", "a5", "a6"};
  for (int t = 0; t < 3; ++t) {
    const CatalogEntry& e = catalog_entry(names[t]);
    Int deg = kanev_degree(e.orbit);
    CHECK(deg == Int(expected_deg[t]));
    // 1 - d((w,w) + 1), derived from the degrees of the three
    // correspondences in the master identity.
    Rat closed = Rat(1) - Rat(Int(e.orbit.size()), 1) * (e.orbit.ww() + Rat(1));
    CHECK(Rat(deg, 1) == closed);
  }
}

TEST_CASE("exponent") {
  auto a2 = make_rep(2, weyl_a2_gens());
  CHECK(exponent(make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)))) == 1);
  CHECK(exponent(make_orbit(a2, vec2(Rat(1), Rat(1)))) == 6);
  CHECK(exponent(catalog_entry("a4").orbit) == 2);
  CHECK(exponent(catalog_entry("a5").orbit) == 3);
  CHECK(exponent(catalog_entry("a6").orbit) == 4);
  CHECK(exponent(catalog_entry("e6").orbit) == 6);

  // -d(w,w)/n lands on a half-integer for a two-point orbit on a rank-2
  // sign action (a reducible representation, so no theorem protects it).
  auto pm = make_rep(2, {mat_l({{-1, 0}, {0, -1}})});
  Weight w = validate_weight(pm, vec2(Rat(1, 2), Rat(1, 2)));
  auto orbit = weight_orbit(pm, w, InvariantForm(mat_l({{-1, 0}, {0, -1}})));
  CHECK_THROWS_WITH_AS(exponent(orbit), doctest::Contains("NonIntegerExponent"),
                       ValidationError);
}

TEST_CASE("idempotency factor") {
  // Convolution oracle on the group algebra: with c[u] = (w, uw), check
  // sum_u c[u] c[u^-1 k] == f c[k] elementwise, then compare f with the
  // matrix-level fit.
  auto convolution_factor_holds = [](const WeightOrbit& o, const Rat& f) {
    const FiniteMatrixGroup& g = o.group();
    std::vector<Rat> c(g.order());
    for (ElemIdx u = 0; u < static_cast<ElemIdx>(g.order()); ++u)
      c[static_cast<std::size_t>(u)] = o.pair(0, o.point_of(u));
    for (ElemIdx k = 0; k < static_cast<ElemIdx>(g.order()); ++k) {
      Rat acc(0);
      for (ElemIdx u = 0; u < static_cast<ElemIdx>(g.order()); ++u)
        acc = acc + c[static_cast<std::size_t>(u)] *
                        c[static_cast<std::size_t>(g.multiply(g.inverse(u), k))];
      if (acc != f * c[static_cast<std::size_t>(k)]) return false;
    }
    return true;
  };

  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  Rat f = schur_idempotency(fund);
  CHECK(f == Rat(-2));
  CHECK(convolution_factor_holds(fund, f));

  auto root = make_orbit(a2, vec2(Rat(1), Rat(1)));
  Rat fr = schur_idempotency(root);
  CHECK(fr == Rat(-6));
  CHECK(convolution_factor_holds(root, fr));

  QVec half1(1);
  half1[0] = Rat(1, 2);
  auto sign = make_rep(1, {mat_l({{-1}})});
  auto so = make_orbit(sign, half1);
  CHECK(schur_idempotency(so) == Rat(-1));
  CHECK(convolution_factor_holds(so, Rat(-1)));

  // For a scalar commutant the factor has the closed form |G|(w,w)/n.
  Rat closed[3] = {Rat(-4), Rat(-18), Rat(-96)};
  const char* names[3] = {"a4", "a5", "a6"};
  for (int t = 0; t < 3; ++t) {
    const CatalogEntry& e = catalog_entry(names[t]);
    CHECK(schur_idempotency(e.orbit) == closed[t]);
    Int order(static_cast<unsigned long>(e.orbit.group().order()));
    Int n(static_cast<unsigned long>(e.rep.rank()));
    CHECK(closed[t] == Rat(order, 1) * e.orbit.ww() / Rat(n, 1));
  }
  CHECK(convolution_factor_holds(catalog_entry("a4").orbit, Rat(-4)));

  // Reducible action: the fit still exists but the closed form fails,
  // which is exactly the scalar-commutant hypothesis at work.
  auto pm = make_rep(2, {mat_l({{-1, 0}, {0, -1}})});
  Weight w = validate_weight(pm, vec2(Rat(1, 2), Rat(1, 2)));
  auto orbit = weight_orbit(pm, w, InvariantForm(mat_l({{-1, 0}, {0, -1}})));
  Rat fitted = schur_idempotency(orbit);
  CHECK(fitted == Rat(-1));
  CHECK(fitted != Rat(2) * orbit.ww() / Rat(2));
}

TEST_CASE("effective multiplicities") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  auto m = d_effective(fund);
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 0);
  CHECK(m[1] == 1);
  CHECK(m[2] == 1);

  // Pair orbit on four letters: the base pair scores 0, the four pairs
  // meeting it in one letter score 1, the complement scores 2.
  const CatalogEntry& a4 = catalog_entry("a4");
  auto m4 = d_effective(a4.orbit);
  int zeros = 0, ones = 0, twos = 0;
  for (const Int& v : m4) {
    if (v == 0) ++zeros;
    if (v == 1) ++ones;
    if (v == 2) ++twos;
  }
  CHECK(zeros == 1);
  CHECK(ones == 4);
  CHECK(twos == 1);

  // Positivity off the base point, for every instance here: the pairing
  // against a distinct orbit point strictly exceeds (w,w).
  for (const char* name : {"a4", "a5", "a6", "a7"}) {
    auto mm = d_effective(catalog_entry(name).orbit);
    CHECK(mm[0] == 0);
    for (std::size_t p = 1; p < mm.size(); ++p) CHECK(mm[p] > 0);
  }
}

TEST_CASE("schur coefficients are the base-point pairings") {
  auto a2 = make_rep(2, weyl_a2_gens());
  auto fund = make_orbit(a2, vec2(Rat(2, 3), Rat(1, 3)));
  auto c = schur_coefficients(fund);
  REQUIRE(c.size() == 3);
  CHECK(c[0] == Rat(-2, 3));
  CHECK(c[1] == Rat(1, 3));
  CHECK(c[2] == Rat(1, 3));
}
