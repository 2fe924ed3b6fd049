#include "ptv/correspond.hpp"

#include <algorithm>
#include <cstddef>
#include <string>

namespace ptv {

namespace {

// Pair matrix of the orbit: P[i][j] = (p_i, p_j).
QMat pair_matrix(const WeightOrbit& orbit) {
  const int d = orbit.size();
  QMat p(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Rat v = orbit.pair(i, j);
      p.at(i, j) = v;
      p.at(j, i) = v;
    }
  }
  return p;
}

Rat stab_order_sq(const WeightOrbit& orbit) {
  Int h(static_cast<unsigned long>(orbit.stabilizer().order()));
  return Rat(h * h, 1);
}

} // namespace

std::vector<Rat> schur_coefficients(const WeightOrbit& orbit) {
  std::vector<Rat> c;
  c.reserve(static_cast<std::size_t>(orbit.size()));
  for (int p = 0; p < orbit.size(); ++p) c.push_back(orbit.pair(0, p));
  return c;
}

std::vector<Int> d_effective(const WeightOrbit& orbit) {
  const Rat ww = orbit.ww();
  std::vector<Int> m;
  m.reserve(static_cast<std::size_t>(orbit.size()));
  Int total(0);
  for (int p = 0; p < orbit.size(); ++p) {
    Rat v = orbit.pair(0, p) - ww;
    if (!v.is_integer())
      throw ValidationError("NonIntegerEntry",
                            "effective multiplicity at point " +
                                std::to_string(p) + " is " + v.str());
    m.push_back(v.to_integer());
    total += m.back();
  }
  // Summed over the group each point is hit |H| times, and the pairings of
  // the base weight against a full orbit cancel, leaving -|G| (w, w).
  Int h(static_cast<unsigned long>(orbit.stabilizer().order()));
  Int order(static_cast<unsigned long>(orbit.group().order()));
  Rat expected = Rat(-order, 1) * ww;
  if (Rat(total * h, 1) != expected)
    throw IdentityError("EffectiveSumBroken",
                        "sum of effective multiplicities over the group is " +
                            Rat(total * h, 1).str() + ", expected " +
                            expected.str());
  return m;
}

QMat kanev_matrix(const WeightOrbit& orbit) {
  const int d = orbit.size();
  const Rat shift = orbit.ww() + Rat(1);
  QMat k(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      Rat v = orbit.pair(i, j) - shift;
      if (!v.is_integer())
        throw ValidationError("NonIntegerEntry",
                              "entry (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") is " + v.str());
      k.at(i, j) = v;
    }
  }
  return k;
}

QMat schur_matrix(const WeightOrbit& orbit) {
  const int d = orbit.size();
  const Rat h2 = stab_order_sq(orbit);
  const FiniteMatrixGroup& g = orbit.group();
  QMat s(d, d);
  std::vector<char> seen(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int j = 0; j < d; ++j) {
      ElemIdx prod = g.multiply(orbit.rep(i), orbit.rep(j));
      int col = orbit.point_of(prod);
      if (seen[col])
        throw IdentityError("OrbitIndexMiss",
                            "row " + std::to_string(i) +
                                " hits column " + std::to_string(col) +
                                " twice");
      seen[col] = 1;
      s.at(i, col) = h2 * orbit.pair(0, j);
    }
  }
  return s;
}

QMat master_identity_residual(const QMat& schur, const QMat& kanev,
                              const Rat& ww, std::size_t stab_order) {
  const int d = schur.rows();
  if (kanev.rows() != d || kanev.cols() != d || schur.cols() != d)
    throw ValidationError("DimensionMismatch",
                          "matrices do not share the orbit dimension");
  Int h(static_cast<unsigned long>(stab_order));
  const Rat h2(h * h, 1);
  const Rat target = (ww + Rat(1)) * h2;
  QMat r(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Rat lhs = schur.at(i, j) - h2 * kanev.at(i, j);
      if (i == j) lhs = lhs + h2;
      r.at(i, j) = lhs - target;
    }
  }
  return r;
}

void verify_master_identity(const WeightOrbit& orbit) {
  QMat s = schur_matrix(orbit);
  QMat k = kanev_matrix(orbit);
  QMat r = master_identity_residual(s, k, orbit.ww(),
                                    orbit.stabilizer().order());
  for (int i = 0; i < r.rows(); ++i)
    for (int j = 0; j < r.cols(); ++j)
      if (!r.at(i, j).is_zero())
        throw IdentityError("MasterIdentityViolated",
                            "residual at (" + std::to_string(i) + "," +
                                std::to_string(j) + ") is " + r.at(i, j).str());
}

Int kanev_degree(const WeightOrbit& orbit) {
  QMat k = kanev_matrix(orbit);
  const int d = k.rows();
  Rat first(0);
  for (int i = 0; i < d; ++i) {
    Rat sum(0);
    for (int j = 0; j < d; ++j) sum = sum + k.at(i, j);
    if (i == 0)
      first = sum;
    else if (sum != first)
      throw IdentityError("RowSumMismatch",
                          "row " + std::to_string(i) + " sums to " +
                              sum.str() + ", row 0 sums to " + first.str());
  }
  return first.to_integer();
}

Int exponent(const WeightOrbit& orbit) {
  Int d(static_cast<unsigned long>(orbit.size()));
  Int n(static_cast<unsigned long>(orbit.group().rank()));
  Rat e = Rat(-d, 1) * orbit.ww() / Rat(n, 1);
  if (!e.is_integer() || e.sign() <= 0)
    throw ValidationError("NonIntegerExponent",
                          "-d(w,w)/n = " + e.str() +
                              " is not a positive integer");
  return e.to_integer();
}

Rat schur_idempotency(const WeightOrbit& orbit) {
  QMat p = pair_matrix(orbit);
  Int h(static_cast<unsigned long>(orbit.stabilizer().order()));
  QMat lhs = Rat(h, 1) * (p * p);
  // Fit f from the first nonzero entry of P, then demand it globally.
  const int d = p.rows();
  Rat f(0);
  bool found = false;
  for (int i = 0; i < d && !found; ++i)
    for (int j = 0; j < d && !found; ++j)
      if (!p.at(i, j).is_zero()) {
        f = lhs.at(i, j) / p.at(i, j);
        found = true;
      }
  if (!found)
    throw IdentityError("IdempotencyBroken", "pair matrix is zero");
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (lhs.at(i, j) != f * p.at(i, j))
        throw IdentityError("IdempotencyBroken",
                            "no scalar matches at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  return f;
}

} // namespace ptv
