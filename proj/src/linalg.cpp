#include "ptv/linalg.hpp"

#include <sstream>
#include <utility>

namespace ptv {

bool QVec::is_zero() const {
  for (const Rat& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

bool QVec::is_integral() const {
  for (const Rat& x : e_)
    if (!x.is_integer()) return false;
  return true;
}

std::string QVec::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) os << ' ';
    os << e_[i].str();
  }
  return os.str();
}

bool QVec::lex_less(const QVec& a, const QVec& b) {
  if (a.dim() != b.dim())
    throw ValidationError("DimensionMismatch", "comparing vectors of different dimension");
  for (int i = 0; i < a.dim(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

static void require_same_dim(const QVec& a, const QVec& b, const char* what) {
  if (a.dim() != b.dim())
    throw ValidationError("DimensionMismatch", std::string(what) + ": " +
                                                   std::to_string(a.dim()) + " vs " +
                                                   std::to_string(b.dim()));
}

QVec operator+(const QVec& a, const QVec& b) {
  require_same_dim(a, b, "vector sum");
  QVec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  require_same_dim(a, b, "vector difference");
  QVec r(a.dim());
  for (int i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator*(const Rat& c, const QVec& v) {
  QVec r(v.dim());
  for (int i = 0; i < v.dim(); ++i) r[i] = c * v[i];
  return r;
}

Rat dot(const QVec& a, const QVec& b) {
  require_same_dim(a, b, "dot product");
  Rat s;
  for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
  return s;
}

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
  return m;
}

QMat QMat::from_rows(const std::vector<std::vector<Rat>>& rows) {
  if (rows.empty()) return QMat();
  QMat m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows(); ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.cols())
      throw ValidationError("DimensionMismatch", "ragged rows in matrix literal");
    for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

QMat QMat::transpose() const {
  QMat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t.at(j, i) = at(i, j);
  return t;
}

bool QMat::is_integral() const {
  for (const Rat& x : e_)
    if (!x.is_integer()) return false;
  return true;
}

bool QMat::is_symmetric() const {
  if (!is_square()) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = i + 1; j < c_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool QMat::is_zero() const {
  for (const Rat& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

std::string QMat::key() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) os << ' ';
    os << e_[i].str();
  }
  return os.str();
}

QMat mat_mul(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows())
    throw ValidationError("DimensionMismatch", "matrix product " + std::to_string(a.rows()) + "x" +
                                                   std::to_string(a.cols()) + " * " +
                                                   std::to_string(b.rows()) + "x" +
                                                   std::to_string(b.cols()));
  QMat r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Rat& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols(); ++j) {
        const Rat& bkj = b.at(k, j);
        if (!bkj.is_zero()) r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

QMat operator*(const QMat& a, const QMat& b) { return mat_mul(a, b); }

QVec operator*(const QMat& m, const QVec& v) {
  if (m.cols() != v.dim())
    throw ValidationError("DimensionMismatch", "matrix-vector product");
  QVec r(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Rat s;
    for (int j = 0; j < m.cols(); ++j) s += m.at(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

static void require_same_shape(const QMat& a, const QMat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ValidationError("DimensionMismatch", what);
}

QMat operator+(const QMat& a, const QMat& b) {
  require_same_shape(a, b, "matrix sum");
  QMat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
  return r;
}

QMat operator-(const QMat& a, const QMat& b) {
  require_same_shape(a, b, "matrix difference");
  QMat r(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
  return r;
}

QMat operator*(const Rat& c, const QMat& m) {
  QMat r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.at(i, j) = c * m.at(i, j);
  return r;
}

namespace {

// In-place Gaussian elimination to row echelon form. Returns the rank;
// if `det` is non-null the matrix must be square and *det receives the
// determinant (product of pivots, sign-adjusted for row swaps).
int echelon(std::vector<std::vector<Rat>>& m, Rat* det) {
  const int nr = static_cast<int>(m.size());
  const int nc = nr ? static_cast<int>(m[0].size()) : 0;
  int row = 0;
  int swaps = 0;
  for (int col = 0; col < nc && row < nr; ++col) {
    int piv = -1;
    for (int i = row; i < nr; ++i)
      if (!m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row) {
      std::swap(m[static_cast<std::size_t>(piv)], m[static_cast<std::size_t>(row)]);
      ++swaps;
    }
    const Rat& p = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    for (int i = row + 1; i < nr; ++i) {
      Rat f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)] / p;
      if (f.is_zero()) continue;
      for (int j = col; j < nc; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)];
    }
    ++row;
  }
  if (det) {
    Rat d(1);
    if (row < nr) {
      d = Rat(0);
    } else {
      for (int i = 0; i < nr; ++i) d *= m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      if (swaps % 2) d = -d;
    }
    *det = d;
  }
  return row;
}

std::vector<std::vector<Rat>> to_rows(const QMat& m) {
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(m.rows()));
  for (int i = 0; i < m.rows(); ++i) {
    rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.cols()));
    for (int j = 0; j < m.cols(); ++j)
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
  }
  return rows;
}

Rat leading_minor_det(const QMat& m, int k) {
  std::vector<std::vector<Rat>> rows(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
  }
  Rat d;
  echelon(rows, &d);
  return d;
}

}  // namespace

int rank(const QMat& m) {
  auto rows = to_rows(m);
  return echelon(rows, nullptr);
}

int nullspace_dim(const QMat& m) { return m.cols() - rank(m); }

QMat inverse(const QMat& m) {
  if (!m.is_square()) throw ValidationError("DimensionMismatch", "inverse of non-square matrix");
  const int n = m.rows();
  // Gauss-Jordan on [m | I].
  std::vector<std::vector<Rat>> a(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(2 * n));
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m.at(i, j);
    a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + i)] = Rat(1);
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)].is_zero()) { piv = i; break; }
    if (piv < 0) throw ValidationError("SingularMatrix", "matrix is not invertible");
    std::swap(a[static_cast<std::size_t>(piv)], a[static_cast<std::size_t>(col)]);
    Rat p = a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int j = 0; j < 2 * n; ++j) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= p;
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      Rat f = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (int j = 0; j < 2 * n; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
    }
  }
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(n + j)];
  return inv;
}

bool is_negative_definite(const QMat& m) {
  if (!m.is_square()) throw ValidationError("DimensionMismatch", "definiteness of non-square matrix");
  if (!m.is_symmetric()) throw ValidationError("NotSymmetric", "definiteness test requires a symmetric matrix");
  for (int k = 1; k <= m.rows(); ++k) {
    Rat d = leading_minor_det(m, k);
    int want = (k % 2) ? -1 : 1;
    if (d.sign() != want) return false;
  }
  return true;
}

Rat primitive_scale(const QVec& v) {
  if (v.is_zero()) throw ValidationError("ZeroVector", "primitive scale of the zero vector");
  Int l(1);
  for (int i = 0; i < v.dim(); ++i) l = lcm(l, v[i].den());
  Int g(0);
  for (int i = 0; i < v.dim(); ++i) {
    Int u = v[i].num() * (l / v[i].den());
    g = gcd(g, u);
  }
  return Rat(l, g);  // g > 0 since v != 0
}

}  // namespace ptv
