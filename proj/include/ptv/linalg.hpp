#pragma once

#include <string>
#include <vector>

#include "ptv/rat.hpp"

namespace ptv {

// Dense exact-rational vectors and matrices. Sizes are small (group ranks
// and orbit lengths), so everything is plain row-major storage.

class QVec {
public:
  QVec() = default;
  explicit QVec(int dim) : e_(static_cast<std::size_t>(dim)) {}
  explicit QVec(std::vector<Rat> entries) : e_(std::move(entries)) {}

  int dim() const { return static_cast<int>(e_.size()); }
  Rat& operator[](int i) { return e_[static_cast<std::size_t>(i)]; }
  const Rat& operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  bool is_integral() const;
  std::string str() const;  // space-separated entries

  friend bool operator==(const QVec& a, const QVec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const QVec& a, const QVec& b) { return !(a == b); }

  // Entrywise lexicographic order; used wherever a deterministic point
  // ordering is required.
  static bool lex_less(const QVec& a, const QVec& b);

private:
  std::vector<Rat> e_;
};

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rat& c, const QVec& v);
Rat dot(const QVec& a, const QVec& b);

class QMat {
public:
  QMat() = default;
  QMat(int rows, int cols)
      : r_(rows), c_(cols), e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}
  static QMat identity(int n);
  static QMat from_rows(const std::vector<std::vector<Rat>>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  bool is_square() const { return r_ == c_; }

  Rat& at(int i, int j) { return e_[static_cast<std::size_t>(i) * c_ + j]; }
  const Rat& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * c_ + j]; }

  QMat transpose() const;
  bool is_integral() const;
  bool is_symmetric() const;
  bool is_zero() const;

  // Row-major space-separated entries; lowest-terms strings make this a
  // canonical key for exact-equality hashing.
  std::string key() const;

  friend bool operator==(const QMat& a, const QMat& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.e_ == b.e_;
  }
  friend bool operator!=(const QMat& a, const QMat& b) { return !(a == b); }

private:
  int r_ = 0, c_ = 0;
  std::vector<Rat> e_;
};

QMat mat_mul(const QMat& a, const QMat& b);
QMat operator*(const QMat& a, const QMat& b);
QVec operator*(const QMat& m, const QVec& v);
QMat operator+(const QMat& a, const QMat& b);
QMat operator-(const QMat& a, const QMat& b);
QMat operator*(const Rat& c, const QMat& m);

// Rank over the rationals (fraction-free Bareiss elimination).
int rank(const QMat& m);

int nullspace_dim(const QMat& m);

// Inverse of a square matrix; throws SingularMatrix if rank-deficient.
QMat inverse(const QMat& m);

// Sylvester test on leading principal minors: the k-th minor must have
// sign (-1)^k for a symmetric matrix to be negative definite.
bool is_negative_definite(const QMat& m);

// Smallest positive c such that c*v is an integer vector with coprime
// entries. Throws ZeroVector on v = 0.
Rat primitive_scale(const QVec& v);

}  // namespace ptv
