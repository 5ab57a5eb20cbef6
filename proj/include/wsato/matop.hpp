#pragma once

#include <vector>

#include "wsato/psdo.hpp"
#include "wsato/superpoly.hpp"

namespace wsato {

// Matrix pseudo-differential operator over a parity-graded index set.
// Entries are scalar PSDOs; the evenness convention is that every
// coefficient of entry (i,j) has parity p(i)+p(j)+parity(matrix).
class MatPSDO {
 public:
  MatPSDO() = default;
  MatPSDO(IndexSet rows, IndexSet cols, Parity parity = 0);

  static MatPSDO zero(const IndexSet& I) { return MatPSDO(I, I); }
  static MatPSDO identity(const IndexSet& I);
  // The matrix 1*d^k.
  static MatPSDO d_matrix(const IndexSet& I, int k = 1);

  const IndexSet& rows() const { return rows_; }
  const IndexSet& cols() const { return cols_; }
  Parity parity() const { return parity_; }
  bool square() const { return rows_ == cols_; }

  // Position-based access (0-based).
  Psdo& at(int r, int c) { return entries_[static_cast<size_t>(r * cols_.size() + c)]; }
  const Psdo& at(int r, int c) const {
    return entries_[static_cast<size_t>(r * cols_.size() + c)];
  }

  bool is_zero() const;
  // Max entry order; throws when zero.
  int order() const;
  // Coefficient at d^N is the identity and no entry exceeds order N.
  bool is_monic(int N) const;

  // Entrywise coefficient of d^k as an order-0 matrix.
  MatPSDO coeff_matrix(int k) const;

  MatPSDO operator-() const;
  MatPSDO& operator+=(const MatPSDO& o);
  MatPSDO& operator-=(const MatPSDO& o);
  friend MatPSDO operator+(MatPSDO a, const MatPSDO& b) { return a += b; }
  friend MatPSDO operator-(MatPSDO a, const MatPSDO& b) { return a -= b; }
  friend MatPSDO operator*(const Scalar& s, MatPSDO m);
  friend bool operator==(const MatPSDO& a, const MatPSDO& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  // Applies d entrywise (derivation of coefficients only).
  MatPSDO d_of() const;

  void set_floor_all(Floor f);
  // True when every coefficient of every entry respects the evenness
  // convention for this matrix's parity.
  bool evenness_ok() const;

  std::string str() const;

 private:
  IndexSet rows_, cols_;
  Parity parity_ = 0;
  std::vector<Psdo> entries_;
};

// (A o B)_{ij} = sum_t (-1)^{(t+j)(i+t+pA)} A_{it} o B_{tj}.
MatPSDO mat_circ_mul(const MatPSDO& A, const MatPSDO& B, Floor trunc = std::nullopt);
// (A * B)_{ij} = sum_t (-1)^{(t+j) pA} A_{it} o B_{tj}; no sign for even A.
MatPSDO mat_star_mul(const MatPSDO& A, const MatPSDO& B, Floor trunc = std::nullopt);

// str(e_ii ox f) = (-1)^i f summed over the diagonal.
Psdo supertrace(const MatPSDO& A);

// Power with respect to a product.
MatPSDO mat_circ_pow(const MatPSDO& A, int n, Floor trunc = std::nullopt);

// Unique *-inverse of a monic operator of order N >= 0, via the Neumann
// series. The result floor is <= -depth; when the series terminates with
// exact operands (unipotent case) the result is exact.
MatPSDO star_inverse_monic(const MatPSDO& A, int depth);
// Same for the o-product.
MatPSDO circ_inverse_monic(const MatPSDO& A, int depth);

// Unique o-root B with B^{oN} = A, monic of order one, computed down to
// exponent -depth.
MatPSDO circ_root(const MatPSDO& A, int N, int depth);
// Cache-backed variants (roots and monic inverses are unique, so deeper
// results serve shallower requests by restriction).
MatPSDO circ_root_cached(const MatPSDO& A, int N, int depth);
MatPSDO circ_inverse_monic_cached(const MatPSDO& A, int depth);

// Fractional power A^{k/N} for integer k (negative allowed), via the root
// and the monic o-inverse.
MatPSDO circ_frac_power(const MatPSDO& A, int k, int N, int depth);

// Rows J, columns K, by ids; J and K must have matching parity profiles.
MatPSDO submatrix(const MatPSDO& A, const std::vector<int>& J,
                  const std::vector<int>& K);

// |A|_{JK} = A_{JK} - A_{JK^c} * (A_{J^cK^c})^inv * A_{J^cK}.
MatPSDO quasi_determinant(const MatPSDO& A, const std::vector<int>& J,
                          const std::vector<int>& K, int depth);

// Equality of all coefficients trusted by both sides.
bool equal_within_floors(const MatPSDO& A, const MatPSDO& B);
bool is_zero_within_floors(const MatPSDO& A);

}  // namespace wsato
