#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "bpb/errors.hpp"

namespace bpb {

using Complex = std::complex<double>;

/// Dense square matrix over the complex field, row-major storage.
/// All operators on C^n in this library live in this type.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) fail(ErrorCode::InvalidArgument, "matrix dimension must be >= 1");
  }
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> values);

  static ComplexMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  Complex* data() noexcept { return entries_.data(); }
  const Complex* data() const noexcept { return entries_.data(); }

  bool all_finite() const noexcept;

  std::vector<Complex> apply(const std::vector<Complex>& v) const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix adjoint(const ComplexMatrix& m);
double frobenius_norm(const ComplexMatrix& m);
Complex trace(const ComplexMatrix& m);

using ComplexVector = std::vector<Complex>;

/// <u, v> = sum_i u_i * conj(v_i); linear in the first argument.
Complex inner(const ComplexVector& u, const ComplexVector& v);
double vec_norm(const ComplexVector& v);
/// u * v^adj as an operator: (outer(u,v)) w = <w, v> u.
ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);

/// Unit vector on the sphere of C^n; construction rejects vectors whose
/// norm strays from 1 by more than 1e-12.
class UnitVector {
 public:
  explicit UnitVector(ComplexVector entries);
  static UnitVector normalized(ComplexVector entries);
  static UnitVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return entries_.size(); }
  const ComplexVector& entries() const noexcept { return entries_; }
  const Complex& operator[](std::size_t i) const { return entries_[i]; }

 private:
  ComplexVector entries_;
};

double distance(const UnitVector& a, const UnitVector& b);
Complex inner(const UnitVector& u, const UnitVector& v);
/// <T x, x> for unit x.
Complex quadratic_form(const ComplexMatrix& m, const UnitVector& x);

}  // namespace bpb
