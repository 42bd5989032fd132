#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bpb/complex_matrix.hpp"

namespace bpb {

/// Eigensystem of a Hermitian matrix: real eigenvalues sorted descending,
/// orthonormal eigenvector columns.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Cyclic complex Jacobi diagonalization. Requires the input to be
/// Hermitian within 1e-8 * max(1, ||A||_F); works on the Hermitian part.
EigenDecomposition hermitian_eig(const ComplexMatrix& a);

ComplexMatrix hermitian_part(const ComplexMatrix& t);       // (T + T*)/2
ComplexMatrix skew_part_hermitian(const ComplexMatrix& t);  // (T - T*)/(2i)

/// T = isometry_part * modulus with modulus = (T*T)^(1/2) positive
/// semidefinite and isometry_part extended to a unitary on ker(T).
struct PolarFactors {
  ComplexMatrix isometry_part;
  ComplexMatrix modulus;
};
PolarFactors polar_decompose(const ComplexMatrix& t);

/// Largest singular value.
double operator_norm(const ComplexMatrix& t);
/// Singular values, descending.
std::vector<double> singular_values(const ComplexMatrix& t);
/// (sum s_j^p)^(1/p); p = infinity gives the operator norm.
double schatten_norm(const ComplexMatrix& t, double p);

double lambda_max_hermitian(const ComplexMatrix& h);
double lambda_min_hermitian(const ComplexMatrix& h);

/// max_theta lambda_max((e^{i theta} T + e^{-i theta} T*)/2) via a 720-angle
/// sweep plus golden-section refinement; the witness is the top eigenvector
/// at the optimal angle, so |<T w, w>| >= value - tol.
struct RadiusResult {
  double value;
  UnitVector witness;
};
RadiusResult numerical_radius(const ComplexMatrix& t, double tol);

/// Same value as numerical_radius, but the witness is grown from `seed` by
/// monotone local ascent and stays in the seed's basin. When that basin is
/// not the global one the witness under-attains the returned value; the
/// rank-one iteration reads that gap and bumps the local branch.
RadiusResult numerical_radius_seeded(const ComplexMatrix& t, double tol, const UnitVector& seed);

/// Numerical-radius value without the witness eigensolve.
double numerical_radius_value(const ComplexMatrix& t, double tol);

enum class OperatorClass {
  General,
  Positive,
  SelfAdjoint,
  AntiSymmetric,
  Unitary,
  Normal,
  SchattenP,
};

const char* class_name(OperatorClass c);
std::optional<OperatorClass> class_from_name(const std::string& name);

bool class_check(const ComplexMatrix& t, OperatorClass c, double tol);
/// 1e-8 * max(1, ||T||), the tolerance the correctors use for membership.
double default_class_tol(const ComplexMatrix& t);

}  // namespace bpb
