#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"

namespace bpb {

/// Finite resolution of the identity for a normal matrix: distinct
/// eigenvalues paired with the orthogonal projections onto their
/// eigenspaces. The projections are mutually orthogonal and sum to Id.
struct SpectralMeasure {
  struct Point {
    Complex eigenvalue;
    ComplexMatrix projection;
  };
  std::vector<Point> points;
  std::size_t dim = 0;
};

/// Membership test for a set of spectral values, with a label for
/// diagnostics. Predicates must be total and deterministic.
struct SpectralRegion {
  std::function<bool(Complex)> contains;
  std::string label;

  static SpectralRegion full();
  static SpectralRegion empty();
  static SpectralRegion complement(const SpectralRegion& r);
  /// { z : Re z > c } — meaningful when the operator's class guarantees a
  /// real spectrum; callers gate on the class before using it.
  static SpectralRegion real_above(double c);
  static SpectralRegion abs_above(double r);     // { z : |z| > r }
  static SpectralRegion abs_at_most(double r);   // { z : |z| <= r }
};

/// Eigenvalue clustering tolerance used when grouping spectral points.
double spectral_grouping_tol(const ComplexMatrix& t);

/// Resolution of the identity of a normal matrix. Eigenvalues closer than
/// the grouping tolerance are merged into one projection.
SpectralMeasure normal_spectral_measure(const ComplexMatrix& t);

/// sum_j f(lambda_j) P_j.
ComplexMatrix apply_borel_function(const SpectralMeasure& e,
                                   const std::function<Complex(Complex)>& f);

/// sum over eigenvalues inside the region of P_j; a self-adjoint projection.
ComplexMatrix spectral_projection(const SpectralMeasure& e, const SpectralRegion& region);

/// sum over eigenvalues inside the region of f(lambda_j) P_j.
ComplexMatrix region_truncation(const SpectralMeasure& e, const SpectralRegion& region,
                                const std::function<Complex(Complex)>& f);

/// Polar factors of a normal matrix through its spectral measure:
/// U = g(T) with g(z) = z/|z| (g(0) = 1), modulus = |T|; U and |T| commute.
PolarFactors normal_polar(const ComplexMatrix& t);

}  // namespace bpb
