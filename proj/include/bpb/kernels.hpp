#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace bpb {

class ComplexMatrix;

namespace kernels {

using Complex = std::complex<double>;

/// Runtime switch between the OpenMP kernels and their serial reference
/// twins. Both variants of every kernel produce bit-identical output, so
/// flipping this only changes wall time.
bool parallel_enabled();
void set_parallel_enabled(bool on);

// ---- dense matrix product, row-major n x n ----
void matmul_serial(const Complex* a, const Complex* b, Complex* c, std::size_t n);
void matmul_parallel(const Complex* a, const Complex* b, Complex* c, std::size_t n);
void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t n);

// ---- extreme eigenvalues of a Hermitian matrix ----
// Householder tridiagonalization followed by Sturm bisection. Only the
// eigenvalue is produced; eigenvectors go through the full Jacobi solver.
struct HermitianWorkspace {
  std::vector<Complex> a;       // working copy of the matrix
  std::vector<Complex> hv;      // Householder vector
  std::vector<Complex> pv, qv;  // update intermediates
  std::vector<double> diag, offsq;
};

double lambda_max_tridiag(const Complex* h, std::size_t n, HermitianWorkspace& ws);
double lambda_min_tridiag(const Complex* h, std::size_t n, HermitianWorkspace& ws);

// ---- numerical-radius angle profile ----
// out[k] = lambda_max(cos(angles[k]) * hr - sin(angles[k]) * hi), where
// hr and hi are the Hermitian and (i-scaled) skew parts of an operator.
void radius_profile_serial(const ComplexMatrix& hr, const ComplexMatrix& hi,
                           std::span<const double> angles, double* out);
void radius_profile_parallel(const ComplexMatrix& hr, const ComplexMatrix& hi,
                             std::span<const double> angles, double* out);
void radius_profile(const ComplexMatrix& hr, const ComplexMatrix& hi,
                    std::span<const double> angles, double* out);

// ---- grid scans for the brute-force oracles ----
// Maximum of fn over [0, count) with the lowest attaining index; ties and
// traversal order are fixed so serial and parallel agree bit for bit.
struct ScanBest {
  double value;
  std::size_t index;
};
ScanBest scan_max_serial(std::size_t count, const std::function<double(std::size_t)>& fn);
ScanBest scan_max_parallel(std::size_t count, const std::function<double(std::size_t)>& fn);
ScanBest scan_max(std::size_t count, const std::function<double(std::size_t)>& fn);

}  // namespace kernels
}  // namespace bpb
