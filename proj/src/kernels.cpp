#include "bpb/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bpb/complex_matrix.hpp"

namespace bpb::kernels {

namespace {
std::atomic<bool> g_parallel{true};

constexpr std::size_t kMatmulParallelCutoff = 64;
}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel_enabled(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

// ----------------------------------------------------------------------
// matmul
// ----------------------------------------------------------------------

namespace {
inline void matmul_row(const Complex* a, const Complex* b, Complex* c, std::size_t n,
                       std::size_t i) {
  Complex* crow = c + i * n;
  std::fill(crow, crow + n, Complex(0.0));
  const Complex* arow = a + i * n;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex aik = arow[k];
    const Complex* brow = b + k * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
  }
}
}  // namespace

void matmul_serial(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) matmul_row(a, b, c, n, i);
}

void matmul_parallel(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i) matmul_row(a, b, c, n, i);
}

void matmul(const Complex* a, const Complex* b, Complex* c, std::size_t n) {
  if (parallel_enabled() && n >= kMatmulParallelCutoff)
    matmul_parallel(a, b, c, n);
  else
    matmul_serial(a, b, c, n);
}

// ----------------------------------------------------------------------
// Hermitian extreme eigenvalues: tridiagonalize, then Sturm bisection
// ----------------------------------------------------------------------

namespace {

// Reduces the Hermitian matrix held in ws.a to real symmetric tridiagonal
// form (ws.diag, ws.offsq = squared off-diagonal magnitudes). Off-diagonal
// phases do not affect the spectrum, so only magnitudes are kept.
void tridiagonalize(std::size_t n, HermitianWorkspace& ws) {
  ws.diag.resize(n);
  ws.offsq.assign(n > 1 ? n - 1 : 0, 0.0);
  Complex* a = ws.a.data();
  ws.hv.resize(n);
  ws.pv.resize(n);
  ws.qv.resize(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t m = n - k - 1;  // trailing block size
    Complex* v = ws.hv.data();
    double colnorm_sq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      v[i] = a[(k + 1 + i) * n + k];
      colnorm_sq += std::norm(v[i]);
    }
    const double sigma = std::sqrt(colnorm_sq);
    ws.offsq[k] = colnorm_sq;
    if (sigma == 0.0) continue;

    const Complex head = v[0];
    const Complex phase = (head == Complex(0.0)) ? Complex(1.0) : head / std::abs(head);
    v[0] += phase * sigma;
    const double vnorm_sq = colnorm_sq + 2.0 * std::abs(head) * sigma + sigma * sigma;
    if (vnorm_sq == 0.0) continue;
    const double tau = 2.0 / vnorm_sq;

    // p = tau * H v over the trailing block
    Complex* p = ws.pv.data();
    for (std::size_t i = 0; i < m; ++i) {
      const Complex* row = a + (k + 1 + i) * n + (k + 1);
      Complex s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += row[j] * v[j];
      p[i] = tau * s;
    }
    // q = p - (tau/2) (v^adj p) v
    Complex vp = 0.0;
    for (std::size_t i = 0; i < m; ++i) vp += std::conj(v[i]) * p[i];
    const Complex kappa = 0.5 * tau * vp;
    Complex* q = ws.qv.data();
    for (std::size_t i = 0; i < m; ++i) q[i] = p[i] - kappa * v[i];
    // H <- H - q v^adj - v q^adj
    for (std::size_t i = 0; i < m; ++i) {
      Complex* row = a + (k + 1 + i) * n + (k + 1);
      const Complex qi = q[i];
      const Complex vi = v[i];
      for (std::size_t j = 0; j < m; ++j)
        row[j] -= qi * std::conj(v[j]) + vi * std::conj(q[j]);
    }
  }
  if (n > 1) {
    const Complex sub = a[(n - 1) * n + (n - 2)];
    ws.offsq[n - 2] = std::norm(sub);
  }
  for (std::size_t i = 0; i < n; ++i) ws.diag[i] = a[i * n + i].real();
}

// Number of eigenvalues of the tridiagonal below x (Sturm count).
int count_below(const std::vector<double>& d, const std::vector<double>& e2, double x) {
  const std::size_t n = d.size();
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    double denom = q;
    if (std::abs(denom) < 1e-300) denom = (denom < 0.0) ? -1e-300 : 1e-300;
    q = d[i] - x - e2[i - 1] / denom;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_extreme(const std::vector<double>& d, const std::vector<double>& e2, bool want_max) {
  const std::size_t n = d.size();
  if (n == 1) return d[0];
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double left = (i > 0) ? std::sqrt(e2[i - 1]) : 0.0;
    const double right = (i + 1 < n) ? std::sqrt(e2[i]) : 0.0;
    lo = std::min(lo, d[i] - left - right);
    hi = std::max(hi, d[i] + left + right);
  }
  const int target = want_max ? static_cast<int>(n) : 1;
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-30});
  for (int iter = 0; iter < 80 && (hi - lo) > 1e-16 * scale; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (count_below(d, e2, mid) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

void load_symmetrized(const Complex* h, std::size_t n, HermitianWorkspace& ws) {
  ws.a.resize(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      ws.a[i * n + j] = 0.5 * (h[i * n + j] + std::conj(h[j * n + i]));
}

}  // namespace

double lambda_max_tridiag(const Complex* h, std::size_t n, HermitianWorkspace& ws) {
  if (n == 1) return h[0].real();
  load_symmetrized(h, n, ws);
  tridiagonalize(n, ws);
  return bisect_extreme(ws.diag, ws.offsq, /*want_max=*/true);
}

double lambda_min_tridiag(const Complex* h, std::size_t n, HermitianWorkspace& ws) {
  if (n == 1) return h[0].real();
  load_symmetrized(h, n, ws);
  tridiagonalize(n, ws);
  return bisect_extreme(ws.diag, ws.offsq, /*want_max=*/false);
}

// ----------------------------------------------------------------------
// numerical-radius angle profile
// ----------------------------------------------------------------------

namespace {
double profile_point(const ComplexMatrix& hr, const ComplexMatrix& hi, double angle,
                     std::vector<Complex>& scratch, HermitianWorkspace& ws) {
  const std::size_t n = hr.dim();
  const double c = std::cos(angle), s = std::sin(angle);
  scratch.resize(n * n);
  const Complex* r = hr.data();
  const Complex* im = hi.data();
  for (std::size_t k = 0; k < n * n; ++k) scratch[k] = c * r[k] - s * im[k];
  return lambda_max_tridiag(scratch.data(), n, ws);
}
}  // namespace

void radius_profile_serial(const ComplexMatrix& hr, const ComplexMatrix& hi,
                           std::span<const double> angles, double* out) {
  std::vector<Complex> scratch;
  HermitianWorkspace ws;
  for (std::size_t k = 0; k < angles.size(); ++k)
    out[k] = profile_point(hr, hi, angles[k], scratch, ws);
}

void radius_profile_parallel(const ComplexMatrix& hr, const ComplexMatrix& hi,
                             std::span<const double> angles, double* out) {
#pragma omp parallel
  {
    std::vector<Complex> scratch;
    HermitianWorkspace ws;
#pragma omp for schedule(static)
    for (std::size_t k = 0; k < angles.size(); ++k)
      out[k] = profile_point(hr, hi, angles[k], scratch, ws);
  }
}

void radius_profile(const ComplexMatrix& hr, const ComplexMatrix& hi,
                    std::span<const double> angles, double* out) {
  if (parallel_enabled() && angles.size() > 1)
    radius_profile_parallel(hr, hi, angles, out);
  else
    radius_profile_serial(hr, hi, angles, out);
}

// ----------------------------------------------------------------------
// grid scans
// ----------------------------------------------------------------------

ScanBest scan_max_serial(std::size_t count, const std::function<double(std::size_t)>& fn) {
  ScanBest best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < count; ++i) {
    const double v = fn(i);
    if (v > best.value) best = {v, i};
  }
  return best;
}

ScanBest scan_max_parallel(std::size_t count, const std::function<double(std::size_t)>& fn) {
  std::vector<ScanBest> locals;
#pragma omp parallel
  {
#ifdef _OPENMP
    const int team = omp_get_num_threads();
    const int t = omp_get_thread_num();
#else
    const int team = 1;
    const int t = 0;
#endif
#pragma omp single
    locals.assign(team, {-std::numeric_limits<double>::infinity(), 0});
    const std::size_t chunk = (count + team - 1) / team;
    const std::size_t begin = std::min(count, chunk * static_cast<std::size_t>(t));
    const std::size_t end = std::min(count, begin + chunk);
    ScanBest local{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = begin; i < end; ++i) {
      const double v = fn(i);
      if (v > local.value) local = {v, i};
    }
    locals[t] = local;
  }
  // merge in ascending index-range order; strict > keeps the lowest
  // attaining index, so the outcome is independent of the team size
  ScanBest best{-std::numeric_limits<double>::infinity(), 0};
  for (const ScanBest& local : locals)
    if (local.value > best.value) best = local;
  return best;
}

ScanBest scan_max(std::size_t count, const std::function<double(std::size_t)>& fn) {
  if (parallel_enabled() && count >= 4096) return scan_max_parallel(count, fn);
  return scan_max_serial(count, fn);
}

}  // namespace bpb::kernels
