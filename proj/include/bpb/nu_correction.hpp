#pragma once

#include <optional>
#include <vector>

#include "bpb/certificate.hpp"
#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"

namespace bpb {

/// An almost-radius-attaining instance: nu(T) = 1 (pre-normalized) and
/// |<T x0, x0>| above the class threshold; see nu_threshold.
struct NuCorrectionRequest {
  ComplexMatrix input;
  UnitVector point;
  double epsilon = 0.0;
  OperatorClass op_class = OperatorClass::General;
  std::optional<double> schatten_p;
  bool target_point_exact = false;
  /// Admissibility modulus for the rank-one iteration classes; defaults to
  /// epsilon^2 / 16 when unset.
  std::optional<double> eta_override;
  double stop_tol = 1e-9;
  int max_steps = 40;

  NuCorrectionRequest(ComplexMatrix t, UnitVector x0, double eps, OperatorClass c)
      : input(std::move(t)), point(std::move(x0)), epsilon(eps), op_class(c) {}
};

/// |<T x0, x0>| must exceed this for the class to accept the instance.
double nu_threshold(OperatorClass c, double epsilon, std::optional<double> eta_override);

/// One recorded step of the rank-one perturbation scheme.
struct IterationStep {
  UnitVector witness;
  Complex alpha;  // unimodular bump coefficient; 1 on the positive path
  double nu;      // nu(T_n) after the bump
};

struct IterationTrace {
  std::vector<IterationStep> steps;
  bool converged = false;
};

struct NuIterateResult {
  ComplexMatrix t_inf;
  UnitVector x_inf;
  double nu_inf = 0.0;
  IterationTrace trace;
};

/// Rank-one perturbation scheme: adds alpha_n (eps/4)^n <., x_n> x_n bumps
/// at ascent witnesses until the witness attains nu(T_n) within stop_tol.
NuIterateResult nu_iterate(const NuCorrectionRequest& req);

struct NuCorrectionResult {
  ComplexMatrix corrected;
  UnitVector attain_point;
  CorrectionCertificate certificate;
  IterationTrace trace;
  /// |e^{i theta} - 1| from the self-adjoint phase alignment; 0 elsewhere.
  double phase_misalignment = 0.0;
  /// the almost-attainment threshold that was actually enforced
  double precondition_threshold = 0.0;
};

/// General / Positive / SchattenP classes: normalize the iteration limit.
NuCorrectionResult nu_correct(const NuCorrectionRequest& req);
/// SelfAdjoint (and AntiSymmetric via i*T): phase-align then symmetrize.
NuCorrectionResult nu_correct_selfadjoint(const NuCorrectionRequest& req);
/// Unitary: rotate T x0 onto the aligned phase ray; attains at x0 itself.
NuCorrectionResult nu_correct_unitary(const NuCorrectionRequest& req);
/// Normal: spectral surgery S = R* N1 + N2 on the annulus |z| > 1-sqrt(2 eps).
NuCorrectionResult nu_correct_normal(const NuCorrectionRequest& req);

/// Routes to the class-appropriate corrector.
NuCorrectionResult nu_correct_any(const NuCorrectionRequest& req);

}  // namespace bpb
