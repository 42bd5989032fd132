#pragma once

#include <functional>
#include <optional>

#include "bpb/certificate.hpp"
#include "bpb/complex_matrix.hpp"
#include "bpb/linalg.hpp"

namespace bpb {

/// An almost-norm-attaining instance: ||T|| = 1 (pre-normalized) and
/// ||T x0|| > 1 - epsilon^2/4.
struct NormCorrectionRequest {
  ComplexMatrix input;
  UnitVector point;
  double epsilon = 0.0;
  OperatorClass op_class = OperatorClass::General;
  std::optional<double> schatten_p;
  bool target_point_exact = false;

  NormCorrectionRequest(ComplexMatrix t, UnitVector x0, double eps, OperatorClass c)
      : input(std::move(t)), point(std::move(x0)), epsilon(eps), op_class(c) {}
};

struct NormCorrectionResult {
  ComplexMatrix corrected;
  UnitVector attain_point;
  CorrectionCertificate certificate;
};

/// The scalar truncation profile: 1 on [0, 1-eps], 1/t above. Boundary
/// values stay on the identity branch.
std::function<double(double)> truncation_function(double epsilon);

/// Positive operators: spectral cut R = E(A) + trunc_B(z), attaining at
/// x1 = E(A)x0 / ||E(A)x0|| with ||R - T|| < eps and ||x1 - x0|| < 4 sqrt(eps).
NormCorrectionResult norm_correct_positive(const NormCorrectionRequest& req);

/// Any supported class via the polar route S = U |T| f(|T|); unitary inputs
/// are returned unchanged, anti-symmetric ones run through i*T. With
/// target_point_exact the result is conjugated to attain at x0 itself.
NormCorrectionResult norm_correct(const NormCorrectionRequest& req);

/// Schatten refinement: composes the corrected operator with the rotation
/// x0 -> x1 so it attains at x0, with sigma_p(S~ - T) under the M-dependent
/// bound. m_bound must dominate sigma_p(T).
NormCorrectionResult norm_correct_schatten(const NormCorrectionRequest& req, double m_bound);

}  // namespace bpb
