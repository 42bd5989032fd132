#pragma once

#include "bpb/complex_matrix.hpp"

namespace bpb {

/// Unitary R with R x = y, ||R - Id|| = ||x - y||, acting as the identity
/// on the orthogonal complement of span{x, y}. Fails loudly if the
/// constructed rotation misses the distance identity by more than 1e-8.
ComplexMatrix transitive_isometry(const UnitVector& x, const UnitVector& y);

/// R* T R with R = transitive_isometry(x, y). Preserves norm and numerical
/// radius, moves the evaluation point: <(R*TR) x, x> = <T y, y>.
ComplexMatrix conjugate_transport(const ComplexMatrix& t, const UnitVector& x,
                                  const UnitVector& y);

enum class AttainMode { Norm, Nu };

/// Moves an operator attaining (norm or numerical radius) at x1 to one
/// attaining at x0 by conjugation, at operator-distance cost
/// 2 ||x0 - x1|| ||S~||. Preconditions on S~ are measured and enforced.
ComplexMatrix pointify(const ComplexMatrix& s_tilde, const UnitVector& x1, const UnitVector& x0,
                       AttainMode mode);

}  // namespace bpb
