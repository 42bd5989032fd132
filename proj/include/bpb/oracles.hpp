#pragma once

#include "bpb/complex_matrix.hpp"

namespace bpb {

/// Brute-force sphere maxima for dims 1-3: a deterministic grid over the
/// phase-quotiented unit sphere followed by compass-search refinement.
/// Denser grids (higher density) contain the coarser ones, so the values
/// are monotone in density. Throws DimTooLarge above dim 3.
double brute_force_norm(const ComplexMatrix& t, int density = 1);
double brute_force_radius(const ComplexMatrix& t, int density = 1);

}  // namespace bpb
