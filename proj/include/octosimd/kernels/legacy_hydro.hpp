#pragma once

// Straight-line scalar hydro kernels that do not go through the SIMD layer:
// plain doubles and if/else instead of masks. Same numerics and operation
// order as the SIMD kernels, kept as the pre-vectorization comparison point.

#include <cstddef>

#include "octosimd/kernels/hydro.hpp"

namespace octosimd::kernels::legacy {

void reconstruct(const grid::SubGrid& sub, const HydroConfig& cfg, QuadratureField& out, std::size_t begin,
                 std::size_t end);

double flux(const grid::SubGrid& sub, const QuadratureField& q, const HydroConfig& cfg, FaceFluxes& out,
            std::size_t begin, std::size_t end);

}  // namespace octosimd::kernels::legacy
