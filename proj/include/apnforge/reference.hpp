// Straightforward serial implementations kept as test oracles and as the
// baseline in bench/.  They share no code with the kernels beyond field
// arithmetic and polynomial evaluation.
#pragma once

#include <cstdint>
#include <vector>

#include "apnforge/apn.hpp"
#include "apnforge/surface.hpp"

namespace apnforge::reference {

/// Full DDT, ddt[a][b] = #{x : f(x) + f(x+a) = b}.
std::vector<std::vector<std::uint32_t>> ddt(const Field& f, const FuncTable& table);

/// Same contract (and witness rule) as apnforge::differential_uniformity.
DeltaReport differential_uniformity(const Field& f, const FuncTable& table);

/// Triple loop, evaluating the polynomial at every point.
std::uint64_t count_affine_zeros(const Field& f, const TriPoly& s);

/// Enumerates normalized points of P^3(F_q).
std::uint64_t count_projective_zeros(const Field& f, const TriPolyHom& F);

/// Points at infinity from the line decomposition: the four lines
/// x0 x1 x2 (x0+x1+x2) = 0 of the plane z = 0 (4q - 2 points, general
/// position) plus the points of the top-degree part of phi off those lines.
std::uint64_t count_infinity_by_decomposition(const Field& f, const SparsePoly& g);

/// All normalized points of P^3(F_q) where F and its partials vanish.
std::vector<ProjPoint> enumerate_singular(const Field& f, const TriPolyHom& F);

}  // namespace apnforge::reference
