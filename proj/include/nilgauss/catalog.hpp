#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "nilgauss/surface.hpp"

namespace nilgauss {

// Horizontal leaf z = p_z of the polarized Nil model through p:
// r(u) = (p_x + u1, p_y + u2, p_z). Its Gauss map is (x L + Z)/sqrt(1 + x^2).
SurfaceChart nil_foliation_leaf(const Eigen::Vector3d& point, Box domain);

// r(s, t) = (s, 0, t) in polarized Nil, oriented so that G = L.
SurfaceChart nil_vertical_plane(Box domain);

// r(s, t) = (f1(s), f2(s), t) in polarized Nil. The profile expressions use
// the variable s (or u1). Throws InvalidArgument if the profile speed
// vanishes at a sampled point of the s-range.
SurfaceChart cylinder_chart(const std::string& f1, const std::string& f2, Box domain,
                            int orientation = 1);

// Graph chart: coordinate `axis` (0-based) is `height` evaluated on the
// remaining coordinates, which are u1..un in order.
SurfaceChart graph_chart(std::shared_ptr<const CoordinateModel> model, const std::string& height,
                         int axis, Box domain, int orientation = 1);

// Seeded random smooth height function over n parameters: a bounded
// polynomial plus one trigonometric term, with coefficients in [-0.5, 0.5].
std::string random_height(int n, std::uint64_t seed);

// Graph of random_height over the last exponential coordinate, on
// [-0.5, 0.5]^n.
SurfaceChart random_graph(const NilpotentAlgebra& alg, std::uint64_t seed);

}  // namespace nilgauss
