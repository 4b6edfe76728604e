#pragma once

// Index of the tangent field obtained from the SO(3) lift of i0.
//
// The lift sends x to the minimal rotation R_x taking the south pole to x. It
// is continuous away from the north pole N, where the rotation axis is
// undefined. The field v(x) = R_x(e1) is a unit tangent field on S^2 \ {N};
// its index at N is the Euler characteristic 2.

#include <cstddef>

#include "eqgirth/sphere_geom.hpp"

namespace eqgirth {

struct FrameSample {
  SpherePoint base;
  Vec3 vector;  // unit, orthogonal to base
};

inline constexpr double kSingularityClearance = 1e-6;

// Reference tangent vector at the south pole.
inline constexpr Vec3 kReferenceTangent{1.0, 0.0, 0.0};

SpherePoint lift_reference_pole();  // south pole
SpherePoint lift_singular_point();  // north pole N

// v(x) = R_x(e1). Throws SingularityError within kSingularityClearance of N.
FrameSample lift_frame(const SpherePoint& x);

enum class Traversal { counterclockwise, clockwise };

// Total turning angle of v, measured in the stereographic chart from -N,
// along the circle of geodesic radius `radius` about N. Counterclockwise is
// with respect to the chart orientation. Throws ResolutionError if two
// consecutive samples turn by more than pi/2.
double accumulated_frame_angle(double radius, std::size_t n_samples,
                               Traversal traversal = Traversal::counterclockwise);

// round(accumulated_frame_angle / 2 pi). Requires radius in [1e-3, 0.3] and
// n_samples >= 256.
int winding_number_at_singularity(double radius, std::size_t n_samples,
                                  Traversal traversal = Traversal::counterclockwise);

// Second route to the same integer. The lift restricted to a small circle
// about N converges to the loop of half-turns about horizontal axes, which
// all fix the equator L0 setwise. Evaluating that loop at a base point of L0
// and reading off the position along L0 gives a loop in S^1; this returns its
// degree. Throws DomainError if a loop element fails to preserve L0.
double accumulated_evaluation_angle(std::size_t n_samples);
int evaluation_winding_number(std::size_t n_samples);

}  // namespace eqgirth
