#ifndef GEOFLOW_GENERATORS_HPP
#define GEOFLOW_GENERATORS_HPP

#include "geoflow/curve.hpp"

namespace geoflow {

// Circle of given chart radius in the (0,1) coordinate plane, remaining
// coordinates zero. Works for Euclidean charts, the stereographic sphere
// chart (radius 1 = equatorial great circle) and the hyperbolic ball.
DiscreteCurve gen_circle(int N, int dim, double radius = 1.0);

// Planar ellipse (a·cos u, b·sin u).
DiscreteCurve gen_ellipse(int N, double a, double b);

// Radially modulated circle r(u) = radius·(1 + amp·cos(mode·u)).
DiscreteCurve gen_perturbed_circle(int N, int dim, double radius, double amp, int mode);

// Winding line on an S¹×S¹ chart: (p·u + amp·sin(mode·u), q·u), lifted with
// loop shift 2π(p, q). Coordinate 0 is the base angle, 1 the fiber angle.
DiscreteCurve gen_torus_winding(int N, long p, long q, double amp = 0.0, int mode = 1);

// Lifted loop on (base surface chart)×S¹: base runs around a chart circle of
// given radius (perturbed radially), fiber winds `winding` times.
DiscreteCurve gen_s2xs1(int N, long winding, double base_radius, double amp = 0.0,
                        int mode = 1);

// Round helix (a·cos u, a·sin u, b·u) in a Euclidean 3-chart, lifted with
// shift (0, 0, 2πb); every node is an interior node of an infinite helix.
DiscreteCurve gen_helix(int N, double a, double b);

// Orbit curve on the round 3-sphere, stereographic chart: the image of
// (r1·cos pu, r1·sin pu, r2·cos qu, r2·sin qu) with r1²+r2²=1 under
// x = (γ¹,γ²,γ³)/(1+γ⁴); has spatially constant curvature and torsion.
DiscreteCurve gen_clifford_helix(int N, long p, long q, double r1, double r2);

}  // namespace geoflow

#endif  // GEOFLOW_GENERATORS_HPP
