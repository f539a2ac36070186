#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "conflab/catalog_id.hpp"
#include "conflab/density.hpp"
#include "conflab/quadrature.hpp"

namespace conflab {

/// Finite sample of a curve family plus the generator address that rebuilds it.
struct CurveFamily {
    std::vector<Curve> curves;
    std::string descriptor;
    int dim = 2;

    std::size_t size() const { return curves.size(); }
};

/// Generators addressable by id:
///   radial:cap=S,r=R[,count=N][,n=3]   segments [R u, u] for u in a boundary
///                                      set E of measure S (an arc centered at
///                                      angle 0, or a cap around e1 for n = 3)
///   annulus:r1=A,r2=B[,count=N][,n=3]  segments [A u, B u] over the whole sphere
/// count defaults to 512. ValidationError on bad parameters.
CurveFamily make_family(std::string_view id);

/// Radial segments starting at r0 u that stop where their rho-length reaches
/// L, for `count` directions u. Directions along which the rho-length to the
/// sphere stays below L are dropped (listed in `skipped`).
CurveFamily rho_radial_family(const Density& d, double r0, double L, int count, std::vector<Point>* skipped = nullptr);

/// Random polylines joining 0 and x (x interior, or on the sphere). Interior
/// vertices are displaced off the segment by random amounts. Seeded, so the
/// same seed gives the same family.
CurveFamily perturbed_family(const Point& x, int count, std::uint64_t seed);

/// Planar curves from 0 to the boundary point omega winding a random number
/// of turns (|turns| <= max_turns) around the origin on the way out. Seeded.
CurveFamily spiral_family(const Point& omega, int count, std::uint64_t seed, double max_turns = 1.0);

/// Directions on S^(n-1): `count` equal angles (n = 2) or a golden-angle
/// spiral (n = 3).
std::vector<Point> sphere_directions(int dim, int count);

}  // namespace conflab
