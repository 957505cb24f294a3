#pragma once
// Newton polytopes, exact facet enumeration in small dimension, f-vectors,
// and w-initial forms.

#include "logdisc/poly.hpp"
#include <vector>

namespace logdisc {

struct Facet {
    std::vector<long> normal;     // ambient integer normal, inner-pointing
    Rat offset;                   // every point satisfies normal·α >= offset
    std::vector<int> vertex_ids;  // indices into LatticePolytope::vertices
};

struct LatticePolytope {
    int ambient_dim = 0;
    std::vector<std::vector<long>> points;   // deduplicated input points
    std::vector<int> vertices;               // indices into points
    int dim = -1;                            // affine dimension
    std::vector<Facet> facets;               // empty when dim == 0
};

// Exact convex hull of integer points; ambient dimension <= 8,
// point count <= 200.  Throws std::invalid_argument past the caps.
LatticePolytope hull(std::vector<std::vector<long>> pts);

// Convex hull of the exponent vectors of f (f nonzero).
LatticePolytope newton_polytope(const Poly& f);

// (f_0, ..., f_{dim-1}) by closing the facet/vertex incidences under
// intersection; requires dim <= 5.
std::vector<int> f_vector(const LatticePolytope& P);

// Terms of f whose exponents minimize w·α.
Poly initial_form(const Poly& f, const std::vector<Rat>& w);

// Primitive inner facet normals.  When the all-ones functional is constant
// on the polytope (homogeneous case) each normal is reported modulo the
// all-ones lineality with the canonical min-entry-0 representative.
std::vector<std::vector<long>> facet_normals(const LatticePolytope& P);

} // namespace logdisc
