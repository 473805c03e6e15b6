#pragma once

#include <string>
#include <vector>

#include "ttm/spec.hpp"

namespace ttm {

// Convex polygon in primitive inward-normal form: the intersection of the
// half-planes <u_i, x> >= lambda_i with facets listed counterclockwise.
// Offsets may be rational; the combinatorics and the normals decide validity.
struct DelzantPolygon {
    std::vector<IntVec> normals;
    std::vector<Rat> offsets;

    int facet_count() const { return static_cast<int>(normals.size()); }
};

namespace detail {

struct RatVec2 {
    Rat x, y;
};

inline Rat pairing(const IntVec& u, const RatVec2& p) { return Rat(u[0]) * p.x + Rat(u[1]) * p.y; }

}  // namespace detail

// Checks the three polygon conditions: rational (integral normals, enforced
// by the type), simple (exactly two facets through each vertex), and
// non-singular (each consecutive normal pair is primitive with determinant
// +1 in counterclockwise order). Vertices are enumerated as intersections of
// consecutive facet lines; a degenerate, empty, or unbounded intersection is
// an error rather than a finding.
inline ValidationReport delzant_validate(const DelzantPolygon& poly) {
    const int d = poly.facet_count();
    if (d < 3) throw error("a polygon needs at least 3 facets, got " + std::to_string(d));
    if (static_cast<int>(poly.offsets.size()) != d)
        throw error("normals and offsets have different lengths");
    for (int i = 0; i < d; ++i)
        if (poly.normals[static_cast<size_t>(i)].dim() != 2)
            throw error("facet normals must be 2-dimensional");

    ValidationReport report;
    std::vector<detail::RatVec2> vertices(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        const int j = (i + 1) % d;
        const IntVec& ui = poly.normals[static_cast<size_t>(i)];
        const IntVec& uj = poly.normals[static_cast<size_t>(j)];
        const Int dij = det2(ui, uj);
        const std::string vloc = "vertex of facets " + std::to_string(i + 1) + "," + std::to_string(j + 1);
        if (dij == 0)
            throw error("unbounded or empty polygon: facets " + std::to_string(i + 1) + " and " +
                        std::to_string(j + 1) + " are parallel");
        // solve <u_i,v> = l_i, <u_j,v> = l_j
        const Rat li = poly.offsets[static_cast<size_t>(i)], lj = poly.offsets[static_cast<size_t>(j)];
        detail::RatVec2 v;
        v.x = (li * Rat(uj[1]) - lj * Rat(ui[1])) / Rat(dij);
        v.y = (lj * Rat(ui[0]) - li * Rat(uj[0])) / Rat(dij);
        vertices[static_cast<size_t>(i)] = v;

        if (dij < 0)
            report.fail("non_singular", vloc,
                        "normals turn clockwise (determinant " + detail::det_str(dij) + ")");
        else if (dij != 1)
            report.fail("non_singular", vloc,
                        "incident normals have determinant " + detail::det_str(dij) + ", not 1");

        for (int l = 0; l < d; ++l) {
            const Rat p = detail::pairing(poly.normals[static_cast<size_t>(l)], v) -
                          poly.offsets[static_cast<size_t>(l)];
            if (l == i || l == j) continue;
            if (p < 0)
                throw error("unbounded or empty polygon: " + vloc + " violates facet " +
                            std::to_string(l + 1));
            if (p == 0)
                report.fail("simple", vloc, "facet " + std::to_string(l + 1) + " also passes through it");
        }
    }
    return report;
}

// A valid polygon determines a twisted toric spec over a disc with one corner
// per facet: trivial monodromy and the inward normals, in counterclockwise
// facet order, as characteristic vectors.
inline TwistedToricSpec delzant_to_spec(const DelzantPolygon& poly) {
    ValidationReport check = delzant_validate(poly);
    if (!check.valid) {
        std::string what = "polygon is not valid:";
        for (const Finding& f : check.findings) what += " [" + f.check + " at " + f.location + "]";
        throw error(what);
    }
    TwistedToricSpec spec;
    spec.fiber_rank = 2;
    spec.base = BaseSurface::one_boundary(0, poly.facet_count());
    spec.monodromy = MonodromyRep::trivial(0);
    spec.characteristic.vectors = poly.normals;
    return spec;
}

}  // namespace ttm
