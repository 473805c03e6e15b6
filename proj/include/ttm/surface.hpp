#pragma once

#include <string>
#include <vector>

#include "ttm/monodromy.hpp"

namespace ttm {

// Combinatorial base surfaces: an oriented genus-g surface with one boundary
// circle carrying k corner points, or a cylinder with two cornerless boundary
// circles.

enum class Family { one_boundary, cylinder };

struct BaseSurface {
    Family family = Family::one_boundary;
    int genus = 0;
    int corners = 0;

    static BaseSurface one_boundary(int genus, int corners) {
        if (genus < 0 || corners < 0) throw error("genus and corner count must be non-negative");
        return BaseSurface{Family::one_boundary, genus, corners};
    }
    static BaseSurface cylinder() { return BaseSurface{Family::cylinder, 0, 0}; }

    friend bool operator==(const BaseSurface& a, const BaseSurface& b) {
        return a.family == b.family && a.genus == b.genus && a.corners == b.corners;
    }
};

struct StrataSummary {
    int corner_count = 0;           // 0-dimensional strata
    int arc_count = 0;              // connected 1-dimensional boundary strata
    int boundary_components = 0;
};

inline StrataSummary strata_summary(const BaseSurface& base) {
    if (base.family == Family::cylinder) return StrataSummary{0, 2, 2};
    return StrataSummary{base.corners, std::max(base.corners, 1), 1};
}

// Where a cell sits relative to the stratification. Cells are open: an edge
// whose endpoints lie on the boundary but whose interior does not is
// interior.
enum class StratumClass { interior, boundary_arc, corner };

struct CellLocus {
    StratumClass cls = StratumClass::interior;
    int arc = -1;  // boundary arc index when cls == boundary_arc

    static CellLocus interior() { return CellLocus{StratumClass::interior, -1}; }
    static CellLocus on_arc(int j) { return CellLocus{StratumClass::boundary_arc, j}; }
    static CellLocus corner() { return CellLocus{StratumClass::corner, -1}; }
};

// Canonical CW decomposition of the base with one two-cell. Every cell lies
// inside a single stratum, and each edge carries the holonomy picked up by
// traversing it from tail to head. The ordered product of monodromies around
// the face word is the identity.
struct CWComplex {
    struct Edge {
        int tail = 0, head = 0;
        IntMat monodromy;
        CellLocus locus;
        std::string name;
    };
    struct Letter {
        int edge = 0;
        int exponent = 1;  // +1 or -1
    };
    struct Face {
        std::vector<Letter> word;
        CellLocus locus;
        std::string name;
    };

    std::vector<CellLocus> vertices;
    std::vector<std::string> vertex_names;
    std::vector<Edge> edges;
    std::vector<Face> faces;

    int euler_characteristic() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
               static_cast<int>(faces.size());
    }
};

// Ordered product of edge monodromies along a face word.
inline IntMat face_holonomy(const CWComplex& cw, const CWComplex::Face& face) {
    IntMat h = IntMat::identity(2);
    for (const auto& l : face.word) {
        const IntMat& m = cw.edges[static_cast<size_t>(l.edge)].monodromy;
        h = h * (l.exponent == 1 ? m : unimodular_inverse(m));
    }
    return h;
}

inline void check_face_closure(const CWComplex& cw, const CWComplex::Face& face) {
    int at = face.word.empty() ? 0 : (face.word[0].exponent == 1 ? cw.edges[static_cast<size_t>(face.word[0].edge)].tail
                                                                 : cw.edges[static_cast<size_t>(face.word[0].edge)].head);
    const int start = at;
    for (const auto& l : face.word) {
        const auto& e = cw.edges[static_cast<size_t>(l.edge)];
        const int from = l.exponent == 1 ? e.tail : e.head;
        const int to = l.exponent == 1 ? e.head : e.tail;
        if (from != at) throw error("face word is not a path");
        at = to;
    }
    if (at != start) throw error("face word does not close up");
}

// One-boundary bases: max(k,1) vertices on the boundary circle, 2g interior
// handle loops a_i, b_i at the basepoint, and max(k,1) boundary edges. The
// boundary holonomy is concentrated on the last boundary edge; all other
// boundary edges carry the identity. Cylinder bases: a boundary loop with the
// loop monodromy, a vertical interior edge, and the opposite boundary loop
// with the inverse monodromy.
inline CWComplex build_cw(const BaseSurface& base, const MonodromyRep& rep) {
    CWComplex cw;
    if (base.family == Family::cylinder) {
        if (!rep.is_cylinder_shape() || !rep.alphas.empty() || !rep.betas.empty())
            throw error("cylinder base requires a single loop monodromy");
        if (!is_sl2(*rep.loop)) throw error("loop monodromy is not in SL2(Z)");
        cw.vertices = {CellLocus::on_arc(0), CellLocus::on_arc(1)};
        cw.vertex_names = {"v1", "v2"};
        cw.edges.push_back({0, 0, *rep.loop, CellLocus::on_arc(0), "e1"});
        cw.edges.push_back({0, 1, IntMat::identity(2), CellLocus::interior(), "e2"});
        cw.edges.push_back({1, 1, unimodular_inverse(*rep.loop), CellLocus::on_arc(1), "e3"});
        cw.faces.push_back({{{0, 1}, {1, 1}, {2, 1}, {1, -1}}, CellLocus::interior(), "f"});
    } else {
        if (rep.is_cylinder_shape()) throw error("one-boundary base cannot take a cylinder monodromy");
        const int g = base.genus;
        if (rep.genus() != g || static_cast<int>(rep.betas.size()) != g)
            throw error("monodromy shape does not match genus");
        for (const IntMat& m : rep.alphas)
            if (!is_sl2(m)) throw error("alpha monodromy is not in SL2(Z)");
        for (const IntMat& m : rep.betas)
            if (!is_sl2(m)) throw error("beta monodromy is not in SL2(Z)");

        const int k = base.corners;
        const int nb = std::max(k, 1);
        const CellLocus vertex_locus = k >= 1 ? CellLocus::corner() : CellLocus::on_arc(0);
        for (int j = 0; j < nb; ++j) {
            cw.vertices.push_back(vertex_locus);
            cw.vertex_names.push_back("v" + std::to_string(j + 1));
        }
        for (int i = 0; i < g; ++i) {
            cw.edges.push_back({0, 0, rep.alphas[static_cast<size_t>(i)], CellLocus::interior(),
                                "a" + std::to_string(i + 1)});
            cw.edges.push_back({0, 0, rep.betas[static_cast<size_t>(i)], CellLocus::interior(),
                                "b" + std::to_string(i + 1)});
        }
        const IntMat wrap = boundary_holonomy(rep);
        for (int j = 0; j < nb; ++j) {
            const bool last = j == nb - 1;
            cw.edges.push_back({j, (j + 1) % nb, last ? wrap : IntMat::identity(2),
                                CellLocus::on_arc(j), "g" + std::to_string(j + 1)});
        }
        CWComplex::Face face;
        face.locus = CellLocus::interior();
        face.name = "f";
        for (int i = 0; i < g; ++i) {
            const int a = 2 * i, b = 2 * i + 1;
            face.word.push_back({a, 1});
            face.word.push_back({b, 1});
            face.word.push_back({a, -1});
            face.word.push_back({b, -1});
        }
        for (int j = 0; j < nb; ++j) face.word.push_back({2 * g + j, 1});
        cw.faces.push_back(std::move(face));
    }

    check_face_closure(cw, cw.faces[0]);
    if (!(face_holonomy(cw, cw.faces[0]) == IntMat::identity(2)))
        throw error("face holonomy is not the identity");
    return cw;
}

}  // namespace ttm
