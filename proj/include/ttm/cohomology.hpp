#pragma once

#include <array>
#include <string>
#include <vector>

#include "ttm/spec.hpp"

namespace ttm {

// Leray spectral sequence of the projection to the base, with the constrained
// local coefficients carried by the fiber collapses. The E_1 page is the
// cellular cochain complex of the base CW structure with values in the
// allowed subgroups below; the E_2 page already computes H*(X) because the
// sequence degenerates for 2-dimensional bases with boundary.

// Fiber over (the barycenter of) a cell: a full 2-torus, a circle-collapsed
// torus, or a point.
struct FiberType {
    enum class Kind { full, circle, point };
    Kind kind = Kind::full;
    IntVec circle_gen;  // primitive, dim 2, only for Kind::circle

    static FiberType full() { return FiberType{Kind::full, {}}; }
    static FiberType circle(IntVec u) {
        if (u.dim() != 2 || !u.is_primitive()) throw error("collapsed circle generator must be primitive");
        return FiberType{Kind::circle, std::move(u)};
    }
    static FiberType point() { return FiberType{Kind::point, {}}; }
};

inline FiberType fiber_over(const CellLocus& locus, const CharacteristicData& characteristic) {
    switch (locus.cls) {
        case StratumClass::interior:
            return FiberType::full();
        case StratumClass::boundary_arc:
            return FiberType::circle(characteristic.at(locus.arc));
        case StratumClass::corner:
            return FiberType::point();
    }
    throw error("unknown stratum class");
}

// Rank of degree-q cohomology of the full torus fiber.
inline int fiber_rank_of_degree(int q) {
    if (q < 0 || q > 2) throw error("coefficient degree must be 0, 1 or 2");
    return q == 1 ? 2 : 1;
}

// Basis of a direct summand A_q inside the degree-q cohomology lattice of the
// full fiber.
struct SubgroupBasis {
    int ambient_rank = 1;
    std::vector<IntVec> basis;

    int rank() const { return static_cast<int>(basis.size()); }
    IntMat basis_matrix() const { return IntMat::from_columns(ambient_rank, basis); }
};

// The primitive covector annihilating u, normalized so its first nonzero
// coordinate is positive.
inline IntVec annihilator(const IntVec& u) {
    if (u.dim() != 2 || !u.is_primitive()) throw error("annihilator expects a primitive 2-vector");
    IntVec w{u[1], -u[0]};
    const bool flip = w[0] < 0 || (w[0] == 0 && w[1] < 0);
    return flip ? -w : w;
}

// Image of the fiber restriction in degree q: everything for a full fiber;
// for a circle collapse the pullbacks that kill the collapsed direction; for
// a point only degree zero.
inline SubgroupBasis allowed_subgroup(const FiberType& fiber, int q) {
    const int ambient = fiber_rank_of_degree(q);
    SubgroupBasis sub;
    sub.ambient_rank = ambient;
    switch (fiber.kind) {
        case FiberType::Kind::full:
            for (int i = 0; i < ambient; ++i) sub.basis.push_back(IntVec::unit(ambient, i));
            break;
        case FiberType::Kind::circle:
            if (q == 0)
                sub.basis.push_back(IntVec::unit(1, 0));
            else if (q == 1)
                sub.basis.push_back(annihilator(fiber.circle_gen));
            break;
        case FiberType::Kind::point:
            if (q == 0) sub.basis.push_back(IntVec::unit(1, 0));
            break;
    }
    return sub;
}

// Action of a holonomy matrix on degree-q fiber cohomology: trivial in
// degrees 0 and 2 (the determinant twist vanishes on SL2), inverse transpose
// in degree 1.
inline IntMat coefficient_action(const IntMat& m, int q) {
    if (!is_sl2(m)) throw error("coefficient action requires an SL2(Z) matrix");
    fiber_rank_of_degree(q);
    if (q == 1) return unimodular_inverse(m).transpose();
    return IntMat::identity(1);
}

// A differential image landed outside the target cell's allowed subgroup;
// the characteristic data is inconsistent at the named cell.
struct closure_error : error {
    explicit closure_error(const std::string& cell)
        : error("coefficient subgroup not preserved at cell " + cell) {}
};

// Cochain complex of the base in one coefficient degree, with differentials
// expressed in the chosen subgroup bases.
struct LocalComplex {
    int q = 0;
    CWComplex cw;
    std::vector<SubgroupBasis> vertex_sub;
    std::vector<SubgroupBasis> edge_sub;
    SubgroupBasis face_sub;
    std::vector<int> vertex_offset, edge_offset;
    int c0_rank = 0, c1_rank = 0, c2_rank = 0;
    IntMat d0;  // c1_rank x c0_rank
    IntMat d1;  // c2_rank x c1_rank
};

namespace detail {

// Re-expresses an ambient-coordinate block in the target subgroup basis;
// every column must lie in the subgroup exactly.
inline IntMat into_subgroup(const SubgroupBasis& target, const IntMat& ambient_block,
                            const std::string& cell) {
    IntMat result(target.rank(), ambient_block.cols());
    if (target.rank() == 0) {
        if (!ambient_block.is_zero()) throw closure_error(cell);
        return result;
    }
    const IntMat b = target.basis_matrix();
    for (int j = 0; j < ambient_block.cols(); ++j) {
        auto x = integer_solve(b, ambient_block.column(j));
        if (!x) throw closure_error(cell);
        result.set_column(j, *x);
    }
    return result;
}

inline void place_block(IntMat& dst, int row0, int col0, const IntMat& block) {
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j) dst(row0 + i, col0 + j) += block(i, j);
}

}  // namespace detail

// Builds the degree-q cochain complex of a spec. Cochain values are recorded
// in the basepoint trivialization transported along the face-word prefix; on
// an edge e the differential is T(m(e)) u(head) - u(tail), and on the face it
// accumulates prefix transports letter by letter, with T the degree-q
// coefficient action. Callers are expected to have validated the spec;
// inconsistent collapse data surfaces as closure_error.
inline LocalComplex build_complex(const TwistedToricSpec& spec, int q) {
    if (spec.fiber_rank != 2) throw error("cohomology requires fiber rank 2");
    const int ambient = fiber_rank_of_degree(q);
    LocalComplex c;
    c.q = q;
    c.cw = build_cw(spec.base, spec.monodromy);
    if (spec.characteristic.size() != strata_summary(spec.base).arc_count)
        throw error("characteristic data length does not match the boundary arcs");

    for (const CellLocus& locus : c.cw.vertices)
        c.vertex_sub.push_back(allowed_subgroup(fiber_over(locus, spec.characteristic), q));
    for (const auto& e : c.cw.edges)
        c.edge_sub.push_back(allowed_subgroup(fiber_over(e.locus, spec.characteristic), q));
    c.face_sub = allowed_subgroup(fiber_over(c.cw.faces[0].locus, spec.characteristic), q);

    for (const auto& sub : c.vertex_sub) {
        c.vertex_offset.push_back(c.c0_rank);
        c.c0_rank += sub.rank();
    }
    for (const auto& sub : c.edge_sub) {
        c.edge_offset.push_back(c.c1_rank);
        c.c1_rank += sub.rank();
    }
    c.c2_rank = c.face_sub.rank();

    c.d0 = IntMat(c.c1_rank, c.c0_rank);
    for (size_t ei = 0; ei < c.cw.edges.size(); ++ei) {
        const auto& e = c.cw.edges[ei];
        IntMat ambient_block(ambient, c.c0_rank);
        const IntMat action = coefficient_action(e.monodromy, q);
        if (c.vertex_sub[static_cast<size_t>(e.head)].rank() > 0)
            detail::place_block(ambient_block, 0, c.vertex_offset[static_cast<size_t>(e.head)],
                                action * c.vertex_sub[static_cast<size_t>(e.head)].basis_matrix());
        if (c.vertex_sub[static_cast<size_t>(e.tail)].rank() > 0)
            detail::place_block(ambient_block, 0, c.vertex_offset[static_cast<size_t>(e.tail)],
                                -c.vertex_sub[static_cast<size_t>(e.tail)].basis_matrix());
        detail::place_block(c.d0, c.edge_offset[ei], 0,
                            detail::into_subgroup(c.edge_sub[ei], ambient_block, e.name));
    }

    c.d1 = IntMat(c.c2_rank, c.c1_rank);
    {
        IntMat ambient_block(ambient, c.c1_rank);
        IntMat transport = IntMat::identity(2);
        for (const auto& letter : c.cw.faces[0].word) {
            const auto& e = c.cw.edges[static_cast<size_t>(letter.edge)];
            const auto& sub = c.edge_sub[static_cast<size_t>(letter.edge)];
            if (letter.exponent == 1) {
                if (sub.rank() > 0)
                    detail::place_block(ambient_block, 0, c.edge_offset[static_cast<size_t>(letter.edge)],
                                        coefficient_action(transport, q) * sub.basis_matrix());
                transport = transport * e.monodromy;
            } else {
                transport = transport * unimodular_inverse(e.monodromy);
                if (sub.rank() > 0)
                    detail::place_block(ambient_block, 0, c.edge_offset[static_cast<size_t>(letter.edge)],
                                        -(coefficient_action(transport, q) * sub.basis_matrix()));
            }
        }
        detail::place_block(c.d1, 0, 0,
                            detail::into_subgroup(c.face_sub, ambient_block, c.cw.faces[0].name));
    }

    if (!(c.d1 * c.d0).is_zero()) throw error("differential composition d1*d0 is nonzero");
    return c;
}

// The E_2 page: grid(p, q) = H^p of the degree-q local complex.
struct E2Table {
    std::array<std::array<AbelianGroup, 3>, 3> grid;  // grid[p][q]

    const AbelianGroup& at(int p, int q) const {
        return grid[static_cast<size_t>(p)][static_cast<size_t>(q)];
    }
    AbelianGroup& at(int p, int q) { return grid[static_cast<size_t>(p)][static_cast<size_t>(q)]; }
};

namespace detail {

// ker(d_out) / im(d_in), with im(d_in) contained in ker(d_out).
inline AbelianGroup homology_quotient(const IntMat& d_out, const IntMat& d_in) {
    const IntMat k = kernel_basis(d_out);
    IntMat coords(k.cols(), d_in.cols());
    for (int j = 0; j < d_in.cols(); ++j) {
        auto x = integer_solve(k, d_in.column(j));
        if (!x) throw error("image is not contained in the kernel");
        coords.set_column(j, *x);
    }
    return cokernel(coords);
}

}  // namespace detail

inline E2Table e2_table(const TwistedToricSpec& spec) {
    E2Table table;
    for (int q = 0; q <= 2; ++q) {
        LocalComplex c = build_complex(spec, q);
        table.at(0, q) = AbelianGroup{c.c0_rank - rank(c.d0), {}};
        table.at(1, q) = detail::homology_quotient(c.d1, c.d0);
        table.at(2, q) = cokernel(c.d1);
    }
    return table;
}

// H*(X) assembled from the E_2 page. The sequence degenerates for these
// bases, and extensions are reported split: the result is the associated
// graded group in each degree, which is what the flag records.
struct CohomologyResult {
    std::vector<AbelianGroup> groups;  // degrees 0..4
    bool associated_graded = true;
    E2Table e2;
};

inline CohomologyResult cohomology_of_X(const TwistedToricSpec& spec) {
    ValidationReport report = validate_spec(spec);
    if (!report.valid) {
        std::string what = "spec is not valid:";
        for (const Finding& f : report.findings) what += " [" + f.check + " at " + f.location + "]";
        throw error(what);
    }
    CohomologyResult result;
    result.e2 = e2_table(spec);
    for (int k = 0; k <= 4; ++k) {
        std::vector<AbelianGroup> parts;
        for (int p = 0; p <= 2; ++p) {
            const int q = k - p;
            if (q < 0 || q > 2) continue;
            parts.push_back(result.e2.at(p, q));
        }
        result.groups.push_back(direct_sum(parts));
    }
    return result;
}

}  // namespace ttm
