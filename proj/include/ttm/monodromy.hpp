#pragma once

#include <optional>
#include <vector>

#include "ttm/lattice.hpp"

namespace ttm {

// Flat SL2(Z) monodromy data. For a one-boundary surface of genus g the
// images of the 2g interior generators are stored; the boundary image is
// always derived from them through the surface relation, never stored. For a
// cylinder a single loop image is stored.
struct MonodromyRep {
    std::vector<IntMat> alphas;
    std::vector<IntMat> betas;
    std::optional<IntMat> loop;

    static MonodromyRep one_boundary(std::vector<IntMat> alphas, std::vector<IntMat> betas) {
        MonodromyRep r;
        r.alphas = std::move(alphas);
        r.betas = std::move(betas);
        return r;
    }
    static MonodromyRep trivial(int genus) {
        MonodromyRep r;
        r.alphas.assign(static_cast<size_t>(genus), IntMat::identity(2));
        r.betas.assign(static_cast<size_t>(genus), IntMat::identity(2));
        return r;
    }
    static MonodromyRep cylinder(IntMat m) {
        MonodromyRep r;
        r.loop = std::move(m);
        return r;
    }

    bool is_cylinder_shape() const { return loop.has_value(); }
    int genus() const { return static_cast<int>(alphas.size()); }
};

inline IntMat commutator(const IntMat& a, const IntMat& b) {
    return a * b * unimodular_inverse(a) * unimodular_inverse(b);
}

// Image of the boundary loop: the relation in the one-boundary surface group
// forces it to be the inverse of the product of the handle commutators.
inline IntMat boundary_holonomy(const MonodromyRep& rep) {
    if (rep.is_cylinder_shape()) throw error("boundary holonomy is only defined for one-boundary bases");
    if (rep.alphas.size() != rep.betas.size()) throw error("monodromy has unequal alpha/beta lists");
    IntMat p = IntMat::identity(2);
    for (size_t i = 0; i < rep.alphas.size(); ++i) p = p * commutator(rep.alphas[i], rep.betas[i]);
    return unimodular_inverse(p);
}

}  // namespace ttm
