#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ttm/spec.hpp"

namespace ttm {

// Signature of the 4-manifold by Novikov additivity: Meyer cocycle values
// over a pants decomposition of the interior torus bundle, plus the
// intersection form of the boundary sphere necklace, with a single blow-up
// reducing the one-corner case.

// Symmetric bilinear form with exact rational entries.
struct RatSymForm {
    int dim = 0;
    std::vector<Rat> entries;  // row-major, dim x dim

    static RatSymForm zero(int dim) {
        RatSymForm f;
        f.dim = dim;
        f.entries.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), Rat(0));
        return f;
    }
    const Rat& at(int i, int j) const {
        return entries[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)];
    }
    Rat& at(int i, int j) {
        return entries[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(j)];
    }
    bool is_symmetric() const {
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }
};

// Sylvester inertia by exact symmetric pivoting; degenerate directions
// contribute nothing.
inline int signature_of_form(RatSymForm f) {
    if (!f.is_symmetric()) throw error("signature of an asymmetric form");
    const int n = f.dim;
    auto add_row_col = [&](int dst, int src, const Rat& c) {
        for (int j = 0; j < n; ++j) f.at(dst, j) += c * f.at(src, j);
        for (int i = 0; i < n; ++i) f.at(i, dst) += c * f.at(i, src);
    };
    auto swap_row_col = [&](int a, int b) {
        if (a == b) return;
        for (int j = 0; j < n; ++j) std::swap(f.at(a, j), f.at(b, j));
        for (int i = 0; i < n; ++i) std::swap(f.at(i, a), f.at(i, b));
    };
    int sig = 0;
    for (int t = 0; t < n; ++t) {
        if (f.at(t, t) == 0) {
            int p = -1;
            for (int i = t + 1; i < n; ++i)
                if (f.at(i, i) != 0) {
                    p = i;
                    break;
                }
            if (p >= 0) {
                swap_row_col(t, p);
            } else {
                // all-zero diagonal: turn a nonzero off-diagonal pair into a
                // diagonal entry by a congruence
                int oi = -1, oj = -1;
                for (int i = t; i < n && oi < 0; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (f.at(i, j) != 0) {
                            oi = i;
                            oj = j;
                            break;
                        }
                if (oi < 0) break;  // remaining block is zero
                add_row_col(oi, oj, Rat(1));
                swap_row_col(t, oi);
            }
        }
        const Rat pivot = f.at(t, t);
        sig += pivot > 0 ? 1 : -1;
        for (int i = t + 1; i < n; ++i) {
            if (f.at(i, t) == 0) continue;
            const Rat c = -f.at(i, t) / pivot;
            add_row_col(i, t, c);
        }
    }
    return sig;
}

inline int signature_of_int_sym(const IntMat& m) {
    if (!m.is_square()) throw error("signature of a non-square matrix");
    RatSymForm f = RatSymForm::zero(m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) f.at(i, j) = Rat(m(i, j));
    return signature_of_form(std::move(f));
}

namespace detail {

// Exact rational kernel basis of an r x c matrix, columns spanning the
// kernel.
inline std::vector<std::vector<Rat>> rational_kernel(std::vector<std::vector<Rat>> m, int cols) {
    const int rows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (m[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(m[static_cast<size_t>(r)], m[static_cast<size_t>(p)]);
        const Rat inv = Rat(1) / m[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = 0; j < cols; ++j) m[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Rat f = m[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                m[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<Rat>> basis;
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        std::vector<Rat> v(static_cast<size_t>(cols), Rat(0));
        v[static_cast<size_t>(c)] = 1;
        for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i)
            v[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] =
                -m[static_cast<size_t>(i)][static_cast<size_t>(c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace detail

// Meyer cocycle value tau_1(C1, C2): the signature of the symmetric pairing
// <(x,y),(x',y')> = t(x+y) J (I - C2) y' on the kernel of
// (C1^{-1} - I | C2 - I) in Q^4.
inline int meyer_tau(const IntMat& c1, const IntMat& c2) {
    if (!is_sl2(c1) || !is_sl2(c2)) throw error("Meyer cocycle arguments must lie in SL2(Z)");
    const IntMat c1inv = unimodular_inverse(c1);
    const IntMat id = IntMat::identity(2);
    const IntMat a = c1inv - id;
    const IntMat b = c2 - id;

    std::vector<std::vector<Rat>> system(2, std::vector<Rat>(4, Rat(0)));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            system[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(a(i, j));
            system[static_cast<size_t>(i)][static_cast<size_t>(j + 2)] = Rat(b(i, j));
        }
    const auto kernel = detail::rational_kernel(std::move(system), 4);

    const IntMat pairing_matrix = IntMat{{0, 1}, {-1, 0}} * (id - c2);  // J (I - C2)
    auto form_value = [&](const std::vector<Rat>& v, const std::vector<Rat>& w) {
        Rat s = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                s += (v[static_cast<size_t>(i)] + v[static_cast<size_t>(i + 2)]) *
                     Rat(pairing_matrix(i, j)) * w[static_cast<size_t>(j + 2)];
        return s;
    };

    const int dim = static_cast<int>(kernel.size());
    RatSymForm f = RatSymForm::zero(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            f.at(i, j) = form_value(kernel[static_cast<size_t>(i)], kernel[static_cast<size_t>(j)]);
    if (!f.is_symmetric()) throw error("Meyer pairing came out asymmetric");
    return signature_of_form(std::move(f));
}

// Boundary images of the pants curves of a trinion.
struct PantsPair {
    IntMat c1, c2;
};

// Trinion decomposition of the interior torus bundle: cutting each handle
// along its a-curve yields the pair (A_i, B_i A_i^{-1} B_i^{-1}); the
// junction trinions chain the handle commutators together. Genus zero needs
// no trinions at all.
inline std::vector<PantsPair> pants_pairs(const MonodromyRep& rep) {
    if (rep.is_cylinder_shape())
        throw unsupported_error("pants decomposition requires a one-boundary base");
    std::vector<PantsPair> pairs;
    const int g = rep.genus();
    std::vector<IntMat> commutators;
    for (int i = 0; i < g; ++i) {
        const IntMat& a = rep.alphas[static_cast<size_t>(i)];
        const IntMat& b = rep.betas[static_cast<size_t>(i)];
        pairs.push_back({a, b * unimodular_inverse(a) * unimodular_inverse(b)});
        commutators.push_back(commutator(a, b));
    }
    IntMat prefix = g > 0 ? commutators[0] : IntMat::identity(2);
    for (int i = 1; i < g; ++i) {
        pairs.push_back({prefix, commutators[static_cast<size_t>(i)]});
        prefix = prefix * commutators[static_cast<size_t>(i)];
    }
    return pairs;
}

// The boundary preimage: a cyclic chain of spheres, one per boundary arc,
// with the wrap holonomy relating the last arc back to the first. Neighbor
// vectors crossing the wrap forward are transported by the wrap matrix,
// backward by its inverse.
struct NecklaceModel {
    std::vector<IntVec> vectors;
    IntMat wrap;
    std::vector<bool> exceptional;

    int size() const { return static_cast<int>(vectors.size()); }
};

inline NecklaceModel necklace_from(const TwistedToricSpec& spec) {
    if (spec.base.family == Family::cylinder || spec.base.corners == 0)
        throw unsupported_error("the sphere necklace requires a base with at least one corner point");
    NecklaceModel n;
    n.vectors = spec.characteristic.vectors;
    n.wrap = boundary_holonomy(spec.monodromy);
    n.exceptional.assign(n.vectors.size(), false);
    return n;
}

// Blows up the corner between entries j and j+1 (corner index k-1 is the wrap
// corner): the inserted exceptional vector is the sum of the two corner
// vectors, with the wrap transport applied at the wrap corner. Consecutive
// and wrap determinants stay +1 and the inserted sphere self-intersects at
// -1.
inline NecklaceModel blow_up(const NecklaceModel& necklace, int corner_index) {
    const int k = necklace.size();
    if (k < 1) throw error("empty necklace");
    if (corner_index < 0 || corner_index >= k)
        throw error("corner index out of range: " + std::to_string(corner_index));
    NecklaceModel out = necklace;
    if (corner_index == k - 1) {
        const IntVec inserted = necklace.wrap * necklace.vectors[static_cast<size_t>(k - 1)] +
                                necklace.vectors[0];
        out.vectors.insert(out.vectors.begin(), inserted);
        out.exceptional.insert(out.exceptional.begin(), true);
    } else {
        const IntVec inserted = necklace.vectors[static_cast<size_t>(corner_index)] +
                                necklace.vectors[static_cast<size_t>(corner_index + 1)];
        out.vectors.insert(out.vectors.begin() + corner_index + 1, inserted);
        out.exceptional.insert(out.exceptional.begin() + corner_index + 1, true);
    }
    return out;
}

// Intersection matrix of the necklace spheres: the self-intersection of
// sphere i is minus the determinant of its two neighbors expressed in its
// local trivialization; distinct spheres meet once when cyclically adjacent,
// except that the two spheres of a length-2 necklace meet twice.
inline IntMat boundary_intersection_matrix(const NecklaceModel& necklace) {
    const int k = necklace.size();
    if (k < 2) throw error("the intersection matrix needs at least 2 spheres; blow up first");
    IntMat m(k, k);
    for (int i = 0; i < k; ++i) {
        const IntVec prev = i == 0 ? necklace.wrap * necklace.vectors[static_cast<size_t>(k - 1)]
                                   : necklace.vectors[static_cast<size_t>(i - 1)];
        const IntVec next = i == k - 1
                                ? unimodular_inverse(necklace.wrap) * necklace.vectors[0]
                                : necklace.vectors[static_cast<size_t>(i + 1)];
        m(i, i) = -det2(prev, next);
    }
    if (k == 2) {
        m(0, 1) = m(1, 0) = 2;
    } else {
        for (int i = 0; i < k; ++i) {
            const int j = (i + 1) % k;
            m(i, j) = m(j, i) = 1;
        }
    }
    return m;
}

struct SignatureBreakdown {
    std::vector<std::pair<PantsPair, int>> interior_terms;
    IntMat boundary_matrix;
    int blowup_count = 0;
    int sigma_interior = 0;
    int sigma_boundary = 0;  // blow-up corrected
    int total = 0;
};

// Novikov additivity: the signature is the interior trinion sum plus the
// signature of the boundary neighborhood. A one-corner boundary is blown up
// once at the wrap corner and the exceptional -1 is corrected afterwards.
inline SignatureBreakdown signature_total(const TwistedToricSpec& spec) {
    if (spec.base.family == Family::cylinder || spec.base.corners == 0)
        throw unsupported_error(
            "signature computation requires a one-boundary base with at least one corner point");

    SignatureBreakdown result;
    for (const PantsPair& pair : pants_pairs(spec.monodromy)) {
        const int tau = meyer_tau(pair.c1, pair.c2);
        result.interior_terms.emplace_back(pair, tau);
        result.sigma_interior += tau;
    }

    NecklaceModel necklace = necklace_from(spec);
    if (necklace.size() == 1) {
        necklace = blow_up(necklace, 0);
        result.blowup_count = 1;
    }
    result.boundary_matrix = boundary_intersection_matrix(necklace);
    result.sigma_boundary = signature_of_int_sym(result.boundary_matrix) + result.blowup_count;
    result.total = result.sigma_interior + result.sigma_boundary;
    return result;
}

}  // namespace ttm
