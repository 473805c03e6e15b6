#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "ttm/surface.hpp"

namespace ttm {

// Cyclically ordered primitive generators of the collapsed circle over each
// boundary arc, recorded in the basepoint trivialization transported along
// the boundary prefix path. Generators are oriented so that consecutive
// corner determinants are +1; validation enforces the convention.
struct CharacteristicData {
    std::vector<IntVec> vectors;

    int size() const { return static_cast<int>(vectors.size()); }
    const IntVec& at(int j) const { return vectors[static_cast<size_t>(j)]; }
};

// The finite classifying datum of a twisted toric manifold: fiber rank, base
// family, flat monodromy, and the characteristic vectors. Invariant
// computations require fiber rank 2.
struct TwistedToricSpec {
    int fiber_rank = 2;
    BaseSurface base;
    MonodromyRep monodromy;
    CharacteristicData characteristic;
};

struct Finding {
    std::string check;     // check id, e.g. "corner_det"
    std::string location;  // offending field or cell
    std::string message;
};

struct ValidationReport {
    bool valid = true;
    std::vector<Finding> findings;

    void fail(std::string check, std::string location, std::string message) {
        valid = false;
        findings.push_back({std::move(check), std::move(location), std::move(message)});
    }
};

namespace detail {

inline std::string det_str(const Int& d) {
    std::ostringstream os;
    os << d;
    return os.str();
}

// M u = +-u, i.e. the matrix preserves the rank-one lattice spanned by u.
inline bool preserves_line(const IntMat& m, const IntVec& u) {
    const IntVec mu = m * u;
    return mu == u || mu == -u;
}

}  // namespace detail

// Structural and geometric validation of a spec:
//   (a) monodromy matrices lie in SL2(Z),
//   (b) characteristic vectors are primitive,
//   (c) consecutive corner determinants are +1,
//   (d) the wrap determinant, transported through the derived boundary
//       holonomy, is +1,
//   (e,f) over cornerless boundary circles the loop holonomy preserves the
//       characteristic lattice.
// Shape problems are reported as findings, never thrown.
inline ValidationReport validate_spec(const TwistedToricSpec& spec) {
    ValidationReport report;

    if (spec.fiber_rank != 2)
        report.fail("fiber_rank", "fiber_rank",
                    "invariant computations require fiber rank 2, got " + std::to_string(spec.fiber_rank));

    const StrataSummary strata = strata_summary(spec.base);

    bool monodromy_ok = true;
    auto check_sl2 = [&](const IntMat& m, const std::string& loc) {
        if (m.rows() != 2 || m.cols() != 2) {
            report.fail("sl2", loc, "matrix is not 2x2");
            monodromy_ok = false;
        } else if (det(m) != 1) {
            report.fail("sl2", loc, "determinant is " + detail::det_str(det(m)) + ", not 1");
            monodromy_ok = false;
        }
    };
    if (spec.base.family == Family::cylinder) {
        if (!spec.monodromy.is_cylinder_shape() || !spec.monodromy.alphas.empty() ||
            !spec.monodromy.betas.empty()) {
            report.fail("shape", "monodromy", "cylinder base requires exactly one loop matrix");
            monodromy_ok = false;
        } else {
            check_sl2(*spec.monodromy.loop, "monodromy.loop");
        }
    } else {
        if (spec.monodromy.is_cylinder_shape() || spec.monodromy.genus() != spec.base.genus ||
            static_cast<int>(spec.monodromy.betas.size()) != spec.base.genus) {
            report.fail("shape", "monodromy",
                        "expected " + std::to_string(spec.base.genus) + " alpha/beta matrix pairs");
            monodromy_ok = false;
        } else {
            for (int i = 0; i < spec.monodromy.genus(); ++i) {
                check_sl2(spec.monodromy.alphas[static_cast<size_t>(i)],
                          "monodromy.alpha[" + std::to_string(i + 1) + "]");
                check_sl2(spec.monodromy.betas[static_cast<size_t>(i)],
                          "monodromy.beta[" + std::to_string(i + 1) + "]");
            }
        }
    }

    const int arcs = strata.arc_count;
    bool vectors_ok = spec.characteristic.size() == arcs;
    if (!vectors_ok)
        report.fail("length", "characteristic",
                    "expected one vector per boundary arc (" + std::to_string(arcs) + "), got " +
                        std::to_string(spec.characteristic.size()));
    for (int j = 0; j < spec.characteristic.size(); ++j) {
        const IntVec& u = spec.characteristic.at(j);
        const std::string loc = "characteristic[" + std::to_string(j + 1) + "]";
        if (u.dim() != 2) {
            report.fail("primitive", loc, "vector is not 2-dimensional");
            vectors_ok = false;
        } else if (!u.is_primitive()) {
            report.fail("primitive", loc, "vector " + u.str() + " is not primitive");
            vectors_ok = false;
        }
    }
    if (!monodromy_ok || !vectors_ok) return report;

    if (spec.base.family == Family::cylinder) {
        const IntMat& m = *spec.monodromy.loop;
        if (!detail::preserves_line(m, spec.characteristic.at(0)))
            report.fail("circle_invariance", "characteristic[1]",
                        "loop holonomy does not preserve the lattice spanned by " +
                            spec.characteristic.at(0).str());
        if (!detail::preserves_line(unimodular_inverse(m), spec.characteristic.at(1)))
            report.fail("circle_invariance", "characteristic[2]",
                        "inverse loop holonomy does not preserve the lattice spanned by " +
                            spec.characteristic.at(1).str());
        return report;
    }

    const IntMat wrap = boundary_holonomy(spec.monodromy);
    const int k = spec.base.corners;
    if (k == 0) {
        if (!detail::preserves_line(wrap, spec.characteristic.at(0)))
            report.fail("circle_invariance", "characteristic[1]",
                        "boundary holonomy does not preserve the lattice spanned by " +
                            spec.characteristic.at(0).str());
        return report;
    }

    for (int j = 0; j + 1 < k; ++j) {
        const Int d = det2(spec.characteristic.at(j), spec.characteristic.at(j + 1));
        if (d != 1)
            report.fail("corner_det",
                        "corner " + std::to_string(j + 1) + "|" + std::to_string(j + 2),
                        "determinant of consecutive vectors is " + detail::det_str(d) + ", not +1");
    }
    const Int dw = det2(wrap * spec.characteristic.at(k - 1), spec.characteristic.at(0));
    if (dw != 1)
        report.fail("wrap_det", "corner " + std::to_string(k) + "|1",
                    "wrap determinant is " + detail::det_str(dw) + ", not +1");
    return report;
}

// Distinguished failure of equivalent_under: the candidate matrix is not a
// bundle automorphism at all (as opposed to one that moves the lattices
// differently).
struct commute_error : error {
    explicit commute_error(const std::string& what) : error(what) {}
};

// Checks whether g realizes an equivalence from a to b: g must commute with
// every monodromy image (so it defines an automorphism of the flat bundle)
// and carry each characteristic lattice of a onto the matching lattice of b.
inline bool equivalent_under(const TwistedToricSpec& a, const TwistedToricSpec& b, const IntMat& g) {
    if (!(a.base == b.base)) throw error("specs have different bases");
    if (!(a.monodromy.alphas == b.monodromy.alphas) || !(a.monodromy.betas == b.monodromy.betas) ||
        a.monodromy.loop.has_value() != b.monodromy.loop.has_value() ||
        (a.monodromy.loop && !(*a.monodromy.loop == *b.monodromy.loop)))
        throw error("specs are not over the same flat bundle");
    if (a.characteristic.size() != b.characteristic.size())
        throw error("characteristic data have different lengths");
    if (!is_sl2(g)) throw error("candidate automorphism is not in SL2(Z)");

    auto must_commute = [&](const IntMat& m, const std::string& which) {
        if (!(g * m == m * g))
            throw commute_error("candidate does not commute with the " + which + " monodromy");
    };
    for (size_t i = 0; i < a.monodromy.alphas.size(); ++i) {
        must_commute(a.monodromy.alphas[i], "alpha" + std::to_string(i + 1));
        must_commute(a.monodromy.betas[i], "beta" + std::to_string(i + 1));
    }
    if (a.monodromy.loop) must_commute(*a.monodromy.loop, "loop");

    for (int j = 0; j < a.characteristic.size(); ++j) {
        const IntVec gu = g * a.characteristic.at(j);
        const IntVec& v = b.characteristic.at(j);
        if (!(gu == v || gu == -v)) return false;
    }
    return true;
}

}  // namespace ttm
