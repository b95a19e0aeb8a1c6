#pragma once

#include "equirr/group.hpp"
#include "equirr/rational.hpp"

#include <string>
#include <vector>

namespace equirr {

// One branch point of the cover X -> Y = X/G: the conjugacy class of its
// (cyclic) inertia group, a generator h of the representative subgroup, and
// the exponent a defining the ramification character psi(h) = zeta_e^a on
// the cotangent line. Faithfulness forces gcd(a, e) = 1.
struct BranchPoint {
    int inertia_class;
    int generator;
    long exponent;
};

// Abstract branch data: everything the formulas consume. No curve model is
// stored, and no existence claim is made (see the realizability check).
struct CoverData {
    const FiniteGroup* group = nullptr;
    const ConjugacyClasses* classes = nullptr;
    const SubgroupClassList* subgroups = nullptr;
    long genus_base = 0;
    std::vector<BranchPoint> points;
};

// Validates and assembles cover data. Branch points with trivial inertia
// are rejected; generators must generate their representative subgroup.
CoverData make_cover(const FiniteGroup& g, const ConjugacyClasses& classes,
                     const SubgroupClassList& subgroups, long genus_base,
                     std::vector<BranchPoint> points);

// R_l = number of branch points with inertia class l; R at the trivial
// class is 0 by convention.
std::vector<long> branch_counts(const CoverData& cover);

// Genus of the top curve from the Hurwitz formula
//   2g_X - 2 = |G|(2g_Y - 2) + sum over branch points of (|G|/e)(e - 1).
// Throws ValidationError("branch data not consistent with a cover") if the
// result is not a nonnegative integer.
long genus_top(const CoverData& cover);

// Genus of X/H_l from the Hurwitz formula for X/H_l -> Y. The fiber of a
// branch point with inertia representative C decomposes along the double
// cosets H_l\G/C; the point for H g C has ramification index
// e / |H_l intersect gCg^-1|.
long quotient_genus(const CoverData& cover, int l);

struct GenusReport {
    long g_top;
    std::vector<long> quotient_genus;             // per subgroup class
    // fibers[l][b] = ramification indices of the points of X/H_l above
    // branch point b, one per double coset
    std::vector<std::vector<std::vector<long>>> fibers;
};

GenusReport genus_report(const CoverData& cover);

// dim L(D_l) = (|G|/|H_l|) deg0 + 1 - g_{X/H_l}, valid in the nonspecial
// regime (the guard below is advisory).
long riemann_roch_dim(const CoverData& cover, int l, long deg0);

enum class NonspecialVerdict { guaranteed, not_guaranteed };

// deg D >= 2 g_X - 1 forces deg(K - D) < 0 and hence nonspeciality.
NonspecialVerdict nonspecial_guard(const CoverData& cover, long deg_d);

} // namespace equirr
