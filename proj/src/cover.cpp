#include "equirr/cover.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace equirr {

CoverData make_cover(const FiniteGroup& g, const ConjugacyClasses& classes,
                     const SubgroupClassList& subgroups, long genus_base,
                     std::vector<BranchPoint> points) {
    if (genus_base < 0) throw ValidationError("base genus must be nonnegative");
    for (const auto& bp : points) {
        if (bp.inertia_class <= 0 || bp.inertia_class >= subgroups.count())
            throw ValidationError("branch point inertia must be a nontrivial cyclic subgroup class");
        const SubgroupClass& cls = subgroups.at(bp.inertia_class);
        if (bp.generator < 0 || bp.generator >= g.order() ||
            g.element_order(bp.generator) != cls.order ||
            !std::binary_search(cls.elements.begin(), cls.elements.end(), bp.generator))
            throw ValidationError("branch point generator does not generate its inertia subgroup");
        long e = cls.order;
        if (std::gcd(((bp.exponent % e) + e) % e, e) != 1)
            throw ValidationError("ramification character exponent not coprime to the inertia order");
    }
    return CoverData{&g, &classes, &subgroups, genus_base, std::move(points)};
}

std::vector<long> branch_counts(const CoverData& cover) {
    std::vector<long> r(cover.subgroups->count(), 0);
    for (const auto& bp : cover.points) ++r[bp.inertia_class];
    return r;
}

long genus_top(const CoverData& cover) {
    const long n = cover.group->order();
    // 2g - 2 in exact arithmetic; all terms are integers here
    long rhs = n * (2 * cover.genus_base - 2);
    for (const auto& bp : cover.points) {
        long e = cover.subgroups->at(bp.inertia_class).order;
        rhs += (n / e) * (e - 1);
    }
    if (rhs % 2 != 0 || rhs + 2 < 0)
        throw ValidationError("branch data not consistent with a cover");
    return (rhs + 2) / 2;
}

namespace {

std::vector<long> fiber_ramification(const CoverData& cover, int l, const BranchPoint& bp) {
    const FiniteGroup& g = *cover.group;
    const std::vector<int>& h = cover.subgroups->at(l).elements;
    const SubgroupClass& inertia = cover.subgroups->at(bp.inertia_class);
    long e = inertia.order;
    std::vector<long> ram;
    for (const auto& coset : double_cosets(g, h, inertia.elements)) {
        int x = coset[0]; // representative of H x C
        // |H intersect x C x^-1|
        std::set<int> conj;
        for (int c : inertia.elements) conj.insert(g.mul(g.mul(x, c), g.inv(x)));
        long meet = 0;
        for (int a : h)
            if (conj.count(a)) ++meet;
        if (e % meet != 0) throw ConsistencyError("fiber ramification index is not integral");
        ram.push_back(e / meet);
    }
    return ram;
}

} // namespace

long quotient_genus(const CoverData& cover, int l) {
    if (l < 0 || l >= cover.subgroups->count())
        throw ValidationError("subgroup class index out of range");
    const long deg = cover.group->order() / cover.subgroups->at(l).order;
    long rhs = deg * (2 * cover.genus_base - 2);
    for (const auto& bp : cover.points) {
        for (long e : fiber_ramification(cover, l, bp)) rhs += e - 1;
    }
    if (rhs % 2 != 0 || rhs + 2 < 0) throw ValidationError("branch data not consistent");
    return (rhs + 2) / 2;
}

GenusReport genus_report(const CoverData& cover) {
    GenusReport report;
    report.g_top = genus_top(cover);
    const int m = cover.subgroups->count();
    report.quotient_genus.resize(m);
    report.fibers.resize(m);
    for (int l = 0; l < m; ++l) {
        const long deg = cover.group->order() / cover.subgroups->at(l).order;
        long rhs = deg * (2 * cover.genus_base - 2);
        report.fibers[l].reserve(cover.points.size());
        for (const auto& bp : cover.points) {
            auto ram = fiber_ramification(cover, l, bp);
            long fiber_degree = 0;
            for (long e : ram) {
                rhs += e - 1;
                fiber_degree += e;
            }
            if (fiber_degree != deg)
                throw ConsistencyError("fiber ramification indices do not sum to the cover degree");
            report.fibers[l].push_back(std::move(ram));
        }
        if (rhs % 2 != 0 || rhs + 2 < 0) throw ValidationError("branch data not consistent");
        report.quotient_genus[l] = (rhs + 2) / 2;
        if (report.quotient_genus[l] > report.g_top)
            throw ConsistencyError("quotient genus exceeds the top genus");
    }
    if (report.quotient_genus[0] != report.g_top)
        throw ConsistencyError("quotient by the trivial subgroup does not reproduce the top genus");
    return report;
}

long riemann_roch_dim(const CoverData& cover, int l, long deg0) {
    const long deg = cover.group->order() / cover.subgroups->at(l).order;
    return deg * deg0 + 1 - quotient_genus(cover, l);
}

NonspecialVerdict nonspecial_guard(const CoverData& cover, long deg_d) {
    return deg_d >= 2 * genus_top(cover) - 1 ? NonspecialVerdict::guaranteed
                                             : NonspecialVerdict::not_guaranteed;
}

} // namespace equirr
