#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "corpus.hpp"
#include "equirr/equivariant.hpp"
#include "equirr/errors.hpp"
#include "equirr/oracle.hpp"

#include <algorithm>
#include <set>

using namespace equirr;

namespace {

BranchPoint bp(const corpus::GroupFixture& fx, int element, long exponent = 1) {
    auto loc = fx.subgroups->locate(fx.group, element);
    return BranchPoint{loc.class_index, loc.conjugated_generator, exponent};
}

CoverData klein_cover(const corpus::GroupFixture& fx) {
    int a = fx.group.generators()[0], b = fx.group.generators()[1];
    int ab = fx.group.mul(a, b);
    return make_cover(fx.group, *fx.classes, *fx.subgroups, 0,
                      {bp(fx, a), bp(fx, a), bp(fx, a), bp(fx, b), bp(fx, ab)});
}

} // namespace

TEST_CASE("exact determinants by fraction-free elimination") {
    std::vector<std::vector<Rational>> m{{Rational(2), Rational(1)},
                                         {Rational(7), Rational(4)}};
    CHECK(exact_determinant(m) == Rational(1));
    std::vector<std::vector<Rational>> sing{{Rational(1), Rational(2)},
                                            {Rational(2), Rational(4)}};
    CHECK(exact_determinant(sing) == Rational(0));
    std::vector<std::vector<Rational>> frac{
        {Rational::parse("1/2"), Rational(1), Rational(0)},
        {Rational(0), Rational::parse("1/3"), Rational(1)},
        {Rational(1), Rational(0), Rational::parse("1/5")}};
    // det = (1/2)(1/3)(1/5) + 1 = 31/30
    CHECK(exact_determinant(frac) == Rational::parse("31/30"));
}

TEST_CASE("fixed-dimension matrix of the klein four-group") {
    corpus::GroupFixture fx("klein4", FiniteGroup::from_generators(corpus::klein4_gens()));
    CharacterTable table = CharacterTable::compute(fx.group, *fx.classes);
    RationalStructure rs = galois_orbits(table);
    FixedDimMatrix fm = fixed_dim_matrix(table, rs, *fx.subgroups);
    REQUIRE(fm.m == 4);
    CHECK_FALSE(fm.det.is_zero());
    std::multiset<std::string> rows;
    for (const auto& row : fm.a) {
        std::string r;
        for (const auto& x : row) r += x.str() + ",";
        rows.insert(r);
    }
    CHECK(rows == std::multiset<std::string>{"1,1,1,1,", "1,1,0,0,", "1,0,1,0,", "1,0,0,1,"});
}

TEST_CASE("fixed-dimension matrix of the trivial and prime cyclic groups") {
    corpus::GroupFixture triv("c1", FiniteGroup::from_generators({{"a", {0}}}));
    CharacterTable t1 = CharacterTable::compute(triv.group, *triv.classes);
    RationalStructure rs1 = galois_orbits(t1);
    FixedDimMatrix fm1 = fixed_dim_matrix(t1, rs1, *triv.subgroups);
    REQUIRE(fm1.m == 1);
    CHECK(fm1.a[0][0] == Rational(1));
    CHECK(fm1.det == Rational(1));

    for (long q : {3L, 5L, 7L}) {
        corpus::GroupFixture fx("c" + std::to_string(q),
                                FiniteGroup::from_generators(corpus::cyclic_gens(static_cast<int>(q))));
        CharacterTable table = CharacterTable::compute(fx.group, *fx.classes);
        RationalStructure rs = galois_orbits(table);
        FixedDimMatrix fm = fixed_dim_matrix(table, rs, *fx.subgroups);
        REQUIRE(fm.m == 2);
        // rows: trivial (1,1); the (q-1)-dimensional module (q-1, 0)
        CHECK(fm.a[0][0] == Rational(1));
        CHECK(fm.a[0][1] == Rational(1));
        CHECK(fm.a[1][0] == Rational(q - 1));
        CHECK(fm.a[1][1] == Rational(0));
    }
}

TEST_CASE("fixed-dimension matrices are invertible across the corpus") {
    for (const auto& fx : corpus::standard_corpus()) {
        if (fx->group.order() > 30) continue;
        CharacterTable table = CharacterTable::compute(fx->group, *fx->classes);
        RationalStructure rs = galois_orbits(table);
        FixedDimMatrix fm = fixed_dim_matrix(table, rs, *fx->subgroups);
        CHECK_FALSE(fm.det.is_zero());
    }
}

TEST_CASE("linear system for the klein four cover reproduces the published multiplicities") {
    corpus::GroupFixture fx("klein4", FiniteGroup::from_generators(corpus::klein4_gens()));
    CharacterTable table = CharacterTable::compute(fx.group, *fx.classes);
    RationalStructure rs = galois_orbits(table);
    CoverData cover = klein_cover(fx);

    // right-hand side: dim L(D_l) = (7, 5, 4, 4) over ({e}, <a>, <b>, <ab>)
    int a = fx.group.generators()[0], b = fx.group.generators()[1];
    int la = fx.subgroups->locate(fx.group, a).class_index;
    int lb = fx.subgroups->locate(fx.group, b).class_index;
    int lab = fx.subgroups->locate(fx.group, fx.group.mul(a, b)).class_index;
    CHECK(riemann_roch_dim(cover, 0, 2) == 7);
    CHECK(riemann_roch_dim(cover, la, 2) == 5);
    CHECK(riemann_roch_dim(cover, lb, 2) == 4);
    CHECK(riemann_roch_dim(cover, lab, 2) == 4);

    std::vector<Rational> n = solve_system(table, rs, cover, 2);
    // match against the published labels via the character values
    auto orbit_with = [&](int va, int vb) {
        for (int j = 0; j < 4; ++j)
            if (table.irreducible(j).at_element(a) == Cyclotomic(Rational(va)) &&
                table.irreducible(j).at_element(b) == Cyclotomic(Rational(vb)))
                return rs.orbit_of(j);
        REQUIRE(false);
        return -1;
    };
    CHECK(n[orbit_with(1, 1)] == Rational(3));
    CHECK(n[orbit_with(1, -1)] == Rational(2));
    CHECK(n[orbit_with(-1, 1)] == Rational(1));
    CHECK(n[orbit_with(-1, -1)] == Rational(1));
}

TEST_CASE("linear system on the trivial group") {
    corpus::GroupFixture fx("c1", FiniteGroup::from_generators({{"a", {0}}}));
    CharacterTable table = CharacterTable::compute(fx.group, *fx.classes);
    RationalStructure rs = galois_orbits(table);
    for (long g_y : {0L, 1L, 3L}) {
        CoverData cover = make_cover(fx.group, *fx.classes, *fx.subgroups, g_y, {});
        for (long d : {-1L, 0L, 2L, 9L}) {
            std::vector<Rational> n = solve_system(table, rs, cover, d);
            REQUIRE(n.size() == 1);
            CHECK(n[0] == Rational(d + 1 - g_y));
        }
    }
}

TEST_CASE("linear system for the prime-order rotations") {
    corpus::GroupFixture fx("c7", FiniteGroup::from_generators(corpus::cyclic_gens(7)));
    CharacterTable table = CharacterTable::compute(fx.group, *fx.classes);
    RationalStructure rs = galois_orbits(table);
    int a = fx.group.generators()[0];
    CoverData cover = make_cover(fx.group, *fx.classes, *fx.subgroups, 0,
                                 {bp(fx, a, 1), bp(fx, a, 6)});
    CHECK(riemann_roch_dim(cover, 0, 2) == 15);
    CHECK(riemann_roch_dim(cover, 1, 2) == 3);
    std::vector<Rational> n = solve_system(table, rs, cover, 2);
    CHECK(n[0] == Rational(3));
    CHECK(n[1] == Rational(2));
    CHECK(n[1] == multiplicity_rational(table, rs, cover, 2, 1, false));
}

TEST_CASE("solver equals the closed form on seeded random instances") {
    corpus::Rng rng(0x7777);
    auto corpus_groups = corpus::standard_corpus();
    int instances = 0;
    while (instances < 20) {
        const auto& fx = corpus_groups[rng.below(static_cast<long>(corpus_groups.size()))];
        if (fx->group.order() < 2 || fx->group.order() > 30) continue;
        ++instances;
        CharacterTable table = CharacterTable::compute(fx->group, *fx->classes);
        RationalStructure rs = galois_orbits(table);
        CoverData cover = corpus::random_realizable_cover(*fx, rng, rng.below(2));
        long deg0 = rng.below(14) - 3;
        std::vector<Rational> n = solve_system(table, rs, cover, deg0);
        for (size_t j = 0; j < rs.orbits.size(); ++j)
            CHECK(n[j] == multiplicity_rational(table, rs, cover, deg0, static_cast<int>(j), false));
    }
}

TEST_CASE("identity checks pass on the bundled covers") {
    corpus::GroupFixture klein("klein4", FiniteGroup::from_generators(corpus::klein4_gens()));
    CharacterTable ktable = CharacterTable::compute(klein.group, *klein.classes);
    RationalStructure krs = galois_orbits(ktable);
    VerificationReport kv = identity_checks(ktable, krs, klein_cover(klein), 42);
    CHECK(kv.all_pass);
    // column-sum identity at an order-2 subgroup gives |G|/|H| = 2
    bool saw = false;
    for (const auto& c : kv.checks)
        if (c.name == "column sum H2 = |G|/|H|") {
            CHECK(c.expected == "2");
            CHECK(c.pass);
            saw = true;
        }
    CHECK(saw);

    corpus::GroupFixture g21("g21", FiniteGroup::from_generators(corpus::g21_gens()));
    CharacterTable table = CharacterTable::compute(g21.group, *g21.classes);
    RationalStructure rs = galois_orbits(table);
    CoverData cover = make_cover(g21.group, *g21.classes, *g21.subgroups, 0,
                                 {bp(g21, g21.group.generators()[1], 1),
                                  bp(g21, g21.group.generators()[1], 2),
                                  bp(g21, g21.group.generators()[0], 3)});
    VerificationReport v = identity_checks(table, rs, cover, 99);
    CHECK(v.all_pass);
    for (const auto& c : v.checks) {
        if (c.name == "double cosets H2\\G/H3") CHECK(c.computed == "1");
        if (c.name == "double cosets H1\\G/H1") CHECK(c.computed == "21");
    }
}

TEST_CASE("identity checks hold for every subgroup pair across the corpus") {
    for (const auto& fx : corpus::standard_corpus()) {
        if (fx->group.order() > 24) continue;
        CharacterTable table = CharacterTable::compute(fx->group, *fx->classes);
        RationalStructure rs = galois_orbits(table);
        // an unramified cover of a torus keeps every quotient genus valid
        CoverData cover = make_cover(fx->group, *fx->classes, *fx->subgroups, 1, {});
        VerificationReport v = identity_checks(table, rs, cover, 7);
        CHECK(v.all_pass);
    }
}

TEST_CASE("realizability of the bundled covers") {
    corpus::GroupFixture klein("klein4", FiniteGroup::from_generators(corpus::klein4_gens()));
    CHECK(realizability_check(klein.group, *klein.classes, klein_cover(klein)) ==
          Realizability::realizable);

    corpus::GroupFixture g21("g21", FiniteGroup::from_generators(corpus::g21_gens()));
    CoverData quartic = make_cover(g21.group, *g21.classes, *g21.subgroups, 0,
                                   {bp(g21, g21.group.generators()[1], 1),
                                    bp(g21, g21.group.generators()[1], 2),
                                    bp(g21, g21.group.generators()[0], 3)});
    CHECK(realizability_check(g21.group, *g21.classes, quartic) == Realizability::realizable);

    corpus::GroupFixture c3("c3", FiniteGroup::from_generators(corpus::cyclic_gens(3)));
    CoverData single = make_cover(c3.group, *c3.classes, *c3.subgroups, 0,
                                  {bp(c3, c3.group.generators()[0], 1)});
    CHECK(realizability_check(c3.group, *c3.classes, single) == Realizability::not_realizable);

    // budget exhaustion is honest
    CHECK(realizability_check(g21.group, *g21.classes, quartic, 2) == Realizability::unknown);
}

TEST_CASE("realizability with a positive base genus relaxes the product condition") {
    corpus::GroupFixture c2("c2", FiniteGroup::from_generators(corpus::cyclic_gens(2)));
    int a = c2.group.generators()[0];
    CoverData two = make_cover(c2.group, *c2.classes, *c2.subgroups, 1,
                               {bp(c2, a), bp(c2, a)});
    CHECK(realizability_check(c2.group, *c2.classes, two) == Realizability::realizable);
    CoverData one = make_cover(c2.group, *c2.classes, *c2.subgroups, 1, {bp(c2, a)});
    CHECK(realizability_check(c2.group, *c2.classes, one) == Realizability::unknown);
    // genus 0, no branch points: only the trivial group acts
    CoverData empty = make_cover(c2.group, *c2.classes, *c2.subgroups, 0, {});
    CHECK(realizability_check(c2.group, *c2.classes, empty) == Realizability::not_realizable);
}

TEST_CASE("non-integral ramification module implies not-realizable") {
    corpus::Rng rng(0x1234);
    auto corpus_groups = corpus::standard_corpus();
    int conclusive = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const auto& fx = corpus_groups[rng.below(static_cast<long>(corpus_groups.size()))];
        if (fx->group.order() < 2 || fx->group.order() > 21) continue;
        // arbitrary (not necessarily realizable) branch data
        std::vector<BranchPoint> points;
        long npts = 1 + rng.below(3);
        for (long i = 0; i < npts; ++i) {
            int elem = 1 + static_cast<int>(rng.below(fx->group.order() - 1));
            long e = fx->group.element_order(elem);
            long aexp = 1;
            if (e > 2) {
                do {
                    aexp = 1 + rng.below(e - 1);
                } while (std::gcd(aexp, e) != 1);
            }
            points.push_back(bp(*fx, elem, aexp));
        }
        CoverData cover =
            make_cover(fx->group, *fx->classes, *fx->subgroups, 0, std::move(points));
        CharacterTable table = CharacterTable::compute(fx->group, *fx->classes);
        VirtualCharacter gamma = ramification_module_direct(table, cover);
        Realizability rz = realizability_check(fx->group, *fx->classes, cover);
        if (!gamma.is_genuine && rz != Realizability::unknown) {
            ++conclusive;
            CHECK(rz == Realizability::not_realizable);
        }
    }
    CHECK(conclusive > 5); // the sample must actually exercise the implication
}
