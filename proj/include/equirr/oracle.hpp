#pragma once

#include "equirr/characters.hpp"
#include "equirr/cover.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace equirr {

// The M x M matrix A[j][l] = dim V_j^{H_l} over the rational-orbit
// characters, rows labelled by orbit, columns by cyclic subgroup class.
// Invertible for every valid group; the determinant is carried as a
// certificate.
struct FixedDimMatrix {
    int m = 0;
    std::vector<std::vector<Rational>> a;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    Rational det;
};

FixedDimMatrix fixed_dim_matrix(const CharacterTable& table, const RationalStructure& rs,
                                const SubgroupClassList& subgroups);

// Determinant of a square rational matrix by fraction-free elimination on
// the cleared-denominator integer matrix.
Rational exact_determinant(const std::vector<std::vector<Rational>>& a);

// Exact solve of sum_j n_j A[j][l] = b_l with b_l = dim L(D_l) from the
// Riemann-Roch theorem. Independent of the closed-form multiplicity path:
// this is the oracle the acceptance suite compares against.
std::vector<Rational> solve_system(const CharacterTable& table, const RationalStructure& rs,
                                   const CoverData& cover, long deg0);

struct IdentityCheck {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct VerificationReport {
    std::vector<IdentityCheck> checks;
    bool all_pass = true;
};

// Executable forms of the character-algebra identities behind the
// multiplicity formula:
//  (a) sum_j dim V_j^{H_l} dim V_j / (m_j^2 d_j) = |G| / |H_l|
//  (b) sum_j dim V_j^{H_l} dim V_j^{H_i} / (m_j^2 d_j) = |H_l \ G / H_i|
//  (c) the closed-form multiplicities satisfy the linear system for three
//      seeded random values of deg D_0.
VerificationReport identity_checks(const CharacterTable& table, const RationalStructure& rs,
                                   const CoverData& cover, uint64_t seed);

enum class Realizability { realizable, not_realizable, unknown };

// Brute-force search for branch cycles: one element per branch point drawn
// from the conjugacy class of the distinguished inertia generator, with
// product 1 (product in the commutator subgroup when the base genus is
// positive) and generating the whole group. Budget-bounded; exceeding the
// budget returns unknown.
Realizability realizability_check(const FiniteGroup& g, const ConjugacyClasses& classes,
                                  const CoverData& cover, long budget = 10000000);

} // namespace equirr
