#pragma once

#include "equirr/characters.hpp"
#include "equirr/cover.hpp"

#include <optional>
#include <string>
#include <vector>

namespace equirr {

// A virtual character as an exact multiplicity vector over the table's
// irreducibles. Multiplicities are integers for honest virtual characters
// and rationals when the vector records per-orbit averages.
struct VirtualCharacter {
    std::vector<Rational> mult;
    bool is_genuine = false;       // all multiplicities nonnegative integers
    bool is_rational_char = false; // underlying class function has rational values
    bool is_averaged = false;
    Rational virtual_degree;       // evaluation at the identity
};

// Recompute flags and the degree after filling `mult`.
VirtualCharacter finalize_virtual(const CharacterTable& table, std::vector<Rational> mult,
                                  bool averaged = false);

// One G-orbit term of an invariant divisor: r times the reduced orbit of a
// point whose stabilizer is described like a branch point (or is trivial).
struct OrbitTerm {
    bool trivial_stabilizer = false;
    int inertia_class = 0; // meaningful when stabilizer is nontrivial
    int generator = 0;
    long exponent = 1;
    long coefficient = 0; // r
};

struct EquivariantDivisor {
    std::vector<OrbitTerm> orbits;
    std::optional<long> pullback_deg0; // set when D = pi^*(D_0)
};

// deg D = sum of r * |G| / e over orbit terms (e = 1 for a trivial
// stabilizer); for a pullback, deg0 * |G|.
long divisor_degree(const FiniteGroup& g, const SubgroupClassList& subgroups,
                    const EquivariantDivisor& d);

struct Decomposition {
    VirtualCharacter absolute;
    // Rational-orbit multiplicities n_j; empty when not computed.
    std::vector<Rational> orbit_mult;
    bool rational = false; // the decomposed character is rational
    bool averaged = false;
    std::vector<std::string> notes;
};

// dim(W)(deg0 + 1 - g_Y) - sum_l (dim W - dim W^{H_l}) R_l / 2
// for the absolutely irreducible character with table index w. When the
// character of L(D) is rational this is its exact multiplicity; otherwise
// it is the average over the Galois orbit.
Rational multiplicity_abs(const CharacterTable& table, const CoverData& cover,
                          long deg0, int w);

// (1 / (m_j^2 d_j)) (dim V_j (deg0 + 1 - g_Y)
//                    - sum_l (dim V_j - dim V_j^{H_l}) R_l / 2)
// for the rational orbit j. With `rationality_verified`, a result that is
// not a nonnegative integer throws
// ConsistencyError("Schur index inconsistent").
Rational multiplicity_rational(const CharacterTable& table, const RationalStructure& rs,
                               const CoverData& cover, long deg0, int orbit,
                               bool rationality_verified = false);

// Apply multiplicity_abs to every irreducible of a pullback divisor
// pi^*(D_0) with deg D_0 = deg0. Rationality of the character of L(D) is
// equivalent to rationality of the ramification module and is decided from
// it; the result is exact in the rational case and flagged as per-orbit
// averages otherwise.
Decomposition decompose_pullback(const CharacterTable& table, const RationalStructure& rs,
                                 const CoverData& cover, long deg0);

// Ramification module by the defining sum: per branch point
// (1/e) Ind from the inertia subgroup of sum_{t=1}^{e-1} t psi^t.
// Multiplicities are always rational; non-integrality is reported through
// the flags, not as an error.
VirtualCharacter ramification_module_direct(const CharacterTable& table, const CoverData& cover);

// Closed form: per irreducible W, sum_l (dim W - dim W^{H_l}) R_l / 2.
// Cross-checked against the direct computation: exact equality when the
// direct module is rational, orbit-average equality always. A mismatch is
// an internal-consistency failure.
VirtualCharacter ramification_module_closed(const CharacterTable& table,
                                            const RationalStructure& rs,
                                            const CoverData& cover);

// Equivariant degree of an invariant divisor: per orbit term,
//   r > 0:  Ind(psi^-1 + ... + psi^-r)
//   r < 0: -Ind(psi^0 + ... + psi^(-r-1))
//   r = 0:  0
// with r copies of the regular character for a trivial stabilizer and
// deg0 * (regular character) for a pullback.
VirtualCharacter equivariant_degree(const CharacterTable& table,
                                    const SubgroupClassList& subgroups,
                                    const EquivariantDivisor& d);

// chi(L(D)) = (1 - g_Y) chi(k[G]) + deg_eq(D) - ramification module.
// Asserts the degree identity chi(L(D))(e) = deg D + 1 - g_X.
Decomposition borne_character(const CharacterTable& table, const RationalStructure& rs,
                              const CoverData& cover, const EquivariantDivisor& d);

// Multiplicity vector of an arbitrary class function against the table.
VirtualCharacter decompose_class_function(const CharacterTable& table, const ClassFunction& f);

ClassFunction to_class_function(const CharacterTable& table, const VirtualCharacter& v);

VirtualCharacter regular_character(const CharacterTable& table);

// dim of the fixed space of the irreducible w under subgroup class l.
Rational fixed_dim_on_class(const CharacterTable& table, const SubgroupClassList& subgroups,
                            int w, int l);

// True when the multiplicity vector is constant along every Galois orbit,
// i.e. when the corresponding class function is rational-valued.
bool orbit_constant(const RationalStructure& rs, const std::vector<Rational>& mult);

} // namespace equirr
