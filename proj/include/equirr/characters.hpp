#pragma once

#include "equirr/cyclotomic.hpp"
#include "equirr/group.hpp"

#include <map>
#include <vector>

namespace equirr {

// A function constant on conjugacy classes, one exact cyclotomic value per
// class. Non-owning references: the group and class data must outlive it.
struct ClassFunction {
    const FiniteGroup* group = nullptr;
    const ConjugacyClasses* classes = nullptr;
    std::vector<Cyclotomic> values; // indexed by class

    const Cyclotomic& at_class(int c) const { return values[c]; }
    Cyclotomic at_element(int g) const { return values[classes->class_of(g)]; }
};

// The absolutely irreducible characters in a deterministic order: trivial
// character first, then ascending degree, then lexicographic comparison of
// the value rows at the group conductor.
class CharacterTable {
public:
    // Exact table via the Dixon-Schneider method: simultaneous eigenvectors
    // of the class-sum matrices over a prime field F_p with p = 1 mod
    // exponent and p > 2*sqrt(|G|), lifted to cyclotomics by discrete
    // Fourier inversion on each element's power sequence.
    static CharacterTable compute(const FiniteGroup& g, const ConjugacyClasses& classes);

    // Adopt user-supplied rows (values indexed by class); validates the
    // full invariant set and sorts into canonical order.
    static CharacterTable from_values(const FiniteGroup& g, const ConjugacyClasses& classes,
                                      std::vector<std::vector<Cyclotomic>> rows);

    const FiniteGroup& group() const { return *group_; }
    const ConjugacyClasses& classes() const { return *classes_; }
    int count() const { return static_cast<int>(irreducibles_.size()); }
    const ClassFunction& irreducible(int j) const { return irreducibles_[j]; }
    long degree(int j) const { return degrees_[j]; }

private:
    const FiniteGroup* group_ = nullptr;
    const ConjugacyClasses* classes_ = nullptr;
    std::vector<ClassFunction> irreducibles_;
    std::vector<long> degrees_;

    void sort_canonical();
    void validate() const; // throws ConsistencyError on any broken invariant
};

// (1/|G|) sum over the group of f * conj(g). For two genuine characters the
// value is a nonnegative rational integer.
Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g);
// Same, demanding a rational result (throws ConsistencyError otherwise).
Rational inner_product_rational(const ClassFunction& f, const ClassFunction& g);

ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& h);
ClassFunction induce_from(const FiniteGroup& g, const ConjugacyClasses& classes,
                          const Subgroup& h, const ClassFunction& psi);

// dim of the fixed space: the average of chi over the subgroup element set.
// Throws ValidationError("not a character") if the average is irrational.
Rational fixed_dim(const ClassFunction& chi, const std::vector<int>& subgroup_elements);

bool is_rational(const ClassFunction& chi);

// Galois-orbit structure over the rationals. Orbits are listed by least
// member index; eta[j] = m_j * sum of the orbit rows is the character of
// the j-th rationally irreducible module (given the Schur indices m_j,
// which are taken as input and default to 1).
struct RationalStructure {
    std::vector<std::vector<int>> orbits;
    std::vector<long> schur;      // m_j
    std::vector<long> orbit_size; // d_j
    std::vector<ClassFunction> eta;
    std::vector<long> dim_v;      // m_j * d_j * common degree
    int orbit_of(int irreducible) const;
};

// Throws ValidationError for an override naming an unknown orbit or a
// non-positive index value.
RationalStructure galois_orbits(const CharacterTable& table,
                                const std::map<int, long>& schur_overrides = {});

} // namespace equirr
