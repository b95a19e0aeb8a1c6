#include "equirr/equivariant.hpp"
#include "equirr/errors.hpp"

#include <numeric>

namespace equirr {

namespace {

Rational half(1, 2);

bool nonneg_integer(const Rational& r) { return r.is_integer() && !r.is_negative(); }

// <phi, Res_H chi> on the cyclic subgroup H = <h> of order e, where phi is
// given by its values on the powers of h. Genuine inputs make this a
// nonnegative rational integer.
Rational cyclic_pairing(const CharacterTable& table, int h, long e,
                        const std::vector<Cyclotomic>& phi_on_powers, int w) {
    const ConjugacyClasses& cls = table.classes();
    const FiniteGroup& g = table.group();
    Cyclotomic acc;
    int x = 0; // h^s
    for (long s = 0; s < e; ++s) {
        acc += phi_on_powers[s] * table.irreducible(w).values[cls.class_of(x)].conj();
        x = g.mul(x, h);
    }
    acc *= Rational(BigInt(1), BigInt(e));
    auto r = acc.as_rational();
    if (!r) throw ConsistencyError("cyclic pairing is not rational");
    return *r;
}

// Values of sum_t weight(t) * psi^t on the powers of h, psi(h) = zeta_e^a.
std::vector<Cyclotomic> character_sum_on_powers(long e, long a,
                                                const std::vector<long>& weights) {
    std::vector<Cyclotomic> out(e);
    for (long s = 0; s < e; ++s) {
        // sum over t of weights[t] * zeta_e^(a t s)
        std::vector<Rational> coeff(e);
        for (size_t t = 0; t < weights.size(); ++t) {
            if (weights[t] == 0) continue;
            long ex = ((a * static_cast<long>(t) % e) * s % e + e) % e;
            coeff[ex] += Rational(weights[t]);
        }
        Cyclotomic v;
        for (long ex = 0; ex < e; ++ex) {
            if (coeff[ex].is_zero()) continue;
            Cyclotomic term = zeta(e, ex);
            term *= coeff[ex];
            v += term;
        }
        out[s] = std::move(v);
    }
    return out;
}

} // namespace

VirtualCharacter finalize_virtual(const CharacterTable& table, std::vector<Rational> mult,
                                  bool averaged) {
    VirtualCharacter v;
    v.mult = std::move(mult);
    v.is_averaged = averaged;
    v.is_genuine = true;
    for (int j = 0; j < table.count(); ++j) {
        if (!nonneg_integer(v.mult[j])) v.is_genuine = false;
        v.virtual_degree += v.mult[j] * Rational(table.degree(j));
    }
    if (averaged) v.is_genuine = false;
    return v;
}

long divisor_degree(const FiniteGroup& g, const SubgroupClassList& subgroups,
                    const EquivariantDivisor& d) {
    if (d.pullback_deg0) return *d.pullback_deg0 * g.order();
    long deg = 0;
    for (const auto& term : d.orbits) {
        long e = term.trivial_stabilizer ? 1 : subgroups.at(term.inertia_class).order;
        deg += term.coefficient * (g.order() / e);
    }
    return deg;
}

Rational fixed_dim_on_class(const CharacterTable& table, const SubgroupClassList& subgroups,
                            int w, int l) {
    return fixed_dim(table.irreducible(w), subgroups.at(l).elements);
}

bool orbit_constant(const RationalStructure& rs, const std::vector<Rational>& mult) {
    for (const auto& orbit : rs.orbits)
        for (int r : orbit)
            if (mult[r] != mult[orbit[0]]) return false;
    return true;
}

Rational multiplicity_abs(const CharacterTable& table, const CoverData& cover,
                          long deg0, int w) {
    const std::vector<long> r = branch_counts(cover);
    const Rational dim(table.degree(w));
    Rational acc = dim * Rational(deg0 + 1 - cover.genus_base);
    for (int l = 1; l < cover.subgroups->count(); ++l) {
        if (r[l] == 0) continue;
        Rational fd = fixed_dim_on_class(table, *cover.subgroups, w, l);
        acc -= (dim - fd) * Rational(r[l]) * half;
    }
    return acc;
}

Rational multiplicity_rational(const CharacterTable& table, const RationalStructure& rs,
                               const CoverData& cover, long deg0, int orbit,
                               bool rationality_verified) {
    const std::vector<long> r = branch_counts(cover);
    const Rational dim_v(rs.dim_v[orbit]);
    Rational acc = dim_v * Rational(deg0 + 1 - cover.genus_base);
    for (int l = 1; l < cover.subgroups->count(); ++l) {
        if (r[l] == 0) continue;
        Rational fd = fixed_dim(rs.eta[orbit], cover.subgroups->at(l).elements);
        acc -= (dim_v - fd) * Rational(r[l]) * half;
    }
    long m = rs.schur[orbit];
    acc /= Rational(m * m * rs.orbit_size[orbit]);
    if (m == 1) {
        Rational member = multiplicity_abs(table, cover, deg0, rs.orbits[orbit][0]);
        if (member != acc)
            throw ConsistencyError("orbit multiplicity disagrees with its member multiplicity");
    }
    if (rationality_verified && !nonneg_integer(acc))
        throw ConsistencyError("Schur index inconsistent");
    return acc;
}

VirtualCharacter ramification_module_direct(const CharacterTable& table, const CoverData& cover) {
    const int k = table.count();
    std::vector<Rational> mult(k);
    for (const auto& bp : cover.points) {
        const SubgroupClass& inertia = cover.subgroups->at(bp.inertia_class);
        long e = inertia.order;
        std::vector<long> weights(e, 0); // weights[t] = t for t = 1..e-1
        for (long t = 1; t < e; ++t) weights[t] = t;
        auto phi = character_sum_on_powers(e, bp.exponent, weights);
        Rational inv_e(BigInt(1), BigInt(e));
        for (int j = 0; j < k; ++j)
            mult[j] += cyclic_pairing(table, bp.generator, e, phi, j) * inv_e;
    }
    VirtualCharacter v = finalize_virtual(table, std::move(mult));
    v.is_rational_char = is_rational(to_class_function(table, v));
    return v;
}

VirtualCharacter ramification_module_closed(const CharacterTable& table,
                                            const RationalStructure& rs,
                                            const CoverData& cover) {
    const std::vector<long> r = branch_counts(cover);
    const int k = table.count();
    std::vector<Rational> mult(k);
    for (int j = 0; j < k; ++j) {
        const Rational dim(table.degree(j));
        for (int l = 1; l < cover.subgroups->count(); ++l) {
            if (r[l] == 0) continue;
            Rational fd = fixed_dim_on_class(table, *cover.subgroups, j, l);
            mult[j] += (dim - fd) * Rational(r[l]) * half;
        }
    }

    VirtualCharacter direct = ramification_module_direct(table, cover);
    bool rational = direct.is_rational_char;
    if (rational != orbit_constant(rs, direct.mult))
        throw ConsistencyError("rationality tests disagree for the ramification module");
    if (rational) {
        for (int j = 0; j < k; ++j)
            if (mult[j] != direct.mult[j])
                throw ConsistencyError("closed-form ramification module disagrees with the direct sum");
    } else {
        for (const auto& orbit : rs.orbits) {
            Rational avg;
            for (int j : orbit) avg += direct.mult[j];
            avg /= Rational(static_cast<long long>(orbit.size()));
            for (int j : orbit)
                if (mult[j] != avg)
                    throw ConsistencyError("closed-form ramification module disagrees with the orbit averages");
        }
    }
    VirtualCharacter v = finalize_virtual(table, std::move(mult), !rational);
    v.is_rational_char = rational;
    return v;
}

VirtualCharacter equivariant_degree(const CharacterTable& table,
                                    const SubgroupClassList& subgroups,
                                    const EquivariantDivisor& d) {
    const int k = table.count();
    std::vector<Rational> mult(k);
    if (d.pullback_deg0) {
        for (int j = 0; j < k; ++j) mult[j] = Rational(*d.pullback_deg0 * table.degree(j));
        VirtualCharacter v = finalize_virtual(table, std::move(mult));
        v.is_rational_char = true;
        return v;
    }
    for (const auto& term : d.orbits) {
        long r = term.coefficient;
        if (r == 0) continue;
        if (term.trivial_stabilizer) {
            for (int j = 0; j < k; ++j) mult[j] += Rational(r * table.degree(j));
            continue;
        }
        const SubgroupClass& inertia = subgroups.at(term.inertia_class);
        long e = inertia.order;
        std::vector<long> weights(e, 0);
        long sign = r > 0 ? 1 : -1;
        if (r > 0) {
            // psi^-1 + ... + psi^-r, exponents of psi taken mod e
            for (long t = 1; t <= r; ++t) ++weights[((-t % e) + e) % e];
        } else {
            // psi^0 + ... + psi^(-r-1)
            for (long t = 0; t <= -r - 1; ++t) ++weights[t % e];
        }
        auto phi = character_sum_on_powers(e, term.exponent, weights);
        for (int j = 0; j < k; ++j) {
            Rational pairing = cyclic_pairing(table, term.generator, e, phi, j);
            mult[j] += Rational(sign) * pairing;
        }
    }
    VirtualCharacter v = finalize_virtual(table, std::move(mult));
    v.is_rational_char = is_rational(to_class_function(table, v));
    return v;
}

Decomposition borne_character(const CharacterTable& table, const RationalStructure& rs,
                              const CoverData& cover, const EquivariantDivisor& d) {
    const int k = table.count();
    VirtualCharacter gamma = ramification_module_direct(table, cover);
    VirtualCharacter deg_eq = equivariant_degree(table, *cover.subgroups, d);

    std::vector<Rational> mult(k);
    for (int j = 0; j < k; ++j)
        mult[j] = Rational((1 - cover.genus_base) * table.degree(j)) + deg_eq.mult[j] - gamma.mult[j];

    Decomposition out;
    out.absolute = finalize_virtual(table, std::move(mult));
    out.rational = orbit_constant(rs, out.absolute.mult);
    out.absolute.is_rational_char = out.rational;

    const long deg_d = divisor_degree(table.group(), *cover.subgroups, d);
    const long g_x = genus_top(cover);
    if (out.absolute.virtual_degree != Rational(deg_d + 1 - g_x))
        throw ConsistencyError("degree of the virtual character disagrees with deg D + 1 - g");

    if (!gamma.is_genuine)
        out.notes.push_back("ramification module has non-integral multiplicities; branch data may not be realizable");
    const NonspecialVerdict verdict = nonspecial_guard(cover, deg_d);
    if (verdict == NonspecialVerdict::guaranteed) {
        bool negative = false;
        for (const auto& m : out.absolute.mult)
            if (m.is_negative()) negative = true;
        if (negative) out.notes.push_back("inconsistent input: negative multiplicity despite guaranteed nonspeciality");
    } else {
        out.notes.push_back("virtual character (nonspeciality not guaranteed)");
    }
    if (out.rational) {
        out.orbit_mult.resize(rs.orbits.size());
        for (size_t j = 0; j < rs.orbits.size(); ++j) {
            Rational n = out.absolute.mult[rs.orbits[j][0]] / Rational(rs.schur[j]);
            if (!n.is_integer())
                out.notes.push_back("Schur index inconsistent: orbit multiplicity is not divisible by m");
            out.orbit_mult[j] = n;
        }
    }
    return out;
}

Decomposition decompose_pullback(const CharacterTable& table, const RationalStructure& rs,
                                 const CoverData& cover, long deg0) {
    const int k = table.count();
    std::vector<Rational> mult(k);
    for (int j = 0; j < k; ++j) mult[j] = multiplicity_abs(table, cover, deg0, j);

    // rationality of chi(L(D)) for a pullback is equivalent to rationality
    // of the ramification module
    VirtualCharacter gamma = ramification_module_direct(table, cover);
    const bool rational = gamma.is_rational_char;

    Decomposition out;
    out.rational = rational;
    out.averaged = !rational;
    out.absolute = finalize_virtual(table, std::move(mult), !rational);
    out.absolute.is_rational_char = rational;
    if (!orbit_constant(rs, out.absolute.mult))
        throw ConsistencyError("closed-form multiplicities are not constant on Galois orbits");

    if (rational) {
        bool all_integer = true, all_genuine = true;
        for (const auto& m : out.absolute.mult) {
            if (!m.is_integer()) all_integer = false;
            if (!nonneg_integer(m)) all_genuine = false;
        }
        if (!all_integer)
            out.notes.push_back("inconsistent cover data: rational character with non-integer multiplicity");
        out.orbit_mult.resize(rs.orbits.size());
        for (size_t j = 0; j < rs.orbits.size(); ++j) {
            try {
                out.orbit_mult[j] = multiplicity_rational(table, rs, cover, deg0,
                                                          static_cast<int>(j), all_genuine);
            } catch (const ConsistencyError&) {
                out.orbit_mult[j] = multiplicity_rational(table, rs, cover, deg0,
                                                          static_cast<int>(j), false);
                out.notes.push_back("Schur index inconsistent: orbit " + std::to_string(j + 1));
            }
        }
        out.notes.push_back("exact multiplicities (rational case)");
    } else {
        out.orbit_mult.resize(rs.orbits.size());
        for (size_t j = 0; j < rs.orbits.size(); ++j)
            out.orbit_mult[j] = out.absolute.mult[rs.orbits[j][0]];
        out.notes.push_back("averaged multiplicities per Galois orbit (non-rational case)");
    }
    return out;
}

VirtualCharacter decompose_class_function(const CharacterTable& table, const ClassFunction& f) {
    std::vector<Rational> mult(table.count());
    for (int j = 0; j < table.count(); ++j) {
        auto ip = inner_product(f, table.irreducible(j)).as_rational();
        if (!ip) throw ValidationError("class function does not decompose rationally");
        mult[j] = *ip;
    }
    return finalize_virtual(table, std::move(mult));
}

ClassFunction to_class_function(const CharacterTable& table, const VirtualCharacter& v) {
    ClassFunction f;
    f.group = &table.group();
    f.classes = &table.classes();
    f.values.assign(table.classes().count(), Cyclotomic());
    for (int j = 0; j < table.count(); ++j) {
        if (v.mult[j].is_zero()) continue;
        for (int c = 0; c < table.classes().count(); ++c) {
            Cyclotomic term = table.irreducible(j).values[c];
            term *= v.mult[j];
            f.values[c] += term;
        }
    }
    return f;
}

VirtualCharacter regular_character(const CharacterTable& table) {
    std::vector<Rational> mult(table.count());
    for (int j = 0; j < table.count(); ++j) mult[j] = Rational(table.degree(j));
    VirtualCharacter v = finalize_virtual(table, std::move(mult));
    v.is_rational_char = true;
    return v;
}

} // namespace equirr
