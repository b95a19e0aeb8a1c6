#include "equirr/oracle.hpp"
#include "equirr/equivariant.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace equirr {

namespace {

// Clear denominators row by row so Bareiss runs over integers.
std::vector<std::vector<BigInt>> to_integer_rows(const std::vector<std::vector<Rational>>& a,
                                                 std::vector<BigInt>& row_scale) {
    std::vector<std::vector<BigInt>> m(a.size());
    row_scale.assign(a.size(), BigInt(1));
    for (size_t i = 0; i < a.size(); ++i) {
        BigInt l(1);
        for (const auto& x : a[i]) l = BigInt::lcm(l, x.denominator());
        row_scale[i] = l;
        m[i].reserve(a[i].size());
        for (const auto& x : a[i]) m[i].push_back(x.numerator() * (l / x.denominator()));
    }
    return m;
}

// One-step fraction-free (Bareiss) elimination to upper triangular form.
// Returns the permutation sign; the determinant of the integer matrix is
// sign * last pivot.
int bareiss(std::vector<std::vector<BigInt>>& m) {
    const size_t n = m.size();
    int sign = 1;
    BigInt prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return 0; // singular
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < m[i].size(); ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = BigInt(0);
        }
        prev = m[k][k];
    }
    return sign;
}

} // namespace

Rational exact_determinant(const std::vector<std::vector<Rational>>& a) {
    if (a.empty()) return Rational(1);
    std::vector<BigInt> row_scale;
    auto m = to_integer_rows(a, row_scale);
    int sign = bareiss(m);
    if (sign == 0 || m.back().back().is_zero()) return Rational(0);
    Rational det(m.back().back());
    if (sign < 0) det = -det;
    for (const auto& s : row_scale) det /= Rational(s);
    return det;
}

FixedDimMatrix fixed_dim_matrix(const CharacterTable& table, const RationalStructure& rs,
                                const SubgroupClassList& subgroups) {
    FixedDimMatrix fm;
    fm.m = static_cast<int>(rs.orbits.size());
    if (fm.m != subgroups.count())
        throw ConsistencyError("rational orbit count differs from the cyclic subgroup class count");
    fm.a.assign(fm.m, std::vector<Rational>(fm.m));
    for (int j = 0; j < fm.m; ++j) {
        for (int l = 0; l < fm.m; ++l)
            fm.a[j][l] = fixed_dim(rs.eta[j], subgroups.at(l).elements);
        fm.row_labels.push_back("V" + std::to_string(j + 1));
    }
    for (int l = 0; l < fm.m; ++l) {
        const auto& cls = subgroups.at(l);
        fm.col_labels.push_back("H" + std::to_string(l + 1) + "=<" +
                                table.group().word(cls.generator) + ">");
    }
    fm.det = exact_determinant(fm.a);
    if (fm.det.is_zero()) throw ConsistencyError("fixed-dimension matrix is singular");
    return fm;
}

std::vector<Rational> solve_system(const CharacterTable& table, const RationalStructure& rs,
                                   const CoverData& cover, long deg0) {
    FixedDimMatrix fm = fixed_dim_matrix(table, rs, *cover.subgroups);
    const int m = fm.m;
    // equations are indexed by subgroup class: sum_j n_j A[j][l] = b_l
    std::vector<std::vector<Rational>> rows(m, std::vector<Rational>(m + 1));
    for (int l = 0; l < m; ++l) {
        for (int j = 0; j < m; ++j) rows[l][j] = fm.a[j][l];
        rows[l][m] = Rational(riemann_roch_dim(cover, l, deg0));
    }
    std::vector<BigInt> row_scale;
    auto aug = to_integer_rows(rows, row_scale);
    if (bareiss(aug) == 0 || aug[m - 1][m - 1].is_zero())
        throw ConsistencyError("fixed-dimension matrix is singular");
    // back substitution over exact rationals
    std::vector<Rational> n(m);
    for (int i = m; i-- > 0;) {
        Rational acc(aug[i][m]);
        for (int j = i + 1; j < m; ++j) acc -= Rational(aug[i][j]) * n[j];
        n[i] = acc / Rational(aug[i][i]);
    }
    return n;
}

VerificationReport identity_checks(const CharacterTable& table, const RationalStructure& rs,
                                   const CoverData& cover, uint64_t seed) {
    VerificationReport report;
    const SubgroupClassList& subgroups = *cover.subgroups;
    FixedDimMatrix fm = fixed_dim_matrix(table, rs, subgroups);
    const int m = fm.m;
    const long order = table.group().order();

    auto add = [&](std::string name, const Rational& expected, const Rational& computed) {
        bool pass = expected == computed;
        report.checks.push_back({std::move(name), expected.str(), computed.str(), pass});
        if (!pass) report.all_pass = false;
    };

    for (int l = 0; l < m; ++l) {
        Rational acc;
        for (int j = 0; j < m; ++j) {
            Rational w(BigInt(1), BigInt(rs.schur[j] * rs.schur[j] * rs.orbit_size[j]));
            acc += w * fm.a[j][l] * Rational(rs.dim_v[j]);
        }
        add("column sum H" + std::to_string(l + 1) + " = |G|/|H|",
            Rational(order / subgroups.at(l).order), acc);
    }
    for (int l = 0; l < m; ++l) {
        for (int i = l; i < m; ++i) {
            Rational acc;
            for (int j = 0; j < m; ++j) {
                Rational w(BigInt(1), BigInt(rs.schur[j] * rs.schur[j] * rs.orbit_size[j]));
                acc += w * fm.a[j][l] * fm.a[j][i];
            }
            long dc = double_coset_count(table.group(), subgroups.at(l).elements,
                                         subgroups.at(i).elements);
            add("double cosets H" + std::to_string(l + 1) + "\\G/H" + std::to_string(i + 1),
                Rational(dc), acc);
        }
    }
    // closed-form multiplicities against the linear system for three seeded
    // degrees
    uint64_t state = seed ^ 0x9e3779b97f4a7c15ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int trial = 0; trial < 3; ++trial) {
        long deg0 = static_cast<long>(next() % 14) - 3;
        std::vector<Rational> n(m);
        for (int j = 0; j < m; ++j)
            n[j] = multiplicity_rational(table, rs, cover, deg0, j, false);
        for (int l = 0; l < m; ++l) {
            Rational lhs;
            for (int j = 0; j < m; ++j) lhs += n[j] * fm.a[j][l];
            add("linear system trial " + std::to_string(trial + 1) + ", deg0=" +
                    std::to_string(deg0) + " at H" + std::to_string(l + 1),
                Rational(riemann_roch_dim(cover, l, deg0)), lhs);
        }
    }
    return report;
}

namespace {

long mod_inverse(long a, long n) {
    long t = 0, new_t = 1, r = n, new_r = ((a % n) + n) % n;
    while (new_r != 0) {
        long q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) throw ValidationError("element not invertible");
    return ((t % n) + n) % n;
}

std::vector<int> commutator_subgroup(const FiniteGroup& g) {
    std::set<int> gens;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            gens.insert(g.mul(g.mul(g.mul(a, b), g.inv(a)), g.inv(b)));
    // close under multiplication
    std::vector<int> stack(gens.begin(), gens.end());
    std::set<int> closure(gens.begin(), gens.end());
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : gens) {
            int z = g.mul(x, y);
            if (closure.insert(z).second) stack.push_back(z);
        }
    }
    return {closure.begin(), closure.end()};
}

bool generates_group(const FiniteGroup& g, const std::vector<int>& elements) {
    std::set<int> closure{0};
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (int y : elements) {
            int z = g.mul(x, y);
            if (closure.insert(z).second) stack.push_back(z);
        }
    }
    return static_cast<int>(closure.size()) == g.order();
}

} // namespace

Realizability realizability_check(const FiniteGroup& g, const ConjugacyClasses& classes,
                                  const CoverData& cover, long budget) {
    // Candidate set per branch point: the conjugacy class of the element
    // the ramification character maps to zeta_e, i.e. h^(a^-1 mod e).
    std::vector<std::vector<int>> candidates;
    long combos = 1;
    for (const auto& bp : cover.points) {
        long e = cover.subgroups->at(bp.inertia_class).order;
        long a_inv = mod_inverse(bp.exponent, e);
        int distinguished = g.power(bp.generator, a_inv);
        candidates.push_back(classes.members(classes.class_of(distinguished)));
        long size = static_cast<long>(candidates.back().size());
        if (combos > budget / size) return Realizability::unknown;
        combos *= size;
    }

    const bool relaxed = cover.genus_base > 0;
    std::set<int> target; // admissible values of the full product
    if (relaxed) {
        auto cs = commutator_subgroup(g);
        target.insert(cs.begin(), cs.end());
    } else {
        target.insert(0);
    }

    const size_t b = candidates.size();
    if (b == 0) {
        bool ok = target.count(0) && generates_group(g, {});
        if (ok) return Realizability::realizable;
        return relaxed ? Realizability::unknown : Realizability::not_realizable;
    }

    // Depth-first over all but the last class; the last element is forced
    // by the product condition and checked by class membership.
    std::vector<int> chosen(b, 0);
    std::set<int> last_class(candidates[b - 1].begin(), candidates[b - 1].end());
    std::vector<int> prefix(b + 1, 0); // prefix[i] = product of chosen[0..i-1]

    std::function<bool(size_t)> search = [&](size_t depth) -> bool {
        if (depth == b - 1) {
            for (int t : target) {
                int need = g.mul(g.inv(prefix[depth]), t);
                if (!last_class.count(need)) continue;
                chosen[b - 1] = need;
                if (generates_group(g, chosen)) return true;
            }
            return false;
        }
        for (int c : candidates[depth]) {
            chosen[depth] = c;
            prefix[depth + 1] = g.mul(prefix[depth], c);
            if (search(depth + 1)) return true;
        }
        return false;
    };
    if (search(0)) return Realizability::realizable;
    return relaxed ? Realizability::unknown : Realizability::not_realizable;
}

} // namespace equirr
