#include "equirr/characters.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <numeric>

namespace equirr {

namespace {

// ---- prime field helpers for the Dixon-Schneider computation ----

using u64 = uint64_t;

u64 mod_mul(u64 a, u64 b, u64 p) { return a * b % p; } // p < 2^31, operands < p

u64 mod_pow(u64 b, u64 e, u64 p) {
    u64 r = 1 % p;
    b %= p;
    while (e) {
        if (e & 1) r = mod_mul(r, b, p);
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    return r;
}

u64 mod_inv(u64 a, u64 p) { return mod_pow(a, p - 2, p); }

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// smallest prime p = 1 (mod n) with p*p > 4*order
u64 find_prime(u64 n, u64 order) {
    for (u64 p = n + 1;; p += n) {
        if (p > (1ULL << 31)) throw ValidationError("no suitable prime");
        if (p * p > 4 * order && is_prime(p)) return p;
    }
}

u64 primitive_root(u64 p) {
    if (p == 2) return 1;
    std::vector<u64> prime_factors;
    u64 m = p - 1;
    for (u64 d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) prime_factors.push_back(m);
    for (u64 g = 2; g < p; ++g) {
        bool ok = true;
        for (u64 q : prime_factors)
            if (mod_pow(g, (p - 1) / q, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw ConsistencyError("no primitive root found");
}

using FpVec = std::vector<u64>;
using FpMat = std::vector<FpVec>;

FpVec mat_vec(const FpMat& m, const FpVec& v, u64 p) {
    FpVec r(m.size(), 0);
    for (size_t i = 0; i < m.size(); ++i) {
        u64 acc = 0;
        for (size_t j = 0; j < v.size(); ++j)
            if (m[i][j] && v[j]) acc = (acc + mod_mul(m[i][j], v[j], p)) % p;
        r[i] = acc;
    }
    return r;
}

// Characteristic polynomial mod p via Hessenberg reduction (field ops only).
FpVec char_poly(FpMat a, u64 p) {
    size_t m = a.size();
    // similarity reduction to upper Hessenberg form
    for (size_t k = 0; k + 2 < m; ++k) {
        size_t piv = 0;
        for (size_t r = k + 1; r < m; ++r)
            if (a[r][k] != 0) {
                piv = r;
                break;
            }
        if (piv == 0) continue;
        if (piv != k + 1) {
            std::swap(a[piv], a[k + 1]);
            for (size_t r = 0; r < m; ++r) std::swap(a[r][piv], a[r][k + 1]);
        }
        u64 inv_piv = mod_inv(a[k + 1][k], p);
        for (size_t i = k + 2; i < m; ++i) {
            if (a[i][k] == 0) continue;
            u64 f = mod_mul(a[i][k], inv_piv, p);
            for (size_t j = 0; j < m; ++j)
                a[i][j] = (a[i][j] + p - mod_mul(f, a[k + 1][j], p)) % p;
            for (size_t r = 0; r < m; ++r)
                a[r][k + 1] = (a[r][k + 1] + mod_mul(f, a[r][i], p)) % p;
        }
    }
    // leading-submatrix recurrence, expansion along the last column
    std::vector<FpVec> c(m + 1);
    c[0] = {1};
    for (size_t k = 1; k <= m; ++k) {
        // (x - H[k-1][k-1]) * c[k-1]
        FpVec cur(k + 1, 0);
        u64 d = a[k - 1][k - 1] % p;
        for (size_t t = 0; t < c[k - 1].size(); ++t) {
            cur[t + 1] = (cur[t + 1] + c[k - 1][t]) % p;
            cur[t] = (cur[t] + p - mod_mul(d, c[k - 1][t], p)) % p;
        }
        u64 subdiag = 1;
        for (size_t i = k - 1; i-- > 0;) {
            subdiag = mod_mul(subdiag, a[i + 1][i], p);
            if (subdiag == 0) break;
            u64 f = mod_mul(a[i][k - 1], subdiag, p);
            if (f == 0) continue;
            for (size_t t = 0; t < c[i].size(); ++t)
                cur[t] = (cur[t] + p - mod_mul(f, c[i][t], p)) % p;
        }
        c[k] = std::move(cur);
    }
    return c[m];
}

u64 poly_eval(const FpVec& poly, u64 x, u64 p) {
    u64 r = 0;
    for (size_t i = poly.size(); i-- > 0;) r = (mod_mul(r, x, p) + poly[i]) % p;
    return r;
}

// Basis of the nullspace of a (not preserved), vectors as rows.
std::vector<FpVec> null_space(FpMat a, u64 p) {
    size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
    std::vector<long> pivot_of_col(cols, -1);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        u64 inv_piv = mod_inv(a[rank][col], p);
        for (size_t j = col; j < cols; ++j) a[rank][j] = mod_mul(a[rank][j], inv_piv, p);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            u64 f = a[r][col];
            for (size_t j = col; j < cols; ++j)
                a[r][j] = (a[r][j] + p - mod_mul(f, a[rank][j], p)) % p;
        }
        pivot_of_col[col] = static_cast<long>(rank);
        ++rank;
    }
    std::vector<FpVec> basis;
    for (size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] >= 0) continue;
        FpVec v(cols, 0);
        v[col] = 1;
        for (size_t c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] >= 0) v[c2] = (p - a[pivot_of_col[c2]][col]) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Express each target vector in the span of `basis` (all length-n vectors);
// returns coordinates. Throws if a target leaves the span.
std::vector<FpVec> coordinates_in_span(const std::vector<FpVec>& basis,
                                       const std::vector<FpVec>& targets, u64 p) {
    size_t n = basis[0].size(), m = basis.size(), t = targets.size();
    // augmented matrix [basis^T | targets^T]
    FpMat a(n, FpVec(m + t, 0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < m; ++j) a[i][j] = basis[j][i];
        for (size_t j = 0; j < t; ++j) a[i][m + j] = targets[j][i];
    }
    std::vector<long> pivot_row_of(m, -1);
    size_t rank = 0;
    for (size_t col = 0; col < m && rank < n; ++col) {
        size_t piv = rank;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[rank]);
        u64 inv_piv = mod_inv(a[rank][col], p);
        for (size_t j = 0; j < m + t; ++j) a[rank][j] = mod_mul(a[rank][j], inv_piv, p);
        for (size_t r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            u64 f = a[r][col];
            for (size_t j = 0; j < m + t; ++j)
                a[r][j] = (a[r][j] + p - mod_mul(f, a[rank][j], p)) % p;
        }
        pivot_row_of[col] = static_cast<long>(rank);
        ++rank;
    }
    for (size_t r = rank; r < n; ++r)
        for (size_t j = 0; j < t; ++j)
            if (a[r][m + j] != 0) throw ConsistencyError("table computation failed");
    std::vector<FpVec> coords(t, FpVec(m, 0));
    for (size_t j = 0; j < m; ++j)
        if (pivot_row_of[j] >= 0)
            for (size_t i = 0; i < t; ++i) coords[i][j] = a[pivot_row_of[j]][m + i];
    return coords;
}

} // namespace

CharacterTable CharacterTable::compute(const FiniteGroup& g, const ConjugacyClasses& classes) {
    const int k = classes.count();
    const u64 order = static_cast<u64>(g.order());
    const u64 n_exp = static_cast<u64>(g.exponent());
    const u64 p = find_prime(n_exp, order);
    const u64 w = primitive_root(p);
    const u64 z = mod_pow(w, (p - 1) / n_exp, p); // fixed primitive exponent-th root

    // class multiplication matrices: m_i[c][j] = #{x in C_i : x^-1 * rep(c) in C_j}
    std::vector<FpMat> class_mat(k);
    for (int i = 0; i < k; ++i) {
        class_mat[i].assign(k, FpVec(k, 0));
        for (int c = 0; c < k; ++c) {
            int rep = classes.representative(c);
            for (int x : classes.members(i)) {
                int j = classes.class_of(g.mul(g.inv(x), rep));
                class_mat[i][c][j] = (class_mat[i][c][j] + 1) % p;
            }
        }
    }

    // split the class-sum coordinate space into common eigenspaces
    std::vector<std::vector<FpVec>> spaces;
    {
        std::vector<FpVec> full(k, FpVec(k, 0));
        for (int i = 0; i < k; ++i) full[i][i] = 1;
        spaces.push_back(std::move(full));
    }
    for (int i = 1; i < k; ++i) {
        bool all_split = true;
        for (const auto& s : spaces)
            if (s.size() > 1) all_split = false;
        if (all_split) break;

        std::vector<std::vector<FpVec>> next;
        for (auto& s : spaces) {
            if (s.size() == 1) {
                next.push_back(std::move(s));
                continue;
            }
            size_t m = s.size();
            std::vector<FpVec> images;
            images.reserve(m);
            for (const auto& v : s) images.push_back(mat_vec(class_mat[i], v, p));
            std::vector<FpVec> coords = coordinates_in_span(s, images, p);
            // restriction matrix: column j = coordinates of image of s[j]
            FpMat restr(m, FpVec(m, 0));
            for (size_t col = 0; col < m; ++col)
                for (size_t row = 0; row < m; ++row) restr[row][col] = coords[col][row];
            FpVec poly = char_poly(restr, p);
            size_t found = 0;
            for (u64 lambda = 0; lambda < p && found < m; ++lambda) {
                if (poly_eval(poly, lambda, p) != 0) continue;
                FpMat shifted = restr;
                for (size_t d = 0; d < m; ++d) shifted[d][d] = (shifted[d][d] + p - lambda) % p;
                std::vector<FpVec> kernel = null_space(std::move(shifted), p);
                if (kernel.empty()) continue;
                std::vector<FpVec> sub;
                for (const auto& coeffs : kernel) {
                    FpVec vec(k, 0);
                    for (size_t j = 0; j < m; ++j) {
                        if (coeffs[j] == 0) continue;
                        for (int c = 0; c < k; ++c)
                            vec[c] = (vec[c] + mod_mul(coeffs[j], s[j][c], p)) % p;
                    }
                    sub.push_back(std::move(vec));
                }
                found += sub.size();
                next.push_back(std::move(sub));
            }
            if (found != m) throw ConsistencyError("table computation failed");
        }
        spaces = std::move(next);
    }
    for (const auto& s : spaces)
        if (s.size() != 1) throw ConsistencyError("table computation failed");

    // central character values, degrees, then character values mod p
    std::vector<FpVec> omega(k, FpVec(k, 0)); // omega[t][i]
    for (int t = 0; t < k; ++t) {
        const FpVec& v = spaces[t][0];
        size_t nz = 0;
        while (nz < v.size() && v[nz] == 0) ++nz;
        u64 inv_coord = mod_inv(v[nz], p);
        for (int i = 0; i < k; ++i) {
            FpVec image = mat_vec(class_mat[i], v, p);
            omega[t][i] = mod_mul(image[nz], inv_coord, p);
        }
    }

    std::vector<FpVec> chi_mod(k, FpVec(k, 0));
    std::vector<long> degrees(k, 0);
    for (int t = 0; t < k; ++t) {
        u64 s = 0;
        for (int i = 0; i < k; ++i) {
            u64 term = mod_mul(omega[t][i], omega[t][classes.inverse_class(i)], p);
            s = (s + mod_mul(term, mod_inv(static_cast<u64>(classes.size(i)) % p, p), p)) % p;
        }
        u64 d2 = mod_mul(order % p, mod_inv(s, p), p);
        u64 deg = 0;
        for (u64 d = 1; 2 * d < p; ++d)
            if (mod_mul(d, d, p) == d2) {
                deg = d;
                break;
            }
        if (deg == 0) throw ConsistencyError("table computation failed");
        degrees[t] = static_cast<long>(deg);
        for (int i = 0; i < k; ++i)
            chi_mod[t][i] = mod_mul(mod_mul(deg, omega[t][i], p),
                                    mod_inv(static_cast<u64>(classes.size(i)) % p, p), p);
    }

    // lift each value: chi(g) = sum c_j zeta_m^j with c_j the eigenvalue
    // multiplicities, recovered by inverse DFT over the power sequence
    CharacterTable table;
    table.group_ = &g;
    table.classes_ = &classes;
    table.degrees_ = degrees;
    table.irreducibles_.resize(k);
    for (int t = 0; t < k; ++t) {
        ClassFunction cf;
        cf.group = &g;
        cf.classes = &classes;
        cf.values.resize(k);
        for (int i = 0; i < k; ++i) {
            long m = g.element_order(classes.representative(i));
            u64 zm = mod_pow(z, n_exp / static_cast<u64>(m), p);
            u64 zm_inv = mod_inv(zm, p);
            u64 m_inv = mod_inv(static_cast<u64>(m) % p, p);
            Cyclotomic value;
            long coeff_sum = 0;
            bool first_term = true;
            for (long j = 0; j < m; ++j) {
                u64 acc = 0;
                for (long s = 0; s < m; ++s) {
                    u64 chi_pow = chi_mod[t][classes.power_class(i, s)];
                    acc = (acc + mod_mul(chi_pow, mod_pow(zm_inv, static_cast<u64>(j) * s % static_cast<u64>(m), p), p)) % p;
                }
                u64 cj = mod_mul(acc, m_inv, p);
                if (cj == 0) continue;
                coeff_sum += static_cast<long>(cj);
                Cyclotomic term = zeta(m, j);
                term *= Rational(static_cast<long long>(cj));
                if (first_term) {
                    value = std::move(term);
                    first_term = false;
                } else {
                    value += term;
                }
            }
            if (coeff_sum != degrees[t]) throw ConsistencyError("table computation failed");
            cf.values[i] = std::move(value);
        }
        table.irreducibles_[t] = std::move(cf);
    }

    table.sort_canonical();
    table.validate();
    return table;
}

CharacterTable CharacterTable::from_values(const FiniteGroup& g, const ConjugacyClasses& classes,
                                           std::vector<std::vector<Cyclotomic>> rows) {
    CharacterTable table;
    table.group_ = &g;
    table.classes_ = &classes;
    for (auto& row : rows) {
        if (row.size() != static_cast<size_t>(classes.count()))
            throw ValidationError("character table row has wrong length");
        ClassFunction cf;
        cf.group = &g;
        cf.classes = &classes;
        cf.values = std::move(row);
        auto deg = cf.values[0].as_rational();
        if (!deg || !deg->is_integer() || deg->is_negative() || deg->is_zero())
            throw ValidationError("character degree is not a positive integer");
        table.degrees_.push_back(deg->as_integer().to_int64());
        table.irreducibles_.push_back(std::move(cf));
    }
    table.sort_canonical();
    try {
        table.validate();
    } catch (const ConsistencyError& e) {
        throw ValidationError(std::string("invalid character table: ") + e.what());
    }
    return table;
}

void CharacterTable::sort_canonical() {
    const long n_exp = group_->exponent();
    const int k = count();
    // lift every value once so lexicographic comparison is a plain
    // coefficient comparison at a single conductor
    std::vector<std::vector<Cyclotomic>> lifted(k);
    for (int j = 0; j < k; ++j) {
        lifted[j].reserve(count());
        for (const auto& v : irreducibles_[j].values) lifted[j].push_back(v.lifted(n_exp));
    }
    std::vector<int> order_idx(k);
    std::iota(order_idx.begin(), order_idx.end(), 0);
    auto is_trivial = [&](int j) {
        for (const auto& v : irreducibles_[j].values)
            if (v != Cyclotomic(Rational(1))) return false;
        return true;
    };
    std::sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
        bool ta = is_trivial(a), tb = is_trivial(b);
        if (ta != tb) return ta;
        if (degrees_[a] != degrees_[b]) return degrees_[a] < degrees_[b];
        for (int c = 0; c < count(); ++c) {
            int cmp = Cyclotomic::compare(lifted[a][c], lifted[b][c]);
            if (cmp != 0) return cmp < 0;
        }
        return false;
    });
    std::vector<ClassFunction> irr;
    std::vector<long> deg;
    for (int j : order_idx) {
        irr.push_back(std::move(irreducibles_[j]));
        deg.push_back(degrees_[j]);
    }
    irreducibles_ = std::move(irr);
    degrees_ = deg;
}

void CharacterTable::validate() const {
    const int k = classes_->count();
    if (count() != k) throw ConsistencyError("number of irreducibles differs from class count");
    const long order = group_->order();
    long deg_sq = 0;
    for (int j = 0; j < k; ++j) {
        if (degrees_[j] <= 0 || order % degrees_[j] != 0)
            throw ConsistencyError("character degree does not divide the group order");
        deg_sq += degrees_[j] * degrees_[j];
    }
    if (deg_sq != order) throw ConsistencyError("degree squares do not sum to the group order");
    for (const auto& v : irreducibles_[0].values)
        if (v != Cyclotomic(Rational(1)))
            throw ConsistencyError("first character is not the trivial character");
    for (int a = 0; a < k; ++a) {
        for (int b = a; b < k; ++b) {
            Rational ip = inner_product_rational(irreducibles_[a], irreducibles_[b]);
            if (ip != Rational(a == b ? 1 : 0))
                throw ConsistencyError("row orthogonality failed");
        }
    }
    for (int c = 1; c < k; ++c) {
        Cyclotomic sum;
        for (int j = 0; j < k; ++j) {
            Cyclotomic term = irreducibles_[j].values[c];
            term *= Rational(degrees_[j]);
            sum += term;
        }
        if (!sum.is_zero()) throw ConsistencyError("column orthogonality at the identity failed");
    }
}

Cyclotomic inner_product(const ClassFunction& f, const ClassFunction& g) {
    if (f.group != g.group || f.classes != g.classes || f.values.size() != g.values.size())
        throw ValidationError("incompatible class functions");
    const ConjugacyClasses& cls = *f.classes;
    Cyclotomic sum;
    for (int c = 0; c < cls.count(); ++c) {
        Cyclotomic term = f.values[c] * g.values[c].conj();
        term *= Rational(cls.size(c));
        sum += term;
    }
    sum *= Rational(BigInt(1), BigInt(f.group->order()));
    return sum;
}

Rational inner_product_rational(const ClassFunction& f, const ClassFunction& g) {
    auto r = inner_product(f, g).as_rational();
    if (!r) throw ConsistencyError("inner product is not rational");
    return *r;
}

ClassFunction restrict_to(const ClassFunction& chi, const Subgroup& h) {
    ClassFunction out;
    out.group = &h.local;
    out.classes = h.local_classes.get();
    out.values.resize(h.local_classes->count());
    for (int c = 0; c < h.local_classes->count(); ++c)
        out.values[c] = chi.at_element(h.to_parent[h.local_classes->representative(c)]);
    return out;
}

ClassFunction induce_from(const FiniteGroup& g, const ConjugacyClasses& classes,
                          const Subgroup& h, const ClassFunction& psi) {
    if (psi.group != &h.local) throw ValidationError("incompatible class functions");
    ClassFunction out;
    out.group = &g;
    out.classes = &classes;
    out.values.resize(classes.count());
    const long hsize = static_cast<long>(h.elements.size());
    for (int c = 0; c < classes.count(); ++c) {
        int rep = classes.representative(c);
        // tally x^-1 * rep * x over the whole group by local class of the image
        std::vector<long> hits(h.local_classes->count(), 0);
        for (int x = 0; x < g.order(); ++x) {
            int y = g.mul(g.mul(g.inv(x), rep), x);
            int loc = h.from_parent[y];
            if (loc >= 0) ++hits[h.local_classes->class_of(loc)];
        }
        Cyclotomic sum;
        for (int lc = 0; lc < h.local_classes->count(); ++lc) {
            if (hits[lc] == 0) continue;
            Cyclotomic term = psi.values[lc];
            term *= Rational(hits[lc]);
            sum += term;
        }
        sum *= Rational(BigInt(1), BigInt(hsize));
        out.values[c] = std::move(sum);
    }
    return out;
}

Rational fixed_dim(const ClassFunction& chi, const std::vector<int>& subgroup_elements) {
    std::vector<long> hits(chi.classes->count(), 0);
    for (int a : subgroup_elements) ++hits[chi.classes->class_of(a)];
    Cyclotomic sum;
    for (int c = 0; c < chi.classes->count(); ++c) {
        if (hits[c] == 0) continue;
        Cyclotomic term = chi.values[c];
        term *= Rational(hits[c]);
        sum += term;
    }
    sum *= Rational(BigInt(1), BigInt(static_cast<long long>(subgroup_elements.size())));
    auto r = sum.as_rational();
    if (!r) throw ValidationError("not a character");
    return *r;
}

bool is_rational(const ClassFunction& chi) {
    for (const auto& v : chi.values)
        if (!v.as_rational()) return false;
    return true;
}

int RationalStructure::orbit_of(int irreducible) const {
    for (size_t j = 0; j < orbits.size(); ++j)
        for (int r : orbits[j])
            if (r == irreducible) return static_cast<int>(j);
    throw ConsistencyError("irreducible index outside every Galois orbit");
}

RationalStructure galois_orbits(const CharacterTable& table,
                                const std::map<int, long>& schur_overrides) {
    const int k = table.count();
    const long n_exp = table.group().exponent();
    const ConjugacyClasses& cls = table.classes();

    // orbit of row j under all value automorphisms zeta -> zeta^u; using
    // sigma_u(chi(g)) = chi(g^u), the image row is the original row
    // reindexed along the class power map
    std::vector<int> orbit_id(k, -1);
    std::vector<std::vector<int>> orbits;
    auto find_row = [&](const std::vector<int>& pm, int j) {
        for (int j2 = 0; j2 < k; ++j2) {
            bool same = true;
            for (int c = 0; c < k && same; ++c)
                same = table.irreducible(j2).values[c] == table.irreducible(j).values[pm[c]];
            if (same) return j2;
        }
        throw ConsistencyError("Galois image of an irreducible character is missing from the table");
    };
    std::vector<std::vector<int>> power_maps;
    for (long u = 1; u <= n_exp; ++u)
        if (std::gcd(u, n_exp) == 1) power_maps.push_back(cls.power_map(u));
    for (int j = 0; j < k; ++j) {
        if (orbit_id[j] >= 0) continue;
        std::vector<int> orbit;
        int id = static_cast<int>(orbits.size());
        std::vector<int> stack{j};
        orbit_id[j] = id;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            orbit.push_back(cur);
            for (const auto& pm : power_maps) {
                int img = find_row(pm, cur);
                if (orbit_id[img] < 0) {
                    orbit_id[img] = id;
                    stack.push_back(img);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        orbits.push_back(std::move(orbit));
    }

    RationalStructure rs;
    rs.orbits = std::move(orbits);
    int m_orbits = static_cast<int>(rs.orbits.size());
    rs.schur.assign(m_orbits, 1);
    for (const auto& [j, m] : schur_overrides) {
        if (j < 0 || j >= m_orbits) throw ValidationError("override for unknown orbit index");
        if (m < 1) throw ValidationError("Schur index override must be positive");
        rs.schur[j] = m;
    }
    for (int j = 0; j < m_orbits; ++j) {
        const auto& orbit = rs.orbits[j];
        rs.orbit_size.push_back(static_cast<long>(orbit.size()));
        long deg = table.degree(orbit[0]);
        for (int r : orbit)
            if (table.degree(r) != deg)
                throw ConsistencyError("Galois orbit mixes degrees");
        ClassFunction eta;
        eta.group = &table.group();
        eta.classes = &cls;
        eta.values.assign(cls.count(), Cyclotomic());
        for (int r : orbit)
            for (int c = 0; c < cls.count(); ++c) eta.values[c] += table.irreducible(r).values[c];
        for (auto& v : eta.values) {
            v *= Rational(rs.schur[j]);
            if (!v.as_rational())
                throw ConsistencyError("rational character has an irrational value");
        }
        rs.eta.push_back(std::move(eta));
        rs.dim_v.push_back(rs.schur[j] * static_cast<long>(orbit.size()) * deg);
    }
    return rs;
}

} // namespace equirr
