#include "equirr/group.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace equirr {

namespace {

// Deterministic splitmix64 stream for the sampled associativity check.
struct DetRng {
    uint64_t state;
    explicit DetRng(uint64_t seed) : state(seed) {}
    uint64_t next() {
        state += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
};

std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
}

} // namespace

void FiniteGroup::finish_construction(bool full_assoc_check) {
    int n = order_;
    // identity checks
    for (int g = 0; g < n; ++g) {
        if (mul(0, g) != g || mul(g, 0) != g)
            throw ValidationError("invalid multiplication table");
    }
    // two-sided inverses
    inv_.assign(n, -1);
    for (int g = 0; g < n; ++g) {
        for (int h = 0; h < n; ++h) {
            if (mul(g, h) == 0 && mul(h, g) == 0) {
                inv_[g] = h;
                break;
            }
        }
        if (inv_[g] < 0) throw ValidationError("invalid multiplication table");
    }
    // associativity: full check for small groups, deterministic sample above
    if (full_assoc_check && n <= 256) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw ValidationError("invalid multiplication table");
    } else {
        DetRng rng(0x5eedULL ^ static_cast<uint64_t>(n));
        for (int t = 0; t < 1000; ++t) {
            int a = rng.below(n), b = rng.below(n), c = rng.below(n);
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                throw ValidationError("invalid multiplication table");
        }
    }
    // element orders and exponent, with a Lagrange sanity check
    element_order_.assign(n, 0);
    for (int g = 0; g < n; ++g) {
        int k = 1, x = g;
        while (x != 0) {
            x = mul(x, g);
            ++k;
        }
        element_order_[g] = k;
        if (n % k != 0) throw ValidationError("invalid multiplication table");
    }
    exponent_ = 1;
    for (int g = 0; g < n; ++g) exponent_ = std::lcm(exponent_, static_cast<long>(element_order_[g]));
    if (n % exponent_ != 0) throw ConsistencyError("group exponent does not divide the order");
}

FiniteGroup FiniteGroup::from_generators(const std::vector<NamedPermutation>& gens,
                                         const GroupLimits& limits) {
    if (gens.empty()) throw ValidationError("generator list is empty");
    size_t npoints = gens[0].perm.size();
    for (const auto& g : gens) {
        if (g.perm.size() != npoints)
            throw ValidationError("generators act on different point counts");
        std::vector<bool> seen(npoints, false);
        for (int v : g.perm) {
            if (v < 0 || static_cast<size_t>(v) >= npoints || seen[v])
                throw ValidationError("generator '" + g.name + "' is not a permutation");
            seen[v] = true;
        }
        if (g.name.empty() || g.name == "e")
            throw ValidationError("generator names must be nonempty and distinct from 'e'");
    }

    std::vector<int> identity(npoints);
    std::iota(identity.begin(), identity.end(), 0);

    std::vector<std::vector<int>> elems{identity};
    std::map<std::vector<int>, int> index{{identity, 0}};
    FiniteGroup g;
    g.bfs_parent_.push_back({-1, -1});
    for (size_t i = 0; i < elems.size(); ++i) {
        for (size_t j = 0; j < gens.size(); ++j) {
            std::vector<int> p = compose(elems[i], gens[j].perm);
            auto it = index.find(p);
            if (it == index.end()) {
                if (elems.size() >= limits.max_order || elems.size() >= 65535)
                    throw ValidationError("group too large");
                index.emplace(std::move(p), static_cast<int>(elems.size()));
                elems.push_back(compose(elems[i], gens[j].perm));
                g.bfs_parent_.push_back({static_cast<int>(i), static_cast<int>(j)});
            }
        }
    }

    int n = static_cast<int>(elems.size());
    g.order_ = n;
    g.mul_.assign(static_cast<size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            g.mul_[static_cast<size_t>(a) * n + b] =
                static_cast<uint16_t>(index.at(compose(elems[a], elems[b])));

    for (const auto& gen : gens) {
        g.generators_.push_back(index.at(gen.perm));
        g.generator_names_.push_back(gen.name);
    }
    g.finish_construction(false);
    return g;
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    const GroupLimits& limits) {
    size_t n = table.size();
    if (n == 0) throw ValidationError("invalid multiplication table");
    if (n > limits.max_order || n > 65535) throw ValidationError("group too large");
    for (const auto& row : table) {
        if (row.size() != n) throw ValidationError("invalid multiplication table");
        for (int v : row)
            if (v < 0 || static_cast<size_t>(v) >= n)
                throw ValidationError("invalid multiplication table");
    }
    // locate the identity
    int id = -1;
    for (size_t e = 0; e < n; ++e) {
        bool ok = true;
        for (size_t j = 0; j < n && ok; ++j)
            ok = table[e][j] == static_cast<int>(j) && table[j][e] == static_cast<int>(j);
        if (ok) {
            id = static_cast<int>(e);
            break;
        }
    }
    if (id < 0) throw ValidationError("invalid multiplication table");

    // relabel so the identity sits at index 0
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    std::swap(sigma[0], sigma[id]);

    FiniteGroup g;
    g.order_ = static_cast<int>(n);
    g.mul_.assign(n * n, 0);
    std::vector<int> sigma_inv(n);
    for (size_t i = 0; i < n; ++i) sigma_inv[sigma[i]] = static_cast<int>(i);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            g.mul_[a * n + b] = static_cast<uint16_t>(sigma_inv[table[sigma[a]][sigma[b]]]);
    g.finish_construction(true);
    return g;
}

int FiniteGroup::power(int g, long k) const {
    int e = element_order(g);
    long r = ((k % e) + e) % e;
    int acc = 0;
    for (long i = 0; i < r; ++i) acc = mul(acc, g);
    return acc;
}

std::string FiniteGroup::word(int g) const {
    if (g == 0) return "e";
    if (bfs_parent_.empty()) return "g" + std::to_string(g);
    // collect generator indices along the BFS spine, then compress runs
    std::vector<int> letters;
    int cur = g;
    while (cur != 0) {
        letters.push_back(bfs_parent_[cur].second);
        cur = bfs_parent_[cur].first;
    }
    std::reverse(letters.begin(), letters.end());
    std::string out;
    for (size_t i = 0; i < letters.size();) {
        size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        if (!out.empty()) out += "*";
        out += generator_names_[letters[i]];
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

ConjugacyClasses::ConjugacyClasses(const FiniteGroup& g) : group_(&g) {
    int n = g.order();
    class_of_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
        if (class_of_[a] >= 0) continue;
        int c = static_cast<int>(members_.size());
        std::set<int> orbit;
        for (int x = 0; x < n; ++x) orbit.insert(g.mul(g.mul(x, a), g.inv(x)));
        members_.emplace_back(orbit.begin(), orbit.end());
        for (int m : members_.back()) class_of_[m] = c;
    }
    inverse_class_.resize(members_.size());
    for (int c = 0; c < count(); ++c) inverse_class_[c] = class_of_[g.inv(representative(c))];
}

int ConjugacyClasses::power_class(int c, long k) const {
    return class_of_[group_->power(representative(c), k)];
}

std::vector<int> ConjugacyClasses::power_map(long k) const {
    long n = group_->exponent();
    long kr = ((k % n) + n) % n;
    if (std::gcd(kr == 0 ? n : kr, n) != 1) throw ValidationError("not a Galois element");
    std::lock_guard<std::mutex> lock(power_mutex_);
    auto it = power_cache_.find(kr);
    if (it != power_cache_.end()) return it->second;
    std::vector<int> pm(count());
    for (int c = 0; c < count(); ++c) pm[c] = power_class(c, kr);
    power_cache_.emplace(kr, pm);
    return pm;
}

namespace {

std::vector<int> cyclic_span(const FiniteGroup& g, int a) {
    std::set<int> s{0};
    int x = a;
    while (x != 0) {
        s.insert(x);
        x = g.mul(x, a);
    }
    return {s.begin(), s.end()};
}

std::vector<int> conjugate_set(const FiniteGroup& g, const std::vector<int>& s, int x) {
    std::set<int> out;
    for (int a : s) out.insert(g.mul(g.mul(x, a), g.inv(x)));
    return {out.begin(), out.end()};
}

} // namespace

SubgroupClassList::SubgroupClassList(const FiniteGroup& g) {
    // all distinct cyclic subgroups
    std::set<std::vector<int>> subgroups;
    for (int a = 0; a < g.order(); ++a) subgroups.insert(cyclic_span(g, a));

    std::set<std::vector<int>> assigned;
    for (const auto& s : subgroups) {
        if (assigned.count(s)) continue;
        // canonical representative = lexicographically least conjugate
        std::vector<int> canonical = s;
        std::vector<std::vector<int>> orbit;
        for (int x = 0; x < g.order(); ++x) {
            auto c = conjugate_set(g, s, x);
            if (c < canonical) canonical = c;
            orbit.push_back(std::move(c));
        }
        for (auto& c : orbit) assigned.insert(std::move(c));
        int gen = -1;
        for (int a : canonical) {
            if (static_cast<size_t>(g.element_order(a)) == canonical.size()) {
                gen = a;
                break;
            }
        }
        classes_.push_back({canonical, gen, static_cast<long>(canonical.size())});
    }
    std::sort(classes_.begin(), classes_.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.elements < b.elements;
    });
}

SubgroupClassList::Location SubgroupClassList::locate(const FiniteGroup& g, int element) const {
    std::vector<int> span = cyclic_span(g, element);
    for (int x = 0; x < g.order(); ++x) {
        auto c = conjugate_set(g, span, x);
        for (int l = 0; l < count(); ++l) {
            if (classes_[l].elements == c)
                return {l, g.mul(g.mul(x, element), g.inv(x))};
        }
    }
    throw ConsistencyError("cyclic subgroup not matched by any class");
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    if (elements.empty() || elements[0] != 0) throw ValidationError("not a subgroup");
    std::set<int> s(elements.begin(), elements.end());
    for (int a : elements) {
        if (a < 0 || a >= g.order()) throw ValidationError("not a subgroup");
        if (!s.count(g.inv(a))) throw ValidationError("not a subgroup");
        for (int b : elements)
            if (!s.count(g.mul(a, b))) throw ValidationError("not a subgroup");
    }

    Subgroup sub;
    sub.elements = elements;
    sub.to_parent = elements;
    sub.from_parent.assign(g.order(), -1);
    for (size_t i = 0; i < elements.size(); ++i) sub.from_parent[elements[i]] = static_cast<int>(i);

    size_t m = elements.size();
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (size_t a = 0; a < m; ++a)
        for (size_t b = 0; b < m; ++b)
            table[a][b] = sub.from_parent[g.mul(elements[a], elements[b])];
    sub.local = FiniteGroup::from_table(table);
    sub.local_classes = std::make_unique<ConjugacyClasses>(sub.local);
    return sub;
}

std::vector<std::vector<int>> double_cosets(const FiniteGroup& g,
                                            const std::vector<int>& h,
                                            const std::vector<int>& k) {
    std::vector<int> owner(g.order(), -1);
    std::vector<std::vector<int>> cosets;
    for (int start = 0; start < g.order(); ++start) {
        if (owner[start] >= 0) continue;
        int id = static_cast<int>(cosets.size());
        std::vector<int> stack{start};
        owner[start] = id;
        std::vector<int> members;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (int a : h) {
                int y = g.mul(a, x);
                if (owner[y] < 0) {
                    owner[y] = id;
                    stack.push_back(y);
                }
            }
            for (int b : k) {
                int y = g.mul(x, b);
                if (owner[y] < 0) {
                    owner[y] = id;
                    stack.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        cosets.push_back(std::move(members));
    }
    return cosets;
}

long double_coset_count(const FiniteGroup& g,
                        const std::vector<int>& h,
                        const std::vector<int>& k) {
    make_subgroup(g, h);
    make_subgroup(g, k);
    return static_cast<long>(double_cosets(g, h, k).size());
}

} // namespace equirr
