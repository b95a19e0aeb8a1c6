#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace equirr {

struct NamedPermutation {
    std::string name;
    std::vector<int> perm; // perm[i] = image of point i
};

struct GroupLimits {
    std::size_t max_order = 10000;
};

// A finite group materialized as an indexed element set with a dense
// multiplication table. Index 0 is the identity. Construction is by
// breadth-first closure over the generator list (or by table validation),
// so indexing is deterministic for a fixed generator order.
class FiniteGroup {
public:
    static FiniteGroup from_generators(const std::vector<NamedPermutation>& gens,
                                       const GroupLimits& limits = {});
    static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                  const GroupLimits& limits = {});

    int order() const { return order_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * order_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int power(int g, long k) const;

    int element_order(int g) const { return element_order_[g]; }
    long exponent() const { return exponent_; }

    const std::vector<int>& generators() const { return generators_; }
    const std::vector<std::string>& generator_names() const { return generator_names_; }

    // Shortest generator word for display ("e" for the identity; "g<i>" for
    // table-built groups with no named generators).
    std::string word(int g) const;

private:
    int order_ = 1;
    std::vector<uint16_t> mul_{0};
    std::vector<int> inv_{0};
    std::vector<int> element_order_{1};
    long exponent_ = 1;
    std::vector<int> generators_;
    std::vector<std::string> generator_names_;
    std::vector<std::pair<int, int>> bfs_parent_; // (element, generator index); (-1,-1) at identity

    void finish_construction(bool full_assoc_check);
};

// Conjugacy classes in discovery order: class 0 = {identity}, then classes
// ordered by their least element index.
class ConjugacyClasses {
public:
    explicit ConjugacyClasses(const FiniteGroup& g);

    const FiniteGroup& group() const { return *group_; }
    int count() const { return static_cast<int>(members_.size()); }
    int class_of(int g) const { return class_of_[g]; }
    int representative(int c) const { return members_[c][0]; }
    long size(int c) const { return static_cast<long>(members_[c].size()); }
    const std::vector<int>& members(int c) const { return members_[c]; }
    int inverse_class(int c) const { return inverse_class_[c]; }
    // class of rep(c)^k for arbitrary k
    int power_class(int c, long k) const;
    // induced permutation of classes under g -> g^k for gcd(k, exponent) = 1;
    // cached per k. Throws ValidationError("not a Galois element") otherwise.
    std::vector<int> power_map(long k) const;

private:
    const FiniteGroup* group_;
    std::vector<int> class_of_;
    std::vector<std::vector<int>> members_;
    std::vector<int> inverse_class_;
    mutable std::map<long, std::vector<int>> power_cache_;
    mutable std::mutex power_mutex_;
};

struct SubgroupClass {
    std::vector<int> elements; // sorted; canonical conjugate (lexicographically least)
    int generator;             // least element index generating the representative
    long order;
};

// One representative per conjugacy class of cyclic subgroups, sorted by
// order then by the canonical element list; class 0 is the trivial group.
class SubgroupClassList {
public:
    explicit SubgroupClassList(const FiniteGroup& g);

    int count() const { return static_cast<int>(classes_.size()); }
    const SubgroupClass& at(int l) const { return classes_[l]; }

    // Class of <g>, plus g transported into the representative subgroup by
    // a conjugation that maps <g> onto it.
    struct Location {
        int class_index;
        int conjugated_generator;
    };
    Location locate(const FiniteGroup& g, int element) const;

private:
    std::vector<SubgroupClass> classes_;
};

// A validated subgroup together with its own group structure. ClassFunction
// values on the subgroup refer to `local`; `to_parent` embeds local element
// indices back into the ambient group.
struct Subgroup {
    std::vector<int> elements; // sorted ambient indices
    FiniteGroup local;
    std::unique_ptr<ConjugacyClasses> local_classes;
    std::vector<int> to_parent;   // local index -> ambient index
    std::vector<int> from_parent; // ambient index -> local index or -1
};

// Throws ValidationError("not a subgroup") if the element set is not closed
// under multiplication and inverse (the identity is added implicitly only
// if listed; an incomplete set fails).
Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> elements);

// All (H, K) double cosets as a partition of the group, in order of least
// element.
std::vector<std::vector<int>> double_cosets(const FiniteGroup& g,
                                            const std::vector<int>& h,
                                            const std::vector<int>& k);

// |H\G/K|; validates both subgroups.
long double_coset_count(const FiniteGroup& g,
                        const std::vector<int>& h,
                        const std::vector<int>& k);

} // namespace equirr
