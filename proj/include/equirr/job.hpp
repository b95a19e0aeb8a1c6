#pragma once

#include "equirr/characters.hpp"
#include "equirr/cover.hpp"
#include "equirr/equivariant.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>

namespace equirr {

// A fully validated job: the group materialized with its class and
// subgroup structure, plus cover and divisor data resolved to element
// indices. Holds raw pointers internally, so it lives behind a unique_ptr
// and is neither copied nor moved.
struct JobSpec {
    int version = 1;
    std::string raw;          // exact file bytes, for the inputs digest
    std::string group_label;  // "klein4", "cyclic:7", "permutations", "table"

    FiniteGroup group;
    std::unique_ptr<ConjugacyClasses> classes;
    std::unique_ptr<SubgroupClassList> subgroups;
    std::optional<CharacterTable> user_table;
    std::map<int, long> schur_overrides; // 0-based orbit index -> m

    std::optional<CoverData> cover;
    std::optional<EquivariantDivisor> divisor;

    JobSpec() = default;
    JobSpec(const JobSpec&) = delete;
    JobSpec& operator=(const JobSpec&) = delete;
};

// Evaluate a word like "a*b^2" or "t^-1" over the group's generator names
// ("g<k>" indexes elements of table-built groups; "e" is the identity).
int evaluate_word(const FiniteGroup& g, const std::string& word);

std::unique_ptr<JobSpec> parse_job(const std::string& path, const GroupLimits& limits = {});
std::unique_ptr<JobSpec> parse_job_json(const nlohmann::json& j, std::string raw,
                                        const GroupLimits& limits = {});

// Cyclotomic JSON form {"conductor": N, "coeffs": {"i": "p/q"}}; plain
// strings and integers are accepted as rationals.
nlohmann::json cyclotomic_to_json(const Cyclotomic& v);
Cyclotomic cyclotomic_from_json(const nlohmann::json& j);

namespace fixtures {

// The three bundled covers: a genus-2 curve with the Klein four-group, the
// projective line with a prime-order rotation, and the Klein quartic with
// its order-21 automorphism group.
nlohmann::json example1_job();
nlohmann::json example2_job(long q);
nlohmann::json example3_job();

} // namespace fixtures

} // namespace equirr
