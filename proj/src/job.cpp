#include "equirr/job.hpp"
#include "equirr/errors.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace equirr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
    throw ValidationError(field + ": " + msg);
}

long require_int(const json& j, const std::string& field) {
    if (!j.is_number_integer()) fail(field, "expected an integer");
    return j.get<long>();
}

std::vector<NamedPermutation> builtin_group(const std::string& name) {
    if (name == "klein4") {
        return {{"a", {1, 0, 2, 3}}, {"b", {0, 1, 3, 2}}};
    }
    if (name == "g21") {
        // 7-cycle t and an order-3 permutation s with s t s^-1 = t^4
        return {{"t", {1, 2, 3, 4, 5, 6, 0}}, {"s", {0, 4, 1, 5, 2, 6, 3}}};
    }
    if (name.rfind("cyclic:", 0) == 0) {
        long q = 0;
        try {
            q = std::stol(name.substr(7));
        } catch (...) {
            fail("group.builtin", "malformed cyclic order in '" + name + "'");
        }
        if (q < 1 || q > 10000) fail("group.builtin", "cyclic order out of range");
        std::vector<int> cycle(q);
        for (long i = 0; i < q; ++i) cycle[i] = static_cast<int>((i + 1) % q);
        return {{"a", cycle}};
    }
    fail("group.builtin", "unknown builtin group '" + name + "'");
}

} // namespace

int evaluate_word(const FiniteGroup& g, const std::string& word) {
    // word := atom ('*' atom)*, atom := name ('^' int)?
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < word.size() && std::isspace(static_cast<unsigned char>(word[pos]))) ++pos;
    };
    auto parse_atom = [&]() -> int {
        skip_ws();
        size_t start = pos;
        while (pos < word.size() &&
               (std::isalnum(static_cast<unsigned char>(word[pos])) || word[pos] == '_'))
            ++pos;
        if (start == pos) throw ValidationError("malformed word '" + word + "'");
        std::string name = word.substr(start, pos - start);
        int elem = -1;
        if (name == "e") {
            elem = 0;
        } else {
            for (size_t i = 0; i < g.generator_names().size(); ++i) {
                if (g.generator_names()[i] == name) {
                    elem = g.generators()[i];
                    break;
                }
            }
            if (elem < 0 && name.size() > 1 && name[0] == 'g' && g.generator_names().empty()) {
                // table-built groups expose raw element indices as g<k>
                try {
                    long idx = std::stol(name.substr(1));
                    if (idx >= 0 && idx < g.order()) elem = static_cast<int>(idx);
                } catch (...) {
                }
            }
            if (elem < 0) throw ValidationError("unknown generator name '" + name + "'");
        }
        skip_ws();
        long exp = 1;
        if (pos < word.size() && word[pos] == '^') {
            ++pos;
            skip_ws();
            size_t estart = pos;
            if (pos < word.size() && (word[pos] == '-' || word[pos] == '+')) ++pos;
            while (pos < word.size() && std::isdigit(static_cast<unsigned char>(word[pos]))) ++pos;
            try {
                exp = std::stol(word.substr(estart, pos - estart));
            } catch (...) {
                throw ValidationError("malformed exponent in word '" + word + "'");
            }
        }
        return g.power(elem, exp);
    };
    int acc = parse_atom();
    skip_ws();
    while (pos < word.size()) {
        if (word[pos] != '*') throw ValidationError("malformed word '" + word + "'");
        ++pos;
        acc = g.mul(acc, parse_atom());
        skip_ws();
    }
    return acc;
}

nlohmann::json cyclotomic_to_json(const Cyclotomic& v) {
    json coeffs = json::object();
    for (size_t i = 0; i < v.coeffs().size(); ++i) {
        if (!v.coeffs()[i].is_zero()) coeffs[std::to_string(i)] = v.coeffs()[i].str();
    }
    return json{{"conductor", v.conductor()}, {"coeffs", coeffs}};
}

Cyclotomic cyclotomic_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Cyclotomic(Rational(j.get<long long>()));
    if (j.is_string()) return Cyclotomic(Rational::parse(j.get<std::string>()));
    if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs"))
        throw ValidationError("cyclotomic value must be an integer, a 'p/q' string, "
                              "or {conductor, coeffs}");
    long n = require_int(j.at("conductor"), "conductor");
    Cyclotomic acc;
    for (const auto& [key, value] : j.at("coeffs").items()) {
        long i = 0;
        try {
            i = std::stol(key);
        } catch (...) {
            throw ValidationError("cyclotomic coefficient key '" + key + "' is not an index");
        }
        if (!value.is_string()) throw ValidationError("cyclotomic coefficients must be 'p/q' strings");
        Cyclotomic term = zeta(n, i);
        term *= Rational::parse(value.get<std::string>());
        acc += term;
    }
    return acc.lifted(std::lcm(acc.conductor(), n));
}

std::unique_ptr<JobSpec> parse_job_json(const json& j, std::string raw, const GroupLimits& limits) {
    auto job = std::make_unique<JobSpec>();
    job->raw = std::move(raw);

    if (!j.is_object()) throw ValidationError("job: top level must be an object");
    if (!j.contains("version")) fail("version", "missing");
    if (require_int(j.at("version"), "version") != 1) fail("version", "version mismatch (expected 1)");

    if (!j.contains("group") || !j.at("group").is_object()) fail("group", "missing or not an object");
    const json& jg = j.at("group");
    if (jg.contains("builtin")) {
        if (!jg.at("builtin").is_string()) fail("group.builtin", "expected a string");
        job->group_label = jg.at("builtin").get<std::string>();
        job->group = FiniteGroup::from_generators(builtin_group(job->group_label), limits);
    } else if (jg.contains("permutations")) {
        std::vector<NamedPermutation> gens;
        for (const auto& item : jg.at("permutations")) {
            if (!item.is_object() || !item.contains("name") || !item.contains("perm"))
                fail("group.permutations", "each entry needs {name, perm}");
            NamedPermutation np;
            np.name = item.at("name").get<std::string>();
            for (const auto& v : item.at("perm"))
                np.perm.push_back(static_cast<int>(require_int(v, "group.permutations.perm")));
            gens.push_back(std::move(np));
        }
        job->group_label = "permutations";
        job->group = FiniteGroup::from_generators(gens, limits);
    } else if (jg.contains("table")) {
        std::vector<std::vector<int>> table;
        for (const auto& row : jg.at("table")) {
            std::vector<int> r;
            for (const auto& v : row) r.push_back(static_cast<int>(require_int(v, "group.table")));
            table.push_back(std::move(r));
        }
        job->group_label = "table";
        job->group = FiniteGroup::from_table(table, limits);
    } else {
        fail("group", "expected one of builtin / permutations / table");
    }

    job->classes = std::make_unique<ConjugacyClasses>(job->group);
    job->subgroups = std::make_unique<SubgroupClassList>(job->group);

    if (j.contains("schur_indices")) {
        if (!j.at("schur_indices").is_object()) fail("schur_indices", "expected an object");
        for (const auto& [key, value] : j.at("schur_indices").items()) {
            int orbit = 0;
            try {
                orbit = std::stoi(key);
            } catch (...) {
                fail("schur_indices", "orbit key '" + key + "' is not an index");
            }
            job->schur_overrides[orbit - 1] = require_int(value, "schur_indices." + key);
        }
    }

    if (j.contains("character_table")) {
        if (!j.at("character_table").is_array()) fail("character_table", "expected an array of rows");
        std::vector<std::vector<Cyclotomic>> rows;
        for (const auto& row : j.at("character_table")) {
            std::vector<Cyclotomic> r;
            for (const auto& v : row) r.push_back(cyclotomic_from_json(v));
            rows.push_back(std::move(r));
        }
        job->user_table = CharacterTable::from_values(job->group, *job->classes, std::move(rows));
    }

    if (!j.contains("cover") || !j.at("cover").is_object()) fail("cover", "missing or not an object");
    const json& jc = j.at("cover");
    long g_y = require_int(jc.contains("genus_base") ? jc.at("genus_base") : json(nullptr),
                           "cover.genus_base");
    std::vector<BranchPoint> points;
    if (jc.contains("branch_points")) {
        int index = 0;
        for (const auto& bp : jc.at("branch_points")) {
            std::string field = "cover.branch_points[" + std::to_string(index++) + "]";
            if (!bp.is_object() || !bp.contains("inertia") || !bp.contains("exponent"))
                fail(field, "each entry needs {inertia, exponent}");
            int elem = 0;
            try {
                elem = evaluate_word(job->group, bp.at("inertia").get<std::string>());
            } catch (const ValidationError& e) {
                fail(field + ".inertia", e.what());
            }
            if (elem == 0) fail(field + ".inertia", "branch point inertia must be nontrivial");
            long a = require_int(bp.at("exponent"), field + ".exponent");
            long e = job->group.element_order(elem);
            if (std::gcd(((a % e) + e) % e, e) != 1)
                fail(field + ".exponent",
                     "gcd(exponent, inertia order) must be 1 for a faithful ramification character");
            auto loc = job->subgroups->locate(job->group, elem);
            points.push_back({loc.class_index, loc.conjugated_generator, a});
        }
    }
    job->cover.emplace(make_cover(job->group, *job->classes, *job->subgroups, g_y,
                                  std::move(points)));

    if (j.contains("divisor")) {
        const json& jd = j.at("divisor");
        EquivariantDivisor d;
        if (jd.contains("pullback")) {
            d.pullback_deg0 = require_int(jd.at("pullback").contains("degree_base")
                                              ? jd.at("pullback").at("degree_base")
                                              : json(nullptr),
                                          "divisor.pullback.degree_base");
        } else if (jd.contains("orbits")) {
            int index = 0;
            for (const auto& item : jd.at("orbits")) {
                std::string field = "divisor.orbits[" + std::to_string(index++) + "]";
                if (!item.is_object() || !item.contains("stabilizer") || !item.contains("coefficient"))
                    fail(field, "each entry needs {stabilizer, coefficient} (+ exponent when nontrivial)");
                OrbitTerm term;
                term.coefficient = require_int(item.at("coefficient"), field + ".coefficient");
                std::string stab = item.at("stabilizer").get<std::string>();
                if (stab == "trivial") {
                    term.trivial_stabilizer = true;
                } else {
                    int elem = 0;
                    try {
                        elem = evaluate_word(job->group, stab);
                    } catch (const ValidationError& e) {
                        fail(field + ".stabilizer", e.what());
                    }
                    if (elem == 0) fail(field + ".stabilizer", "use \"trivial\" for a free orbit");
                    long a = item.contains("exponent")
                                 ? require_int(item.at("exponent"), field + ".exponent")
                                 : 1;
                    long e = job->group.element_order(elem);
                    if (std::gcd(((a % e) + e) % e, e) != 1)
                        fail(field + ".exponent", "gcd(exponent, stabilizer order) must be 1");
                    auto loc = job->subgroups->locate(job->group, elem);
                    term.inertia_class = loc.class_index;
                    term.generator = loc.conjugated_generator;
                    term.exponent = a;
                }
                d.orbits.push_back(term);
            }
        } else {
            fail("divisor", "expected pullback or orbits");
        }
        job->divisor = std::move(d);
    }
    return job;
}

std::unique_ptr<JobSpec> parse_job(const std::string& path, const GroupLimits& limits) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open job file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string raw = buffer.str();
    json j;
    try {
        j = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("job file is not valid JSON: ") + e.what());
    }
    return parse_job_json(j, std::move(raw), limits);
}

namespace fixtures {

json example1_job() {
    return json{
        {"version", 1},
        {"group", {{"builtin", "klein4"}}},
        {"cover",
         {{"genus_base", 0},
          {"branch_points",
           {{{"inertia", "a"}, {"exponent", 1}},
            {{"inertia", "a"}, {"exponent", 1}},
            {{"inertia", "a"}, {"exponent", 1}},
            {{"inertia", "b"}, {"exponent", 1}},
            {{"inertia", "a*b"}, {"exponent", 1}}}}}},
        {"divisor",
         {{"orbits",
           {{{"stabilizer", "a"}, {"exponent", 1}, {"coefficient", 1}},
            {{"stabilizer", "b"}, {"exponent", 1}, {"coefficient", 1}}}}}}};
}

json example2_job(long q) {
    return json{
        {"version", 1},
        {"group", {{"builtin", "cyclic:" + std::to_string(q)}}},
        {"cover",
         {{"genus_base", 0},
          {"branch_points",
           {{{"inertia", "a"}, {"exponent", 1}},
            {{"inertia", "a"}, {"exponent", q - 1}}}}}},
        {"divisor", {{"pullback", {{"degree_base", 2}}}}}};
}

json example3_job() {
    return json{
        {"version", 1},
        {"group", {{"builtin", "g21"}}},
        {"cover",
         {{"genus_base", 0},
          {"branch_points",
           {{{"inertia", "s"}, {"exponent", 1}},
            {{"inertia", "s"}, {"exponent", 2}},
            {{"inertia", "t"}, {"exponent", 3}}}}}},
        {"divisor", {{"pullback", {{"degree_base", 1}}}}}};
}

} // namespace fixtures

} // namespace equirr
