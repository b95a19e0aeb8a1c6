#include "equirr/report.hpp"
#include "equirr/oracle.hpp"
#include "equirr/errors.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace equirr {

namespace {

using nlohmann::json;

std::string grid(const std::vector<std::vector<std::string>>& rows) {
    size_t ncols = 0;
    for (const auto& r : rows) ncols = std::max(ncols, r.size());
    std::vector<size_t> width(ncols, 0);
    for (const auto& r : rows)
        for (size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    std::ostringstream out;
    for (const auto& r : rows) {
        std::string line = "  ";
        for (size_t i = 0; i < r.size(); ++i) {
            line += r[i];
            if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << "\n";
    }
    return out.str();
}

std::string char_label(int j) { return "X" + std::to_string(j + 1); }
std::string orbit_label(int j) { return "V" + std::to_string(j + 1); }
std::string class_label(int c) { return "C" + std::to_string(c + 1); }
std::string subgroup_label(int l) { return "H" + std::to_string(l + 1); }

json rational_vec_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& r : v) out.push_back(r.str());
    return out;
}

// Everything the commands share: the table (user-supplied or computed) and
// the rational structure under the merged Schur overrides.
struct Ctx {
    JobSpec& job;
    const RunFlags& flags;
    std::optional<CharacterTable> computed;
    const CharacterTable* table = nullptr;
    std::optional<RationalStructure> rs;
    bool schur_nontrivial = false;

    Ctx(JobSpec& j, const RunFlags& f) : job(j), flags(f) {}

    void need_table() {
        if (table) return;
        if (job.user_table) {
            table = &*job.user_table;
        } else {
            computed.emplace(CharacterTable::compute(job.group, *job.classes));
            table = &*computed;
        }
        std::map<int, long> overrides = job.schur_overrides;
        for (const auto& [k, v] : flags.schur) overrides[k] = v;
        rs.emplace(galois_orbits(*table, overrides));
        for (long m : rs->schur)
            if (m != 1) schur_nontrivial = true;
        if (static_cast<int>(rs->orbits.size()) != job.subgroups->count())
            throw ConsistencyError("Galois orbit count differs from the cyclic subgroup class count");
    }

    void flag_schur(Report& report) const {
        if (schur_nontrivial)
            report.diagnostics.push_back("results depend on user-supplied Schur indices");
    }
};

long pullback_degree(const Ctx& ctx) {
    if (ctx.flags.deg0) return *ctx.flags.deg0;
    if (ctx.job.divisor && ctx.job.divisor->pullback_deg0) return *ctx.job.divisor->pullback_deg0;
    throw UsageError("decompose requires a pullback divisor (or --deg0)");
}

void render_multiplicities(std::ostringstream& text, const Ctx& ctx,
                           const std::vector<Rational>& mult) {
    std::vector<std::vector<std::string>> rows{{"character", "degree", "multiplicity"}};
    for (int j = 0; j < ctx.table->count(); ++j)
        rows.push_back({char_label(j), std::to_string(ctx.table->degree(j)), mult[j].str()});
    text << grid(rows);
}

Report cmd_chartab(Ctx& ctx) {
    ctx.need_table();
    const CharacterTable& table = *ctx.table;
    const ConjugacyClasses& cls = *ctx.job.classes;
    Report report;

    json classes = json::array();
    for (int c = 0; c < cls.count(); ++c)
        classes.push_back({{"label", class_label(c)},
                           {"size", cls.size(c)},
                           {"element_order", ctx.job.group.element_order(cls.representative(c))},
                           {"representative", ctx.job.group.word(cls.representative(c))}});
    json rows = json::array();
    for (int j = 0; j < table.count(); ++j) {
        json row = json::array();
        for (int c = 0; c < cls.count(); ++c)
            row.push_back(cyclotomic_to_json(table.irreducible(j).values[c]));
        rows.push_back(std::move(row));
    }
    json orbits = json::array();
    for (size_t j = 0; j < ctx.rs->orbits.size(); ++j) {
        json members = json::array();
        for (int r : ctx.rs->orbits[j]) members.push_back(char_label(r));
        orbits.push_back({{"label", orbit_label(static_cast<int>(j))},
                          {"members", members},
                          {"d", ctx.rs->orbit_size[j]},
                          {"schur", ctx.rs->schur[j]},
                          {"dim_v", ctx.rs->dim_v[j]}});
    }
    report.results = {{"order", ctx.job.group.order()},
                      {"exponent", ctx.job.group.exponent()},
                      {"classes", classes},
                      {"degrees", json(table.count(), 0)},
                      {"table", rows},
                      {"rational_structure", orbits}};
    for (int j = 0; j < table.count(); ++j) report.results["degrees"][j] = table.degree(j);

    std::ostringstream text;
    text << "group " << ctx.job.group_label << ": order " << ctx.job.group.order()
         << ", exponent " << ctx.job.group.exponent() << ", " << cls.count() << " classes\n";
    std::vector<std::vector<std::string>> class_rows{{"class", "size", "order", "representative"}};
    for (int c = 0; c < cls.count(); ++c)
        class_rows.push_back({class_label(c), std::to_string(cls.size(c)),
                              std::to_string(ctx.job.group.element_order(cls.representative(c))),
                              ctx.job.group.word(cls.representative(c))});
    text << grid(class_rows);
    text << "character table\n";
    std::vector<std::vector<std::string>> trows{{""}};
    for (int c = 0; c < cls.count(); ++c) trows[0].push_back(class_label(c));
    for (int j = 0; j < table.count(); ++j) {
        std::vector<std::string> row{char_label(j)};
        for (int c = 0; c < cls.count(); ++c) row.push_back(table.irreducible(j).values[c].str());
        trows.push_back(std::move(row));
    }
    text << grid(trows);
    text << "rational structure: " << ctx.rs->orbits.size() << " orbit(s)\n";
    std::vector<std::vector<std::string>> orows{{"orbit", "members", "d", "m", "dimV"}};
    for (size_t j = 0; j < ctx.rs->orbits.size(); ++j) {
        std::string members;
        for (int r : ctx.rs->orbits[j]) members += (members.empty() ? "" : "+") + char_label(r);
        orows.push_back({orbit_label(static_cast<int>(j)), members,
                         std::to_string(ctx.rs->orbit_size[j]), std::to_string(ctx.rs->schur[j]),
                         std::to_string(ctx.rs->dim_v[j])});
    }
    text << grid(orows);
    report.text = text.str();
    ctx.flag_schur(report);
    return report;
}

Report cmd_subgroups(Ctx& ctx) {
    Report report;
    const SubgroupClassList& subs = *ctx.job.subgroups;
    json classes = json::array();
    for (int l = 0; l < subs.count(); ++l) {
        json elems = json::array();
        for (int a : subs.at(l).elements) elems.push_back(ctx.job.group.word(a));
        classes.push_back({{"label", subgroup_label(l)},
                           {"order", subs.at(l).order},
                           {"generator", ctx.job.group.word(subs.at(l).generator)},
                           {"elements", elems}});
    }
    report.results = {{"count", subs.count()}, {"classes", classes}};
    std::ostringstream text;
    text << "cyclic subgroup classes: M = " << subs.count() << "\n";
    std::vector<std::vector<std::string>> rows{{"class", "order", "generator"}};
    for (int l = 0; l < subs.count(); ++l)
        rows.push_back({subgroup_label(l), std::to_string(subs.at(l).order),
                        "<" + ctx.job.group.word(subs.at(l).generator) + ">"});
    text << grid(rows);
    report.text = text.str();
    return report;
}

Report cmd_genus(Ctx& ctx) {
    Report report;
    const CoverData& cover = *ctx.job.cover;
    GenusReport gr = genus_report(cover);
    std::vector<long> r = branch_counts(cover);
    json quotients = json::array();
    for (int l = 0; l < ctx.job.subgroups->count(); ++l) {
        json fibers = json::array();
        for (const auto& f : gr.fibers[l]) fibers.push_back(f);
        quotients.push_back({{"class", subgroup_label(l)},
                             {"genus", gr.quotient_genus[l]},
                             {"fibers", fibers}});
    }
    report.results = {{"genus_top", gr.g_top},
                      {"genus_base", cover.genus_base},
                      {"branch_counts", r},
                      {"quotients", quotients}};
    std::ostringstream text;
    text << "genus of the base: " << cover.genus_base << "\n";
    text << "genus of the cover: " << gr.g_top << "\n";
    std::vector<std::vector<std::string>> rows{{"quotient", "order", "genus", "R"}};
    for (int l = 0; l < ctx.job.subgroups->count(); ++l)
        rows.push_back({"X/" + subgroup_label(l), std::to_string(ctx.job.subgroups->at(l).order),
                        std::to_string(gr.quotient_genus[l]), std::to_string(r[l])});
    text << grid(rows);
    report.text = text.str();
    return report;
}

Report cmd_decompose(Ctx& ctx) {
    ctx.need_table();
    Report report;
    const long deg0 = pullback_degree(ctx);
    const CoverData& cover = *ctx.job.cover;
    Decomposition dec = decompose_pullback(*ctx.table, *ctx.rs, cover, deg0);

    const long deg_d = deg0 * ctx.job.group.order();
    NonspecialVerdict verdict = nonspecial_guard(cover, deg_d);
    std::string verdict_str = ctx.flags.assume_nonspecial
                                  ? "assumed"
                                  : (verdict == NonspecialVerdict::guaranteed ? "guaranteed"
                                                                              : "not-guaranteed");

    json orbit_mult = json::array();
    for (size_t j = 0; j < dec.orbit_mult.size(); ++j)
        orbit_mult.push_back({{"orbit", orbit_label(static_cast<int>(j))},
                              {"multiplicity", dec.orbit_mult[j].str()}});
    report.results = {{"deg0", deg0},
                      {"deg_d", deg_d},
                      {"rational", dec.rational},
                      {"averaged", dec.averaged},
                      {"nonspecial", verdict_str},
                      {"multiplicities", rational_vec_json(dec.absolute.mult)},
                      {"orbit_multiplicities", orbit_mult},
                      {"dimension", dec.absolute.virtual_degree.str()}};
    for (const auto& n : dec.notes) report.diagnostics.push_back(n);
    if (verdict == NonspecialVerdict::not_guaranteed && !ctx.flags.assume_nonspecial)
        report.diagnostics.push_back("nonspeciality not guaranteed; results assume a nonspecial divisor");

    std::ostringstream text;
    text << "pullback decomposition, deg D0 = " << deg0 << " (deg D = " << deg_d << ")\n";
    text << (dec.rational ? "rational character: exact multiplicities\n"
                          : "non-rational character: per-orbit averages\n");
    render_multiplicities(text, ctx, dec.absolute.mult);
    text << "total dimension " << dec.absolute.virtual_degree.str() << ", nonspeciality "
         << verdict_str << "\n";
    std::vector<std::vector<std::string>> orows{
        {"orbit", dec.averaged ? "average" : "multiplicity"}};
    for (size_t j = 0; j < dec.orbit_mult.size(); ++j)
        orows.push_back({orbit_label(static_cast<int>(j)), dec.orbit_mult[j].str()});
    text << grid(orows);
    report.text = text.str();
    ctx.flag_schur(report);
    return report;
}

Report cmd_ramification(Ctx& ctx) {
    ctx.need_table();
    Report report;
    const CoverData& cover = *ctx.job.cover;
    VirtualCharacter direct = ramification_module_direct(*ctx.table, cover);
    VirtualCharacter closed = ramification_module_closed(*ctx.table, *ctx.rs, cover);

    json orbit_avg = json::array();
    for (size_t j = 0; j < ctx.rs->orbits.size(); ++j)
        orbit_avg.push_back({{"orbit", orbit_label(static_cast<int>(j))},
                             {"average", closed.mult[ctx.rs->orbits[j][0]].str()}});
    report.results = {{"direct", rational_vec_json(direct.mult)},
                      {"closed", rational_vec_json(closed.mult)},
                      {"rational", direct.is_rational_char},
                      {"closed_averaged", closed.is_averaged},
                      {"orbit_averages", orbit_avg},
                      {"degree", direct.virtual_degree.str()}};
    if (!direct.is_genuine)
        report.diagnostics.push_back(
            "ramification module has non-integral multiplicities; branch data may not be realizable");

    std::ostringstream text;
    text << "ramification module (direct and closed form)\n";
    text << (direct.is_rational_char ? "rational: closed form is exact\n"
                                     : "non-rational: closed form gives orbit averages\n");
    std::vector<std::vector<std::string>> rows{{"character", "direct", "closed"}};
    for (int j = 0; j < ctx.table->count(); ++j)
        rows.push_back({char_label(j), direct.mult[j].str(), closed.mult[j].str()});
    text << grid(rows);
    report.text = text.str();
    ctx.flag_schur(report);
    return report;
}

Report cmd_eqdeg(Ctx& ctx) {
    ctx.need_table();
    if (!ctx.job.divisor) throw UsageError("eqdeg requires a divisor");
    Report report;
    VirtualCharacter v = equivariant_degree(*ctx.table, *ctx.job.subgroups, *ctx.job.divisor);
    long deg_d = divisor_degree(ctx.job.group, *ctx.job.subgroups, *ctx.job.divisor);
    report.results = {{"multiplicities", rational_vec_json(v.mult)},
                      {"degree", v.virtual_degree.str()},
                      {"deg_d", deg_d}};
    if (v.virtual_degree != Rational(deg_d))
        throw ConsistencyError("equivariant degree evaluated at the identity differs from deg D");
    std::ostringstream text;
    text << "equivariant degree, deg D = " << deg_d << "\n";
    render_multiplicities(text, ctx, v.mult);
    report.text = text.str();
    return report;
}

Report cmd_borne(Ctx& ctx) {
    ctx.need_table();
    if (!ctx.job.divisor) throw UsageError("borne requires a divisor");
    Report report;
    const CoverData& cover = *ctx.job.cover;
    Decomposition dec = borne_character(*ctx.table, *ctx.rs, cover, *ctx.job.divisor);
    long deg_d = divisor_degree(ctx.job.group, *ctx.job.subgroups, *ctx.job.divisor);
    long g_x = genus_top(cover);

    json orbit_mult = json::array();
    for (size_t j = 0; j < dec.orbit_mult.size(); ++j)
        orbit_mult.push_back({{"orbit", orbit_label(static_cast<int>(j))},
                              {"multiplicity", dec.orbit_mult[j].str()}});
    report.results = {{"multiplicities", rational_vec_json(dec.absolute.mult)},
                      {"rational", dec.rational},
                      {"deg_d", deg_d},
                      {"genus_top", g_x},
                      {"dimension", dec.absolute.virtual_degree.str()},
                      {"orbit_multiplicities", orbit_mult}};
    for (const auto& n : dec.notes) {
        if (ctx.flags.assume_nonspecial && n == "virtual character (nonspeciality not guaranteed)")
            continue;
        report.diagnostics.push_back(n);
    }

    std::ostringstream text;
    text << "character of L(D) by the equivariant Euler characteristic\n";
    text << "deg D = " << deg_d << ", genus " << g_x << ", dimension "
         << dec.absolute.virtual_degree.str() << "\n";
    render_multiplicities(text, ctx, dec.absolute.mult);
    report.text = text.str();
    ctx.flag_schur(report);
    return report;
}

Report cmd_verify(Ctx& ctx) {
    ctx.need_table();
    Report report;
    const CoverData& cover = *ctx.job.cover;
    bool all_pass = true;
    json checks = json::array();
    std::ostringstream text;
    text << "verification suite (seed " << ctx.flags.seed << ")\n";

    auto record = [&](const std::string& name, const std::string& expected,
                      const std::string& computed, bool pass) {
        checks.push_back({{"name", name}, {"expected", expected}, {"computed", computed},
                          {"pass", pass}});
        text << (pass ? "  ok   " : "  FAIL ") << name;
        if (!pass) text << " (expected " << expected << ", got " << computed << ")";
        text << "\n";
        if (!pass) all_pass = false;
    };

    record("orbit count equals subgroup class count", std::to_string(ctx.job.subgroups->count()),
           std::to_string(ctx.rs->orbits.size()),
           static_cast<int>(ctx.rs->orbits.size()) == ctx.job.subgroups->count());

    FixedDimMatrix fm = fixed_dim_matrix(*ctx.table, *ctx.rs, *ctx.job.subgroups);
    record("fixed-dimension matrix is invertible", "nonzero determinant", fm.det.str(),
           !fm.det.is_zero());

    VerificationReport idc = identity_checks(*ctx.table, *ctx.rs, cover, ctx.flags.seed);
    for (const auto& c : idc.checks) record(c.name, c.expected, c.computed, c.pass);

    // linear-system oracle against the closed form
    std::vector<long> degrees;
    if (ctx.job.divisor && ctx.job.divisor->pullback_deg0)
        degrees.push_back(*ctx.job.divisor->pullback_deg0);
    uint64_t state = ctx.flags.seed ^ 0xda3e39cb94b95bdbULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    for (int t = 0; t < 3; ++t) degrees.push_back(static_cast<long>(next() % 14) - 3);
    for (long deg0 : degrees) {
        std::vector<Rational> sys = solve_system(*ctx.table, *ctx.rs, cover, deg0);
        bool match = true;
        std::string sys_str, closed_str;
        for (size_t j = 0; j < sys.size(); ++j) {
            Rational closed =
                multiplicity_rational(*ctx.table, *ctx.rs, cover, deg0, static_cast<int>(j), false);
            if (closed != sys[j]) match = false;
            sys_str += (j ? "," : "") + sys[j].str();
            closed_str += (j ? "," : "") + closed.str();
        }
        record("linear-system solve matches closed form, deg0=" + std::to_string(deg0), sys_str,
               closed_str, match);
    }

    VirtualCharacter gamma = ramification_module_direct(*ctx.table, cover);
    json results = {{"checks", checks},
                    {"fixed_dim_matrix_det", fm.det.str()},
                    {"gamma_integral", gamma.is_genuine}};

    if (ctx.flags.realizability) {
        Realizability rz = realizability_check(ctx.job.group, *ctx.job.classes, cover);
        std::string verdict = rz == Realizability::realizable
                                  ? "realizable"
                                  : (rz == Realizability::not_realizable ? "not-realizable"
                                                                         : "unknown");
        results["realizability"] = verdict;
        text << "  realizability: " << verdict << "\n";
        if (!gamma.is_genuine && rz == Realizability::realizable)
            record("non-integral ramification module implies not-realizable", "not-realizable",
                   verdict, false);
    }
    if (!gamma.is_genuine)
        report.diagnostics.push_back(
            "ramification module has non-integral multiplicities; branch data may not be realizable");

    results["all_pass"] = all_pass;
    report.results = std::move(results);
    text << (all_pass ? "all checks passed\n" : "CHECKS FAILED\n");
    report.text = text.str();
    report.exit_code = all_pass ? 0 : 3;
    ctx.flag_schur(report);
    return report;
}

} // namespace

std::string digest(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

Report run(const std::string& command, JobSpec& job, const RunFlags& flags) {
    Ctx ctx(job, flags);
    Report report;
    if (command == "chartab") report = cmd_chartab(ctx);
    else if (command == "subgroups") report = cmd_subgroups(ctx);
    else if (command == "genus") report = cmd_genus(ctx);
    else if (command == "decompose") report = cmd_decompose(ctx);
    else if (command == "ramification") report = cmd_ramification(ctx);
    else if (command == "eqdeg") report = cmd_eqdeg(ctx);
    else if (command == "borne") report = cmd_borne(ctx);
    else if (command == "verify") report = cmd_verify(ctx);
    else throw UsageError("unknown command '" + command + "'");
    report.command = command;
    report.inputs_digest = digest(job.raw);
    return report;
}

Report run_examples(const RunFlags& flags) {
    Report report;
    report.command = "examples";
    report.inputs_digest = digest("");
    std::vector<std::pair<std::string, nlohmann::json>> files{
        {"example1.job", fixtures::example1_job()},
        {"example2.job", fixtures::example2_job(7)},
        {"example2_q3.job", fixtures::example2_job(3)},
        {"example2_q5.job", fixtures::example2_job(5)},
        {"example3.job", fixtures::example3_job()},
    };
    std::filesystem::create_directories(flags.out_dir);
    json names = json::array();
    std::ostringstream text;
    for (const auto& [name, content] : files) {
        std::filesystem::path path = std::filesystem::path(flags.out_dir) / name;
        std::ofstream out(path);
        if (!out) throw ValidationError("cannot write '" + path.string() + "'");
        out << content.dump(2) << "\n";
        names.push_back(path.string());
        text << "wrote " << path.string() << "\n";
    }
    report.results = {{"files", names}};
    report.text = text.str();
    return report;
}

std::string emit_report(const Report& report, bool as_json) {
    if (as_json) {
        json j = {{"command", report.command},
                  {"schema_version", 1},
                  {"inputs_digest", report.inputs_digest},
                  {"results", report.results},
                  {"diagnostics", report.diagnostics}};
        return j.dump(2) + "\n";
    }
    std::string out = report.text;
    for (const auto& d : report.diagnostics) out += "note: " + d + "\n";
    return out;
}

} // namespace equirr
