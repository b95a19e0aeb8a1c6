#pragma once

#include "equirr/job.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace equirr {

struct RunFlags {
    bool json = false;
    std::map<int, long> schur;       // 0-based orbit index -> m, wins over the job file
    bool assume_nonspecial = false;
    uint64_t seed = 1;
    std::optional<long> deg0;        // pullback degree override for `decompose`
    bool realizability = false;      // include the branch-cycle search in `verify`
    std::string out_dir = ".";       // target directory for `examples`
};

struct Report {
    std::string command;
    std::string inputs_digest;
    nlohmann::json results;
    std::vector<std::string> diagnostics;
    std::string text;
    int exit_code = 0; // 3 when a verification found an inconsistency
};

// FNV-1a 64 over the raw bytes.
std::string digest(const std::string& bytes);

// Dispatch one command against a parsed job. Commands: chartab, subgroups,
// genus, decompose, ramification, eqdeg, borne, verify. (`examples` writes
// fixture files and takes no job.)
Report run(const std::string& command, JobSpec& job, const RunFlags& flags);

Report run_examples(const RunFlags& flags);

std::string emit_report(const Report& report, bool as_json);

} // namespace equirr
