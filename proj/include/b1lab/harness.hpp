#pragma once

#include "b1lab/config.hpp"
#include "b1lab/probes.hpp"

namespace b1lab {

/// Outcome of one registered check. `measured` and `bound` are the headline
/// left/right sides of the binding inequality; finer-grained numbers live in
/// `details`. A failing check distinguishes a genuine violation from a
/// grid/quadrature-inconclusive outcome through `note`.
struct CheckResult {
    std::string id;
    std::string statement;
    bool pass = false;
    double measured = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    double err_est = 0.0;
    double runtime_ms = 0.0;
    std::map<std::string, double> details;
    std::vector<std::string> witnesses;
    std::string note;
};

struct Report {
    std::string config_echo;
    std::vector<CheckResult> checks;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

/// Registered check ids, in canonical order (lemma1..lemma6, thm1..thm14,
/// remark1..remark3).
std::vector<std::string> all_check_ids();
bool is_known_check(const std::string& id);

/// Runs the named checks. Unknown ids raise before anything executes; every
/// named check runs (failures are recorded, never skipped). Deterministic for
/// a fixed config: per-check randomness derives from (seed, check id).
Report run_suite(const std::vector<std::string>& ids, const Config& cfg);

std::string emit_json(const Report& rep);
std::string emit_csv(const Report& rep);

/// One CSV row per lambda grid point: re,im,winding,resolvent_lb,flag.
std::string portrait_csv(const Portrait& p);

}  // namespace b1lab
