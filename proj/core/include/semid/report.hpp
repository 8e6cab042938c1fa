#pragma once

#include <optional>
#include <string>

#include "semid/criteria.hpp"
#include "semid/harness.hpp"
#include "semid/jacobian.hpp"
#include "semid/matroid.hpp"

namespace semid {

// JSON renderings of every report. Each carries tool_version, seed, prime and
// trials at top level. Wall-clock figures live under a single "timing" key,
// omitted when `with_timing` is false, so that two runs with the same
// configuration produce identical output.

std::string jacobian_json(const Jacobian& j, const RankOracleConfig& cfg);
std::string rank_json(const Digraph& g, const ColumnSet& s, int rank, const RankOracleConfig& cfg,
                      std::optional<int> exact = {});
std::string comparison_json(const MatroidComparison& c, const RankOracleConfig& cfg);
std::string distinguish_json(const DistinguishReport& r, const RankOracleConfig& cfg);
std::string pc_sets_json(const Digraph& g, Node i, const std::vector<PCSet>& sets, const RankOracleConfig& cfg);
std::string sweep_json(const SweepResult& r, bool with_timing = true);
std::string complete_sweep_json(const CompleteSweepResult& r, bool with_timing = true);
std::string family_json(const FamilyReport& r, const RankOracleConfig& cfg);

}  // namespace semid
