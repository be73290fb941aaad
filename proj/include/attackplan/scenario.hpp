#pragma once

#include <set>
#include <string>
#include <vector>

#include "attackplan/engine.hpp"

#include "json.hpp"

namespace attackplan {

inline constexpr int kScenarioFormatVersion = 1;

// A defensive change: scales targeted actions' success probability down
// and their noise up, and may deploy an additional sensor.
struct Measure {
    std::string id;
    std::set<std::string> targetActions;
    double successMultiplier = 1.0;  // in [0, 1]
    double noiseMultiplier = 1.0;    // >= 1
    std::optional<Sensor> addedSensor;
};

struct Scenario {
    int formatVersion = kScenarioFormatVersion;
    SimNetwork network;
    Ipv4 attackerAddress;
    FingerprintTable fingerprints;
    std::vector<ActionSpec> catalogOverrides;
    Goal objective;
    std::vector<AttackerProfile> profiles;  // empty = the built-in four
    std::vector<Measure> measures;
    std::vector<Asset> initialKnowledge;
    std::set<std::string> appliedMeasures;  // ids already folded in
};

struct ScenarioLoad {
    bool ok = false;
    Scenario scenario;
    std::vector<std::string> diagnostics;  // every violation, with field paths
};

// Parses and validates scenario JSON bytes. Collects all diagnostics rather
// than stopping at the first; ok is true iff diagnostics is empty.
ScenarioLoad parseScenario(const std::string& bytes);

// Cross-reference and invariant checks on an in-memory scenario; empty when
// valid. parseScenario runs these after structural parsing.
std::vector<std::string> validateScenario(const Scenario& s);

// Built-in catalog with the scenario's overrides merged in.
std::vector<ActionSpec> scenarioCatalog(const Scenario& s);

// Profiles declared by the scenario, or the built-in four when none are.
std::vector<AttackerProfile> scenarioProfiles(const Scenario& s);

// Derived scenario with the given measures folded into the catalog and
// network. Unknown ids throw std::invalid_argument. Idempotent and
// commutative over measure ids.
Scenario applyMeasures(const Scenario& s, const std::set<std::string>& ids);

// One run of the scenario objective.
AttackReport runScenario(const Scenario& s, const AttackerProfile& profile,
                         uint64_t seed, EngineConfig config = {});

struct SweepRow {
    std::string profile;
    AttackReport report;
};

// Runs the objective once per profile with isolated state.
std::vector<SweepRow> sweepProfiles(const Scenario& s, uint64_t seed,
                                    EngineConfig config = {});

struct IncrementalResult {
    bool found = false;
    std::size_t prefixLength = 0;       // actions enabled when first undetected success
    std::vector<std::string> portfolio; // catalog names, declaration order
    AttackReport report;
};

// Grows the action portfolio one catalog action at a time (declaration
// order) and reports the first prefix that wins the objective undetected.
IncrementalResult incrementalPortfolio(const Scenario& s, const AttackerProfile& profile,
                                       uint64_t seed, EngineConfig config = {});

// Safe: for every profile and every seed, the run does not end in an
// undetected success.
bool scenarioSafe(const Scenario& s, const std::vector<uint64_t>& seeds,
                  EngineConfig config = {});

std::vector<uint64_t> defaultSeedSet(std::size_t count = 16);

struct MeasureSearchResult {
    bool satisfiable = false;
    bool exhaustive = true;           // false = greedy fallback was used
    std::set<std::string> measures;   // safe set, or best found when unsatisfiable
};

// Smallest measure set (by cardinality, ties by lexicographic ids) that
// makes the scenario safe. Exhaustive up to maxSubsetSize when the measure
// count allows it (<= 12), otherwise greedy with the fallback flagged.
MeasureSearchResult minimalMeasureSet(const Scenario& s, int maxSubsetSize,
                                      const std::vector<uint64_t>& seeds,
                                      EngineConfig config = {});

// JSON forms. Field order and number formatting are deterministic, so equal
// values dump to identical bytes.
nlohmann::json assetToJson(const Asset& a);
nlohmann::json goalToJson(const Goal& g);
nlohmann::json reportToJson(const AttackReport& r);
nlohmann::json scenarioToJson(const Scenario& s);

// Static plan preview: the goal/action graph with costs under the initial
// knowledge, without touching the simulator.
nlohmann::json planToJson(const Scenario& s, const AttackerProfile& profile,
                          EngineConfig config = {});

}  // namespace attackplan
