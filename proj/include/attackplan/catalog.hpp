#pragma once

#include <functional>
#include <random>

#include "attackplan/netsim.hpp"
#include "attackplan/planner.hpp"

namespace attackplan {

// One noise emission with the sensors it actually reached, kept so cleanup
// and report replay can reproduce the bookkeeping.
struct NoiseRecord {
    Ipv4 address;
    NoiseEvent event;
    std::vector<std::string> sensorsHit;
    bool cleaned = false;
};

struct ActionOutcome {
    bool success = false;
    bool skipped = false;  // unavailable (zero-day without permission), not a failure
    std::vector<Asset> produced;
    std::vector<NoiseRecord> noiseEmitted;
    double elapsed = 0.0;
    int hopsAdded = 0;
};

using FingerprintTable = std::map<std::string, std::map<std::string, double>>;

// Everything a concrete run needs from the engine. Pivot execution calls
// back into the engine through runSubGoal.
struct RunContext {
    Ipv4 agentHost;
    std::string agentId;
    EnvironmentKnowledge* env = nullptr;
    SimNetwork* net = nullptr;
    std::mt19937_64* rng = nullptr;
    double now = 0.0;
    double minTrust = 0.0;
    const std::vector<ActionSpec>* catalog = nullptr;
    const AttackParameters* params = nullptr;
    const FingerprintTable* fingerprints = nullptr;

    std::function<void(const Ipv4& host, const std::vector<std::string>& capabilities)>
        spawnAgent;
    std::function<bool(const Goal&)> runSubGoal;
    // Removes residual cleanable-on-success noise of failed prior actions on
    // a host; backs the CleanLogs action.
    std::function<double(const Ipv4& host)> cleanResidual;
};

// Elapsed-time draw over (min, avg, max) as a triangular distribution.
double sampleElapsed(const TimeTriple& t, std::mt19937_64& rng);

// Runs one fully instantiated attempt of the action against the simulator.
// The engine drives requirements and the environment shortcut beforehand.
ActionOutcome runConcrete(const ActionSpec& spec, const Asset& concrete, RunContext& ctx);

// The built-in action catalog.
std::vector<ActionSpec> defaultCatalog();

// Built-ins with user overrides merged by name (an override replaces the
// built-in of the same name, new names are appended).
std::vector<ActionSpec> mergeCatalog(std::vector<ActionSpec> base,
                                     const std::vector<ActionSpec>& overrides);

}  // namespace attackplan
