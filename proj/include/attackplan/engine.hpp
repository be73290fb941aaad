#pragma once

#include <cstdint>
#include <deque>

#include "attackplan/catalog.hpp"

namespace attackplan {

struct Agent {
    std::string id;
    Ipv4 host;
    std::vector<std::string> capabilities;
    EnvironmentKnowledge knowledge;
    AttackParameters parameters;
};

struct TimelineEntry {
    double simTime = 0.0;
    std::string agentId;
    std::string action;
    Asset concrete;
    bool success = false;
    bool skipped = false;
    std::vector<NoiseRecord> noise;
    double elapsed = 0.0;
    double effectiveProbability = 1.0;
    double effectiveStealthiness = 1.0;
};

enum class Verdict { Success, Failure, DetectedBeforeSuccess, BudgetExhausted };

std::string verdictName(Verdict v);

struct AttackReport {
    std::vector<TimelineEntry> timeline;
    std::vector<std::pair<std::string, double>> detections;  // (sensor id, sim time)
    Verdict goalVerdict = Verdict::Failure;
    PathCost finalCost;  // realized cost of the executed actions
    std::vector<Asset> assetsGained;
    std::map<std::string, double> sensorAccumulated;
    double totalElapsed = 0.0;
};

struct EngineConfig {
    int depthLimit = kDefaultDepthLimit;
    int maxRetriesPerGoal = 3;
    double minTrust = 0.0;
    double trustHalfLife = 3600.0;
    bool fullLookahead = true;
};

// One attack run over a private copy of the network. Single-threaded over
// logical simulated time; independent runs are isolated.
class Engine {
public:
    Engine(SimNetwork network, std::vector<ActionSpec> catalog,
           FingerprintTable fingerprints, Ipv4 attackerHost, AttackerProfile profile,
           uint64_t seed, EngineConfig config = {});

    // Seeds the root agent's knowledge before the run (persisted knowledge
    // from an earlier report, or fixtures).
    void seedKnowledge(const std::vector<Asset>& assets);

    AttackReport run(const Goal& objective);

    Agent& rootAgent() { return agents_.front(); }
    const SimNetwork& network() const { return net_; }

private:
    struct GoalResult {
        bool success = false;
        std::vector<Asset> assets;
    };

    GoalResult runGoal(const Goal& goal, int depth);
    AttemptResult attemptConcrete(const ActionSpec& spec, const Goal& goal,
                                  const Asset& concrete, int depth);
    void noteDetections();
    void enforceBudgets();
    // Cleans CleanableOnSuccess residue of earlier failed actions on a host
    // once a later action there succeeds.
    double cleanResidualAt(const Ipv4& host);
    Agent* agentAt(const Ipv4& host);
    void registerAgent(const Ipv4& host, const std::vector<std::string>& capabilities);

    SimNetwork net_;
    std::vector<ActionSpec> catalog_;       // merged, portfolio-filtered
    FingerprintTable fingerprints_;
    AttackerProfile profile_;
    EngineConfig config_;
    std::mt19937_64 rng_;
    std::deque<Agent> agents_;
    AttackReport report_;
    std::map<std::string, double> emittedNoise_;  // per category, net of cleanup
    std::vector<std::pair<std::size_t, std::size_t>> pendingResidual_;  // (entry, record)
    bool halted_ = false;
    Verdict haltVerdict_ = Verdict::Failure;
    std::size_t initialAssetCount_ = 0;
};

// Scenario-independent entry point used by the CLI and tests.
AttackReport runAttack(const SimNetwork& network, const std::vector<ActionSpec>& catalog,
                       const FingerprintTable& fingerprints, const Ipv4& attackerHost,
                       const Goal& objective, const AttackerProfile& profile,
                       uint64_t seed, const std::vector<Asset>& initialKnowledge = {},
                       EngineConfig config = {});

// Creates a child agent; reuses an existing agent on the same host. Returns
// the agent and inserts the AgentAsset into the parent's knowledge.
Agent& spawnAgent(std::deque<Agent>& agents, Agent& parent, const Ipv4& host,
                  const std::vector<std::string>& capabilities,
                  const std::optional<AttackParameters>& parametersOverride, double now);

// Symmetric knowledge merge; returns the number of effective changes.
int syncKnowledge(Agent& a, Agent& b);

}  // namespace attackplan
