#pragma once

#include <memory>
#include <vector>

#include "attackplan/actions.hpp"
#include "attackplan/params.hpp"

namespace attackplan {

// Aggregated cost of a sequence of actions. expectedNoise sums the noise
// magnitudes per sensor category so budget feasibility can be checked.
struct PathCost {
    double successProbability = 1.0;
    TimeTriple time;
    double stealthiness = 1.0;
    int hops = 0;
    bool usesZeroDay = false;
    std::map<std::string, double> expectedNoise;
};

// Lifts one action cost into the path algebra.
PathCost costOf(const ActionCost& c);

// The path algebra: product of probabilities and stealthiness, component-wise
// time sums, hop sums, OR of the zero-day flags.
PathCost combine(const PathCost& a, const PathCost& b);
PathCost evaluatePath(const std::vector<ActionCost>& actions);

// Weighted scalarization of a cost under attack parameters. Weights:
//   w1 = 1 + 2*expectedSuccess          on (1 - successProbability)
//   w2 = 0.25                           on avgTime / executionTime
//   w3 = 0 when noise is unconstrained, else 1/(1 + mean tolerated noise)
//                                       on (1 - stealthiness)
//   w4 = 2*nonTraceability              on hops / 16
// Always non-negative.
double scalarize(const PathCost& c, const AttackParameters& params);

// Hard feasibility: zero-day permission, max time within the execution
// budget, per-category noise within tolerance (waived at expectedSuccess=1).
bool feasible(const PathCost& c, const AttackParameters& params);

// -1 when c1 ranks strictly better, +1 when c2 does, 0 on a tie (the caller
// breaks ties by catalog declaration order). An infeasible cost ranks
// strictly worse than any feasible one.
int rankCosts(const PathCost& c1, const PathCost& c2, const AttackParameters& params);

// Node of the lazily built goal/action graph. Layers alternate strictly;
// agent-creating requirements below the root become PivotTask leaves.
struct GraphNode {
    enum class Type { Goal, Action, PivotTask };

    Type type = Type::Goal;
    Goal goal;                        // Goal and PivotTask nodes
    const ActionSpec* spec = nullptr; // Action nodes; points into the catalog
    std::vector<std::unique_ptr<GraphNode>> children;
    std::string memoKey;
    int depth = 0;
};

struct BuildResult {
    std::unique_ptr<GraphNode> root;
    bool plannable = false;
};

inline constexpr int kDefaultDepthLimit = 8;

BuildResult buildGraph(const Goal& goal, const std::vector<ActionSpec>& catalog,
                       int depthLimit = kDefaultDepthLimit);

// Fixed estimate used when ranking a pivot task before its plan exists.
PathCost pivotTaskEstimate();

// Cost of satisfying a goal node: identity when the environment already
// decides it, else the best action child including requirement subpaths.
PathCost goalPathCost(const GraphNode& goalNode, const EnvironmentKnowledge& env,
                      const AttackParameters& params, double now,
                      bool fullLookahead = true);

// Cost of an action node: its own effective cost, extended with the subpath
// costs of its requirement goals when fullLookahead is set.
PathCost actionNodePathCost(const GraphNode& actionNode, const EnvironmentKnowledge& env,
                            const AttackParameters& params, double now,
                            bool fullLookahead = true);

// The cheapest action child under the current knowledge snapshot, or nullptr
// when the goal has none. Recomputed on every call (delayed cost computation).
const GraphNode* chooseAction(const GraphNode& goalNode, const EnvironmentKnowledge& env,
                              const AttackParameters& params, double now,
                              bool fullLookahead = true);

struct PivotHop {
    Ipv4 host;
    bool needAgent = false;  // false for already-owned hosts
    std::shared_ptr<GraphNode> subplan;  // agent-winning subplan, reused at execution
    double edgeWeight = 0.0;
    PathCost edgeCost;
};

struct PivotPlan {
    bool found = false;
    std::vector<PivotHop> hops;  // excludes the starting agent host
    Ipv4 start;
    PathCost totalCost;
    double totalScalarized = 0.0;
};

// Weight of traversing u -> v in the pivot graph: scalarized connectivity
// cost plus, when no agent sits on v, the scalarized cost of winning an
// agent there evaluated over a hypothetical two-host environment.
double pivotEdgeWeight(const Ipv4& u, const Ipv4& v, bool agentOnV,
                       const EnvironmentKnowledge& env,
                       const std::vector<ActionSpec>& catalog,
                       const AttackParameters& params, double now);

// Dijkstra over the known-topology graph from every agent-held host to the
// target. Edge weights are non-negative by construction.
PivotPlan planPivot(const Ipv4& source, const Ipv4& target, int port,
                    const EnvironmentKnowledge& env,
                    const std::vector<ActionSpec>& catalog,
                    const AttackParameters& params, double now);

}  // namespace attackplan
