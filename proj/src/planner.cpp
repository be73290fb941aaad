#include "attackplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace attackplan {

PathCost costOf(const ActionCost& c) {
    PathCost p;
    p.successProbability = c.successProbability;
    p.time = c.time;
    p.stealthiness = c.stealthiness;
    p.hops = c.hopsAdded;
    p.usesZeroDay = c.zeroDay;
    for (const auto& n : c.noise) p.expectedNoise[n.sensorCategory] += n.magnitude;
    return p;
}

PathCost combine(const PathCost& a, const PathCost& b) {
    PathCost out;
    out.successProbability = a.successProbability * b.successProbability;
    out.time.min = a.time.min + b.time.min;
    out.time.avg = a.time.avg + b.time.avg;
    out.time.max = a.time.max + b.time.max;
    out.stealthiness = a.stealthiness * b.stealthiness;
    out.hops = a.hops + b.hops;
    out.usesZeroDay = a.usesZeroDay || b.usesZeroDay;
    out.expectedNoise = a.expectedNoise;
    for (const auto& [cat, mag] : b.expectedNoise) out.expectedNoise[cat] += mag;
    return out;
}

PathCost evaluatePath(const std::vector<ActionCost>& actions) {
    PathCost out;  // identity
    for (const auto& a : actions) out = combine(out, costOf(a));
    return out;
}

double scalarize(const PathCost& c, const AttackParameters& params) {
    const double w1 = 1.0 + 2.0 * params.expectedSuccess;
    const double w2 = 0.25;
    double w3 = 0.0;
    if (!params.toleratedNoise.empty()) {
        double mean = 0.0;
        for (const auto& [cat, mag] : params.toleratedNoise) mean += mag;
        mean /= static_cast<double>(params.toleratedNoise.size());
        w3 = 1.0 / (1.0 + mean);
    }
    const double w4 = 2.0 * params.nonTraceability;
    const double timeLimit = params.executionTime > 0.0 ? params.executionTime : 1.0;
    double score = w1 * (1.0 - c.successProbability) + w2 * (c.time.avg / timeLimit) +
                   w3 * (1.0 - c.stealthiness) + w4 * (c.hops / 16.0);
    return std::max(0.0, score);
}

bool feasible(const PathCost& c, const AttackParameters& params) {
    if (c.usesZeroDay && !params.zeroDayness) return false;
    if (params.executionTime > 0.0 && c.time.max > params.executionTime) return false;
    if (params.expectedSuccess < 1.0) {
        for (const auto& [cat, mag] : c.expectedNoise) {
            auto it = params.toleratedNoise.find(cat);
            if (it != params.toleratedNoise.end() && mag > it->second) return false;
        }
    }
    return true;
}

int rankCosts(const PathCost& c1, const PathCost& c2, const AttackParameters& params) {
    const bool f1 = feasible(c1, params);
    const bool f2 = feasible(c2, params);
    if (f1 != f2) return f1 ? -1 : 1;
    const double s1 = scalarize(c1, params);
    const double s2 = scalarize(c2, params);
    if (s1 < s2) return -1;
    if (s1 > s2) return 1;
    return 0;
}

namespace {

struct BuildState {
    const std::vector<ActionSpec>* catalog;
    int depthLimit;
};

std::unique_ptr<GraphNode> buildGoalNode(const Goal& goal, int depth,
                                         std::vector<std::string>& pathKeys,
                                         bool agentGoalAbove, const BuildState& st) {
    auto node = std::make_unique<GraphNode>();
    node->type = GraphNode::Type::Goal;
    node->goal = goal;
    node->memoKey = assetSignature(goal.templ);
    node->depth = depth;
    if (depth > st.depthLimit) return node;

    const bool isAgentGoal = goal.templ.kind == AssetKind::AgentAsset;
    pathKeys.push_back(node->memoKey);

    for (const auto& spec : *st.catalog) {
        if (!providesMatches(spec, goal.templ)) continue;
        node->goal.candidateActions.push_back(spec.name);

        auto action = std::make_unique<GraphNode>();
        action->type = GraphNode::Type::Action;
        action->spec = &spec;
        action->memoKey = spec.name;
        action->depth = depth;

        for (const auto& req : initializeRequirements(spec, node->goal)) {
            const std::string key = assetSignature(req.templ);
            if (std::find(pathKeys.begin(), pathKeys.end(), key) != pathKeys.end())
                continue;  // cycle cut
            if (req.templ.kind == AssetKind::AgentAsset && (agentGoalAbove || isAgentGoal)) {
                // HTN cut: winning an agent below an agent goal becomes a
                // high-level pivot task instead of infinite regress.
                auto pivot = std::make_unique<GraphNode>();
                pivot->type = GraphNode::Type::PivotTask;
                pivot->goal = req;
                pivot->memoKey = key;
                pivot->depth = depth + 1;
                action->children.push_back(std::move(pivot));
                continue;
            }
            action->children.push_back(buildGoalNode(req, depth + 1, pathKeys,
                                                     agentGoalAbove || isAgentGoal, st));
        }
        node->children.push_back(std::move(action));
    }

    pathKeys.pop_back();
    return node;
}

}  // namespace

BuildResult buildGraph(const Goal& goal, const std::vector<ActionSpec>& catalog,
                       int depthLimit) {
    if (depthLimit < 1) throw std::invalid_argument("depth limit must be >= 1");
    BuildState st{&catalog, depthLimit};
    std::vector<std::string> pathKeys;
    BuildResult result;
    result.root = buildGoalNode(goal, 0, pathKeys, false, st);
    result.plannable = !result.root->children.empty();
    return result;
}

PathCost pivotTaskEstimate() {
    PathCost p;
    p.successProbability = 0.5;
    p.time = {10.0, 60.0, 300.0};
    p.stealthiness = 0.9;
    p.hops = 1;
    return p;
}

PathCost actionNodePathCost(const GraphNode& actionNode, const EnvironmentKnowledge& env,
                            const AttackParameters& params, double now,
                            bool fullLookahead) {
    PathCost cost = costOf(effectiveCost(*actionNode.spec, env, now));
    if (!fullLookahead) return cost;
    for (const auto& child : actionNode.children)
        cost = combine(cost, goalPathCost(*child, env, params, now, fullLookahead));
    return cost;
}

PathCost goalPathCost(const GraphNode& goalNode, const EnvironmentKnowledge& env,
                      const AttackParameters& params, double now, bool fullLookahead) {
    if (goalNode.type == GraphNode::Type::PivotTask) return pivotTaskEstimate();
    const EnvDecision d = satisfiedByEnvironment(goalNode.goal, env, now, 0.0);
    if (d.verdict == EnvVerdict::Success) return PathCost{};  // zero cost
    if (goalNode.children.empty()) {
        PathCost hopeless;
        hopeless.successProbability = 0.0;
        return hopeless;
    }
    const GraphNode* best = chooseAction(goalNode, env, params, now, fullLookahead);
    return actionNodePathCost(*best, env, params, now, fullLookahead);
}

const GraphNode* chooseAction(const GraphNode& goalNode, const EnvironmentKnowledge& env,
                              const AttackParameters& params, double now,
                              bool fullLookahead) {
    const GraphNode* best = nullptr;
    PathCost bestCost;
    for (const auto& child : goalNode.children) {
        if (child->type != GraphNode::Type::Action) continue;
        PathCost cost = actionNodePathCost(*child, env, params, now, fullLookahead);
        if (!best || rankCosts(cost, bestCost, params) < 0) {
            best = child.get();
            bestCost = cost;
        }
    }
    return best;
}

namespace {

const ActionSpec* findBehavior(const std::vector<ActionSpec>& catalog, Behavior b) {
    for (const auto& s : catalog)
        if (s.behavior == b) return &s;
    return nullptr;
}

std::vector<Ipv4> addressAttrs(const Asset& a) {
    std::vector<Ipv4> out;
    for (const auto& [name, v] : a.attrs)
        if (v.tag() == AttrValue::Tag::Address) out.push_back(v.addressValue());
    return out;
}

}  // namespace

double pivotEdgeWeight(const Ipv4& u, const Ipv4& v, bool agentOnV,
                       const EnvironmentKnowledge& env,
                       const std::vector<ActionSpec>& catalog,
                       const AttackParameters& params, double now) {
    const ActionSpec* tcp = findBehavior(catalog, Behavior::TcpConnect);
    PathCost conn = tcp ? costOf(effectiveCost(*tcp, env, now)) : PathCost{};
    double weight = scalarize(conn, params);
    if (!agentOnV) {
        // Hypothetical environment: only assets about hosts u and v, plus an
        // imaginary agent sitting on u.
        EnvironmentKnowledge hyp;
        hyp.owner = "hypothetical";
        hyp.trustHalfLife = env.trustHalfLife;
        for (const auto& a : env.assets()) {
            if (a.kind == AssetKind::AgentAsset) continue;
            bool confined = true;
            for (const Ipv4& addr : addressAttrs(a))
                if (addr != u && addr != v) confined = false;
            if (confined) hyp.insert(a);
        }
        hyp.insert(makeAsset(AssetKind::AgentAsset,
                             {{"agent", AttrValue::symbol("imaginary")},
                              {"host", AttrValue::address(u)}},
                             1.0, 1.0, now));
        Goal win;
        win.templ = makeAsset(AssetKind::AgentAsset, {{"host", AttrValue::address(v)}});
        BuildResult sub = buildGraph(win, catalog);
        weight += scalarize(goalPathCost(*sub.root, hyp, params, now), params);
    }
    return std::max(0.0, weight);
}

PivotPlan planPivot(const Ipv4& source, const Ipv4& target, int port,
                    const EnvironmentKnowledge& env,
                    const std::vector<ActionSpec>& catalog,
                    const AttackParameters& params, double now) {
    (void)port;
    PivotPlan plan;

    std::set<Ipv4> agentHosts;
    std::set<Ipv4> hosts;
    std::set<std::pair<Ipv4, Ipv4>> edges;
    for (const auto& a : env.assets()) {
        if (a.probability <= 0.0) continue;
        if (a.kind == AssetKind::AgentAsset) {
            const auto& h = a.attrs.at("host");
            if (h.tag() == AttrValue::Tag::Address) {
                agentHosts.insert(h.addressValue());
                hosts.insert(h.addressValue());
            }
        } else if (a.kind == AssetKind::IPConnectivityAsset ||
                   a.kind == AssetKind::TCPConnectivityAsset) {
            const auto& s = a.attrs.at("source");
            const auto& t = a.attrs.at("target");
            if (s.tag() != AttrValue::Tag::Address || t.tag() != AttrValue::Tag::Address)
                continue;
            hosts.insert(s.addressValue());
            hosts.insert(t.addressValue());
            edges.insert({s.addressValue(), t.addressValue()});
        }
    }
    agentHosts.insert(source);
    hosts.insert(source);
    hosts.insert(target);
    if (agentHosts.empty()) return plan;

    const double inf = std::numeric_limits<double>::infinity();
    std::map<Ipv4, double> dist;
    std::map<Ipv4, Ipv4> prev;
    std::map<Ipv4, PathCost> costTo;
    for (const Ipv4& h : hosts) dist[h] = inf;

    std::set<std::pair<double, Ipv4>> queue;
    for (const Ipv4& h : agentHosts) {
        dist[h] = 0.0;
        queue.insert({0.0, h});
    }

    std::map<std::pair<Ipv4, Ipv4>, std::pair<double, PathCost>> edgeMemo;
    auto edgeData = [&](const Ipv4& u, const Ipv4& v) -> std::pair<double, PathCost> {
        auto key = std::make_pair(u, v);
        auto it = edgeMemo.find(key);
        if (it != edgeMemo.end()) return it->second;
        const bool agentOnV = agentHosts.count(v) > 0 || v == target;
        double w = pivotEdgeWeight(u, v, agentOnV, env, catalog, params, now);
        const ActionSpec* tcp = findBehavior(catalog, Behavior::TcpConnect);
        PathCost c = tcp ? costOf(effectiveCost(*tcp, env, now)) : PathCost{};
        if (!agentOnV) c.hops += 1;
        edgeMemo[key] = {w, c};
        return {w, c};
    };

    while (!queue.empty()) {
        auto [d, u] = *queue.begin();
        queue.erase(queue.begin());
        if (d > dist[u]) continue;
        if (u == target) break;
        for (const auto& [es, et] : edges) {
            if (es != u) continue;
            if (!dist.count(et)) continue;
            auto [w, c] = edgeData(u, et);
            const double nd = d + w;
            if (nd < dist[et]) {
                queue.erase({dist[et], et});
                dist[et] = nd;
                prev[et] = u;
                queue.insert({nd, et});
            }
        }
    }

    if (!dist.count(target) || dist[target] == inf) return plan;

    std::vector<Ipv4> path;
    for (Ipv4 v = target;;) {
        path.push_back(v);
        if (agentHosts.count(v)) break;
        auto it = prev.find(v);
        if (it == prev.end()) {
            if (v == target && agentHosts.count(target)) break;
            return plan;  // disconnected; should not happen after Dijkstra
        }
        v = it->second;
    }
    std::reverse(path.begin(), path.end());

    plan.found = true;
    plan.start = path.front();
    plan.totalScalarized = dist[target];
    for (std::size_t i = 1; i < path.size(); ++i) {
        PivotHop hop;
        hop.host = path[i];
        hop.needAgent = !agentHosts.count(path[i]) && path[i] != target;
        auto [w, c] = edgeData(path[i - 1], path[i]);
        hop.edgeWeight = w;
        hop.edgeCost = c;
        if (hop.needAgent) {
            Goal win;
            win.templ =
                makeAsset(AssetKind::AgentAsset, {{"host", AttrValue::address(path[i])}});
            hop.subplan = std::shared_ptr<GraphNode>(buildGraph(win, catalog).root.release());
        }
        plan.totalCost = combine(plan.totalCost, hop.edgeCost);
        plan.hops.push_back(std::move(hop));
    }
    return plan;
}

}  // namespace attackplan
