#include "attackplan/engine.hpp"

#include <algorithm>

namespace attackplan {

std::string verdictName(Verdict v) {
    switch (v) {
        case Verdict::Success: return "success";
        case Verdict::Failure: return "failure";
        case Verdict::DetectedBeforeSuccess: return "detectedBeforeSuccess";
        case Verdict::BudgetExhausted: return "budgetExhausted";
    }
    return "failure";
}

Agent& spawnAgent(std::deque<Agent>& agents, Agent& parent, const Ipv4& host,
                  const std::vector<std::string>& capabilities,
                  const std::optional<AttackParameters>& parametersOverride, double now) {
    const std::string id = "agent@" + host.str();
    std::vector<AttrValue> caps;
    for (const auto& c : capabilities) caps.push_back(AttrValue::symbol(c));
    Asset agentAsset = makeAsset(AssetKind::AgentAsset,
                                 {{"agent", AttrValue::symbol(id)},
                                  {"capabilities", AttrValue::list(caps)},
                                  {"host", AttrValue::address(host)}},
                                 1.0, 1.0, now);
    parent.knowledge.insert(agentAsset);

    for (auto& existing : agents)
        if (existing.host == host) return existing;  // reuse, no duplicate

    Agent child;
    child.id = id;
    child.host = host;
    child.capabilities = capabilities;
    child.parameters = parametersOverride.value_or(parent.parameters);
    child.knowledge.owner = id;
    child.knowledge.trustHalfLife = parent.knowledge.trustHalfLife;
    for (const auto& a : parent.knowledge.assets()) {
        bool relevant = a.kind == AssetKind::AgentAsset;
        for (const auto& [name, v] : a.attrs)
            if (v.tag() == AttrValue::Tag::Address && v.addressValue() == host)
                relevant = true;
        if (relevant) child.knowledge.insert(a);
    }
    child.knowledge.insert(agentAsset);
    agents.push_back(std::move(child));
    return agents.back();
}

int syncKnowledge(Agent& a, Agent& b) {
    auto newer = [](const EnvironmentKnowledge& env, const Asset& candidate) {
        for (const auto& existing : env.assets())
            if (attributeIdentical(existing, candidate))
                return candidate.createdAt > existing.createdAt &&
                       (existing.probability != candidate.probability ||
                        existing.trust != candidate.trust);
        return true;  // absent, always worth inserting
    };
    int exchanged = 0;
    const std::vector<Asset> fromA = a.knowledge.assets();
    const std::vector<Asset> fromB = b.knowledge.assets();
    for (const auto& asset : fromB)
        if (newer(a.knowledge, asset) && a.knowledge.insert(asset).accepted) ++exchanged;
    for (const auto& asset : fromA)
        if (newer(b.knowledge, asset) && b.knowledge.insert(asset).accepted) ++exchanged;
    return exchanged;
}

Engine::Engine(SimNetwork network, std::vector<ActionSpec> catalog,
               FingerprintTable fingerprints, Ipv4 attackerHost, AttackerProfile profile,
               uint64_t seed, EngineConfig config)
    : net_(std::move(network)),
      fingerprints_(std::move(fingerprints)),
      profile_(std::move(profile)),
      config_(config),
      rng_(seed) {
    const auto& portfolio = profile_.parameters.actionPortfolio;
    for (auto& spec : catalog) {
        if (portfolio.empty() || portfolio.count(spec.name))
            catalog_.push_back(std::move(spec));
    }

    Agent root;
    root.id = "localAgent";
    root.host = attackerHost;
    root.capabilities = {"TCP", "UDP", "FileSystem"};
    root.parameters = profile_.parameters;
    root.knowledge.owner = root.id;
    root.knowledge.trustHalfLife = config_.trustHalfLife;
    std::vector<AttrValue> caps;
    for (const auto& c : root.capabilities) caps.push_back(AttrValue::symbol(c));
    root.knowledge.insert(makeAsset(AssetKind::AgentAsset,
                                    {{"agent", AttrValue::symbol(root.id)},
                                     {"capabilities", AttrValue::list(caps)},
                                     {"host", AttrValue::address(attackerHost)}},
                                    1.0, 1.0, 0.0));
    agents_.push_back(std::move(root));
    initialAssetCount_ = agents_.front().knowledge.size();
}

void Engine::seedKnowledge(const std::vector<Asset>& assets) {
    for (const auto& a : assets) agents_.front().knowledge.insert(a);
    initialAssetCount_ = agents_.front().knowledge.size();
}

Agent* Engine::agentAt(const Ipv4& host) {
    for (auto& a : agents_)
        if (a.host == host) return &a;
    return nullptr;
}

void Engine::registerAgent(const Ipv4& host, const std::vector<std::string>& capabilities) {
    spawnAgent(agents_, agents_.front(), host, capabilities, std::nullopt, net_.clock);
}

void Engine::noteDetections() {
    for (const auto& sensor : net_.sensors) {
        if (!sensor.detected) continue;
        bool known = false;
        for (const auto& [id, when] : report_.detections)
            if (id == sensor.id) known = true;
        if (!known) report_.detections.emplace_back(sensor.id, net_.clock);
    }
}

void Engine::enforceBudgets() {
    if (halted_) return;
    const AttackParameters& params = profile_.parameters;
    if (profile_.haltOnDetection && !report_.detections.empty()) {
        halted_ = true;
        haltVerdict_ = Verdict::DetectedBeforeSuccess;
        return;
    }
    if (params.executionTime > 0.0 && net_.clock > params.executionTime) {
        halted_ = true;
        haltVerdict_ = Verdict::BudgetExhausted;
        return;
    }
    // maximal expected success lets the agent exceed the noise budget
    if (params.expectedSuccess >= 1.0) return;
    for (const auto& [cat, limit] : params.toleratedNoise) {
        auto it = emittedNoise_.find(cat);
        if (it != emittedNoise_.end() && it->second > limit) {
            halted_ = true;
            haltVerdict_ = Verdict::BudgetExhausted;
            return;
        }
    }
}

AttemptResult Engine::attemptConcrete(const ActionSpec& spec, const Goal& goal,
                                      const Asset& concrete, int depth) {
    AttemptResult result;
    if (halted_) {
        result.abort = true;
        return result;
    }
    EnvironmentKnowledge& env = agents_.front().knowledge;

    // Environment shortcut: a goal the knowledge already decides costs
    // nothing and touches neither the simulator nor the sensors.
    Goal concreteGoal;
    concreteGoal.templ = concrete;
    const EnvDecision decision =
        satisfiedByEnvironment(concreteGoal, env, net_.clock, config_.minTrust);
    if (decision.verdict == EnvVerdict::Success) {
        result.success = true;
        result.assets = decision.assets;
        return result;
    }
    if (decision.verdict == EnvVerdict::Failure) return result;

    std::vector<Goal> requirements = initializeRequirements(spec, goal);
    setupRequirements(spec, concrete, requirements);
    for (const auto& req : requirements) {
        GoalResult rr = runGoal(req, depth + 1);
        if (halted_) {
            result.abort = true;
            return result;
        }
        if (!rr.success) return result;
    }

    const ActionCost effective = effectiveCost(spec, env, net_.clock);

    RunContext ctx;
    ctx.agentHost = agents_.front().host;
    ctx.agentId = agents_.front().id;
    ctx.env = &env;
    ctx.net = &net_;
    ctx.rng = &rng_;
    ctx.now = net_.clock;
    ctx.minTrust = config_.minTrust;
    ctx.catalog = &catalog_;
    ctx.params = &profile_.parameters;
    ctx.fingerprints = &fingerprints_;
    ctx.spawnAgent = [this](const Ipv4& host, const std::vector<std::string>& caps) {
        registerAgent(host, caps);
    };
    ctx.runSubGoal = [this, depth](const Goal& g) { return runGoal(g, depth + 1).success; };
    ctx.cleanResidual = [this](const Ipv4& host) { return cleanResidualAt(host); };

    ActionOutcome outcome = runConcrete(spec, concrete, ctx);

    if (outcome.skipped) {
        TimelineEntry entry;
        entry.simTime = net_.clock;
        entry.agentId = ctx.agentId;
        entry.action = spec.name;
        entry.concrete = concrete;
        entry.skipped = true;
        report_.timeline.push_back(std::move(entry));
        return result;
    }

    for (const auto& a : outcome.produced) env.insert(a);
    for (const auto& rec : outcome.noiseEmitted)
        emittedNoise_[rec.event.sensorCategory] += rec.event.magnitude;

    const double startedAt = net_.clock;
    net_.clock += outcome.elapsed;

    double cleaned = cleanNoise(net_, outcome, outcome.success);
    (void)cleaned;
    for (const auto& rec : outcome.noiseEmitted)
        if (rec.cleaned) emittedNoise_[rec.event.sensorCategory] -= rec.event.magnitude;

    TimelineEntry entry;
    entry.simTime = startedAt;
    entry.agentId = ctx.agentId;
    entry.action = spec.name;
    entry.concrete = concrete;
    entry.success = outcome.success;
    entry.noise = outcome.noiseEmitted;
    entry.elapsed = outcome.elapsed;
    entry.effectiveProbability = effective.successProbability;
    entry.effectiveStealthiness = effective.stealthiness;
    report_.timeline.push_back(std::move(entry));

    if (!outcome.success) {
        const std::size_t entryIdx = report_.timeline.size() - 1;
        const auto& records = report_.timeline.back().noise;
        for (std::size_t i = 0; i < records.size(); ++i)
            if (!records[i].cleaned &&
                records[i].event.cleanup == CleanupClass::CleanableOnSuccess)
                pendingResidual_.emplace_back(entryIdx, i);
    }

    // realized path cost at choice time
    ActionCost realized;
    realized.successProbability = effective.successProbability;
    realized.time = {outcome.elapsed, outcome.elapsed, outcome.elapsed};
    realized.stealthiness = effective.stealthiness;
    realized.zeroDay = effective.zeroDay;
    realized.hopsAdded = outcome.hopsAdded;
    for (const auto& rec : outcome.noiseEmitted) realized.noise.push_back(rec.event);
    report_.finalCost = combine(report_.finalCost, costOf(realized));

    if (outcome.success) cleanResidualAt(ctx.agentHost);

    noteDetections();
    enforceBudgets();

    result.success = outcome.success;
    for (const auto& a : outcome.produced)
        if (a.probability > 0.0 && matchesTemplate(a, concrete)) result.assets.push_back(a);
    if (result.assets.empty() && outcome.success) result.assets = outcome.produced;
    result.abort = halted_;
    return result;
}

double Engine::cleanResidualAt(const Ipv4& host) {
    double removed = 0.0;
    auto it = pendingResidual_.begin();
    while (it != pendingResidual_.end()) {
        NoiseRecord& rec = report_.timeline[it->first].noise[it->second];
        if (rec.cleaned) {
            it = pendingResidual_.erase(it);
            continue;
        }
        if (rec.address != host) {
            ++it;
            continue;
        }
        for (const auto& id : rec.sensorsHit)
            if (Sensor* s = net_.sensorById(id))
                s->accumulated = std::max(0.0, s->accumulated - rec.event.magnitude);
        emittedNoise_[rec.event.sensorCategory] -= rec.event.magnitude;
        rec.cleaned = true;
        removed += rec.event.magnitude;
        it = pendingResidual_.erase(it);
    }
    return removed;
}

Engine::GoalResult Engine::runGoal(const Goal& goal, int depth) {
    GoalResult out;
    if (halted_ || depth > config_.depthLimit) return out;

    EnvironmentKnowledge& env = agents_.front().knowledge;
    const EnvDecision decision =
        satisfiedByEnvironment(goal, env, net_.clock, config_.minTrust);
    if (decision.verdict == EnvVerdict::Success) {
        out.success = true;
        out.assets = decision.assets;
        return out;
    }
    if (decision.verdict == EnvVerdict::Failure) return out;

    BuildResult build = buildGraph(goal, catalog_, config_.depthLimit);
    if (!build.plannable) return out;

    std::set<const GraphNode*> exhausted;
    int attempts = 0;
    while (attempts <= config_.maxRetriesPerGoal && !halted_) {
        // Delayed cost computation: re-rank the surviving candidates against
        // the current snapshot, so fresh assets change the choice.
        const GraphNode* best = nullptr;
        PathCost bestCost;
        for (const auto& child : build.root->children) {
            if (exhausted.count(child.get())) continue;
            if (child->spec->baseCost.zeroDay && !profile_.parameters.zeroDayness) {
                TimelineEntry entry;  // unavailable, distinct from failure
                entry.simTime = net_.clock;
                entry.agentId = agents_.front().id;
                entry.action = child->spec->name;
                entry.concrete = goal.templ;
                entry.skipped = true;
                report_.timeline.push_back(std::move(entry));
                exhausted.insert(child.get());
                continue;
            }
            PathCost cost = actionNodePathCost(*child, env, profile_.parameters,
                                               net_.clock, config_.fullLookahead);
            if (!best || rankCosts(cost, bestCost, profile_.parameters) < 0) {
                best = child.get();
                bestCost = cost;
            }
        }
        if (!best) break;
        ++attempts;

        const ActionSpec& spec = *best->spec;
        JudgeResult result = evaluate(goal, [&](const Asset& concrete) {
            return attemptConcrete(spec, goal, concrete, depth);
        });
        if (result.success) {
            out.success = true;
            out.assets = std::move(result.completed);
            return out;
        }
        if (result.aborted || halted_) return out;
        exhausted.insert(best);
    }
    return out;
}

AttackReport Engine::run(const Goal& objective) {
    GoalResult result = runGoal(objective, 0);
    report_.goalVerdict =
        halted_ ? haltVerdict_ : (result.success ? Verdict::Success : Verdict::Failure);
    report_.assetsGained = agents_.front().knowledge.assets();
    report_.totalElapsed = net_.clock;
    for (const auto& sensor : net_.sensors)
        report_.sensorAccumulated[sensor.id] = sensor.accumulated;
    return report_;
}

AttackReport runAttack(const SimNetwork& network, const std::vector<ActionSpec>& catalog,
                       const FingerprintTable& fingerprints, const Ipv4& attackerHost,
                       const Goal& objective, const AttackerProfile& profile,
                       uint64_t seed, const std::vector<Asset>& initialKnowledge,
                       EngineConfig config) {
    Engine engine(network, catalog, fingerprints, attackerHost, profile, seed, config);
    engine.seedKnowledge(initialKnowledge);
    return engine.run(objective);
}

}  // namespace attackplan
