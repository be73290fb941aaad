#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "attackplan/catalog.hpp"
#include "attackplan/planner.hpp"

using namespace attackplan;

namespace {

Ipv4 ip(const char* s) { return *Ipv4::parse(s); }
AttrValue addr(const char* s) { return AttrValue::address(ip(s)); }

ActionCost cost(double p, double tMin, double tAvg, double tMax, double stealth,
                bool zeroDay = false) {
    ActionCost c;
    c.successProbability = p;
    c.time = {tMin, tAvg, tMax};
    c.stealthiness = stealth;
    c.zeroDay = zeroDay;
    return c;
}

Asset connectivity(const char* source, const char* target) {
    return makeAsset(AssetKind::IPConnectivityAsset,
                     {{"source", addr(source)}, {"target", addr(target)}});
}

Asset agentAt(const char* host) {
    return makeAsset(AssetKind::AgentAsset,
                     {{"agent", AttrValue::symbol(std::string("agent@") + host)},
                      {"host", addr(host)}});
}

}  // namespace

TEST_CASE("the empty path is the identity cost") {
    PathCost identity = evaluatePath({});
    CHECK(identity.successProbability == 1.0);
    CHECK(identity.stealthiness == 1.0);
    CHECK(identity.time.avg == 0.0);
    CHECK(identity.hops == 0);
    CHECK_FALSE(identity.usesZeroDay);
    CHECK(identity.expectedNoise.empty());

    PathCost one = costOf(cost(0.7, 1, 2, 3, 0.9));
    PathCost same = combine(identity, one);
    CHECK(same.successProbability == one.successProbability);
    CHECK(same.time.avg == one.time.avg);
}

TEST_CASE("path algebra multiplies probabilities and sums time") {
    ActionCost a = cost(0.8, 1, 2, 4, 0.9);
    a.noise.push_back({"network-ids", 2.0, CleanupClass::Unremovable});
    ActionCost b = cost(0.5, 10, 20, 40, 0.7, true);
    b.noise.push_back({"network-ids", 3.0, CleanupClass::CleanableAlways});
    b.noise.push_back({"host-log", 1.0, CleanupClass::Unremovable});
    b.hopsAdded = 2;

    PathCost p = evaluatePath({a, b});
    CHECK(p.successProbability == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(p.stealthiness == doctest::Approx(0.63).epsilon(1e-12));
    CHECK(p.time.min == 11.0);
    CHECK(p.time.avg == 22.0);
    CHECK(p.time.max == 44.0);
    CHECK(p.hops == 2);
    CHECK(p.usesZeroDay);
    CHECK(p.expectedNoise.at("network-ids") == doctest::Approx(5.0));
    CHECK(p.expectedNoise.at("host-log") == doctest::Approx(1.0));
}

TEST_CASE("combine is associative") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto randomCost = [&]() {
            PathCost c = costOf(cost(uni(rng), uni(rng), 1 + uni(rng), 2 + uni(rng),
                                     uni(rng), rng() % 2 == 0));
            c.expectedNoise["network-ids"] = uni(rng);
            c.hops = static_cast<int>(rng() % 3);
            return c;
        };
        PathCost a = randomCost(), b = randomCost(), c = randomCost();
        PathCost lhs = combine(combine(a, b), c);
        PathCost rhs = combine(a, combine(b, c));
        CHECK(lhs.successProbability == doctest::Approx(rhs.successProbability).epsilon(1e-12));
        CHECK(lhs.stealthiness == doctest::Approx(rhs.stealthiness).epsilon(1e-12));
        CHECK(lhs.time.avg == doctest::Approx(rhs.time.avg).epsilon(1e-12));
        CHECK(lhs.hops == rhs.hops);
        CHECK(lhs.usesZeroDay == rhs.usesZeroDay);
        CHECK(lhs.expectedNoise.at("network-ids") ==
              doctest::Approx(rhs.expectedNoise.at("network-ids")).epsilon(1e-12));
    }
}

TEST_CASE("hard feasibility limits") {
    AttackParameters params;
    params.executionTime = 100.0;
    params.toleratedNoise = {{"network-ids", 5.0}};

    PathCost ok = costOf(cost(0.9, 1, 2, 3, 0.9));
    CHECK(feasible(ok, params));

    PathCost zeroDay = ok;
    zeroDay.usesZeroDay = true;
    CHECK_FALSE(feasible(zeroDay, params));
    params.zeroDayness = true;
    CHECK(feasible(zeroDay, params));
    params.zeroDayness = false;

    PathCost slow = ok;
    slow.time.max = 101.0;
    CHECK_FALSE(feasible(slow, params));

    PathCost loud = ok;
    loud.expectedNoise["network-ids"] = 6.0;
    CHECK_FALSE(feasible(loud, params));
    loud.expectedNoise["network-ids"] = 5.0;
    CHECK(feasible(loud, params));

    // only the categories the attacker budgets for are constrained
    PathCost other = ok;
    other.expectedNoise["host-log"] = 1000.0;
    CHECK(feasible(other, params));

    AttackParameters careless;
    careless.executionTime = 100.0;
    CHECK(feasible(other, careless));  // empty toleratedNoise = unconstrained

    // an attacker who only needs success ignores the noise budget
    AttackParameters reckless = params;
    reckless.expectedSuccess = 1.0;
    PathCost noisy = ok;
    noisy.expectedNoise["network-ids"] = 50.0;
    CHECK(feasible(noisy, reckless));
}

TEST_CASE("ranking prefers feasible and lower scalarized cost") {
    AttackParameters params;
    params.expectedSuccess = 0.8;

    PathCost good = costOf(cost(0.95, 1, 2, 3, 0.95));
    PathCost bad = costOf(cost(0.2, 100, 200, 400, 0.3));
    CHECK(rankCosts(good, bad, params) == -1);
    CHECK(rankCosts(bad, good, params) == 1);
    CHECK(rankCosts(good, good, params) == 0);

    PathCost infeasible = good;
    infeasible.usesZeroDay = true;  // no permission in params
    CHECK(rankCosts(infeasible, bad, params) == 1);
    CHECK(rankCosts(bad, infeasible, params) == -1);
}

TEST_CASE("scalarize is non-negative and monotone in failure probability") {
    AttackParameters params;
    params.expectedSuccess = 0.9;
    params.toleratedNoise = {{"network-ids", 10.0}};
    params.nonTraceability = 0.5;

    PathCost sure = costOf(cost(1.0, 0, 0, 0, 1.0));
    CHECK(scalarize(sure, params) == doctest::Approx(0.0));

    double last = -1.0;
    for (double p : {0.9, 0.7, 0.5, 0.3, 0.1}) {
        const double s = scalarize(costOf(cost(p, 1, 2, 3, 0.9)), params);
        CHECK(s >= 0.0);
        CHECK(s > last);
        last = s;
    }
}

TEST_CASE("buildGraph rejects a non-positive depth limit") {
    Goal g;
    g.templ = makeAsset(AssetKind::AgentAsset, {{"host", addr("10.0.0.20")}});
    CHECK_THROWS_AS(buildGraph(g, defaultCatalog(), 0), std::invalid_argument);
}

TEST_CASE("buildGraph alternates goal and action layers") {
    Goal g;
    g.templ = makeAsset(AssetKind::AgentAsset, {{"host", addr("10.0.0.20")}});
    BuildResult built = buildGraph(g, defaultCatalog());
    REQUIRE(built.root);
    CHECK(built.plannable);
    CHECK(built.root->type == GraphNode::Type::Goal);
    CHECK_FALSE(built.root->children.empty());
    for (const auto& action : built.root->children) {
        CHECK(action->type == GraphNode::Type::Action);
        for (const auto& req : action->children)
            CHECK((req->type == GraphNode::Type::Goal ||
                   req->type == GraphNode::Type::PivotTask));
    }
    // candidate actions were recorded on the goal
    CHECK_FALSE(built.root->goal.candidateActions.empty());
}

TEST_CASE("an agent requirement below an agent goal becomes a pivot task") {
    Goal g;
    g.templ = makeAsset(AssetKind::AgentAsset, {{"host", addr("10.0.0.20")}});
    BuildResult built = buildGraph(g, defaultCatalog());
    REQUIRE(built.root);
    std::size_t pivots = 0;
    std::function<void(const GraphNode&)> walk = [&](const GraphNode& n) {
        if (n.type == GraphNode::Type::PivotTask) ++pivots;
        for (const auto& c : n.children) walk(*c);
    };
    walk(*built.root);
    CHECK(pivots > 0);
}

TEST_CASE("buildGraph terminates on mutually recursive catalogs") {
    // TCPConnect requires IPConnectivity; give IPConnectivity an action that
    // requires TCPConnectivity right back.
    std::vector<ActionSpec> catalog = defaultCatalog();
    ActionSpec realias;
    realias.name = "ReverseTunnel";
    realias.behavior = Behavior::TcpConnect;
    realias.provides = makeAsset(AssetKind::IPConnectivityAsset, {});
    RequirementTemplate rt;
    rt.kind = AssetKind::TCPConnectivityAsset;
    rt.bind["target"] = "source";
    rt.bind["source"] = "target";
    realias.requirementTemplates.push_back(rt);
    catalog.push_back(realias);

    Goal g;
    g.templ = makeAsset(AssetKind::TCPConnectivityAsset,
                        {{"source", addr("10.0.0.1")},
                         {"target", addr("10.0.0.20")},
                         {"port", AttrValue::number(80)}});
    BuildResult built = buildGraph(g, catalog, 6);
    CHECK(built.root != nullptr);  // termination is the property under test
}

TEST_CASE("goal cost is the identity when the environment already decides it") {
    EnvironmentKnowledge env;
    env.insert(connectivity("10.0.0.1", "10.0.0.20"));
    Goal g;
    g.templ = connectivity("10.0.0.1", "10.0.0.20");
    BuildResult built = buildGraph(g, defaultCatalog());
    AttackParameters params;
    PathCost c = goalPathCost(*built.root, env, params, 0.0);
    CHECK(c.successProbability == 1.0);
    CHECK(c.time.avg == 0.0);
    CHECK(c.expectedNoise.empty());
}

TEST_CASE("a goal with no candidate actions is hopeless") {
    std::vector<ActionSpec> catalog;  // empty catalog: nothing provides anything
    Goal g;
    g.templ = makeAsset(AssetKind::AgentAsset, {{"host", addr("10.0.0.20")}});
    BuildResult built = buildGraph(g, catalog);
    CHECK_FALSE(built.plannable);
    EnvironmentKnowledge env;
    AttackParameters params;
    CHECK(goalPathCost(*built.root, env, params, 0.0).successProbability == 0.0);
}

TEST_CASE("chooseAction keeps the first of equally ranked candidates") {
    std::vector<ActionSpec> catalog;
    for (const char* name : {"First", "Second"}) {
        ActionSpec s;
        s.name = name;
        s.behavior = Behavior::TcpConnect;
        s.provides = makeAsset(AssetKind::TCPConnectivityAsset, {});
        s.baseCost = cost(0.5, 1, 2, 3, 0.9);
        catalog.push_back(s);
    }
    Goal g;
    g.templ = makeAsset(AssetKind::TCPConnectivityAsset, {});
    BuildResult built = buildGraph(g, catalog);
    EnvironmentKnowledge env;
    AttackParameters params;
    const GraphNode* chosen = chooseAction(*built.root, env, params, 0.0);
    REQUIRE(chosen);
    REQUIRE(chosen->spec);
    CHECK(chosen->spec->name == "First");
}

TEST_CASE("planPivot routes through an intermediate host when needed") {
    EnvironmentKnowledge env;
    env.insert(agentAt("10.0.0.1"));
    env.insert(connectivity("10.0.0.1", "10.0.0.2"));
    env.insert(connectivity("10.0.0.2", "10.0.0.3"));
    // no direct edge 10.0.0.1 -> 10.0.0.3

    AttackParameters params;
    PivotPlan plan = planPivot(ip("10.0.0.1"), ip("10.0.0.3"), 80, env,
                               defaultCatalog(), params, 0.0);
    REQUIRE(plan.found);
    CHECK(plan.start == ip("10.0.0.1"));
    REQUIRE(plan.hops.size() == 2);
    CHECK(plan.hops[0].host == ip("10.0.0.2"));
    CHECK(plan.hops[0].needAgent);
    CHECK(plan.hops[0].subplan != nullptr);
    CHECK(plan.hops[1].host == ip("10.0.0.3"));
    CHECK_FALSE(plan.hops[1].needAgent);  // the final hop only needs connectivity
    CHECK(plan.totalCost.hops == 1);
}

TEST_CASE("planPivot prefers the direct edge when one exists") {
    EnvironmentKnowledge env;
    env.insert(agentAt("10.0.0.1"));
    env.insert(connectivity("10.0.0.1", "10.0.0.2"));
    env.insert(connectivity("10.0.0.2", "10.0.0.3"));
    env.insert(connectivity("10.0.0.1", "10.0.0.3"));

    AttackParameters params;
    PivotPlan plan = planPivot(ip("10.0.0.1"), ip("10.0.0.3"), 80, env,
                               defaultCatalog(), params, 0.0);
    REQUIRE(plan.found);
    REQUIRE(plan.hops.size() == 1);
    CHECK(plan.hops[0].host == ip("10.0.0.3"));
    CHECK(plan.totalCost.hops == 0);
}

TEST_CASE("planPivot starts from the nearest owned agent") {
    EnvironmentKnowledge env;
    env.insert(agentAt("10.0.0.1"));
    env.insert(agentAt("10.0.0.5"));
    env.insert(connectivity("10.0.0.1", "10.0.0.2"));
    env.insert(connectivity("10.0.0.2", "10.0.0.3"));
    env.insert(connectivity("10.0.0.5", "10.0.0.3"));

    AttackParameters params;
    PivotPlan plan = planPivot(ip("10.0.0.1"), ip("10.0.0.3"), 80, env,
                               defaultCatalog(), params, 0.0);
    REQUIRE(plan.found);
    CHECK(plan.start == ip("10.0.0.5"));
    REQUIRE(plan.hops.size() == 1);
}

TEST_CASE("planPivot reports failure on a disconnected target") {
    EnvironmentKnowledge env;
    env.insert(agentAt("10.0.0.1"));
    env.insert(connectivity("10.0.0.1", "10.0.0.2"));

    AttackParameters params;
    PivotPlan plan = planPivot(ip("10.0.0.1"), ip("10.0.0.9"), 80, env,
                               defaultCatalog(), params, 0.0);
    CHECK_FALSE(plan.found);
}

TEST_CASE("pivot task estimate is a fixed feasible placeholder") {
    PathCost est = pivotTaskEstimate();
    CHECK(est.successProbability > 0.0);
    CHECK(est.successProbability < 1.0);
    CHECK(est.hops == 1);
    CHECK_FALSE(est.usesZeroDay);
}
