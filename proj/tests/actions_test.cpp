#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "attackplan/actions.hpp"

using namespace attackplan;

namespace {

AttrValue addr(const char* s) { return AttrValue::address(*Ipv4::parse(s)); }

ActionSpec exploitSpec(double baseP, double met, double unmet) {
    ActionSpec spec;
    spec.name = "TestExploit";
    spec.behavior = Behavior::Exploit;
    spec.provides = makeAsset(AssetKind::AgentAsset, {});
    EnvironmentCondition cond;
    cond.templ = makeAsset(AssetKind::ApplicationAsset,
                           {{"application", AttrValue::symbol("Apache")}});
    cond.multiplierIfMet = met;
    cond.multiplierIfUnmet = unmet;
    spec.conditions.push_back(cond);
    spec.baseCost.successProbability = baseP;
    return spec;
}

Asset appAsset(double probability, double trust = 1.0, double createdAt = 0.0) {
    Asset a = makeAsset(AssetKind::ApplicationAsset,
                        {{"host", addr("10.0.0.20")},
                         {"port", AttrValue::number(80)},
                         {"application", AttrValue::symbol("Apache")}});
    a.probability = probability;
    a.trust = trust;
    a.createdAt = createdAt;
    return a;
}

}  // namespace

TEST_CASE("time triples must be ordered") {
    CHECK(timeTripleOrdered({1.0, 2.0, 3.0}));
    CHECK(timeTripleOrdered({0.0, 0.0, 0.0}));
    CHECK_FALSE(timeTripleOrdered({2.0, 1.0, 3.0}));
    CHECK_FALSE(timeTripleOrdered({1.0, 3.0, 2.0}));
    CHECK_FALSE(timeTripleOrdered({-1.0, 0.0, 0.0}));
}

TEST_CASE("effective cost with no evidence keeps the base probability") {
    EnvironmentKnowledge env;
    ActionSpec spec = exploitSpec(0.9, 1.15, 0.01);
    CHECK(effectiveCost(spec, env, 0.0).successProbability == doctest::Approx(0.9));
}

TEST_CASE("a certainly-unmet condition multiplies down") {
    EnvironmentKnowledge env;
    env.insert(appAsset(0.0));  // known false, full trust
    ActionSpec spec = exploitSpec(0.9, 1.15, 0.01);
    // 0.9 * 0.01 = 0.009
    CHECK(effectiveCost(spec, env, 0.0).successProbability ==
          doctest::Approx(0.009).epsilon(1e-12));
}

TEST_CASE("a certainly-met condition multiplies up, clamped at 1") {
    EnvironmentKnowledge env;
    env.insert(appAsset(1.0));
    ActionSpec spec = exploitSpec(0.3, 3.0, 0.01);
    // 0.3 * 3.0 = 0.9
    CHECK(effectiveCost(spec, env, 0.0).successProbability ==
          doctest::Approx(0.9).epsilon(1e-12));

    ActionSpec big = exploitSpec(0.5, 3.0, 0.01);
    CHECK(effectiveCost(big, env, 0.0).successProbability == doctest::Approx(1.0));
}

TEST_CASE("condition effect interpolates by probability and decayed trust") {
    // p=0.5, trust 1, fresh: weight 0.5 -> 0.9 * (1 + (1.15-1)*0.5) = 0.9675
    EnvironmentKnowledge env;
    env.insert(appAsset(0.5));
    ActionSpec spec = exploitSpec(0.9, 1.15, 0.01);
    CHECK(effectiveCost(spec, env, 0.0).successProbability ==
          doctest::Approx(0.9675).epsilon(1e-12));

    // negative evidence one half life old: weight 0.5
    // 0.9 * (1 + (0.01-1)*0.5) = 0.4545
    EnvironmentKnowledge stale;
    stale.insert(appAsset(0.0, 1.0, 0.0));
    CHECK(effectiveCost(spec, stale, 3600.0).successProbability ==
          doctest::Approx(0.4545).epsilon(1e-12));
}

TEST_CASE("stale evidence decays toward no effect") {
    ActionSpec spec = exploitSpec(0.9, 1.15, 0.01);
    EnvironmentKnowledge env;
    env.insert(appAsset(0.0));
    const double fresh = effectiveCost(spec, env, 0.0).successProbability;
    const double later = effectiveCost(spec, env, 7200.0).successProbability;
    CHECK(fresh < later);
    CHECK(later < 0.9);
}

TEST_CASE("provides pattern matching") {
    ActionSpec spec;
    spec.provides = makeAsset(AssetKind::PortAsset,
                              {{"status", AttrValue::symbol("open")}});
    CHECK(providesMatches(spec, makeAsset(AssetKind::PortAsset, {})));
    CHECK(providesMatches(spec, makeAsset(AssetKind::PortAsset,
                                          {{"status", AttrValue::symbol("open")}})));
    CHECK_FALSE(providesMatches(spec, makeAsset(AssetKind::PortAsset,
                                                {{"status", AttrValue::symbol("closed")}})));
    CHECK_FALSE(providesMatches(spec, makeAsset(AssetKind::BannerAsset, {})));
}

TEST_CASE("initializeRequirements binds only the goal's common information") {
    ActionSpec spec;
    spec.name = "PortScan";
    spec.provides = makeAsset(AssetKind::PortAsset, {});
    RequirementTemplate rt;
    rt.kind = AssetKind::IPConnectivityAsset;
    rt.bind["target"] = "host";
    spec.requirementTemplates.push_back(rt);

    Goal g;
    g.templ = makeAsset(AssetKind::PortAsset, {{"host", addr("10.0.0.20")}});
    g.quantifiers.push_back({QuantifierType::Any, "port", Domain::range(1, 1024)});

    auto reqs = initializeRequirements(spec, g);
    REQUIRE(reqs.size() == 1);
    CHECK(reqs[0].templ.kind == AssetKind::IPConnectivityAsset);
    CHECK(reqs[0].templ.attrs.at("target").addressValue().str() == "10.0.0.20");
    CHECK(reqs[0].templ.attrs.at("source").isUnknown());
}

TEST_CASE("quantified goal attributes stay open in requirements") {
    ActionSpec spec;
    spec.provides = makeAsset(AssetKind::PortAsset, {});
    RequirementTemplate rt;
    rt.kind = AssetKind::IPConnectivityAsset;
    rt.bind["target"] = "host";
    spec.requirementTemplates.push_back(rt);

    Goal g;
    g.templ = makeAsset(AssetKind::PortAsset, {});
    g.quantifiers.push_back(
        {QuantifierType::Any, "host", Domain::netblock(*Cidr::parse("10.0.0.0/24"))});

    auto reqs = initializeRequirements(spec, g);
    REQUIRE(reqs.size() == 1);
    CHECK(reqs[0].templ.attrs.at("target").isUnknown());
}

TEST_CASE("setupRequirements pushes concrete values through the bindings") {
    ActionSpec spec;
    spec.provides = makeAsset(AssetKind::AgentAsset, {});
    RequirementTemplate rt;
    rt.kind = AssetKind::TCPConnectivityAsset;
    rt.fixed["port"] = AttrValue::number(80);
    rt.bind["target"] = "host";
    spec.requirementTemplates.push_back(rt);

    Goal g;
    g.templ = makeAsset(AssetKind::AgentAsset, {});
    g.quantifiers.push_back(
        {QuantifierType::Any, "host", Domain::netblock(*Cidr::parse("10.0.0.0/29"))});
    auto reqs = initializeRequirements(spec, g);
    REQUIRE(reqs.size() == 1);

    Asset concrete = g.templ;
    concrete.attrs["host"] = addr("10.0.0.3");
    setupRequirements(spec, concrete, reqs);
    CHECK(reqs[0].templ.attrs.at("target").addressValue().str() == "10.0.0.3");
    CHECK(reqs[0].templ.attrs.at("port").numberValue() == 80);
}

TEST_CASE("setupRequirements rejects conflicting concrete values") {
    ActionSpec spec;
    spec.provides = makeAsset(AssetKind::PortAsset, {});
    RequirementTemplate rt;
    rt.kind = AssetKind::IPConnectivityAsset;
    rt.fixed["target"] = addr("10.0.0.1");
    rt.bind["target"] = "host";
    spec.requirementTemplates.push_back(rt);

    Goal g;
    g.templ = makeAsset(AssetKind::PortAsset, {});
    g.quantifiers.push_back(
        {QuantifierType::Any, "host", Domain::netblock(*Cidr::parse("10.0.0.0/29"))});
    auto reqs = initializeRequirements(spec, g);

    Asset concrete = g.templ;
    concrete.attrs["host"] = addr("10.0.0.2");  // conflicts with the fixed target
    CHECK_THROWS_AS(setupRequirements(spec, concrete, reqs), std::logic_error);
}

TEST_CASE("initializeRequirements enforces the provides kind") {
    ActionSpec spec;
    spec.provides = makeAsset(AssetKind::PortAsset, {});
    Goal g;
    g.templ = makeAsset(AssetKind::BannerAsset, {});
    CHECK_THROWS_AS(initializeRequirements(spec, g), std::invalid_argument);
}

TEST_CASE("behavior names round trip") {
    for (Behavior b : {Behavior::NetworkDiscovery, Behavior::PortScan, Behavior::Exploit,
                       Behavior::TcpConnectCreatingHops, Behavior::CleanLogs}) {
        auto back = behaviorFromName(behaviorName(b));
        REQUIRE(back);
        CHECK(*back == b);
    }
    CHECK_FALSE(behaviorFromName("NotABehavior"));
}
