#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "attackplan/assets.hpp"

using namespace attackplan;

namespace {

AttrValue addr(const char* s) { return AttrValue::address(*Ipv4::parse(s)); }

Asset banner(const char* host, int port, const char* text) {
    std::map<std::string, AttrValue> attrs;
    if (host) attrs["host"] = addr(host);
    if (port >= 0) attrs["port"] = AttrValue::number(port);
    if (text) attrs["banner"] = AttrValue::text(text);
    return makeAsset(AssetKind::BannerAsset, std::move(attrs));
}

}  // namespace

TEST_CASE("makeAsset fills the schema and rejects foreign attributes") {
    Asset a = makeAsset(AssetKind::PortAsset, {{"port", AttrValue::number(80)}});
    CHECK(a.attrs.size() == 3);  // host, port, status
    CHECK(a.attrs.at("host").isUnknown());
    CHECK(a.attrs.at("status").isUnknown());
    CHECK(a.attrs.at("port").numberValue() == 80);

    CHECK_THROWS_AS(makeAsset(AssetKind::PortAsset, {{"color", AttrValue::number(1)}}),
                    std::invalid_argument);
}

TEST_CASE("attribute value equality and printing") {
    CHECK(AttrValue::unknown() == AttrValue::unknown());
    CHECK(AttrValue::unknown() != AttrValue::number(0));
    CHECK(AttrValue::text("open") != AttrValue::symbol("open"));
    CHECK(AttrValue::number(80).str() == "80");
    CHECK(AttrValue::unknown().str() == "?");
    CHECK(AttrValue::symbol("open").str() == "#open");
    CHECK(AttrValue::text("Apache/1.3.26").str() == "\"Apache/1.3.26\"");
    CHECK(addr("10.0.0.1").str() == "10.0.0.1");
}

TEST_CASE("signature covers kind and attributes, not probability or trust") {
    Asset a = banner("10.0.0.20", 80, "Apache/1.3.26");
    Asset b = a;
    b.probability = 0.3;
    b.trust = 0.1;
    b.createdAt = 99.0;
    CHECK(assetSignature(a) == assetSignature(b));

    Asset c = banner("10.0.0.21", 80, "Apache/1.3.26");
    CHECK(assetSignature(a) != assetSignature(c));
}

TEST_CASE("completes answers an open question") {
    Asset question = banner("10.0.0.20", 80, nullptr);
    Asset answer = banner("10.0.0.20", 80, "Apache/1.3.26");

    CHECK(completes(answer, question));
    CHECK_FALSE(completes(question, answer));
    // no shared concrete ground: nothing to answer
    Asset otherHost = banner("10.0.0.21", 80, "Apache/1.3.26");
    CHECK_FALSE(completes(otherHost, question));
    // fully concrete assets leave no question open
    CHECK_FALSE(completes(answer, answer));
}

TEST_CASE("completes is irreflexive, anti-symmetric and transitive") {
    // Small exhaustive universe: every banner asset over two hosts, two
    // ports, two banners, with each attribute optionally Unknown.
    std::vector<Asset> universe;
    const char* hosts[] = {nullptr, "10.0.0.1", "10.0.0.2"};
    const int ports[] = {-1, 21, 80};
    const char* banners[] = {nullptr, "a", "b"};
    for (const char* h : hosts)
        for (int p : ports)
            for (const char* t : banners) universe.push_back(banner(h, p, t));
    REQUIRE(universe.size() == 27);

    for (const Asset& a : universe) CHECK_FALSE(completes(a, a));
    for (const Asset& a : universe)
        for (const Asset& b : universe)
            if (completes(a, b)) CHECK_FALSE(completes(b, a));
    for (const Asset& a : universe)
        for (const Asset& b : universe)
            for (const Asset& c : universe)
                if (completes(a, b) && completes(b, c)) CHECK(completes(a, c));
}

TEST_CASE("completes requires matching kinds") {
    Asset port = makeAsset(AssetKind::PortAsset, {{"host", addr("10.0.0.20")}});
    Asset bannerAsset = banner("10.0.0.20", 80, "x");
    CHECK_FALSE(completes(bannerAsset, port));
}

TEST_CASE("template matching treats Unknown as a wildcard") {
    Asset concrete = banner("10.0.0.20", 80, "Apache/1.3.26");
    CHECK(matchesTemplate(concrete, banner(nullptr, 80, nullptr)));
    CHECK(matchesTemplate(concrete, banner("10.0.0.20", -1, nullptr)));
    CHECK_FALSE(matchesTemplate(concrete, banner("10.0.0.21", -1, nullptr)));
    CHECK_FALSE(matchesTemplate(concrete, banner(nullptr, 21, nullptr)));
    // an Unknown in the asset does not satisfy a concrete template slot
    CHECK_FALSE(matchesTemplate(banner("10.0.0.20", -1, nullptr),
                                banner("10.0.0.20", 80, nullptr)));
}

TEST_CASE("trust decays with a half life") {
    Asset a = banner("10.0.0.20", 80, "x");
    a.trust = 0.8;
    a.createdAt = 100.0;
    // two half lives: 0.8 * 2^-2 = 0.2
    CHECK(trustAt(a, 100.0 + 7200.0, 3600.0) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(trustAt(a, 100.0, 3600.0) == doctest::Approx(0.8));
    // one half life: 0.8 * 2^-1 = 0.4
    CHECK(trustAt(a, 3700.0, 3600.0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK_THROWS_AS(trustAt(a, 200.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(trustAt(a, 200.0, -1.0), std::invalid_argument);
}

TEST_CASE("knowledge insert is newest-wins on identical attributes") {
    EnvironmentKnowledge env;
    Asset a = banner("10.0.0.20", 80, "x");
    a.probability = 1.0;
    a.createdAt = 10.0;
    CHECK(env.insert(a).accepted);
    CHECK(env.size() == 1);

    Asset newer = a;
    newer.probability = 0.0;
    newer.createdAt = 20.0;
    MergeReport r = env.insert(newer);
    CHECK(r.accepted);
    CHECK(r.replaced);
    CHECK(env.size() == 1);
    CHECK(env.assets()[0].probability == 0.0);

    Asset stale = a;
    stale.probability = 0.5;
    stale.createdAt = 5.0;
    r = env.insert(stale);
    CHECK_FALSE(r.accepted);
    CHECK(env.assets()[0].probability == 0.0);

    // a different banner is a different fact, not a replacement
    CHECK(env.insert(banner("10.0.0.20", 80, "y")).accepted);
    CHECK(env.size() == 2);
}

TEST_CASE("knowledge query sorts by probability then decayed trust") {
    EnvironmentKnowledge env;
    env.trustHalfLife = 3600.0;

    Asset strong = banner("10.0.0.20", 80, "a");
    strong.probability = 1.0;
    strong.trust = 0.5;
    Asset weak = banner("10.0.0.20", 80, "b");
    weak.probability = 0.4;
    weak.trust = 1.0;
    Asset fresher = banner("10.0.0.20", 80, "c");
    fresher.probability = 1.0;
    fresher.trust = 0.9;
    env.insert(strong);
    env.insert(weak);
    env.insert(fresher);

    auto hits = env.query(banner("10.0.0.20", -1, nullptr), 0.0, 0.0);
    REQUIRE(hits.size() == 3);
    CHECK(hits[0].attrs.at("banner").textValue() == "c");  // p=1, trust .9
    CHECK(hits[1].attrs.at("banner").textValue() == "a");  // p=1, trust .5
    CHECK(hits[2].attrs.at("banner").textValue() == "b");  // p=.4

    // minTrust filters on decayed trust: after one half life, .5 -> .25
    auto trusted = env.query(banner("10.0.0.20", -1, nullptr), 0.3, 3600.0);
    REQUIRE(trusted.size() == 2);
    CHECK(trusted[0].attrs.at("banner").textValue() == "c");
    CHECK(trusted[1].attrs.at("banner").textValue() == "b");
}

TEST_CASE("validateAsset flags out-of-range probability and trust") {
    Asset a = banner("10.0.0.20", 80, "x");
    CHECK(validateAsset(a).empty());
    a.probability = 1.5;
    CHECK_FALSE(validateAsset(a).empty());
    a.probability = 1.0;
    a.trust = -0.1;
    CHECK_FALSE(validateAsset(a).empty());
}
