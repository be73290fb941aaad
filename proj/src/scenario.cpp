#include "attackplan/scenario.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace attackplan {

using nlohmann::json;

namespace {

// ---- naming tables -------------------------------------------------------

std::string verdictText(FirewallVerdict v) {
    return v == FirewallVerdict::Allow ? "allow" : "deny";
}

std::optional<FirewallVerdict> verdictFromText(const std::string& s) {
    if (s == "allow") return FirewallVerdict::Allow;
    if (s == "deny") return FirewallVerdict::Deny;
    return std::nullopt;
}

std::optional<CleanupClass> cleanupFromName(const std::string& s) {
    for (CleanupClass c : {CleanupClass::Unremovable, CleanupClass::CleanableOnSuccess,
                           CleanupClass::CleanableAlways})
        if (cleanupClassName(c) == s) return c;
    return std::nullopt;
}

std::string vulnCategoryName(VulnCategory c) {
    switch (c) {
        case VulnCategory::None: return "none";
        case VulnCategory::SoftwareDesignFlaw: return "software-design-flaw";
        case VulnCategory::SoftwareImplementationFlaw:
            return "software-implementation-flaw";
        case VulnCategory::NetworkConfiguration: return "network-configuration";
        case VulnCategory::TrustRelationship: return "trust-relationship";
    }
    return "none";
}

std::optional<VulnCategory> vulnCategoryFromName(const std::string& s) {
    for (VulnCategory c :
         {VulnCategory::None, VulnCategory::SoftwareDesignFlaw,
          VulnCategory::SoftwareImplementationFlaw, VulnCategory::NetworkConfiguration,
          VulnCategory::TrustRelationship})
        if (vulnCategoryName(c) == s) return c;
    return std::nullopt;
}

std::string flawSubtypeName(FlawSubtype t) {
    switch (t) {
        case FlawSubtype::None: return "none";
        case FlawSubtype::BufferOverflow: return "buffer-overflow";
        case FlawSubtype::FormatString: return "format-string";
        case FlawSubtype::RaceCondition: return "race-condition";
    }
    return "none";
}

std::optional<FlawSubtype> flawSubtypeFromName(const std::string& s) {
    for (FlawSubtype t : {FlawSubtype::None, FlawSubtype::BufferOverflow,
                          FlawSubtype::FormatString, FlawSubtype::RaceCondition})
        if (flawSubtypeName(t) == s) return t;
    return std::nullopt;
}

// ---- diagnostic-collecting parse helpers ----------------------------------

struct Diags {
    std::vector<std::string>* out;
    void add(const std::string& path, const std::string& msg) {
        out->push_back(path + ": " + msg);
    }
};

const json* field(const json& j, const std::string& key) {
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::string getString(const json& j, const std::string& key, const std::string& path,
                      Diags& d, const std::string& fallback = "") {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_string()) {
        d.add(path + "." + key, "expected a string");
        return fallback;
    }
    return f->get<std::string>();
}

double getNumber(const json& j, const std::string& key, const std::string& path,
                 Diags& d, double fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_number()) {
        d.add(path + "." + key, "expected a number");
        return fallback;
    }
    return f->get<double>();
}

bool getBool(const json& j, const std::string& key, const std::string& path, Diags& d,
             bool fallback) {
    const json* f = field(j, key);
    if (!f) return fallback;
    if (!f->is_boolean()) {
        d.add(path + "." + key, "expected a boolean");
        return fallback;
    }
    return f->get<bool>();
}

Ipv4 getAddress(const json& j, const std::string& key, const std::string& path,
                Diags& d) {
    const std::string s = getString(j, key, path, d);
    auto a = Ipv4::parse(s);
    if (!a) {
        d.add(path + "." + key, "malformed IPv4 address '" + s + "'");
        return Ipv4{};
    }
    return *a;
}

Cidr getCidr(const json& j, const std::string& key, const std::string& path, Diags& d) {
    const std::string s = getString(j, key, path, d);
    auto c = Cidr::parse(s);
    if (!c) {
        d.add(path + "." + key, "malformed CIDR block '" + s + "'");
        return Cidr{};
    }
    return *c;
}

// ---- attribute values ------------------------------------------------------

// Strings disambiguate by shape: IPv4 -> Address, CIDR -> Netblock, the
// "banner" attribute -> Text, anything else -> Symbol.
AttrValue attrFromJson(const json& j, const std::string& attrName,
                       const std::string& path, Diags& d) {
    if (j.is_null()) return AttrValue::unknown();
    if (j.is_number_integer()) return AttrValue::number(j.get<int64_t>());
    if (j.is_array()) {
        std::vector<AttrValue> items;
        for (std::size_t i = 0; i < j.size(); ++i)
            items.push_back(attrFromJson(j[i], attrName,
                                         path + "[" + std::to_string(i) + "]", d));
        return AttrValue::list(std::move(items));
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (auto a = Ipv4::parse(s)) return AttrValue::address(*a);
        if (s.find('/') != std::string::npos)
            if (auto c = Cidr::parse(s)) return AttrValue::netblock(*c);
        if (attrName == "banner") return AttrValue::text(s);
        return AttrValue::symbol(s);
    }
    d.add(path, "unsupported attribute value type");
    return AttrValue::unknown();
}

json attrToJson(const AttrValue& v) {
    switch (v.tag()) {
        case AttrValue::Tag::Unknown: return nullptr;
        case AttrValue::Tag::Text: return v.textValue();
        case AttrValue::Tag::Number: return v.numberValue();
        case AttrValue::Tag::Address: return v.addressValue().str();
        case AttrValue::Tag::Netblock: return v.netblockValue().str();
        case AttrValue::Tag::Symbol: return v.symbolValue();
        case AttrValue::Tag::List: {
            json arr = json::array();
            for (const auto& item : v.listValue()) arr.push_back(attrToJson(item));
            return arr;
        }
    }
    return nullptr;
}

// ---- assets ---------------------------------------------------------------

Asset assetFromJson(const json& j, const std::string& path, Diags& d) {
    Asset a;
    if (!j.is_object()) {
        d.add(path, "expected an object");
        return a;
    }
    const std::string kindName = getString(j, "kind", path, d);
    auto kind = assetKindFromName(kindName);
    if (!kind) {
        d.add(path + ".kind", "unknown asset kind '" + kindName + "'");
        return a;
    }
    a.kind = *kind;
    const auto& schema = schemaOf(a.kind);
    for (const std::string& attr : schema) a.attrs[attr] = AttrValue::unknown();
    if (const json* attrs = field(j, "attrs")) {
        if (!attrs->is_object()) {
            d.add(path + ".attrs", "expected an object");
        } else {
            for (auto it = attrs->begin(); it != attrs->end(); ++it) {
                if (std::find(schema.begin(), schema.end(), it.key()) == schema.end()) {
                    d.add(path + ".attrs." + it.key(),
                          "attribute not in the " + kindName + " schema");
                    continue;
                }
                a.attrs[it.key()] =
                    attrFromJson(*it, it.key(), path + ".attrs." + it.key(), d);
            }
        }
    }
    a.probability = getNumber(j, "probability", path, d, 1.0);
    a.trust = getNumber(j, "trust", path, d, 1.0);
    a.createdAt = getNumber(j, "createdAt", path, d, 0.0);
    const std::string problem = validateAsset(a);
    if (!problem.empty()) d.add(path, problem);
    return a;
}

// ---- goals ------------------------------------------------------------------

Domain domainFromJson(const json& j, const std::string& path, Diags& d) {
    if (!j.is_object()) {
        d.add(path, "expected an object");
        return Domain::range(0, -1);
    }
    const std::string kind = getString(j, "kind", path, d);
    if (kind == "range") {
        return Domain::range(static_cast<int64_t>(getNumber(j, "from", path, d, 0)),
                             static_cast<int64_t>(getNumber(j, "to", path, d, -1)));
    }
    if (kind == "values") {
        std::vector<AttrValue> values;
        const json* arr = field(j, "values");
        if (!arr || !arr->is_array()) {
            d.add(path + ".values", "expected an array");
        } else {
            for (std::size_t i = 0; i < arr->size(); ++i)
                values.push_back(attrFromJson((*arr)[i], "",
                                              path + ".values[" + std::to_string(i) + "]",
                                              d));
        }
        return Domain::valueList(std::move(values));
    }
    if (kind == "netblock") return Domain::netblock(getCidr(j, "block", path, d));
    d.add(path + ".kind", "unknown domain kind '" + kind + "'");
    return Domain::range(0, -1);
}

json domainToJson(const Domain& dom) {
    json j;
    switch (dom.kind()) {
        case Domain::Kind::Range:
            j["kind"] = "range";
            j["from"] = dom.rangeFrom();
            j["to"] = dom.rangeTo();
            break;
        case Domain::Kind::ValueList: {
            j["kind"] = "values";
            json arr = json::array();
            for (const auto& v : dom.values()) arr.push_back(attrToJson(v));
            j["values"] = std::move(arr);
            break;
        }
        case Domain::Kind::Netblock:
            j["kind"] = "netblock";
            j["block"] = dom.block().str();
            break;
    }
    return j;
}

Goal goalFromJson(const json& j, const std::string& path, Diags& d) {
    Goal g;
    if (!j.is_object()) {
        d.add(path, "expected an object");
        return g;
    }
    if (const json* t = field(j, "template"))
        g.templ = assetFromJson(*t, path + ".template", d);
    else
        d.add(path + ".template", "missing");
    if (const json* qs = field(j, "quantifiers")) {
        if (!qs->is_array()) {
            d.add(path + ".quantifiers", "expected an array");
        } else {
            for (std::size_t i = 0; i < qs->size(); ++i) {
                const std::string qpath = path + ".quantifiers[" + std::to_string(i) + "]";
                const json& qj = (*qs)[i];
                Quantifier q;
                const std::string typeName = getString(qj, "type", qpath, d);
                auto type = quantifierTypeFromName(typeName);
                if (!type)
                    d.add(qpath + ".type", "unknown quantifier type '" + typeName + "'");
                else
                    q.type = *type;
                q.attribute = getString(qj, "attribute", qpath, d);
                if (const json* dom = field(qj, "domain"))
                    q.domain = domainFromJson(*dom, qpath + ".domain", d);
                else
                    d.add(qpath + ".domain", "missing");
                g.quantifiers.push_back(std::move(q));
            }
        }
    }
    for (const std::string& problem : validateGoal(g)) d.add(path, problem);
    return g;
}

// ---- action specs -----------------------------------------------------------

ActionSpec actionSpecFromJson(const json& j, const std::string& path, Diags& d) {
    ActionSpec spec;
    if (!j.is_object()) {
        d.add(path, "expected an object");
        return spec;
    }
    spec.name = getString(j, "name", path, d);
    if (spec.name.empty()) d.add(path + ".name", "missing or empty");
    const std::string behaviorText = getString(j, "behavior", path, d);
    auto behavior = behaviorFromName(behaviorText);
    if (!behavior)
        d.add(path + ".behavior", "unknown behavior '" + behaviorText + "'");
    else
        spec.behavior = *behavior;
    if (const json* p = field(j, "provides"))
        spec.provides = assetFromJson(*p, path + ".provides", d);
    else
        d.add(path + ".provides", "missing");
    if (const json* reqs = field(j, "requirements")) {
        for (std::size_t i = 0; i < reqs->size(); ++i) {
            const std::string rpath = path + ".requirements[" + std::to_string(i) + "]";
            const json& rj = (*reqs)[i];
            RequirementTemplate rt;
            const std::string kindName = getString(rj, "kind", rpath, d);
            auto kind = assetKindFromName(kindName);
            if (!kind)
                d.add(rpath + ".kind", "unknown asset kind '" + kindName + "'");
            else
                rt.kind = *kind;
            if (const json* fixed = field(rj, "fixed"))
                for (auto it = fixed->begin(); it != fixed->end(); ++it)
                    rt.fixed[it.key()] =
                        attrFromJson(*it, it.key(), rpath + ".fixed." + it.key(), d);
            if (const json* bind = field(rj, "bind"))
                for (auto it = bind->begin(); it != bind->end(); ++it) {
                    if (!it->is_string())
                        d.add(rpath + ".bind." + it.key(), "expected a string");
                    else
                        rt.bind[it.key()] = it->get<std::string>();
                }
            spec.requirementTemplates.push_back(std::move(rt));
        }
    }
    if (const json* conds = field(j, "conditions")) {
        for (std::size_t i = 0; i < conds->size(); ++i) {
            const std::string cpath = path + ".conditions[" + std::to_string(i) + "]";
            const json& cj = (*conds)[i];
            EnvironmentCondition cond;
            if (const json* t = field(cj, "template"))
                cond.templ = assetFromJson(*t, cpath + ".template", d);
            else
                d.add(cpath + ".template", "missing");
            cond.multiplierIfMet = getNumber(cj, "multiplierIfMet", cpath, d, 1.0);
            cond.multiplierIfUnmet = getNumber(cj, "multiplierIfUnmet", cpath, d, 1.0);
            spec.conditions.push_back(std::move(cond));
        }
    }
    if (const json* cost = field(j, "cost")) {
        const std::string cpath = path + ".cost";
        spec.baseCost.successProbability =
            getNumber(*cost, "successProbability", cpath, d, 1.0);
        if (spec.baseCost.successProbability < 0.0 ||
            spec.baseCost.successProbability > 1.0)
            d.add(cpath + ".successProbability", "outside [0, 1]");
        if (const json* t = field(*cost, "time")) {
            spec.baseCost.time.min = getNumber(*t, "min", cpath + ".time", d, 0.0);
            spec.baseCost.time.avg = getNumber(*t, "avg", cpath + ".time", d, 0.0);
            spec.baseCost.time.max = getNumber(*t, "max", cpath + ".time", d, 0.0);
            if (!timeTripleOrdered(spec.baseCost.time))
                d.add(cpath + ".time", "must satisfy min <= avg <= max");
        }
        if (const json* noise = field(*cost, "noise")) {
            for (std::size_t i = 0; i < noise->size(); ++i) {
                const std::string npath = cpath + ".noise[" + std::to_string(i) + "]";
                const json& nj = (*noise)[i];
                NoiseEvent ev;
                ev.sensorCategory = getString(nj, "category", npath, d);
                ev.magnitude = getNumber(nj, "magnitude", npath, d, 0.0);
                if (ev.magnitude < 0.0) d.add(npath + ".magnitude", "negative");
                const std::string cleanupText =
                    getString(nj, "cleanup", npath, d, "Unremovable");
                auto cleanup = cleanupFromName(cleanupText);
                if (!cleanup)
                    d.add(npath + ".cleanup", "unknown class '" + cleanupText + "'");
                else
                    ev.cleanup = *cleanup;
                spec.baseCost.noise.push_back(std::move(ev));
            }
        }
        spec.baseCost.stealthiness = getNumber(*cost, "stealthiness", cpath, d, 1.0);
        if (spec.baseCost.stealthiness < 0.0 || spec.baseCost.stealthiness > 1.0)
            d.add(cpath + ".stealthiness", "outside [0, 1]");
        spec.baseCost.zeroDay = getBool(*cost, "zeroDay", cpath, d, false);
        spec.baseCost.hopsAdded =
            static_cast<int>(getNumber(*cost, "hopsAdded", cpath, d, 0));
    }
    if (const json* vuln = field(j, "vulnerability")) {
        const std::string vpath = path + ".vulnerability";
        const std::string catText = getString(*vuln, "category", vpath, d, "none");
        auto cat = vulnCategoryFromName(catText);
        if (!cat)
            d.add(vpath + ".category", "unknown category '" + catText + "'");
        else
            spec.vulnerability.category = *cat;
        const std::string subText = getString(*vuln, "subtype", vpath, d, "none");
        auto sub = flawSubtypeFromName(subText);
        if (!sub)
            d.add(vpath + ".subtype", "unknown subtype '" + subText + "'");
        else
            spec.vulnerability.subtype = *sub;
        spec.vulnerability.identifier = getString(*vuln, "identifier", vpath, d);
    }
    spec.port = static_cast<int>(getNumber(j, "port", path, d, 0));
    spec.application = getString(j, "application", path, d);
    if (const json* caps = field(j, "capabilities"))
        for (const json& c : *caps)
            if (c.is_string()) spec.capabilities.push_back(c.get<std::string>());
    spec.accuracy = getNumber(j, "accuracy", path, d, 1.0);
    return spec;
}

json actionSpecToJson(const ActionSpec& spec) {
    json j;
    j["name"] = spec.name;
    j["behavior"] = behaviorName(spec.behavior);
    j["provides"] = assetToJson(spec.provides);
    json reqs = json::array();
    for (const auto& rt : spec.requirementTemplates) {
        json rj;
        rj["kind"] = assetKindName(rt.kind);
        json fixed = json::object();
        for (const auto& [k, v] : rt.fixed) fixed[k] = attrToJson(v);
        rj["fixed"] = std::move(fixed);
        json bind = json::object();
        for (const auto& [k, v] : rt.bind) bind[k] = v;
        rj["bind"] = std::move(bind);
        reqs.push_back(std::move(rj));
    }
    j["requirements"] = std::move(reqs);
    json conds = json::array();
    for (const auto& c : spec.conditions) {
        json cj;
        cj["template"] = assetToJson(c.templ);
        cj["multiplierIfMet"] = c.multiplierIfMet;
        cj["multiplierIfUnmet"] = c.multiplierIfUnmet;
        conds.push_back(std::move(cj));
    }
    j["conditions"] = std::move(conds);
    json cost;
    cost["successProbability"] = spec.baseCost.successProbability;
    cost["time"] = {{"min", spec.baseCost.time.min},
                    {"avg", spec.baseCost.time.avg},
                    {"max", spec.baseCost.time.max}};
    json noise = json::array();
    for (const auto& ev : spec.baseCost.noise)
        noise.push_back({{"category", ev.sensorCategory},
                         {"magnitude", ev.magnitude},
                         {"cleanup", cleanupClassName(ev.cleanup)}});
    cost["noise"] = std::move(noise);
    cost["stealthiness"] = spec.baseCost.stealthiness;
    cost["zeroDay"] = spec.baseCost.zeroDay;
    cost["hopsAdded"] = spec.baseCost.hopsAdded;
    j["cost"] = std::move(cost);
    j["vulnerability"] = {{"category", vulnCategoryName(spec.vulnerability.category)},
                          {"subtype", flawSubtypeName(spec.vulnerability.subtype)},
                          {"identifier", spec.vulnerability.identifier}};
    j["port"] = spec.port;
    j["application"] = spec.application;
    j["capabilities"] = spec.capabilities;
    j["accuracy"] = spec.accuracy;
    return j;
}

// ---- network -----------------------------------------------------------------

SimNetwork networkFromJson(const json& j, const std::string& path, Diags& d) {
    SimNetwork net;
    if (!j.is_object()) {
        d.add(path, "expected an object");
        return net;
    }
    if (const json* hosts = field(j, "hosts")) {
        for (std::size_t i = 0; i < hosts->size(); ++i) {
            const std::string hpath = path + ".hosts[" + std::to_string(i) + "]";
            const json& hj = (*hosts)[i];
            SimHost host;
            host.address = getAddress(hj, "address", hpath, d);
            if (const json* os = field(hj, "os")) {
                host.os.name = getString(*os, "name", hpath + ".os", d);
                host.os.version = getString(*os, "version", hpath + ".os", d);
            }
            if (const json* ports = field(hj, "ports")) {
                for (std::size_t p = 0; p < ports->size(); ++p) {
                    const std::string ppath = hpath + ".ports[" + std::to_string(p) + "]";
                    const json& pj = (*ports)[p];
                    const int port = static_cast<int>(getNumber(pj, "port", ppath, d, 0));
                    if (port < 1 || port > 65535) d.add(ppath + ".port", "outside 1..65535");
                    Service svc;
                    svc.banner = getString(pj, "banner", ppath, d);
                    svc.application = getString(pj, "application", ppath, d);
                    svc.version = getString(pj, "version", ppath, d);
                    svc.open = getBool(pj, "open", ppath, d, true);
                    host.ports[port] = std::move(svc);
                }
            }
            if (const json* vulns = field(hj, "vulnerabilities"))
                for (const json& v : *vulns)
                    if (v.is_string()) host.vulnerabilities.insert(v.get<std::string>());
            net.hosts.push_back(std::move(host));
        }
    }
    if (const json* subnets = field(j, "subnets"))
        for (std::size_t i = 0; i < subnets->size(); ++i) {
            const std::string s = (*subnets)[i].is_string()
                                      ? (*subnets)[i].get<std::string>()
                                      : std::string();
            auto c = Cidr::parse(s);
            if (!c)
                d.add(path + ".subnets[" + std::to_string(i) + "]",
                      "malformed CIDR block '" + s + "'");
            else
                net.subnets.push_back(*c);
        }
    if (const json* rules = field(j, "rules")) {
        for (std::size_t i = 0; i < rules->size(); ++i) {
            const std::string rpath = path + ".rules[" + std::to_string(i) + "]";
            const json& rj = (*rules)[i];
            FirewallRule rule;
            rule.sourceBlock = getCidr(rj, "source", rpath, d);
            rule.destBlock = getCidr(rj, "dest", rpath, d);
            if (const json* p = field(rj, "port"); p && !p->is_null())
                rule.port = static_cast<int>(getNumber(rj, "port", rpath, d, 0));
            const std::string verdictText2 = getString(rj, "verdict", rpath, d, "allow");
            auto verdict = verdictFromText(verdictText2);
            if (!verdict)
                d.add(rpath + ".verdict", "unknown verdict '" + verdictText2 + "'");
            else
                rule.verdict = *verdict;
            rule.priority = static_cast<int>(getNumber(rj, "priority", rpath, d, 0));
            net.rules.push_back(rule);
        }
    }
    if (const json* sensors = field(j, "sensors")) {
        for (std::size_t i = 0; i < sensors->size(); ++i) {
            const std::string spath = path + ".sensors[" + std::to_string(i) + "]";
            const json& sj = (*sensors)[i];
            Sensor s;
            s.id = getString(sj, "id", spath, d);
            if (s.id.empty()) d.add(spath + ".id", "missing or empty");
            s.category = getString(sj, "category", spath, d);
            if (s.category.empty()) d.add(spath + ".category", "missing or empty");
            s.placement = getCidr(sj, "placement", spath, d);
            s.threshold = getNumber(sj, "threshold", spath, d, 1.0);
            if (s.threshold <= 0.0) d.add(spath + ".threshold", "must be positive");
            net.sensors.push_back(std::move(s));
        }
    }
    const std::string defVerdict = getString(j, "defaultVerdict", path, d, "allow");
    auto verdict = verdictFromText(defVerdict);
    if (!verdict)
        d.add(path + ".defaultVerdict", "unknown verdict '" + defVerdict + "'");
    else
        net.defaultVerdict = *verdict;
    return net;
}

json networkToJson(const SimNetwork& net) {
    json j;
    json hosts = json::array();
    for (const auto& h : net.hosts) {
        json hj;
        hj["address"] = h.address.str();
        hj["os"] = {{"name", h.os.name}, {"version", h.os.version}};
        json ports = json::array();
        for (const auto& [port, svc] : h.ports)
            ports.push_back({{"port", port},
                             {"banner", svc.banner},
                             {"application", svc.application},
                             {"version", svc.version},
                             {"open", svc.open}});
        hj["ports"] = std::move(ports);
        hj["vulnerabilities"] = h.vulnerabilities;
        hosts.push_back(std::move(hj));
    }
    j["hosts"] = std::move(hosts);
    json subnets = json::array();
    for (const auto& s : net.subnets) subnets.push_back(s.str());
    j["subnets"] = std::move(subnets);
    json rules = json::array();
    for (const auto& r : net.rules) {
        json rj;
        rj["source"] = r.sourceBlock.str();
        rj["dest"] = r.destBlock.str();
        rj["port"] = r.port ? json(*r.port) : json(nullptr);
        rj["verdict"] = verdictText(r.verdict);
        rj["priority"] = r.priority;
        rules.push_back(std::move(rj));
    }
    j["rules"] = std::move(rules);
    json sensors = json::array();
    for (const auto& s : net.sensors)
        sensors.push_back({{"id", s.id},
                           {"category", s.category},
                           {"placement", s.placement.str()},
                           {"threshold", s.threshold}});
    j["sensors"] = std::move(sensors);
    j["defaultVerdict"] = verdictText(net.defaultVerdict);
    return j;
}

// ---- profiles and measures -----------------------------------------------------

AttackerProfile profileFromJson(const json& j, const std::string& path, Diags& d) {
    AttackerProfile p;
    p.name = getString(j, "name", path, d);
    if (p.name.empty()) d.add(path + ".name", "missing or empty");
    p.haltOnDetection = getBool(j, "haltOnDetection", path, d, false);
    if (const json* params = field(j, "parameters")) {
        const std::string ppath = path + ".parameters";
        AttackParameters& ap = p.parameters;
        ap.nonTraceability = getNumber(*params, "nonTraceability", ppath, d, 0.0);
        if (ap.nonTraceability < 0.0 || ap.nonTraceability > 1.0)
            d.add(ppath + ".nonTraceability", "outside [0, 1]");
        if (const json* tol = field(*params, "toleratedNoise"))
            for (auto it = tol->begin(); it != tol->end(); ++it) {
                if (!it->is_number()) {
                    d.add(ppath + ".toleratedNoise." + it.key(), "expected a number");
                    continue;
                }
                ap.toleratedNoise[it.key()] = it->get<double>();
            }
        ap.expectedSuccess = getNumber(*params, "expectedSuccess", ppath, d, 0.5);
        if (ap.expectedSuccess < 0.0 || ap.expectedSuccess > 1.0)
            d.add(ppath + ".expectedSuccess", "outside [0, 1]");
        ap.executionTime = getNumber(*params, "executionTime", ppath, d, 86400.0);
        if (ap.executionTime <= 0.0) d.add(ppath + ".executionTime", "must be positive");
        ap.zeroDayness = getBool(*params, "zeroDayness", ppath, d, false);
        if (const json* portfolio = field(*params, "actionPortfolio"))
            for (const json& name : *portfolio)
                if (name.is_string()) ap.actionPortfolio.insert(name.get<std::string>());
    }
    return p;
}

json profileToJson(const AttackerProfile& p) {
    json params;
    params["nonTraceability"] = p.parameters.nonTraceability;
    params["toleratedNoise"] = p.parameters.toleratedNoise;
    params["expectedSuccess"] = p.parameters.expectedSuccess;
    params["executionTime"] = p.parameters.executionTime;
    params["zeroDayness"] = p.parameters.zeroDayness;
    params["actionPortfolio"] = p.parameters.actionPortfolio;
    json j;
    j["name"] = p.name;
    j["haltOnDetection"] = p.haltOnDetection;
    j["parameters"] = std::move(params);
    return j;
}

Measure measureFromJson(const json& j, const std::string& path, Diags& d) {
    Measure m;
    m.id = getString(j, "id", path, d);
    if (m.id.empty()) d.add(path + ".id", "missing or empty");
    if (const json* targets = field(j, "targetActions"))
        for (const json& t : *targets)
            if (t.is_string()) m.targetActions.insert(t.get<std::string>());
    m.successMultiplier = getNumber(j, "successMultiplier", path, d, 1.0);
    if (m.successMultiplier < 0.0 || m.successMultiplier > 1.0)
        d.add(path + ".successMultiplier", "outside [0, 1]");
    m.noiseMultiplier = getNumber(j, "noiseMultiplier", path, d, 1.0);
    if (m.noiseMultiplier < 1.0) d.add(path + ".noiseMultiplier", "must be >= 1");
    if (const json* sj = field(j, "addedSensor"); sj && !sj->is_null()) {
        Sensor s;
        const std::string spath = path + ".addedSensor";
        s.id = getString(*sj, "id", spath, d);
        if (s.id.empty()) d.add(spath + ".id", "missing or empty");
        s.category = getString(*sj, "category", spath, d);
        if (s.category.empty()) d.add(spath + ".category", "missing or empty");
        s.placement = getCidr(*sj, "placement", spath, d);
        s.threshold = getNumber(*sj, "threshold", spath, d, 1.0);
        if (s.threshold <= 0.0) d.add(spath + ".threshold", "must be positive");
        m.addedSensor = std::move(s);
    }
    return m;
}

json measureToJson(const Measure& m) {
    json j;
    j["id"] = m.id;
    j["targetActions"] = m.targetActions;
    j["successMultiplier"] = m.successMultiplier;
    j["noiseMultiplier"] = m.noiseMultiplier;
    if (m.addedSensor)
        j["addedSensor"] = {{"id", m.addedSensor->id},
                            {"category", m.addedSensor->category},
                            {"placement", m.addedSensor->placement.str()},
                            {"threshold", m.addedSensor->threshold}};
    else
        j["addedSensor"] = nullptr;
    return j;
}

json pathCostToJson(const PathCost& c) {
    json j;
    j["successProbability"] = c.successProbability;
    j["time"] = {{"min", c.time.min}, {"avg", c.time.avg}, {"max", c.time.max}};
    j["stealthiness"] = c.stealthiness;
    j["hops"] = c.hops;
    j["usesZeroDay"] = c.usesZeroDay;
    j["expectedNoise"] = c.expectedNoise;
    return j;
}

json graphNodeToJson(const GraphNode& node, const EnvironmentKnowledge& env,
                     const AttackParameters& params, double now, bool fullLookahead) {
    json j;
    switch (node.type) {
        case GraphNode::Type::Goal: {
            j["type"] = "goal";
            j["goal"] = goalToJson(node.goal);
            const PathCost cost = goalPathCost(node, env, params, now, fullLookahead);
            j["cost"] = pathCostToJson(cost);
            j["scalarized"] = scalarize(cost, params);
            j["feasible"] = feasible(cost, params);
            json children = json::array();
            for (const auto& child : node.children)
                children.push_back(
                    graphNodeToJson(*child, env, params, now, fullLookahead));
            j["actions"] = std::move(children);
            const GraphNode* chosen = chooseAction(node, env, params, now, fullLookahead);
            j["chosenAction"] = chosen && chosen->spec ? json(chosen->spec->name)
                                                       : json(nullptr);
            break;
        }
        case GraphNode::Type::Action: {
            j["type"] = "action";
            j["name"] = node.spec ? node.spec->name : "";
            const PathCost cost = actionNodePathCost(node, env, params, now, fullLookahead);
            j["cost"] = pathCostToJson(cost);
            j["scalarized"] = scalarize(cost, params);
            j["feasible"] = feasible(cost, params);
            json children = json::array();
            for (const auto& child : node.children)
                children.push_back(
                    graphNodeToJson(*child, env, params, now, fullLookahead));
            j["requirements"] = std::move(children);
            break;
        }
        case GraphNode::Type::PivotTask: {
            j["type"] = "pivot";
            j["goal"] = goalToJson(node.goal);
            j["cost"] = pathCostToJson(pivotTaskEstimate());
            break;
        }
    }
    return j;
}

}  // namespace

// ---- scenario --------------------------------------------------------------

ScenarioLoad parseScenario(const std::string& bytes) {
    ScenarioLoad load;
    Diags d{&load.diagnostics};
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) {
        d.add("$", "not valid JSON");
        return load;
    }
    if (!j.is_object()) {
        d.add("$", "expected a JSON object");
        return load;
    }
    Scenario& s = load.scenario;
    const json* ver = field(j, "formatVersion");
    if (!ver || !ver->is_number_integer()) {
        d.add("$.formatVersion", "missing or not an integer");
    } else {
        s.formatVersion = ver->get<int>();
        if (s.formatVersion != kScenarioFormatVersion)
            d.add("$.formatVersion",
                  "unsupported version " + std::to_string(s.formatVersion) +
                      " (this build reads version " +
                      std::to_string(kScenarioFormatVersion) + ")");
    }
    if (const json* net = field(j, "network"))
        s.network = networkFromJson(*net, "$.network", d);
    else
        d.add("$.network", "missing");
    s.attackerAddress = getAddress(j, "attackerAddress", "$", d);
    if (const json* fp = field(j, "fingerprints")) {
        for (auto it = fp->begin(); it != fp->end(); ++it) {
            if (!it->is_object()) {
                d.add("$.fingerprints." + it.key(), "expected an object");
                continue;
            }
            for (auto os = it->begin(); os != it->end(); ++os) {
                if (!os->is_number()) {
                    d.add("$.fingerprints." + it.key() + "." + os.key(),
                          "expected a number");
                    continue;
                }
                const double p = os->get<double>();
                if (p < 0.0 || p > 1.0)
                    d.add("$.fingerprints." + it.key() + "." + os.key(), "outside [0, 1]");
                s.fingerprints[it.key()][os.key()] = p;
            }
        }
    }
    if (const json* overrides = field(j, "catalogOverrides"))
        for (std::size_t i = 0; i < overrides->size(); ++i)
            s.catalogOverrides.push_back(actionSpecFromJson(
                (*overrides)[i], "$.catalogOverrides[" + std::to_string(i) + "]", d));
    if (const json* obj = field(j, "objective"))
        s.objective = goalFromJson(*obj, "$.objective", d);
    else
        d.add("$.objective", "missing");
    if (const json* profiles = field(j, "profiles"))
        for (std::size_t i = 0; i < profiles->size(); ++i)
            s.profiles.push_back(profileFromJson(
                (*profiles)[i], "$.profiles[" + std::to_string(i) + "]", d));
    if (const json* measures = field(j, "measures"))
        for (std::size_t i = 0; i < measures->size(); ++i)
            s.measures.push_back(measureFromJson(
                (*measures)[i], "$.measures[" + std::to_string(i) + "]", d));
    if (const json* know = field(j, "initialKnowledge"))
        for (std::size_t i = 0; i < know->size(); ++i)
            s.initialKnowledge.push_back(assetFromJson(
                (*know)[i], "$.initialKnowledge[" + std::to_string(i) + "]", d));
    if (const json* applied = field(j, "appliedMeasures"))
        for (const json& id : *applied)
            if (id.is_string()) s.appliedMeasures.insert(id.get<std::string>());

    for (std::string& problem : validateScenario(s))
        load.diagnostics.push_back(std::move(problem));
    std::sort(load.diagnostics.begin(), load.diagnostics.end());
    load.diagnostics.erase(
        std::unique(load.diagnostics.begin(), load.diagnostics.end()),
        load.diagnostics.end());
    load.ok = load.diagnostics.empty();
    return load;
}

std::vector<std::string> validateScenario(const Scenario& s) {
    std::vector<std::string> out;
    Diags d{&out};

    std::set<std::string> hostAddrs;
    std::set<std::string> hostVulns;
    for (std::size_t i = 0; i < s.network.hosts.size(); ++i) {
        const SimHost& h = s.network.hosts[i];
        if (!hostAddrs.insert(h.address.str()).second)
            d.add("$.network.hosts[" + std::to_string(i) + "].address",
                  "duplicate host address " + h.address.str());
        hostVulns.insert(h.vulnerabilities.begin(), h.vulnerabilities.end());
    }
    std::set<std::string> sensorIds;
    for (std::size_t i = 0; i < s.network.sensors.size(); ++i)
        if (!sensorIds.insert(s.network.sensors[i].id).second)
            d.add("$.network.sensors[" + std::to_string(i) + "].id",
                  "duplicate sensor id '" + s.network.sensors[i].id + "'");

    const std::vector<ActionSpec> catalog = scenarioCatalog(s);
    std::set<std::string> actionNames;
    for (const ActionSpec& spec : catalog) actionNames.insert(spec.name);

    for (std::size_t i = 0; i < s.catalogOverrides.size(); ++i) {
        const ActionSpec& spec = s.catalogOverrides[i];
        if (spec.behavior != Behavior::Exploit) continue;
        const std::string& id = spec.vulnerability.identifier;
        if (id.empty())
            d.add("$.catalogOverrides[" + std::to_string(i) + "].vulnerability.identifier",
                  "exploit '" + spec.name + "' declares no vulnerability identifier");
        else if (!hostVulns.count(id))
            d.add("$.catalogOverrides[" + std::to_string(i) + "].vulnerability.identifier",
                  "exploit '" + spec.name + "' references vulnerability '" + id +
                      "' that no host declares");
    }

    std::set<std::string> measureIds;
    for (std::size_t i = 0; i < s.measures.size(); ++i) {
        const Measure& m = s.measures[i];
        if (!m.id.empty() && !measureIds.insert(m.id).second)
            d.add("$.measures[" + std::to_string(i) + "].id",
                  "duplicate measure id '" + m.id + "'");
        for (const std::string& target : m.targetActions)
            if (!actionNames.count(target))
                d.add("$.measures[" + std::to_string(i) + "].targetActions",
                      "measure '" + m.id + "' targets unknown action '" + target + "'");
        if (m.addedSensor && sensorIds.count(m.addedSensor->id))
            d.add("$.measures[" + std::to_string(i) + "].addedSensor.id",
                  "measure '" + m.id + "' adds sensor id '" + m.addedSensor->id +
                      "' that already exists");
    }
    for (const std::string& id : s.appliedMeasures)
        if (!measureIds.count(id))
            d.add("$.appliedMeasures", "unknown measure id '" + id + "'");

    for (std::size_t i = 0; i < s.profiles.size(); ++i)
        for (const std::string& name : s.profiles[i].parameters.actionPortfolio)
            if (!actionNames.count(name))
                d.add("$.profiles[" + std::to_string(i) + "].parameters.actionPortfolio",
                      "profile '" + s.profiles[i].name + "' lists unknown action '" +
                          name + "'");

    for (std::size_t i = 0; i < s.initialKnowledge.size(); ++i) {
        const std::string problem = validateAsset(s.initialKnowledge[i]);
        if (!problem.empty())
            d.add("$.initialKnowledge[" + std::to_string(i) + "]", problem);
    }
    for (const std::string& problem : validateGoal(s.objective))
        d.add("$.objective", problem);
    return out;
}

std::vector<ActionSpec> scenarioCatalog(const Scenario& s) {
    return mergeCatalog(defaultCatalog(), s.catalogOverrides);
}

std::vector<AttackerProfile> scenarioProfiles(const Scenario& s) {
    return s.profiles.empty() ? builtinProfiles() : s.profiles;
}

Scenario applyMeasures(const Scenario& s, const std::set<std::string>& ids) {
    Scenario out = s;
    for (const std::string& id : ids) {
        const auto it = std::find_if(out.measures.begin(), out.measures.end(),
                                     [&](const Measure& m) { return m.id == id; });
        if (it == out.measures.end())
            throw std::invalid_argument("unknown measure id '" + id + "'");
        if (!out.appliedMeasures.insert(id).second) continue;  // already folded in
        const Measure& m = *it;
        if (!m.targetActions.empty()) {
            // Materialize every targeted action into the overrides so the
            // multipliers have a spec to land on.
            std::vector<ActionSpec> merged = scenarioCatalog(out);
            std::vector<ActionSpec> overrides;
            for (ActionSpec& spec : merged) {
                const bool targeted = m.targetActions.count(spec.name) > 0;
                if (targeted) {
                    spec.baseCost.successProbability *= m.successMultiplier;
                    for (NoiseEvent& ev : spec.baseCost.noise)
                        ev.magnitude *= m.noiseMultiplier;
                }
                const bool wasOverride =
                    std::any_of(out.catalogOverrides.begin(), out.catalogOverrides.end(),
                                [&](const ActionSpec& o) { return o.name == spec.name; });
                if (targeted || wasOverride) overrides.push_back(std::move(spec));
            }
            out.catalogOverrides = std::move(overrides);
        }
        if (m.addedSensor) out.network.sensors.push_back(*m.addedSensor);
    }
    return out;
}

AttackReport runScenario(const Scenario& s, const AttackerProfile& profile,
                         uint64_t seed, EngineConfig config) {
    return runAttack(s.network, scenarioCatalog(s), s.fingerprints, s.attackerAddress,
                     s.objective, profile, seed, s.initialKnowledge, config);
}

std::vector<SweepRow> sweepProfiles(const Scenario& s, uint64_t seed,
                                    EngineConfig config) {
    std::vector<SweepRow> rows;
    for (const AttackerProfile& profile : scenarioProfiles(s))
        rows.push_back({profile.name, runScenario(s, profile, seed, config)});
    return rows;
}

IncrementalResult incrementalPortfolio(const Scenario& s, const AttackerProfile& profile,
                                       uint64_t seed, EngineConfig config) {
    IncrementalResult result;
    const std::vector<ActionSpec> catalog = scenarioCatalog(s);
    for (const ActionSpec& spec : catalog) result.portfolio.push_back(spec.name);
    AttackerProfile trimmed = profile;
    std::set<std::string> enabled;
    for (std::size_t n = 0; n < result.portfolio.size(); ++n) {
        enabled.insert(result.portfolio[n]);
        trimmed.parameters.actionPortfolio = enabled;
        AttackReport report = runScenario(s, trimmed, seed, config);
        if (report.goalVerdict == Verdict::Success && report.detections.empty()) {
            result.found = true;
            result.prefixLength = n + 1;
            result.report = std::move(report);
            return result;
        }
        if (n + 1 == result.portfolio.size()) result.report = std::move(report);
    }
    return result;
}

bool scenarioSafe(const Scenario& s, const std::vector<uint64_t>& seeds,
                  EngineConfig config) {
    for (const AttackerProfile& profile : scenarioProfiles(s))
        for (uint64_t seed : seeds) {
            const AttackReport report = runScenario(s, profile, seed, config);
            if (report.goalVerdict == Verdict::Success && report.detections.empty())
                return false;
        }
    return true;
}

std::vector<uint64_t> defaultSeedSet(std::size_t count) {
    std::vector<uint64_t> seeds;
    for (std::size_t i = 0; i < count; ++i) seeds.push_back(1000 + 17 * i);
    return seeds;
}

namespace {

bool subsetSafe(const Scenario& s, const std::set<std::string>& ids,
                const std::vector<uint64_t>& seeds, const EngineConfig& config) {
    return scenarioSafe(applyMeasures(s, ids), seeds, config);
}

}  // namespace

MeasureSearchResult minimalMeasureSet(const Scenario& s, int maxSubsetSize,
                                      const std::vector<uint64_t>& seeds,
                                      EngineConfig config) {
    MeasureSearchResult result;
    std::vector<std::string> ids;
    for (const Measure& m : s.measures)
        if (!s.appliedMeasures.count(m.id)) ids.push_back(m.id);
    std::sort(ids.begin(), ids.end());
    const int n = static_cast<int>(ids.size());
    const int bound = std::min(maxSubsetSize, n);

    if (subsetSafe(s, {}, seeds, config)) {
        result.satisfiable = true;
        return result;
    }

    if (n <= 12) {
        // Lexicographic combinations per cardinality; the first safe subset
        // is therefore the minimum-cardinality, lexicographically-first one.
        for (int k = 1; k <= bound; ++k) {
            std::vector<int> pick(k);
            for (int i = 0; i < k; ++i) pick[i] = i;
            while (true) {
                std::set<std::string> subset;
                for (int i : pick) subset.insert(ids[i]);
                if (subsetSafe(s, subset, seeds, config)) {
                    result.satisfiable = true;
                    result.measures = std::move(subset);
                    return result;
                }
                int i = k - 1;
                while (i >= 0 && pick[i] == n - k + i) --i;
                if (i < 0) break;
                ++pick[i];
                for (int t = i + 1; t < k; ++t) pick[t] = pick[t - 1] + 1;
            }
        }
        result.measures.insert(ids.begin(), ids.end());
        return result;
    }

    // Greedy fallback: grow by the first id that reaches safety, otherwise by
    // the id with the fewest remaining unsafe (profile, seed) runs; then
    // shrink to a non-reducible set.
    result.exhaustive = false;
    std::set<std::string> chosen;
    const std::vector<AttackerProfile> profiles = scenarioProfiles(s);
    auto unsafeCount = [&](const std::set<std::string>& subset) {
        const Scenario derived = applyMeasures(s, subset);
        int count = 0;
        for (const AttackerProfile& profile : profiles)
            for (uint64_t seed : seeds) {
                const AttackReport report = runScenario(derived, profile, seed, config);
                if (report.goalVerdict == Verdict::Success && report.detections.empty())
                    ++count;
            }
        return count;
    };
    while (static_cast<int>(chosen.size()) < bound) {
        std::string bestId;
        int bestCount = unsafeCount(chosen);
        for (const std::string& id : ids) {
            if (chosen.count(id)) continue;
            std::set<std::string> trial = chosen;
            trial.insert(id);
            const int count = unsafeCount(trial);
            if (count < bestCount) {
                bestCount = count;
                bestId = id;
                if (count == 0) break;
            }
        }
        if (bestId.empty()) break;  // no id helps
        chosen.insert(bestId);
        if (bestCount == 0) {
            result.satisfiable = true;
            break;
        }
    }
    if (result.satisfiable) {
        for (const std::string& id : std::vector<std::string>(chosen.begin(), chosen.end())) {
            std::set<std::string> trial = chosen;
            trial.erase(id);
            if (subsetSafe(s, trial, seeds, config)) chosen = std::move(trial);
        }
    }
    result.measures = std::move(chosen);
    return result;
}

// ---- JSON surface --------------------------------------------------------------

json assetToJson(const Asset& a) {
    json attrs = json::object();
    for (const auto& [name, value] : a.attrs) attrs[name] = attrToJson(value);
    json j;
    j["kind"] = assetKindName(a.kind);
    j["attrs"] = std::move(attrs);
    j["probability"] = a.probability;
    j["trust"] = a.trust;
    j["createdAt"] = a.createdAt;
    return j;
}

json goalToJson(const Goal& g) {
    json j;
    j["template"] = assetToJson(g.templ);
    json qs = json::array();
    for (const Quantifier& q : g.quantifiers)
        qs.push_back({{"type", quantifierTypeName(q.type)},
                      {"attribute", q.attribute},
                      {"domain", domainToJson(q.domain)}});
    j["quantifiers"] = std::move(qs);
    return j;
}

json reportToJson(const AttackReport& r) {
    json timeline = json::array();
    for (const TimelineEntry& e : r.timeline) {
        json ej;
        ej["simTime"] = e.simTime;
        ej["agent"] = e.agentId;
        ej["action"] = e.action;
        ej["target"] = assetToJson(e.concrete);
        ej["success"] = e.success;
        ej["skipped"] = e.skipped;
        json noise = json::array();
        for (const NoiseRecord& rec : e.noise)
            noise.push_back({{"address", rec.address.str()},
                             {"category", rec.event.sensorCategory},
                             {"magnitude", rec.event.magnitude},
                             {"cleanup", cleanupClassName(rec.event.cleanup)},
                             {"sensorsHit", rec.sensorsHit},
                             {"cleaned", rec.cleaned}});
        ej["noise"] = std::move(noise);
        ej["elapsed"] = e.elapsed;
        ej["effectiveProbability"] = e.effectiveProbability;
        ej["effectiveStealthiness"] = e.effectiveStealthiness;
        timeline.push_back(std::move(ej));
    }
    json detections = json::array();
    for (const auto& [sensor, time] : r.detections)
        detections.push_back({{"sensor", sensor}, {"simTime", time}});
    json gained = json::array();
    for (const Asset& a : r.assetsGained) gained.push_back(assetToJson(a));
    json j;
    j["timeline"] = std::move(timeline);
    j["detections"] = std::move(detections);
    j["verdict"] = verdictName(r.goalVerdict);
    j["finalCost"] = pathCostToJson(r.finalCost);
    j["assetsGained"] = std::move(gained);
    j["sensorAccumulated"] = r.sensorAccumulated;
    j["totalElapsed"] = r.totalElapsed;
    return j;
}

json scenarioToJson(const Scenario& s) {
    json j;
    j["formatVersion"] = s.formatVersion;
    j["network"] = networkToJson(s.network);
    j["attackerAddress"] = s.attackerAddress.str();
    json fp = json::object();
    for (const auto& [banner, dist] : s.fingerprints) fp[banner] = dist;
    j["fingerprints"] = std::move(fp);
    json overrides = json::array();
    for (const ActionSpec& spec : s.catalogOverrides)
        overrides.push_back(actionSpecToJson(spec));
    j["catalogOverrides"] = std::move(overrides);
    j["objective"] = goalToJson(s.objective);
    json profiles = json::array();
    for (const AttackerProfile& p : s.profiles) profiles.push_back(profileToJson(p));
    j["profiles"] = std::move(profiles);
    json measures = json::array();
    for (const Measure& m : s.measures) measures.push_back(measureToJson(m));
    j["measures"] = std::move(measures);
    json knowledge = json::array();
    for (const Asset& a : s.initialKnowledge) knowledge.push_back(assetToJson(a));
    j["initialKnowledge"] = std::move(knowledge);
    j["appliedMeasures"] = s.appliedMeasures;
    return j;
}

json planToJson(const Scenario& s, const AttackerProfile& profile, EngineConfig config) {
    std::vector<ActionSpec> catalog = scenarioCatalog(s);
    if (!profile.parameters.actionPortfolio.empty()) {
        std::vector<ActionSpec> filtered;
        for (ActionSpec& spec : catalog)
            if (profile.parameters.actionPortfolio.count(spec.name))
                filtered.push_back(std::move(spec));
        catalog = std::move(filtered);
    }
    EnvironmentKnowledge env;
    env.owner = "planner";
    env.trustHalfLife = config.trustHalfLife;
    env.insert(makeAsset(AssetKind::AgentAsset,
                         {{"agent", AttrValue::symbol("localAgent")},
                          {"host", AttrValue::address(s.attackerAddress)}}));
    for (const Asset& a : s.initialKnowledge) env.insert(a);

    const BuildResult built = buildGraph(s.objective, catalog, config.depthLimit);
    json j;
    j["profile"] = profile.name;
    j["plannable"] = built.plannable;
    j["graph"] = built.root ? graphNodeToJson(*built.root, env, profile.parameters, 0.0,
                                              config.fullLookahead)
                            : json(nullptr);
    return j;
}

}  // namespace attackplan
