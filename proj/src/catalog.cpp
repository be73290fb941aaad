#include "attackplan/catalog.hpp"

#include <algorithm>
#include <cmath>

namespace attackplan {

double sampleElapsed(const TimeTriple& t, std::mt19937_64& rng) {
    const double a = t.min, b = t.max, c = t.avg;
    if (b <= a) return a;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = uni(rng);
    const double fc = (c - a) / (b - a);
    if (u < fc) return a + std::sqrt(u * (b - a) * (c - a));
    return b - std::sqrt((1.0 - u) * (b - a) * (b - c));
}

namespace {

std::optional<Ipv4> addrOf(const Asset& a, const std::string& name) {
    auto it = a.attrs.find(name);
    if (it == a.attrs.end() || it->second.tag() != AttrValue::Tag::Address)
        return std::nullopt;
    return it->second.addressValue();
}

std::optional<int64_t> numOf(const Asset& a, const std::string& name) {
    auto it = a.attrs.find(name);
    if (it == a.attrs.end() || it->second.tag() != AttrValue::Tag::Number)
        return std::nullopt;
    return it->second.numberValue();
}

void emitActionNoise(const ActionSpec& spec, const Ipv4& address, RunContext& ctx,
                     ActionOutcome& out) {
    for (const auto& ev : spec.baseCost.noise) {
        NoiseRecord rec;
        rec.address = address;
        rec.event = ev;
        for (const auto& sensor : ctx.net->sensors)
            if (sensor.category == ev.sensorCategory && sensor.placement.contains(address))
                rec.sensorsHit.push_back(sensor.id);
        emitNoise(*ctx.net, {{address, ev}});
        out.noiseEmitted.push_back(std::move(rec));
    }
}

Asset connectivityAsset(AssetKind kind, const Ipv4& source, const Ipv4& target,
                        std::optional<int64_t> port, double probability, double now) {
    std::map<std::string, AttrValue> attrs = {
        {"source", AttrValue::address(source)},
        {"target", AttrValue::address(target)},
    };
    if (port) attrs["port"] = AttrValue::number(*port);
    return makeAsset(kind, attrs, probability, 1.0, now);
}

ActionOutcome runNetworkDiscovery(const ActionSpec& spec, const Asset& concrete,
                                  RunContext& ctx) {
    ActionOutcome out;
    const Ipv4 source = addrOf(concrete, "source").value_or(ctx.agentHost);
    const auto target = addrOf(concrete, "target");
    if (!target) return out;
    const bool reachable =
        routable(*ctx.net, source, *target) && ctx.net->hostAt(*target) != nullptr;
    out.produced.push_back(connectivityAsset(AssetKind::IPConnectivityAsset, source,
                                             *target, std::nullopt,
                                             reachable ? 1.0 : 0.0, ctx.now));
    out.success = reachable;
    emitActionNoise(spec, *target, ctx, out);
    return out;
}

ActionOutcome runPortScan(const ActionSpec& spec, const Asset& concrete, RunContext& ctx) {
    ActionOutcome out;
    const auto host = addrOf(concrete, "host");
    const auto port = numOf(concrete, "port");
    if (!host || !port) return out;
    if (!routable(*ctx.net, ctx.agentHost, *host)) {
        out.produced.push_back(connectivityAsset(AssetKind::IPConnectivityAsset,
                                                 ctx.agentHost, *host, std::nullopt, 0.0,
                                                 ctx.now));
        emitActionNoise(spec, *host, ctx, out);
        return out;
    }
    const auto [permitted, open] =
        tcpPermitted(*ctx.net, ctx.agentHost, *host, static_cast<int>(*port));
    const bool observedOpen = permitted && open;
    Asset observed = makeAsset(
        AssetKind::PortAsset,
        {{"host", AttrValue::address(*host)},
         {"port", AttrValue::number(*port)},
         {"status", AttrValue::symbol(observedOpen ? "open" : "closed")}},
        1.0, 1.0, ctx.now);
    out.success = matchesTemplate(observed, concrete);
    out.produced.push_back(std::move(observed));
    emitActionNoise(spec, *host, ctx, out);
    return out;
}

ActionOutcome runBannerGrab(const ActionSpec& spec, const Asset& concrete,
                            RunContext& ctx) {
    ActionOutcome out;
    const auto host = addrOf(concrete, "host");
    const auto port = numOf(concrete, "port");
    if (!host || !port) return out;
    const auto [permitted, open] =
        tcpPermitted(*ctx.net, ctx.agentHost, *host, static_cast<int>(*port));
    if (permitted && open) {
        const SimHost* h = ctx.net->hostAt(*host);
        const std::string banner = h->ports.at(static_cast<int>(*port)).banner;
        out.produced.push_back(makeAsset(AssetKind::BannerAsset,
                                         {{"banner", AttrValue::text(banner)},
                                          {"host", AttrValue::address(*host)},
                                          {"port", AttrValue::number(*port)}},
                                         1.0, 1.0, ctx.now));
        out.success = true;
    } else {
        out.produced.push_back(makeAsset(AssetKind::PortAsset,
                                         {{"host", AttrValue::address(*host)},
                                          {"port", AttrValue::number(*port)},
                                          {"status", AttrValue::symbol("open")}},
                                         0.0, 1.0, ctx.now));
    }
    emitActionNoise(spec, *host, ctx, out);
    return out;
}

ActionOutcome runOsDetectByBanner(const ActionSpec& spec, const Asset& concrete,
                                  RunContext& ctx) {
    ActionOutcome out;
    const auto host = addrOf(concrete, "host");
    if (!host || !ctx.fingerprints) return out;
    Asset bannerTempl =
        makeAsset(AssetKind::BannerAsset, {{"host", AttrValue::address(*host)}});
    for (const auto& bannerAsset : ctx.env->query(bannerTempl, ctx.minTrust, ctx.now)) {
        auto it = bannerAsset.attrs.find("banner");
        if (it == bannerAsset.attrs.end() || it->second.tag() != AttrValue::Tag::Text)
            continue;
        auto entry = ctx.fingerprints->find(it->second.textValue());
        if (entry == ctx.fingerprints->end()) continue;
        for (const auto& [osName, probability] : entry->second)
            out.produced.push_back(makeAsset(AssetKind::OperatingSystemAsset,
                                             {{"os", AttrValue::symbol(osName)},
                                              {"host", AttrValue::address(*host)}},
                                             probability, 1.0, ctx.now));
        out.success = !entry->second.empty();
        break;
    }
    emitActionNoise(spec, *host, ctx, out);
    return out;
}

ActionOutcome runOsFingerprint(const ActionSpec& spec, const Asset& concrete,
                               RunContext& ctx) {
    ActionOutcome out;
    const auto host = addrOf(concrete, "host");
    if (!host) return out;
    const SimHost* h = ctx.net->hostAt(*host);
    if (!h || !routable(*ctx.net, ctx.agentHost, *host)) return out;
    const double accuracy = std::clamp(spec.accuracy, 0.0, 1.0);
    out.produced.push_back(makeAsset(AssetKind::OperatingSystemAsset,
                                     {{"os", AttrValue::symbol(h->os.name)},
                                      {"host", AttrValue::address(*host)}},
                                     accuracy, 1.0, ctx.now));
    if (accuracy < 1.0) {
        const std::string decoy = h->os.name == "linux" ? "windows" : "linux";
        out.produced.push_back(makeAsset(AssetKind::OperatingSystemAsset,
                                         {{"os", AttrValue::symbol(decoy)},
                                          {"host", AttrValue::address(*host)}},
                                         1.0 - accuracy, 1.0, ctx.now));
    }
    out.success = true;
    emitActionNoise(spec, *host, ctx, out);
    return out;
}

ActionOutcome runTcpConnect(const ActionSpec& spec, const Asset& concrete,
                            RunContext& ctx) {
    ActionOutcome out;
    const Ipv4 source = addrOf(concrete, "source").value_or(ctx.agentHost);
    const auto target = addrOf(concrete, "target");
    const auto port = numOf(concrete, "port").value_or(spec.port);
    if (!target) return out;
    const auto [permitted, open] =
        tcpPermitted(*ctx.net, source, *target, static_cast<int>(port));
    out.success = permitted && open;
    out.produced.push_back(connectivityAsset(AssetKind::TCPConnectivityAsset, source,
                                             *target, port, out.success ? 1.0 : 0.0,
                                             ctx.now));
    emitActionNoise(spec, *target, ctx, out);
    return out;
}

ActionOutcome runExploit(const ActionSpec& spec, const Asset& concrete, RunContext& ctx) {
    ActionOutcome out;
    if (spec.baseCost.zeroDay && !ctx.params->zeroDayness) {
        out.skipped = true;
        return out;
    }
    const auto target = addrOf(concrete, "host");
    if (!target) return out;
    const SimHost* h = ctx.net->hostAt(*target);

    bool appPresent = false;
    if (h) {
        auto it = h->ports.find(spec.port);
        appPresent = it != h->ports.end() && it->second.open &&
                     it->second.application == spec.application;
    }
    const bool vulnerable =
        h && h->vulnerabilities.count(spec.vulnerability.identifier) > 0;

    const double p = effectiveCost(spec, *ctx.env, ctx.now).successProbability;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const bool drawOk = uni(*ctx.rng) < p;

    emitActionNoise(spec, *target, ctx, out);
    auto negativeApp = [&](double probability) {
        return makeAsset(AssetKind::ApplicationAsset,
                         {{"host", AttrValue::address(*target)},
                          {"port", AttrValue::number(spec.port)},
                          {"application", AttrValue::symbol(spec.application)}},
                         probability, 1.0, ctx.now);
    };
    if (!appPresent) {
        out.produced.push_back(negativeApp(0.0));
        return out;
    }
    if (!vulnerable) {
        // The application answered but the exploit failed; it may be patched
        // or its version disguised, so a residual probability remains.
        out.produced.push_back(negativeApp(0.1));
        return out;
    }
    if (!drawOk) return out;

    std::vector<AttrValue> caps;
    for (const auto& c : spec.capabilities) caps.push_back(AttrValue::symbol(c));
    out.produced.push_back(makeAsset(AssetKind::AgentAsset,
                                     {{"agent", AttrValue::symbol("agent@" + target->str())},
                                      {"capabilities", AttrValue::list(caps)},
                                      {"host", AttrValue::address(*target)}},
                                     1.0, 1.0, ctx.now));
    if (ctx.spawnAgent) ctx.spawnAgent(*target, spec.capabilities);
    out.success = true;
    return out;
}

ActionOutcome runTcpConnectCreatingHops(const ActionSpec& spec, const Asset& concrete,
                                        RunContext& ctx) {
    ActionOutcome out;
    const auto target = addrOf(concrete, "target");
    const auto port = numOf(concrete, "port").value_or(spec.port);
    if (!target) return out;

    PivotPlan plan = planPivot(ctx.agentHost, *target, static_cast<int>(port), *ctx.env,
                               *ctx.catalog, *ctx.params, ctx.now);
    if (!plan.found) return out;

    Ipv4 hopSource = plan.start;
    for (const auto& hop : plan.hops) {
        if (hop.host == *target) break;
        if (hop.needAgent) {
            Goal win;
            win.templ = makeAsset(AssetKind::AgentAsset,
                                  {{"host", AttrValue::address(hop.host)}});
            if (!ctx.runSubGoal || !ctx.runSubGoal(win)) return out;  // partial agents remain
            out.hopsAdded += 1;
        }
        hopSource = hop.host;
    }

    const auto [permitted, open] =
        tcpPermitted(*ctx.net, hopSource, *target, static_cast<int>(port));
    out.success = permitted && open;
    out.produced.push_back(connectivityAsset(AssetKind::TCPConnectivityAsset,
                                             ctx.agentHost, *target, port,
                                             out.success ? 1.0 : 0.0, ctx.now));
    emitActionNoise(spec, *target, ctx, out);
    return out;
}

ActionOutcome runCleanLogs(const ActionSpec& spec, const Asset& concrete,
                           RunContext& ctx) {
    ActionOutcome out;
    (void)spec;
    const Ipv4 host = addrOf(concrete, "host").value_or(ctx.agentHost);
    if (ctx.cleanResidual) ctx.cleanResidual(host);
    out.success = true;
    return out;
}

}  // namespace

ActionOutcome runConcrete(const ActionSpec& spec, const Asset& concrete, RunContext& ctx) {
    ActionOutcome out;
    switch (spec.behavior) {
        case Behavior::NetworkDiscovery: out = runNetworkDiscovery(spec, concrete, ctx); break;
        case Behavior::PortScan: out = runPortScan(spec, concrete, ctx); break;
        case Behavior::BannerGrab: out = runBannerGrab(spec, concrete, ctx); break;
        case Behavior::OsDetectByBanner: out = runOsDetectByBanner(spec, concrete, ctx); break;
        case Behavior::OsFingerprint: out = runOsFingerprint(spec, concrete, ctx); break;
        case Behavior::TcpConnect: out = runTcpConnect(spec, concrete, ctx); break;
        case Behavior::TcpConnectCreatingHops:
            out = runTcpConnectCreatingHops(spec, concrete, ctx);
            break;
        case Behavior::Exploit: out = runExploit(spec, concrete, ctx); break;
        case Behavior::CleanLogs: out = runCleanLogs(spec, concrete, ctx); break;
    }
    if (!out.skipped) out.elapsed = sampleElapsed(spec.baseCost.time, *ctx.rng);
    return out;
}

namespace {

RequirementTemplate requireConnectivity(AssetKind kind,
                                        std::map<std::string, std::string> bind,
                                        std::map<std::string, AttrValue> fixed = {}) {
    RequirementTemplate rt;
    rt.kind = kind;
    rt.bind = std::move(bind);
    rt.fixed = std::move(fixed);
    return rt;
}

ActionSpec exploitSpec(const std::string& name, int port, const std::string& application,
                       const std::string& vulnId, FlawSubtype subtype, double baseP) {
    ActionSpec s;
    s.name = name;
    s.behavior = Behavior::Exploit;
    s.provides = makeAsset(AssetKind::AgentAsset, {});
    s.requirementTemplates.push_back(requireConnectivity(
        AssetKind::TCPConnectivityAsset, {{"target", "host"}},
        {{"port", AttrValue::number(port)}}));
    EnvironmentCondition appCond;
    appCond.templ = makeAsset(AssetKind::ApplicationAsset,
                              {{"application", AttrValue::symbol(application)},
                               {"port", AttrValue::number(port)}});
    appCond.multiplierIfMet = 1.15;
    appCond.multiplierIfUnmet = 0.01;
    s.conditions.push_back(appCond);
    s.baseCost.successProbability = baseP;
    s.baseCost.time = {2.0, 10.0, 60.0};
    s.baseCost.noise = {{"network-ids", 2.0, CleanupClass::Unremovable},
                        {"host-log", 1.0, CleanupClass::CleanableOnSuccess}};
    s.baseCost.stealthiness = 0.8;
    s.vulnerability = {VulnCategory::SoftwareImplementationFlaw, subtype, vulnId};
    s.port = port;
    s.application = application;
    s.capabilities = {"TCP", "UDP", "FileSystem"};
    return s;
}

}  // namespace

std::vector<ActionSpec> defaultCatalog() {
    std::vector<ActionSpec> out;

    {
        ActionSpec s;
        s.name = "NetworkDiscovery";
        s.behavior = Behavior::NetworkDiscovery;
        s.provides = makeAsset(AssetKind::IPConnectivityAsset, {});
        s.baseCost.successProbability = 0.95;
        s.baseCost.time = {0.1, 0.5, 2.0};
        s.baseCost.noise = {{"network-ids", 0.2, CleanupClass::Unremovable}};
        s.baseCost.stealthiness = 0.99;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "PortScan";
        s.behavior = Behavior::PortScan;
        s.provides = makeAsset(AssetKind::PortAsset, {});
        s.requirementTemplates.push_back(requireConnectivity(
            AssetKind::IPConnectivityAsset, {{"target", "host"}}));
        s.baseCost.successProbability = 0.98;
        s.baseCost.time = {0.05, 0.2, 1.0};
        s.baseCost.noise = {{"network-ids", 0.5, CleanupClass::Unremovable}};
        s.baseCost.stealthiness = 0.97;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "BannerGrabber";
        s.behavior = Behavior::BannerGrab;
        s.provides = makeAsset(AssetKind::BannerAsset, {});
        s.requirementTemplates.push_back(requireConnectivity(
            AssetKind::TCPConnectivityAsset, {{"target", "host"}, {"port", "port"}}));
        s.baseCost.successProbability = 0.97;
        s.baseCost.time = {0.1, 0.3, 1.5};
        s.baseCost.noise = {{"host-log", 0.3, CleanupClass::CleanableOnSuccess}};
        s.baseCost.stealthiness = 0.98;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "OSDetectByBanner";
        s.behavior = Behavior::OsDetectByBanner;
        s.provides = makeAsset(AssetKind::OperatingSystemAsset, {});
        s.requirementTemplates.push_back(requireConnectivity(
            AssetKind::BannerAsset, {{"host", "host"}}));
        s.baseCost.successProbability = 0.9;
        s.baseCost.time = {0.01, 0.05, 0.2};
        s.baseCost.stealthiness = 1.0;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "OSFingerprint";
        s.behavior = Behavior::OsFingerprint;
        s.provides = makeAsset(AssetKind::OperatingSystemAsset, {});
        s.requirementTemplates.push_back(requireConnectivity(
            AssetKind::IPConnectivityAsset, {{"target", "host"}}));
        s.baseCost.successProbability = 0.95;
        s.baseCost.time = {1.0, 5.0, 20.0};
        s.baseCost.noise = {{"network-ids", 3.0, CleanupClass::Unremovable}};
        s.baseCost.stealthiness = 0.85;
        s.accuracy = 0.9;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "TCPConnect";
        s.behavior = Behavior::TcpConnect;
        s.provides = makeAsset(AssetKind::TCPConnectivityAsset, {});
        s.requirementTemplates.push_back(requireConnectivity(
            AssetKind::IPConnectivityAsset, {{"source", "source"}, {"target", "target"}}));
        s.baseCost.successProbability = 0.99;
        s.baseCost.time = {0.05, 0.1, 0.5};
        s.baseCost.noise = {{"network-ids", 0.1, CleanupClass::CleanableAlways}};
        s.baseCost.stealthiness = 0.995;
        out.push_back(s);
    }
    {
        ActionSpec s;
        s.name = "TCPConnectCreatingHops";
        s.behavior = Behavior::TcpConnectCreatingHops;
        s.provides = makeAsset(AssetKind::TCPConnectivityAsset, {});
        RequirementTemplate agentReq;
        agentReq.kind = AssetKind::AgentAsset;  // some agent to pivot from
        s.requirementTemplates.push_back(agentReq);
        s.baseCost.successProbability = 0.95;
        s.baseCost.time = {1.0, 5.0, 30.0};
        s.baseCost.noise = {{"network-ids", 0.5, CleanupClass::Unremovable}};
        s.baseCost.stealthiness = 0.9;
        out.push_back(s);
    }
    out.push_back(exploitSpec("ApacheChunkedEncodingExploit", 80, "Apache",
                              "apache-chunked-encoding", FlawSubtype::BufferOverflow,
                              0.85));
    out.push_back(exploitSpec("WuFTPglobbingExploit", 21, "wu-ftpd", "wuftpd-globbing",
                              FlawSubtype::BufferOverflow, 0.8));
    return out;
}

std::vector<ActionSpec> mergeCatalog(std::vector<ActionSpec> base,
                                     const std::vector<ActionSpec>& overrides) {
    for (const auto& ov : overrides) {
        auto it = std::find_if(base.begin(), base.end(),
                               [&](const ActionSpec& s) { return s.name == ov.name; });
        if (it != base.end())
            *it = ov;
        else
            base.push_back(ov);
    }
    return base;
}

}  // namespace attackplan
