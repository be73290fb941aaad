#include "attackplan/actions.hpp"

#include <algorithm>
#include <stdexcept>

namespace attackplan {

bool timeTripleOrdered(const TimeTriple& t) {
    return 0.0 <= t.min && t.min <= t.avg && t.avg <= t.max;
}

std::string cleanupClassName(CleanupClass c) {
    switch (c) {
        case CleanupClass::Unremovable: return "Unremovable";
        case CleanupClass::CleanableOnSuccess: return "CleanableOnSuccess";
        case CleanupClass::CleanableAlways: return "CleanableAlways";
    }
    return "Unremovable";
}

std::string behaviorName(Behavior b) {
    switch (b) {
        case Behavior::NetworkDiscovery: return "NetworkDiscovery";
        case Behavior::PortScan: return "PortScan";
        case Behavior::BannerGrab: return "BannerGrab";
        case Behavior::OsDetectByBanner: return "OsDetectByBanner";
        case Behavior::OsFingerprint: return "OsFingerprint";
        case Behavior::TcpConnect: return "TcpConnect";
        case Behavior::TcpConnectCreatingHops: return "TcpConnectCreatingHops";
        case Behavior::Exploit: return "Exploit";
        case Behavior::CleanLogs: return "CleanLogs";
    }
    return "TcpConnect";
}

std::optional<Behavior> behaviorFromName(const std::string& name) {
    static const std::vector<Behavior> all = {
        Behavior::NetworkDiscovery, Behavior::PortScan,
        Behavior::BannerGrab,       Behavior::OsDetectByBanner,
        Behavior::OsFingerprint,    Behavior::TcpConnect,
        Behavior::TcpConnectCreatingHops, Behavior::Exploit,
        Behavior::CleanLogs,
    };
    for (Behavior b : all)
        if (behaviorName(b) == name) return b;
    return std::nullopt;
}

bool providesMatches(const ActionSpec& spec, const Asset& goalTemplate) {
    if (spec.provides.kind != goalTemplate.kind) return false;
    for (const auto& [name, pv] : spec.provides.attrs) {
        if (pv.isUnknown()) continue;
        auto it = goalTemplate.attrs.find(name);
        if (it == goalTemplate.attrs.end()) continue;
        if (!it->second.isUnknown() && it->second != pv) return false;
    }
    return true;
}

std::vector<Goal> initializeRequirements(const ActionSpec& spec, const Goal& goal) {
    if (spec.provides.kind != goal.templ.kind)
        throw std::invalid_argument("action '" + spec.name +
                                    "' does not provide assets of kind " +
                                    assetKindName(goal.templ.kind));
    std::vector<std::string> quantified;
    for (const auto& q : goal.quantifiers) quantified.push_back(q.attribute);

    std::vector<Goal> out;
    for (const auto& rt : spec.requirementTemplates) {
        Asset templ = makeAsset(rt.kind, rt.fixed);
        for (const auto& [reqAttr, goalAttr] : rt.bind) {
            if (std::find(quantified.begin(), quantified.end(), goalAttr) !=
                quantified.end())
                continue;  // quantified attributes stay open until execution
            auto it = goal.templ.attrs.find(goalAttr);
            if (it != goal.templ.attrs.end() && !it->second.isUnknown())
                templ.attrs[reqAttr] = it->second;
        }
        Goal req;
        req.templ = std::move(templ);
        out.push_back(std::move(req));
    }
    return out;
}

void setupRequirements(const ActionSpec& spec, const Asset& concrete,
                       std::vector<Goal>& requirements) {
    if (requirements.size() != spec.requirementTemplates.size())
        throw std::logic_error("requirement list does not match spec '" + spec.name + "'");
    for (std::size_t i = 0; i < requirements.size(); ++i) {
        const auto& rt = spec.requirementTemplates[i];
        for (const auto& [reqAttr, goalAttr] : rt.bind) {
            auto it = concrete.attrs.find(goalAttr);
            if (it == concrete.attrs.end() || it->second.isUnknown()) continue;
            AttrValue& slot = requirements[i].templ.attrs[reqAttr];
            if (!slot.isUnknown() && slot != it->second)
                throw std::logic_error("conflicting concrete attribute '" + reqAttr +
                                       "' while instantiating requirements of '" +
                                       spec.name + "'");
            slot = it->second;
        }
    }
}

ActionCost effectiveCost(const ActionSpec& spec, const EnvironmentKnowledge& env,
                         double now) {
    ActionCost cost = spec.baseCost;
    double p = cost.successProbability;
    for (const auto& cond : spec.conditions) {
        const auto hits = env.query(cond.templ, 0.0, now);
        // Strongest positive and negative evidence; multiplier effect is
        // interpolated by the evidence weight so stale knowledge degrades
        // smoothly toward no effect.
        double metWeight = 0.0, unmetWeight = 0.0;
        for (const auto& a : hits) {
            const double t = trustAt(a, now, env.trustHalfLife);
            if (a.probability > 0.0)
                metWeight = std::max(metWeight, a.probability * t);
            else
                unmetWeight = std::max(unmetWeight, t);
        }
        if (metWeight > 0.0) p *= 1.0 + (cond.multiplierIfMet - 1.0) * metWeight;
        if (unmetWeight > 0.0) p *= 1.0 + (cond.multiplierIfUnmet - 1.0) * unmetWeight;
    }
    cost.successProbability = std::clamp(p, 0.0, 1.0);
    return cost;
}

}  // namespace attackplan
