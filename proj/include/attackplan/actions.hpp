#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "attackplan/goals.hpp"

namespace attackplan {

struct TimeTriple {
    double min = 0.0;
    double avg = 0.0;
    double max = 0.0;
};

bool timeTripleOrdered(const TimeTriple& t);

enum class CleanupClass { Unremovable, CleanableOnSuccess, CleanableAlways };

std::string cleanupClassName(CleanupClass c);

struct NoiseEvent {
    std::string sensorCategory;  // e.g. "network-ids", "host-log"
    double magnitude = 0.0;
    CleanupClass cleanup = CleanupClass::Unremovable;
};

// The five-dimensional cost of one action.
struct ActionCost {
    double successProbability = 1.0;
    TimeTriple time;
    std::vector<NoiseEvent> noise;
    double stealthiness = 1.0;  // probability of not being discovered
    bool zeroDay = false;
    int hopsAdded = 0;
};

// A world-state pattern that scales success probability without being a
// prerequisite action. Conditions never make an action unrunnable.
struct EnvironmentCondition {
    Asset templ;
    double multiplierIfMet = 1.0;
    double multiplierIfUnmet = 1.0;
};

enum class VulnCategory {
    None,
    SoftwareDesignFlaw,
    SoftwareImplementationFlaw,
    NetworkConfiguration,
    TrustRelationship,
};

enum class FlawSubtype { None, BufferOverflow, FormatString, RaceCondition };

struct VulnerabilityInfo {
    VulnCategory category = VulnCategory::None;
    FlawSubtype subtype = FlawSubtype::None;
    std::string identifier;
};

// Which run semantics a spec uses against the simulator.
enum class Behavior {
    NetworkDiscovery,
    PortScan,
    BannerGrab,
    OsDetectByBanner,
    OsFingerprint,
    TcpConnect,
    TcpConnectCreatingHops,
    Exploit,
    CleanLogs,
};

std::string behaviorName(Behavior b);
std::optional<Behavior> behaviorFromName(const std::string& name);

// How one requirement goal is derived from the owning action's goal:
// fixed attributes plus bindings requirement-attribute <- goal-attribute.
struct RequirementTemplate {
    AssetKind kind = AssetKind::AgentAsset;
    std::map<std::string, AttrValue> fixed;
    std::map<std::string, std::string> bind;
};

struct ActionSpec {
    std::string name;
    Behavior behavior = Behavior::TcpConnect;
    Asset provides;  // pattern of the assets this action can complete
    std::vector<RequirementTemplate> requirementTemplates;
    std::vector<EnvironmentCondition> conditions;
    ActionCost baseCost;
    VulnerabilityInfo vulnerability;

    // behavior parameters
    int port = 0;
    std::string application;
    std::vector<std::string> capabilities;
    double accuracy = 1.0;  // OsFingerprint
};

// True iff the spec's provides pattern is compatible with the goal template:
// same kind, and equal wherever both are concrete.
bool providesMatches(const ActionSpec& spec, const Asset& goalTemplate);

// Planning-phase partial instantiation: requirement goals carry only the
// goal's common (non-quantified) information. Throws on kind mismatch.
std::vector<Goal> initializeRequirements(const ActionSpec& spec, const Goal& goal);

// Execution-phase full instantiation: pushes the now-concrete attribute
// values into the requirement templates. Throws std::logic_error on a
// conflicting concrete attribute (a planner bug).
void setupRequirements(const ActionSpec& spec, const Asset& concrete,
                       std::vector<Goal>& requirements);

// Base cost adjusted by the environment conditions against the current
// knowledge snapshot; pure in (spec, env, now).
ActionCost effectiveCost(const ActionSpec& spec, const EnvironmentKnowledge& env,
                         double now);

}  // namespace attackplan
