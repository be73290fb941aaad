#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace attackplan {

// The attack parameters of an agent or a whole attack. An empty
// actionPortfolio means the full catalog is available.
struct AttackParameters {
    double nonTraceability = 0.0;
    std::map<std::string, double> toleratedNoise;  // sensor category -> max magnitude
    double expectedSuccess = 0.5;
    double executionTime = 86400.0;  // seconds budget for the whole attack
    bool zeroDayness = false;
    std::set<std::string> actionPortfolio;
};

struct AttackerProfile {
    std::string name;
    AttackParameters parameters;
    bool haltOnDetection = false;
};

// The four built-in attacker presets, in increasing order of capability.
std::vector<AttackerProfile> builtinProfiles();

const AttackerProfile* findBuiltinProfile(const std::string& name);

}  // namespace attackplan
