#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "attackplan/actions.hpp"
#include "attackplan/net_address.hpp"

namespace attackplan {

struct Service {
    std::string banner;
    std::string application;
    std::string version;
    bool open = true;
};

struct OsInfo {
    std::string name;
    std::string version;
};

struct SimHost {
    Ipv4 address;
    OsInfo os;
    std::map<int, Service> ports;
    std::set<std::string> vulnerabilities;
};

enum class FirewallVerdict { Allow, Deny };

// First match by ascending priority wins; the network default verdict
// terminates every lookup.
struct FirewallRule {
    Cidr sourceBlock;
    Cidr destBlock;
    std::optional<int> port;  // nullopt = wildcard
    FirewallVerdict verdict = FirewallVerdict::Allow;
    int priority = 0;
};

struct Sensor {
    std::string id;
    std::string category;
    Cidr placement;
    double threshold = 1.0;
    double accumulated = 0.0;
    bool detected = false;  // latched
};

struct ActionOutcome;  // see catalog.hpp

// Ground-truth simulated network. Single-owner mutable state.
struct SimNetwork {
    std::vector<SimHost> hosts;
    std::vector<Cidr> subnets;
    std::vector<FirewallRule> rules;
    std::vector<Sensor> sensors;
    FirewallVerdict defaultVerdict = FirewallVerdict::Allow;
    double clock = 0.0;

    const SimHost* hostAt(const Ipv4& address) const;
    SimHost* hostAt(const Ipv4& address);
    Sensor* sensorById(const std::string& id);
};

// IP-level reachability: reflexive; otherwise governed by wildcard-port
// firewall rules, falling back to the default verdict.
bool routable(const SimNetwork& net, const Ipv4& source, const Ipv4& target);

// Port-level: (permitted by firewall, service open on the target).
std::pair<bool, bool> tcpPermitted(const SimNetwork& net, const Ipv4& source,
                                   const Ipv4& target, int port);

// Adds each event's magnitude to every sensor whose placement covers the
// event address and whose category matches. Returns sensors that crossed
// their threshold on this call; detection latches.
std::vector<std::string> emitNoise(
    SimNetwork& net, const std::vector<std::pair<Ipv4, NoiseEvent>>& events);

// Removes CleanableAlways noise unconditionally and CleanableOnSuccess noise
// iff the action succeeded, marking the outcome's records cleaned. Latched
// detections stay latched. Returns the total magnitude removed.
double cleanNoise(SimNetwork& net, ActionOutcome& outcome, bool success);

}  // namespace attackplan
