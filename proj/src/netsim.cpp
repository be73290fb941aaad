#include "attackplan/netsim.hpp"

#include <algorithm>

#include "attackplan/catalog.hpp"

namespace attackplan {

const SimHost* SimNetwork::hostAt(const Ipv4& address) const {
    for (const auto& h : hosts)
        if (h.address == address) return &h;
    return nullptr;
}

SimHost* SimNetwork::hostAt(const Ipv4& address) {
    for (auto& h : hosts)
        if (h.address == address) return &h;
    return nullptr;
}

Sensor* SimNetwork::sensorById(const std::string& id) {
    for (auto& s : sensors)
        if (s.id == id) return &s;
    return nullptr;
}

namespace {

// First matching rule by ascending priority; port == nullopt restricts the
// lookup to wildcard rules (IP-level reachability).
FirewallVerdict firewallLookup(const SimNetwork& net, const Ipv4& source,
                               const Ipv4& target, std::optional<int> port) {
    const FirewallRule* best = nullptr;
    for (const auto& r : net.rules) {
        if (!r.sourceBlock.contains(source) || !r.destBlock.contains(target)) continue;
        if (port.has_value()) {
            if (r.port.has_value() && *r.port != *port) continue;
        } else {
            if (r.port.has_value()) continue;
        }
        if (!best || r.priority < best->priority) best = &r;
    }
    return best ? best->verdict : net.defaultVerdict;
}

}  // namespace

bool routable(const SimNetwork& net, const Ipv4& source, const Ipv4& target) {
    if (source == target) return true;
    return firewallLookup(net, source, target, std::nullopt) == FirewallVerdict::Allow;
}

std::pair<bool, bool> tcpPermitted(const SimNetwork& net, const Ipv4& source,
                                   const Ipv4& target, int port) {
    bool permitted =
        source == target ||
        firewallLookup(net, source, target, port) == FirewallVerdict::Allow;
    bool open = false;
    if (const SimHost* h = net.hostAt(target)) {
        auto it = h->ports.find(port);
        open = it != h->ports.end() && it->second.open;
    }
    return {permitted, open};
}

std::vector<std::string> emitNoise(
    SimNetwork& net, const std::vector<std::pair<Ipv4, NoiseEvent>>& events) {
    std::vector<std::string> newlyDetected;
    for (const auto& [address, event] : events) {
        for (auto& sensor : net.sensors) {
            if (sensor.category != event.sensorCategory) continue;
            if (!sensor.placement.contains(address)) continue;
            sensor.accumulated += event.magnitude;
            if (!sensor.detected && sensor.accumulated >= sensor.threshold) {
                sensor.detected = true;
                newlyDetected.push_back(sensor.id);
            }
        }
    }
    return newlyDetected;
}

double cleanNoise(SimNetwork& net, ActionOutcome& outcome, bool success) {
    double removed = 0.0;
    for (auto& record : outcome.noiseEmitted) {
        if (record.cleaned) continue;
        const CleanupClass c = record.event.cleanup;
        const bool removable = c == CleanupClass::CleanableAlways ||
                               (c == CleanupClass::CleanableOnSuccess && success);
        if (!removable) continue;
        for (const auto& id : record.sensorsHit) {
            if (Sensor* s = net.sensorById(id))
                s->accumulated = std::max(0.0, s->accumulated - record.event.magnitude);
        }
        record.cleaned = true;
        removed += record.event.magnitude;
    }
    return removed;
}

}  // namespace attackplan
