#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace attackplan {

// IPv4 address as a host-order 32-bit value.
struct Ipv4 {
    uint32_t value = 0;

    static std::optional<Ipv4> parse(const std::string& dotted);
    std::string str() const;

    friend bool operator==(const Ipv4& a, const Ipv4& b) { return a.value == b.value; }
    friend bool operator!=(const Ipv4& a, const Ipv4& b) { return a.value != b.value; }
    friend bool operator<(const Ipv4& a, const Ipv4& b) { return a.value < b.value; }
};

// IPv4 CIDR block. The base is stored masked to the prefix.
struct Cidr {
    uint32_t base = 0;
    int prefix = 32;

    static std::optional<Cidr> parse(const std::string& text);
    std::string str() const;

    uint32_t mask() const;
    bool contains(const Ipv4& a) const;

    // Usable host addresses in ascending order. Excludes network and
    // broadcast addresses for prefixes <= 30; /31 and /32 yield everything.
    std::vector<Ipv4> hostAddresses() const;
    std::size_t hostCount() const;
    Ipv4 hostAt(std::size_t i) const;

    friend bool operator==(const Cidr& a, const Cidr& b) {
        return a.base == b.base && a.prefix == b.prefix;
    }
};

}  // namespace attackplan
