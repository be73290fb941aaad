#include "attackplan/net_address.hpp"

#include <sstream>

namespace attackplan {

std::optional<Ipv4> Ipv4::parse(const std::string& dotted) {
    uint32_t parts[4];
    int idx = 0;
    std::size_t pos = 0;
    while (idx < 4) {
        if (pos >= dotted.size() || !isdigit(static_cast<unsigned char>(dotted[pos])))
            return std::nullopt;
        uint32_t v = 0;
        std::size_t start = pos;
        while (pos < dotted.size() && isdigit(static_cast<unsigned char>(dotted[pos]))) {
            v = v * 10 + static_cast<uint32_t>(dotted[pos] - '0');
            if (v > 255 || pos - start >= 3) return std::nullopt;
            ++pos;
        }
        parts[idx++] = v;
        if (idx < 4) {
            if (pos >= dotted.size() || dotted[pos] != '.') return std::nullopt;
            ++pos;
        }
    }
    if (pos != dotted.size()) return std::nullopt;
    return Ipv4{(parts[0] << 24) | (parts[1] << 16) | (parts[2] << 8) | parts[3]};
}

std::string Ipv4::str() const {
    std::ostringstream os;
    os << ((value >> 24) & 0xff) << '.' << ((value >> 16) & 0xff) << '.'
       << ((value >> 8) & 0xff) << '.' << (value & 0xff);
    return os.str();
}

std::optional<Cidr> Cidr::parse(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return std::nullopt;
    auto addr = Ipv4::parse(text.substr(0, slash));
    if (!addr) return std::nullopt;
    const std::string p = text.substr(slash + 1);
    if (p.empty() || p.size() > 2) return std::nullopt;
    for (char c : p)
        if (!isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    int prefix = std::stoi(p);
    if (prefix < 0 || prefix > 32) return std::nullopt;
    Cidr c;
    c.prefix = prefix;
    c.base = addr->value;
    c.base &= c.mask();
    return c;
}

std::string Cidr::str() const {
    return Ipv4{base}.str() + "/" + std::to_string(prefix);
}

uint32_t Cidr::mask() const {
    if (prefix == 0) return 0;
    return ~uint32_t{0} << (32 - prefix);
}

bool Cidr::contains(const Ipv4& a) const {
    return (a.value & mask()) == base;
}

std::size_t Cidr::hostCount() const {
    if (prefix >= 31) return std::size_t{1} << (32 - prefix);
    return (std::size_t{1} << (32 - prefix)) - 2;
}

Ipv4 Cidr::hostAt(std::size_t i) const {
    uint32_t offset = (prefix >= 31) ? static_cast<uint32_t>(i)
                                     : static_cast<uint32_t>(i) + 1;
    return Ipv4{base + offset};
}

std::vector<Ipv4> Cidr::hostAddresses() const {
    std::vector<Ipv4> out;
    const std::size_t n = hostCount();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(hostAt(i));
    return out;
}

}  // namespace attackplan
