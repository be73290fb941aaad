#include "attackplan/assets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace attackplan {

AttrValue AttrValue::text(std::string s) {
    AttrValue v;
    v.tag_ = Tag::Text;
    v.str_ = std::move(s);
    return v;
}

AttrValue AttrValue::number(int64_t n) {
    AttrValue v;
    v.tag_ = Tag::Number;
    v.num_ = n;
    return v;
}

AttrValue AttrValue::address(Ipv4 a) {
    AttrValue v;
    v.tag_ = Tag::Address;
    v.addr_ = a;
    return v;
}

AttrValue AttrValue::netblock(Cidr c) {
    AttrValue v;
    v.tag_ = Tag::Netblock;
    v.block_ = c;
    return v;
}

AttrValue AttrValue::symbol(std::string s) {
    AttrValue v;
    v.tag_ = Tag::Symbol;
    v.str_ = std::move(s);
    return v;
}

AttrValue AttrValue::list(std::vector<AttrValue> items) {
    AttrValue v;
    v.tag_ = Tag::List;
    v.items_ = std::move(items);
    return v;
}

bool operator==(const AttrValue& a, const AttrValue& b) {
    if (a.tag_ != b.tag_) return false;
    switch (a.tag_) {
        case AttrValue::Tag::Unknown: return true;
        case AttrValue::Tag::Text:
        case AttrValue::Tag::Symbol: return a.str_ == b.str_;
        case AttrValue::Tag::Number: return a.num_ == b.num_;
        case AttrValue::Tag::Address: return a.addr_ == b.addr_;
        case AttrValue::Tag::Netblock: return a.block_ == b.block_;
        case AttrValue::Tag::List: return a.items_ == b.items_;
    }
    return false;
}

std::string AttrValue::str() const {
    switch (tag_) {
        case Tag::Unknown: return "?";
        case Tag::Text: return "\"" + str_ + "\"";
        case Tag::Symbol: return "#" + str_;
        case Tag::Number: return std::to_string(num_);
        case Tag::Address: return addr_.str();
        case Tag::Netblock: return block_.str();
        case Tag::List: {
            std::string out = "(";
            for (std::size_t i = 0; i < items_.size(); ++i) {
                if (i) out += ",";
                out += items_[i].str();
            }
            return out + ")";
        }
    }
    return "?";
}

const std::vector<std::string>& schemaOf(AssetKind kind) {
    static const std::vector<std::string> agent = {"agent", "capabilities", "host"};
    static const std::vector<std::string> banner = {"banner", "host", "port"};
    static const std::vector<std::string> os = {"os", "host"};
    static const std::vector<std::string> ipconn = {"source", "target"};
    static const std::vector<std::string> tcpconn = {"source", "target", "port"};
    static const std::vector<std::string> port = {"host", "port", "status"};
    static const std::vector<std::string> app = {"host", "port", "application"};
    switch (kind) {
        case AssetKind::AgentAsset: return agent;
        case AssetKind::BannerAsset: return banner;
        case AssetKind::OperatingSystemAsset: return os;
        case AssetKind::IPConnectivityAsset: return ipconn;
        case AssetKind::TCPConnectivityAsset: return tcpconn;
        case AssetKind::PortAsset: return port;
        case AssetKind::ApplicationAsset: return app;
    }
    return agent;
}

std::string assetKindName(AssetKind kind) {
    switch (kind) {
        case AssetKind::AgentAsset: return "AgentAsset";
        case AssetKind::BannerAsset: return "BannerAsset";
        case AssetKind::OperatingSystemAsset: return "OperatingSystemAsset";
        case AssetKind::IPConnectivityAsset: return "IPConnectivityAsset";
        case AssetKind::TCPConnectivityAsset: return "TCPConnectivityAsset";
        case AssetKind::PortAsset: return "PortAsset";
        case AssetKind::ApplicationAsset: return "ApplicationAsset";
    }
    return "AgentAsset";
}

std::optional<AssetKind> assetKindFromName(const std::string& name) {
    static const std::vector<AssetKind> all = {
        AssetKind::AgentAsset,          AssetKind::BannerAsset,
        AssetKind::OperatingSystemAsset, AssetKind::IPConnectivityAsset,
        AssetKind::TCPConnectivityAsset, AssetKind::PortAsset,
        AssetKind::ApplicationAsset,
    };
    for (AssetKind k : all)
        if (assetKindName(k) == name) return k;
    return std::nullopt;
}

Asset makeAsset(AssetKind kind, std::map<std::string, AttrValue> attrs,
                double probability, double trust, double createdAt) {
    const auto& schema = schemaOf(kind);
    for (const auto& [name, value] : attrs) {
        if (std::find(schema.begin(), schema.end(), name) == schema.end())
            throw std::invalid_argument("attribute '" + name + "' not in schema of " +
                                        assetKindName(kind));
    }
    Asset a;
    a.kind = kind;
    for (const auto& name : schema) {
        auto it = attrs.find(name);
        a.attrs[name] = (it == attrs.end()) ? AttrValue::unknown() : it->second;
    }
    a.probability = probability;
    a.trust = trust;
    a.createdAt = createdAt;
    return a;
}

std::string validateAsset(const Asset& a) {
    const auto& schema = schemaOf(a.kind);
    if (a.attrs.size() != schema.size())
        return assetKindName(a.kind) + ": attribute count " +
               std::to_string(a.attrs.size()) + " differs from schema size " +
               std::to_string(schema.size());
    for (const auto& name : schema)
        if (!a.attrs.count(name))
            return assetKindName(a.kind) + ": missing attribute '" + name + "'";
    if (a.probability < 0.0 || a.probability > 1.0)
        return assetKindName(a.kind) + ": probability out of [0,1]";
    if (a.trust < 0.0 || a.trust > 1.0)
        return assetKindName(a.kind) + ": trust out of [0,1]";
    return "";
}

std::string assetSignature(const Asset& a) {
    std::ostringstream os;
    os << assetKindName(a.kind) << "(";
    bool first = true;
    for (const auto& [name, value] : a.attrs) {
        if (!first) os << ",";
        first = false;
        os << name << "=" << value.str();
    }
    os << ")";
    return os.str();
}

bool attributeIdentical(const Asset& a, const Asset& b) {
    return a.kind == b.kind && a.attrs == b.attrs;
}

bool completes(const Asset& a1, const Asset& a2) {
    if (a1.kind != a2.kind) return false;
    bool extra = false;
    for (const auto& [name, v2] : a2.attrs) {
        auto it = a1.attrs.find(name);
        const AttrValue& v1 = (it == a1.attrs.end()) ? AttrValue::unknown() : it->second;
        if (!v2.isUnknown()) {
            if (v1 != v2) return false;
        } else if (!v1.isUnknown()) {
            extra = true;
        }
    }
    return extra;
}

bool matchesTemplate(const Asset& a, const Asset& templ) {
    if (a.kind != templ.kind) return false;
    for (const auto& [name, tv] : templ.attrs) {
        if (tv.isUnknown()) continue;
        auto it = a.attrs.find(name);
        if (it == a.attrs.end() || it->second != tv) return false;
    }
    return true;
}

double trustAt(const Asset& a, double now, double halfLife) {
    if (halfLife <= 0.0)
        throw std::invalid_argument("trust half-life must be positive");
    const double age = now - a.createdAt;
    if (age <= 0.0) return a.trust;
    return a.trust * std::exp2(-age / halfLife);
}

MergeReport EnvironmentKnowledge::insert(const Asset& a) {
    MergeReport report;
    report.diagnostic = validateAsset(a);
    if (!report.diagnostic.empty()) return report;
    report.accepted = true;
    for (auto& existing : assets_) {
        if (attributeIdentical(existing, a)) {
            if (a.createdAt < existing.createdAt) {
                report.accepted = false;
                report.diagnostic = "stale record; a newer observation exists";
                return report;
            }
            existing = a;
            report.replaced = true;
            return report;
        }
    }
    assets_.push_back(a);
    return report;
}

std::vector<Asset> EnvironmentKnowledge::query(const Asset& templ, double minTrust,
                                               double now) const {
    std::vector<Asset> out;
    for (const auto& a : assets_) {
        if (!matchesTemplate(a, templ)) continue;
        if (trustAt(a, now, trustHalfLife) < minTrust) continue;
        out.push_back(a);
    }
    std::stable_sort(out.begin(), out.end(), [&](const Asset& x, const Asset& y) {
        if (x.probability != y.probability) return x.probability > y.probability;
        return trustAt(x, now, trustHalfLife) > trustAt(y, now, trustHalfLife);
    });
    return out;
}

}  // namespace attackplan
