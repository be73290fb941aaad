#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attackplan/net_address.hpp"

namespace attackplan {

// Attribute value of an asset. Unknown is the "open question" marker: it
// compares equal only to Unknown and acts as a wildcard in templates.
class AttrValue {
public:
    enum class Tag { Unknown, Text, Number, Address, Netblock, Symbol, List };

    AttrValue() : tag_(Tag::Unknown) {}

    static AttrValue unknown() { return AttrValue(); }
    static AttrValue text(std::string s);
    static AttrValue number(int64_t n);
    static AttrValue address(Ipv4 a);
    static AttrValue netblock(Cidr c);
    static AttrValue symbol(std::string s);
    static AttrValue list(std::vector<AttrValue> items);

    Tag tag() const { return tag_; }
    bool isUnknown() const { return tag_ == Tag::Unknown; }

    const std::string& textValue() const { return str_; }
    int64_t numberValue() const { return num_; }
    Ipv4 addressValue() const { return addr_; }
    Cidr netblockValue() const { return block_; }
    const std::string& symbolValue() const { return str_; }
    const std::vector<AttrValue>& listValue() const { return items_; }

    // Canonical printable form, also used in asset signatures.
    std::string str() const;

    friend bool operator==(const AttrValue& a, const AttrValue& b);
    friend bool operator!=(const AttrValue& a, const AttrValue& b) { return !(a == b); }

private:
    Tag tag_;
    std::string str_;
    int64_t num_ = 0;
    Ipv4 addr_;
    Cidr block_;
    std::vector<AttrValue> items_;
};

enum class AssetKind {
    AgentAsset,
    BannerAsset,
    OperatingSystemAsset,
    IPConnectivityAsset,
    TCPConnectivityAsset,
    PortAsset,
    ApplicationAsset,
};

const std::vector<std::string>& schemaOf(AssetKind kind);
std::string assetKindName(AssetKind kind);
std::optional<AssetKind> assetKindFromName(const std::string& name);

// A probabilistic, trust-weighted piece of knowledge about the network.
// probability 0 records a known-false fact; 1 records certainty.
struct Asset {
    AssetKind kind = AssetKind::AgentAsset;
    std::map<std::string, AttrValue> attrs;
    double probability = 1.0;
    double trust = 1.0;
    double createdAt = 0.0;
};

// Builds an asset with the kind's full schema; attributes not given stay
// Unknown. Throws std::invalid_argument on attribute names outside the schema.
Asset makeAsset(AssetKind kind, std::map<std::string, AttrValue> attrs,
                double probability = 1.0, double trust = 1.0, double createdAt = 0.0);

// Empty string when valid, else a diagnostic.
std::string validateAsset(const Asset& a);

// Canonical signature over kind and attributes (probability/trust excluded).
std::string assetSignature(const Asset& a);

// True iff the assets agree on kind and on every attribute including Unknowns.
bool attributeIdentical(const Asset& a, const Asset& b);

// a1 completes a2: same kind, a1 carries every concrete attribute of a2 with
// an equal value, and answers at least one of a2's Unknown attributes.
bool completes(const Asset& a1, const Asset& a2);

// Template match used by queries: same kind and equal on every attribute
// concrete in the template (Unknown template slots match anything).
bool matchesTemplate(const Asset& a, const Asset& templ);

// Exponential half-life trust decay. Throws std::invalid_argument on
// halfLife <= 0.
double trustAt(const Asset& a, double now, double halfLife);

struct MergeReport {
    bool accepted = false;
    bool replaced = false;
    std::string diagnostic;
};

// Per-agent knowledge store. Single-writer; snapshots are plain copies.
class EnvironmentKnowledge {
public:
    std::string owner;
    double trustHalfLife = 3600.0;

    // Newest-wins on attribute-identical collision.
    MergeReport insert(const Asset& a);

    // Assets matching the template with decayed trust >= minTrust, sorted by
    // descending probability then descending decayed trust.
    std::vector<Asset> query(const Asset& templ, double minTrust, double now) const;

    const std::vector<Asset>& assets() const { return assets_; }
    std::size_t size() const { return assets_.size(); }

private:
    std::vector<Asset> assets_;
};

}  // namespace attackplan
