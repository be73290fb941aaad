#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "attackplan/assets.hpp"

namespace attackplan {

enum class QuantifierType { Any, All, AllPossible };

std::string quantifierTypeName(QuantifierType t);
std::optional<QuantifierType> quantifierTypeFromName(const std::string& name);

// Iteration domain of a quantifier. Values come out in ascending order
// (numeric order, list order, ascending host address).
class Domain {
public:
    enum class Kind { Range, ValueList, Netblock };

    static Domain range(int64_t from, int64_t to);
    static Domain valueList(std::vector<AttrValue> values);
    static Domain netblock(Cidr block);

    Kind kind() const { return kind_; }
    std::size_t size() const;
    AttrValue at(std::size_t i) const;

    int64_t rangeFrom() const { return from_; }
    int64_t rangeTo() const { return to_; }
    const std::vector<AttrValue>& values() const { return values_; }
    const Cidr& block() const { return block_; }

private:
    Kind kind_ = Kind::Range;
    int64_t from_ = 0, to_ = -1;
    std::vector<AttrValue> values_;
    Cidr block_;
};

struct Quantifier {
    QuantifierType type = QuantifierType::Any;
    std::string attribute;
    Domain domain;
};

// An asset template scoped by ordered quantifiers. candidateActions is
// populated during attack graph construction.
struct Goal {
    Asset templ;
    std::vector<Quantifier> quantifiers;
    std::vector<std::string> candidateActions;
};

// Empty when valid, else one diagnostic per violation.
std::vector<std::string> validateGoal(const Goal& g);

// Lazy left-to-right nested iteration over the quantifier domains; the first
// quantifier is the outermost loop. Never materializes the full stream.
class InstantiationStream {
public:
    explicit InstantiationStream(const Goal& g);
    std::optional<Asset> next();
    std::size_t total() const { return total_; }

private:
    const Goal* goal_;
    std::vector<std::size_t> idx_;
    bool done_ = false;
    std::size_t total_ = 0;
};

InstantiationStream instantiations(const Goal& g);

struct JudgeResult {
    bool success = false;
    std::vector<Asset> completed;
    std::size_t attempted = 0;
    bool aborted = false;
};

struct AttemptResult {
    bool success = false;
    std::vector<Asset> assets;
    bool abort = false;  // propagate an external halt up through the recursion
};

using AttemptFn = std::function<AttemptResult(const Asset& concreteTemplate)>;

// Recursive quantifier evaluation, outermost quantifier first. Any and All
// short-circuit; AllPossible attempts every element and keeps the successes.
JudgeResult evaluate(const Goal& g, const AttemptFn& attempt);

// Judges a goal against a precomputed outcome map keyed by the concrete
// template's assetSignature. Templates the strategy never visits may be
// absent from the map.
JudgeResult judge(const Goal& g, const std::map<std::string, bool>& outcomes);

enum class EnvVerdict { Success, Failure, Undecided };

struct EnvDecision {
    EnvVerdict verdict = EnvVerdict::Undecided;
    std::vector<Asset> assets;
};

// Decides the goal from environment knowledge alone when the stored evidence
// suffices; a decision here carries zero cost.
EnvDecision satisfiedByEnvironment(const Goal& g, const EnvironmentKnowledge& env,
                                   double now, double minTrust);

}  // namespace attackplan
