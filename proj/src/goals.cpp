#include "attackplan/goals.hpp"

#include <algorithm>
#include <stdexcept>

namespace attackplan {

std::string quantifierTypeName(QuantifierType t) {
    switch (t) {
        case QuantifierType::Any: return "Any";
        case QuantifierType::All: return "All";
        case QuantifierType::AllPossible: return "AllPossible";
    }
    return "Any";
}

std::optional<QuantifierType> quantifierTypeFromName(const std::string& name) {
    if (name == "Any") return QuantifierType::Any;
    if (name == "All") return QuantifierType::All;
    if (name == "AllPossible") return QuantifierType::AllPossible;
    return std::nullopt;
}

Domain Domain::range(int64_t from, int64_t to) {
    if (from > to) throw std::invalid_argument("range domain with from > to");
    Domain d;
    d.kind_ = Kind::Range;
    d.from_ = from;
    d.to_ = to;
    return d;
}

Domain Domain::valueList(std::vector<AttrValue> values) {
    if (values.empty()) throw std::invalid_argument("empty value-list domain");
    Domain d;
    d.kind_ = Kind::ValueList;
    d.values_ = std::move(values);
    return d;
}

Domain Domain::netblock(Cidr block) {
    Domain d;
    d.kind_ = Kind::Netblock;
    d.block_ = block;
    return d;
}

std::size_t Domain::size() const {
    switch (kind_) {
        case Kind::Range: return static_cast<std::size_t>(to_ - from_ + 1);
        case Kind::ValueList: return values_.size();
        case Kind::Netblock: return block_.hostCount();
    }
    return 0;
}

AttrValue Domain::at(std::size_t i) const {
    switch (kind_) {
        case Kind::Range: return AttrValue::number(from_ + static_cast<int64_t>(i));
        case Kind::ValueList: return values_.at(i);
        case Kind::Netblock: return AttrValue::address(block_.hostAt(i));
    }
    return AttrValue::unknown();
}

std::vector<std::string> validateGoal(const Goal& g) {
    std::vector<std::string> diags;
    std::string assetDiag = validateAsset(g.templ);
    if (!assetDiag.empty()) diags.push_back("template: " + assetDiag);
    std::vector<std::string> seen;
    for (const auto& q : g.quantifiers) {
        auto it = g.templ.attrs.find(q.attribute);
        if (it == g.templ.attrs.end())
            diags.push_back("quantifier attribute '" + q.attribute +
                            "' not in template schema");
        else if (!it->second.isUnknown())
            diags.push_back("quantified attribute '" + q.attribute +
                            "' must be Unknown in the template");
        if (std::find(seen.begin(), seen.end(), q.attribute) != seen.end())
            diags.push_back("attribute '" + q.attribute + "' quantified twice");
        seen.push_back(q.attribute);
    }
    return diags;
}

InstantiationStream::InstantiationStream(const Goal& g) : goal_(&g) {
    idx_.assign(g.quantifiers.size(), 0);
    total_ = 1;
    for (const auto& q : g.quantifiers) {
        total_ *= q.domain.size();
        if (q.domain.size() == 0) done_ = true;
    }
    if (done_) total_ = 0;
}

std::optional<Asset> InstantiationStream::next() {
    if (done_) return std::nullopt;
    Asset out = goal_->templ;
    for (std::size_t i = 0; i < idx_.size(); ++i)
        out.attrs[goal_->quantifiers[i].attribute] = goal_->quantifiers[i].domain.at(idx_[i]);
    // advance the mixed-radix counter, last quantifier fastest
    if (idx_.empty()) {
        done_ = true;
        return out;
    }
    std::size_t pos = idx_.size();
    while (pos > 0) {
        --pos;
        if (++idx_[pos] < goal_->quantifiers[pos].domain.size()) return out;
        idx_[pos] = 0;
    }
    done_ = true;
    return out;
}

InstantiationStream instantiations(const Goal& g) { return InstantiationStream(g); }

namespace {

JudgeResult evalRec(const Goal& g, Asset templ, std::size_t qi, const AttemptFn& attempt) {
    JudgeResult result;
    if (qi == g.quantifiers.size()) {
        AttemptResult r = attempt(templ);
        result.attempted = 1;
        result.success = r.success;
        result.completed = std::move(r.assets);
        result.aborted = r.abort;
        return result;
    }
    const Quantifier& q = g.quantifiers[qi];
    const std::size_t n = q.domain.size();
    std::size_t successes = 0;
    bool allSucceeded = true;
    for (std::size_t i = 0; i < n; ++i) {
        templ.attrs[q.attribute] = q.domain.at(i);
        JudgeResult child = evalRec(g, templ, qi + 1, attempt);
        result.attempted += child.attempted;
        if (child.aborted) {
            result.aborted = true;
            result.success = false;
            return result;
        }
        if (child.success) {
            ++successes;
            result.completed.insert(result.completed.end(), child.completed.begin(),
                                    child.completed.end());
            if (q.type == QuantifierType::Any) {
                result.success = true;
                return result;  // short-circuit on first success
            }
        } else {
            allSucceeded = false;
            if (q.type == QuantifierType::All) {
                result.success = false;
                result.completed.clear();
                return result;  // short-circuit on first failure
            }
        }
    }
    switch (q.type) {
        case QuantifierType::Any: result.success = false; break;
        case QuantifierType::All: result.success = allSucceeded && n > 0; break;
        case QuantifierType::AllPossible: result.success = successes > 0; break;
    }
    if (!result.success && q.type != QuantifierType::AllPossible) result.completed.clear();
    return result;
}

}  // namespace

JudgeResult evaluate(const Goal& g, const AttemptFn& attempt) {
    return evalRec(g, g.templ, 0, attempt);
}

JudgeResult judge(const Goal& g, const std::map<std::string, bool>& outcomes) {
    return evaluate(g, [&](const Asset& concrete) {
        AttemptResult r;
        auto it = outcomes.find(assetSignature(concrete));
        r.success = (it != outcomes.end()) && it->second;
        if (r.success) r.assets.push_back(concrete);
        return r;
    });
}

namespace {

bool templateHasUnknowns(const Asset& templ) {
    for (const auto& [name, v] : templ.attrs)
        if (v.isUnknown()) return true;
    return false;
}

// Tri-state leaf decision: positive evidence wins, purely-negative evidence
// decides failure, silence stays undecided.
EnvDecision decideLeaf(const Asset& templ, const EnvironmentKnowledge& env,
                       double now, double minTrust) {
    EnvDecision d;
    const bool open = templateHasUnknowns(templ);
    std::vector<Asset> hits = env.query(templ, minTrust, now);
    bool sawNegative = false;
    for (const auto& a : hits) {
        // An asset that leaves the template's question unanswered is no evidence.
        if (open && !completes(a, templ)) continue;
        if (a.probability > 0.0) {
            d.assets.push_back(a);
        } else {
            sawNegative = true;
        }
    }
    if (!d.assets.empty())
        d.verdict = EnvVerdict::Success;
    else if (sawNegative)
        d.verdict = EnvVerdict::Failure;
    return d;
}

EnvDecision envRec(const Goal& g, Asset templ, std::size_t qi,
                   const EnvironmentKnowledge& env, double now, double minTrust) {
    if (qi == g.quantifiers.size()) return decideLeaf(templ, env, now, minTrust);
    const Quantifier& q = g.quantifiers[qi];
    const std::size_t n = q.domain.size();
    std::size_t successes = 0, failures = 0;
    EnvDecision out;
    for (std::size_t i = 0; i < n; ++i) {
        templ.attrs[q.attribute] = q.domain.at(i);
        EnvDecision child = envRec(g, templ, qi + 1, env, now, minTrust);
        if (child.verdict == EnvVerdict::Success) {
            ++successes;
            out.assets.insert(out.assets.end(), child.assets.begin(), child.assets.end());
            if (q.type == QuantifierType::Any) {
                out.verdict = EnvVerdict::Success;
                return out;
            }
        } else if (child.verdict == EnvVerdict::Failure) {
            ++failures;
            if (q.type == QuantifierType::All) {
                out.verdict = EnvVerdict::Failure;
                out.assets.clear();
                return out;
            }
        }
    }
    const bool allDecided = successes + failures == n;
    switch (q.type) {
        case QuantifierType::Any:
            out.verdict = (failures == n && n > 0) ? EnvVerdict::Failure
                                                   : EnvVerdict::Undecided;
            break;
        case QuantifierType::All:
            out.verdict = (successes == n && n > 0) ? EnvVerdict::Success
                                                    : EnvVerdict::Undecided;
            break;
        case QuantifierType::AllPossible:
            if (allDecided)
                out.verdict = successes > 0 ? EnvVerdict::Success : EnvVerdict::Failure;
            else
                out.verdict = EnvVerdict::Undecided;
            break;
    }
    if (out.verdict != EnvVerdict::Success) out.assets.clear();
    return out;
}

}  // namespace

EnvDecision satisfiedByEnvironment(const Goal& g, const EnvironmentKnowledge& env,
                                   double now, double minTrust) {
    return envRec(g, g.templ, 0, env, now, minTrust);
}

}  // namespace attackplan
