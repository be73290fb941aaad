// Command-line front end: validate, plan, run, sweep, countermeasures.
// Exit codes: 0 success/safe, 1 objective failure/unsafe, 2 invalid input.

#include <fstream>
#include <iostream>
#include <sstream>

#include "attackplan/scenario.hpp"

#include "CLI11.hpp"

namespace {

using namespace attackplan;

constexpr int kExitSuccess = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInvalid = 2;

bool readFile(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    out = buffer.str();
    return true;
}

bool writeFile(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << bytes;
    return static_cast<bool>(out);
}

// Loads and validates the scenario; prints diagnostics and returns nullopt
// on any problem.
std::optional<Scenario> loadScenario(const std::string& path) {
    std::string bytes;
    if (!readFile(path, bytes)) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    ScenarioLoad load = parseScenario(bytes);
    if (!load.ok) {
        for (const std::string& diagnostic : load.diagnostics)
            std::cerr << diagnostic << "\n";
        return std::nullopt;
    }
    return std::move(load.scenario);
}

std::optional<AttackerProfile> pickProfile(const Scenario& s, const std::string& name) {
    const std::vector<AttackerProfile> profiles = scenarioProfiles(s);
    if (name.empty()) return profiles.front();
    for (const AttackerProfile& p : profiles)
        if (p.name == name) return p;
    if (const AttackerProfile* p = findBuiltinProfile(name)) return *p;
    std::cerr << "error: unknown profile '" << name << "'\n";
    return std::nullopt;
}

void printReportText(const AttackReport& r) {
    std::cout << "verdict: " << verdictName(r.goalVerdict) << "\n";
    std::cout << "elapsed: " << r.totalElapsed << "s over " << r.timeline.size()
              << " actions\n";
    for (const TimelineEntry& e : r.timeline) {
        std::cout << "  [" << e.simTime << "s] " << e.agentId << " " << e.action << " -> "
                  << (e.skipped ? "skipped" : e.success ? "ok" : "failed");
        double noise = 0.0;
        for (const NoiseRecord& rec : e.noise)
            if (!rec.cleaned) noise += rec.event.magnitude;
        if (noise > 0.0) std::cout << " (noise " << noise << ")";
        std::cout << "\n";
    }
    for (const auto& [sensor, time] : r.detections)
        std::cout << "  detected by " << sensor << " at " << time << "s\n";
    std::cout << "assets gained: " << r.assetsGained.size() << "\n";
}

int cmdValidate(const std::string& path) {
    std::string bytes;
    if (!readFile(path, bytes)) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitInvalid;
    }
    ScenarioLoad load = parseScenario(bytes);
    if (!load.ok) {
        for (const std::string& diagnostic : load.diagnostics)
            std::cerr << diagnostic << "\n";
        std::cout << "invalid: " << load.diagnostics.size() << " problem(s)\n";
        return kExitInvalid;
    }
    std::cout << "valid\n";
    return kExitSuccess;
}

int cmdPlan(const std::string& path, const std::string& profileName,
            const std::string& outPath) {
    const auto scenario = loadScenario(path);
    if (!scenario) return kExitInvalid;
    const auto profile = pickProfile(*scenario, profileName);
    if (!profile) return kExitInvalid;
    const nlohmann::json plan = planToJson(*scenario, *profile);
    const std::string bytes = plan.dump(2) + "\n";
    if (outPath.empty()) {
        std::cout << bytes;
    } else if (!writeFile(outPath, bytes)) {
        std::cerr << "error: cannot write '" << outPath << "'\n";
        return kExitInvalid;
    }
    return plan["plannable"].get<bool>() ? kExitSuccess : kExitFailure;
}

int cmdRun(const std::string& path, const std::string& profileName, uint64_t seed,
           const std::string& reportPath, bool text) {
    const auto scenario = loadScenario(path);
    if (!scenario) return kExitInvalid;
    const auto profile = pickProfile(*scenario, profileName);
    if (!profile) return kExitInvalid;
    const AttackReport report = runScenario(*scenario, *profile, seed);
    const std::string bytes = reportToJson(report).dump(2) + "\n";
    if (!reportPath.empty()) {
        if (!writeFile(reportPath, bytes)) {
            std::cerr << "error: cannot write '" << reportPath << "'\n";
            return kExitInvalid;
        }
        if (text) printReportText(report);
    } else if (text) {
        printReportText(report);
    } else {
        std::cout << bytes;
    }
    return report.goalVerdict == Verdict::Success ? kExitSuccess : kExitFailure;
}

int cmdSweep(const std::string& path, uint64_t seed, bool incremental) {
    const auto scenario = loadScenario(path);
    if (!scenario) return kExitInvalid;
    bool anySuccess = false;
    if (incremental) {
        for (const AttackerProfile& profile : scenarioProfiles(*scenario)) {
            const IncrementalResult r = incrementalPortfolio(*scenario, profile, seed);
            std::cout << profile.name << ": ";
            if (r.found) {
                anySuccess = true;
                std::cout << "undetected success with the first " << r.prefixLength
                          << " action(s):";
                for (std::size_t i = 0; i < r.prefixLength; ++i)
                    std::cout << " " << r.portfolio[i];
                std::cout << "\n";
            } else {
                std::cout << "no prefix achieves undetected success\n";
            }
        }
    } else {
        for (const SweepRow& row : sweepProfiles(*scenario, seed)) {
            std::cout << row.profile << ": " << verdictName(row.report.goalVerdict)
                      << " (actions " << row.report.timeline.size() << ", detections "
                      << row.report.detections.size() << ", elapsed "
                      << row.report.totalElapsed << "s)\n";
            anySuccess |= row.report.goalVerdict == Verdict::Success;
        }
    }
    return anySuccess ? kExitSuccess : kExitFailure;
}

int cmdCountermeasures(const std::string& path, int maxSize, int seedCount) {
    const auto scenario = loadScenario(path);
    if (!scenario) return kExitInvalid;
    const std::vector<uint64_t> seeds = defaultSeedSet(static_cast<std::size_t>(seedCount));
    const MeasureSearchResult r = minimalMeasureSet(*scenario, maxSize, seeds);
    std::cout << (r.exhaustive ? "exhaustive" : "greedy") << " search: ";
    if (r.satisfiable) {
        if (r.measures.empty()) {
            std::cout << "already safe, no measures needed\n";
        } else {
            std::cout << "safe with " << r.measures.size() << " measure(s):";
            for (const std::string& id : r.measures) std::cout << " " << id;
            std::cout << "\n";
        }
        return kExitSuccess;
    }
    std::cout << "no safe set within bounds; best found:";
    for (const std::string& id : r.measures) std::cout << " " << id;
    std::cout << "\n";
    return kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"attack planning and simulation over scenario files"};
    app.require_subcommand(1);

    std::string scenarioPath, profileName, outPath, reportPath;
    uint64_t seed = 1;
    bool text = false, incremental = false;
    int maxSize = 12, seedCount = 16;

    CLI::App* plan = app.add_subcommand("plan", "build and print the attack plan graph");
    plan->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    plan->add_option("--profile", profileName, "attacker profile name");
    plan->add_option("--out", outPath, "write the plan JSON here instead of stdout");

    CLI::App* run = app.add_subcommand("run", "execute the objective once");
    run->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    run->add_option("--seed", seed, "random seed")->required();
    run->add_option("--profile", profileName, "attacker profile name");
    run->add_option("--report", reportPath, "write the report JSON here");
    run->add_flag("--text", text, "print a human-readable timeline");

    CLI::App* sweep = app.add_subcommand("sweep", "run the objective once per profile");
    sweep->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    sweep->add_option("--seed", seed, "random seed")->required();
    sweep->add_flag("--incremental", incremental,
                    "grow the action portfolio one action at a time");

    CLI::App* counter =
        app.add_subcommand("countermeasures", "search for a minimal safe measure set");
    counter->add_option("scenario", scenarioPath, "scenario JSON file")->required();
    counter->add_option("--max-size", maxSize, "largest measure subset to consider");
    counter->add_option("--seeds", seedCount, "seeds per safety evaluation");

    CLI::App* validate = app.add_subcommand("validate", "check a scenario file");
    validate->add_option("scenario", scenarioPath, "scenario JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitSuccess : kExitInvalid;
    }

    try {
        if (plan->parsed()) return cmdPlan(scenarioPath, profileName, outPath);
        if (run->parsed()) return cmdRun(scenarioPath, profileName, seed, reportPath, text);
        if (sweep->parsed()) return cmdSweep(scenarioPath, seed, incremental);
        if (counter->parsed()) return cmdCountermeasures(scenarioPath, maxSize, seedCount);
        if (validate->parsed()) return cmdValidate(scenarioPath);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}
