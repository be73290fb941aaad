#include "attackplan/params.hpp"

namespace attackplan {

std::vector<AttackerProfile> builtinProfiles() {
    std::vector<AttackerProfile> out;

    // Attacks noisily with downloaded tools; does not care about stealth or
    // traceability and keeps going when detected.
    AttackerProfile kiddie;
    kiddie.name = "scriptKiddie";
    kiddie.parameters.nonTraceability = 0.0;
    kiddie.parameters.expectedSuccess = 1.0;
    kiddie.parameters.executionTime = 7 * 86400.0;
    kiddie.parameters.zeroDayness = false;
    kiddie.parameters.actionPortfolio = {
        "NetworkDiscovery", "PortScan", "TCPConnect",
        "ApacheChunkedEncodingExploit", "WuFTPglobbingExploit",
    };
    kiddie.haltOnDetection = false;
    out.push_back(kiddie);

    AttackerProfile hacker;
    hacker.name = "hacker";
    hacker.parameters.nonTraceability = 0.3;
    hacker.parameters.toleratedNoise = {{"network-ids", 100.0}, {"host-log", 100.0}};
    hacker.parameters.expectedSuccess = 0.7;
    hacker.parameters.executionTime = 7 * 86400.0;
    hacker.haltOnDetection = false;
    out.push_back(hacker);

    // Stealth matters for the engagement, traceability does not.
    AttackerProfile pentester;
    pentester.name = "pentester";
    pentester.parameters.nonTraceability = 0.0;
    pentester.parameters.toleratedNoise = {{"network-ids", 20.0}, {"host-log", 20.0}};
    pentester.parameters.expectedSuccess = 0.8;
    pentester.parameters.executionTime = 7 * 86400.0;
    pentester.haltOnDetection = true;
    out.push_back(pentester);

    AttackerProfile agency;
    agency.name = "governmentAgency";
    agency.parameters.nonTraceability = 1.0;
    agency.parameters.toleratedNoise = {{"network-ids", 5.0}, {"host-log", 5.0}};
    agency.parameters.expectedSuccess = 0.95;
    agency.parameters.executionTime = 30 * 86400.0;
    agency.parameters.zeroDayness = true;
    agency.haltOnDetection = true;
    out.push_back(agency);

    return out;
}

const AttackerProfile* findBuiltinProfile(const std::string& name) {
    static const std::vector<AttackerProfile> profiles = builtinProfiles();
    for (const auto& p : profiles)
        if (p.name == name) return &p;
    return nullptr;
}

}  // namespace attackplan
