#pragma once

#include <chrono>
#include <iosfwd>
#include <json.hpp>

#include "polyrep/sieve.hpp"

namespace polyrep {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "polyrep";
inline constexpr const char* kToolVersion = "0.4.0";

// exit codes; 4 is a property suite or replay with failures
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitObstruction = 2, kExitBudget = 3, kExitFailed = 4 };

// flat key=value settings; flags override the config file
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string str(const std::string& k, const std::string& def) const;
    long integer(const std::string& k, long def) const;
    Integer big(const std::string& k, const Integer& def) const;
    Rational rational(const std::string& k, const Rational& def) const;
    Real real(const std::string& k, const Real& def) const;
    bool flag(const std::string& k, bool def) const;
    Quad quad(const std::string& k, const Quad& def) const;
    std::vector<unsigned long> primes(const std::string& k) const;
    std::pair<long, long> range(const std::string& k) const;   // "lo:hi"
    std::map<unsigned long, int> caps(const std::string& k) const;   // "2:3,5:1"
    std::uint64_t seed() const { return static_cast<std::uint64_t>(integer("seed", 1)); }
    int threads() const { return static_cast<int>(integer("threads", 0)); }
    int digits() const { return static_cast<int>(integer("digits", 50)); }

    // unknown keys and malformed values are rejected before any work starts
    void validate() const;
};

std::map<std::string, std::string> read_config_file(const std::string& path);
const std::vector<std::string>& command_names();
const std::vector<std::string>& command_keys(const std::string& command);

struct ReportEnvelope {
    std::string command;
    Json config;
    int digits = 50;
    std::vector<Json> records;
    Json summary = Json::object();
    double elapsed_ms = 0;   // the only nondeterministic field
    int exit_code = kExitOk;
};

ReportEnvelope run_command(const RunConfig& cfg);
ReportEnvelope run_suite(const std::string& name, const RunConfig& cfg);

void write_jsonl(std::ostream& os, const ReportEnvelope& env);
void write_csv(std::ostream& os, const ReportEnvelope& env);
void write_report(const ReportEnvelope& env, const std::string& format, const std::string& path);

// parses JSON-lines output back into an envelope
ReportEnvelope read_jsonl(std::istream& is);
// re-runs the recorded command; records and summary must match exactly
ReportEnvelope replay(const ReportEnvelope& recorded);

// json helpers shared with tests
Json jint(const Integer& z);
Json jquad(const Quad& q);
std::string rstr(const Rational& q);

}  // namespace polyrep
