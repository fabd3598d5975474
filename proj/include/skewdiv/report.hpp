#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace skewdiv {

struct CheckResult {
    std::string name;
    std::string expected;
    std::string computed;
    bool pass = false;
};

/// Structured expected-vs-computed comparison for one prime. Collects every
/// check; the overall verdict is pass iff all checks pass.
class VerificationReport {
public:
    explicit VerificationReport(long long p) : p_(p) {}

    void add(std::string name, std::string expected, std::string computed, bool pass);
    void add_value(std::string name, long long expected, long long computed);
    void add_flag(std::string name, bool pass);
    void note_skipped(std::string name);
    void merge(const std::string& prefix, const VerificationReport& sub);

    bool all_pass() const;
    const std::vector<CheckResult>& checks() const { return checks_; }
    const std::vector<std::string>& skipped() const { return skipped_; }
    long long p() const { return p_; }

    void set_elapsed_ms(double ms) { elapsed_ms_ = ms; }
    double elapsed_ms() const { return elapsed_ms_; }

    nlohmann::ordered_json to_json(bool include_timing = true) const;
    std::string to_table() const;

private:
    long long p_;
    std::vector<CheckResult> checks_;
    std::vector<std::string> skipped_;
    double elapsed_ms_ = 0.0;
};

} // namespace skewdiv
