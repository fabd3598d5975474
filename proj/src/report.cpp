#include "skewdiv/report.hpp"

#include <algorithm>
#include <sstream>

namespace skewdiv {

void VerificationReport::add(std::string name, std::string expected, std::string computed,
                             bool pass) {
    checks_.push_back({std::move(name), std::move(expected), std::move(computed), pass});
}

void VerificationReport::add_value(std::string name, long long expected, long long computed) {
    add(std::move(name), std::to_string(expected), std::to_string(computed),
        expected == computed);
}

void VerificationReport::add_flag(std::string name, bool pass) {
    add(std::move(name), "true", pass ? "true" : "false", pass);
}

void VerificationReport::note_skipped(std::string name) {
    skipped_.push_back(std::move(name));
}

void VerificationReport::merge(const std::string& prefix, const VerificationReport& sub) {
    for (const auto& c : sub.checks_)
        checks_.push_back({prefix + "/" + c.name, c.expected, c.computed, c.pass});
    for (const auto& s : sub.skipped_) skipped_.push_back(prefix + "/" + s);
}

bool VerificationReport::all_pass() const {
    return std::all_of(checks_.begin(), checks_.end(),
                       [](const CheckResult& c) { return c.pass; });
}

nlohmann::ordered_json VerificationReport::to_json(bool include_timing) const {
    nlohmann::ordered_json j;
    j["p"] = p_;
    j["verdict"] = all_pass() ? "pass" : "fail";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : checks_) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["expected"] = c.expected;
        cj["computed"] = c.computed;
        cj["pass"] = c.pass;
        arr.push_back(std::move(cj));
    }
    j["checks"] = std::move(arr);
    j["skipped"] = skipped_;
    if (include_timing) j["timing_ms"] = elapsed_ms_;
    return j;
}

std::string VerificationReport::to_table() const {
    std::size_t wn = 5, we = 8, wc = 8;
    for (const auto& c : checks_) {
        wn = std::max(wn, c.name.size());
        we = std::max(we, c.expected.size());
        wc = std::max(wc, c.computed.size());
    }
    std::ostringstream os;
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w - s.size(), ' ');
    };
    os << pad("check", wn) << " | " << pad("expected", we) << " | " << pad("computed", wc)
       << " | status\n";
    os << std::string(wn, '-') << "-+-" << std::string(we, '-') << "-+-"
       << std::string(wc, '-') << "-+-------\n";
    for (const auto& c : checks_)
        os << pad(c.name, wn) << " | " << pad(c.expected, we) << " | " << pad(c.computed, wc)
           << " | " << (c.pass ? "ok" : "FAIL") << "\n";
    for (const auto& s : skipped_) os << "(skipped: " << s << ")\n";
    os << "verdict: " << (all_pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

} // namespace skewdiv
