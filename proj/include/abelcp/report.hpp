#pragma once

#include <string>
#include <utility>
#include <vector>

namespace abelcp {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
    /// Advisory checks are reported but do not decide `passed()`.
    bool advisory = false;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    void add(std::string name, bool ok, std::string detail = {}, bool advisory = false) {
        checks.push_back({std::move(name), ok, std::move(detail), advisory});
    }

    bool passed() const {
        for (const auto& c : checks)
            if (!c.advisory && !c.passed) return false;
        return true;
    }

    const CheckResult* first_failure() const {
        for (const auto& c : checks)
            if (!c.advisory && !c.passed) return &c;
        return nullptr;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    void append(const ValidationReport& other, const std::string& prefix = {}) {
        for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.passed, c.detail, c.advisory});
    }
};

}  // namespace abelcp
