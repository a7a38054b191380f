#include "ucl/report.hpp"

#include <algorithm>

namespace ucl {

bool VerificationReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.check == name) return &c;
    }
    return nullptr;
}

void VerificationReport::add(std::string name, double residual, double tolerance) {
    checks.push_back({std::move(name), residual, tolerance, residual <= tolerance});
}

void VerificationReport::add_psd(std::string name, double min_eig, double tolerance) {
    add(std::move(name), -min_eig, tolerance);
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : checks) {
        arr.push_back({{"check", c.check},
                       {"residual", c.residual},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
    }
    return arr;
}

}  // namespace ucl
