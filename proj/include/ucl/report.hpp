#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ucl {

/// One verification check. `pass` holds iff residual <= tolerance. For PSD
/// checks the residual is the negated minimum eigenvalue, so tight
/// (boundary) cases show up as residuals near zero and strictly interior
/// ones as negative values.
struct CheckResult {
    std::string check;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;

    void add(std::string name, double residual, double tolerance);
    /// PSD check from a minimum eigenvalue: passes iff min_eig >= -tolerance.
    void add_psd(std::string name, double min_eig, double tolerance);

    nlohmann::json to_json() const;
};

}  // namespace ucl
