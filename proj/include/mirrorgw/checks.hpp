#ifndef MIRRORGW_CHECKS_HPP
#define MIRRORGW_CHECKS_HPP

#include <string>
#include <utility>

namespace mirrorgw {

/// Outcome of one verification. The witness names the first offending slot,
/// monomial or index when the check fails.
struct CheckResult {
    std::string name;
    bool passed = true;
    std::string witness;

    static CheckResult pass(std::string name) { return {std::move(name), true, {}}; }
    static CheckResult fail(std::string name, std::string witness)
    {
        return {std::move(name), false, std::move(witness)};
    }
};

} // namespace mirrorgw

#endif
