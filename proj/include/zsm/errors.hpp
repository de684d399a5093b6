#pragma once

#include <stdexcept>
#include <string>

namespace zsm {

/// Bad input: schema violations, precondition failures, group mismatches.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search exhausted its node budget. Raised instead of returning a
/// partial answer.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what, unsigned long long nodes = 0)
        : std::runtime_error(what), nodes_(nodes) {}
    unsigned long long nodes_expanded() const { return nodes_; }

private:
    unsigned long long nodes_;
};

/// The refinement iteration hit its step cap. Termination is guaranteed by
/// theory, so this signals a bug or an undersized cap; the diagnostic
/// payload summarizes the steps taken.
class iteration_cap_error : public std::runtime_error {
public:
    iteration_cap_error(const std::string& what, std::string diagnostics)
        : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
    const std::string& diagnostics() const { return diagnostics_; }

private:
    std::string diagnostics_;
};

} // namespace zsm
