#pragma once

#include <stdexcept>
#include <string>

namespace fsio {

/// Invalid user input: dimension mismatches, bad parameters, malformed configs.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Evaluation at (or across) the diagonal singularity of a kernel.
class singularity_error : public std::runtime_error {
public:
    explicit singularity_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Tree enumeration exceeded the configured node budget.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& msg, unsigned long long budget)
        : std::runtime_error(msg + " (node budget " + std::to_string(budget) +
                             ", see FRACTAL_SIO_NODE_BUDGET)"),
          budget_(budget) {}
    unsigned long long budget() const noexcept { return budget_; }

private:
    unsigned long long budget_;
};

/// Iteration failed to converge within its certified cap.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace fsio
