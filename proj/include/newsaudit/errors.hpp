#pragma once

#include <stdexcept>

namespace newsaudit {

// Violations of documented data contracts: unreadable or malformed input
// files, precondition failures on corpus content, shape mismatches between
// loaded artifacts. The CLI maps these to exit code 2. Parameter misuse
// (bad ratios, k out of range, non-positive bandwidth) throws
// std::invalid_argument instead and maps to exit code 1.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace newsaudit
