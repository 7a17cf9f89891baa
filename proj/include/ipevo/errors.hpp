#pragma once
#include <stdexcept>
#include <string>

namespace ipevo {

// bad input or parameters (CLI exit code 2)
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// a configured work bound was hit (CLI exit code 3)
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ipevo
