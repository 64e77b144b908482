#ifndef MARKICA_ERRORS_HPP
#define MARKICA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace markica {

// Shape mismatches and violated preconditions are reported as
// std::invalid_argument. The types below cover failures that depend on
// the numeric content of otherwise well-formed inputs.

// Rank deficiency, eigen-solver non-convergence.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Classifier training diverged (non-finite loss).
class TrainingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dataset file missing or malformed.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace markica

#endif
