// error.hpp - exception types shared by the rabibp headers

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rabibp {

// Bad parameters, bad shapes, unsupported model variants.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An iterative numerical routine gave up.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::size_t iterations)
        : std::runtime_error(what + " (after " + std::to_string(iterations) + " iterations)")
        , iterations_(iterations) {}

    std::size_t iterations() const noexcept { return iterations_; }

private:
    std::size_t iterations_;
};

// A computation hit a point where its result is ill-defined (level crossing,
// vanishing overlap, minimum on the bracket edge).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rabibp
