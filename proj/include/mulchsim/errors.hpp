#ifndef MULCHSIM_ERRORS_HPP
#define MULCHSIM_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace mulchsim {

// A radiation-exchange denominator is (numerically) zero, e.g. rho_s * a_s ~ 1.
class SingularGeometryError : public std::domain_error {
public:
    explicit SingularGeometryError(const std::string& msg) : std::domain_error(msg) {}
};

// No root of the balance equation exists on the physical bracket.
class NoSolutionError : public std::runtime_error {
public:
    explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

// An iteration ran out of its budget; carries the last iterate and residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double last_iterate, double residual)
        : std::runtime_error(msg), last_iterate(last_iterate), residual(residual) {}
    double last_iterate;
    double residual;
};

// Malformed input text; line is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, long line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
    long line;
};

// Well-formed input that violates a domain invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A time step failed (non-convergence or sanity-envelope violation).
// Carries the step index, simulation time and the surface-temperature
// iterate history of the failing step.
class StepError : public std::runtime_error {
public:
    StepError(const std::string& msg, long step_index, double time,
              std::vector<double> iterates = {})
        : std::runtime_error(msg), step_index(step_index), time(time),
          iterates(std::move(iterates)) {}
    long step_index;
    double time;
    std::vector<double> iterates;
};

} // namespace mulchsim

#endif
