#pragma once

#include <stdexcept>
#include <string>

namespace netgeom {

// Bad arguments, malformed preconditions (CLI exit code 2).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// File/stream parse failure; carries a 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? what + " at line " + std::to_string(line) : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Randomized construction exhausted its retry budget (CLI exit code 3).
class GenerationError : public std::runtime_error {
public:
    explicit GenerationError(const std::string& what) : std::runtime_error(what) {}
};

// Numerical failure, e.g. every Monte Carlo point rejected (CLI exit code 3).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Matrix fell below the scale-aware non-degeneracy threshold.
class DegeneracyError : public NumericalError {
public:
    DegeneracyError(const std::string& what, double log_abs_det)
        : NumericalError(what), log_abs_det_(log_abs_det) {}
    // log|det| of the offending matrix (-inf if exactly singular)
    double log_abs_det() const { return log_abs_det_; }

private:
    double log_abs_det_;
};

} // namespace netgeom
