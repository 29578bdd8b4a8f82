#pragma once

#include <stdexcept>
#include <string>

namespace wittjet {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input-side failures (CLI exit 2).
struct ParseError : Error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", col " + std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};
struct UnknownVariable : Error {
    using Error::Error;
};

// Precondition violations (CLI exit 3).
struct PreconditionError : Error {
    using Error::Error;
};
struct BadPrime : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NonMonic : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct LevelUnderflow : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct LevelMismatch : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotDivisible : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct MixedContext : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct MixedCurve : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct UnsupportedRing : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotAUnit : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct NotInSubgroup : PreconditionError {
    using PreconditionError::PreconditionError;
};
struct InvalidLift : PreconditionError {
    using PreconditionError::PreconditionError;
};

// Bounded search gave up; `stage` names where (CLI exit 4).
struct SolverFailure : Error {
    std::string stage;
    SolverFailure(const std::string& stage_, const std::string& msg)
        : Error("solver failure at stage '" + stage_ + "': " + msg), stage(stage_) {}
};
struct Obstructed : Error {
    std::string stage;
    Obstructed(const std::string& stage_, const std::string& msg)
        : Error("obstructed at stage '" + stage_ + "': " + msg), stage(stage_) {}
};

// Broken internal contract; always a bug (CLI exit 1).
struct InvariantViolation : Error {
    using Error::Error;
};
struct RelationViolated : InvariantViolation {
    using InvariantViolation::InvariantViolation;
};

}  // namespace wittjet
