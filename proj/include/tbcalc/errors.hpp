#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tbcalc {

// Every error maps to one CLI exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const = 0;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }
    int exit_code() const override { return 2; }

private:
    std::size_t pos_;
};

class UsageError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

class GapViolation : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class ForbiddenWeight : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 3; }
};

// Raised when a truncated view is queried beyond the bound it is exact to.
class TruncationError : public DomainError {
public:
    using DomainError::DomainError;
};

class PotentialDomainError : public DomainError {
public:
    using DomainError::DomainError;
};

class SolverFailure : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 4; }
};

class QuadratureFailure : public SolverFailure {
public:
    using SolverFailure::SolverFailure;
};

class DegenerateFit : public SolverFailure {
public:
    using SolverFailure::SolverFailure;
};

class BoundViolation : public Error {
public:
    BoundViolation(const std::string& face, const std::string& stage, int j, const std::string& detail)
        : Error("bound violation at face " + face + ", stage " + stage + ", j=" + std::to_string(j) +
                ": " + detail),
          face_(face), stage_(stage), j_(j) {}
    const std::string& face() const { return face_; }
    const std::string& stage() const { return stage_; }
    int iteration() const { return j_; }
    int exit_code() const override { return 5; }

private:
    std::string face_;
    std::string stage_;
    int j_;
};

} // namespace tbcalc
