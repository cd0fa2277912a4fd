#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qfho {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid arguments or configuration (CLI exit code 1).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class ConfigError : public InvalidArgument {
public:
    ConfigError(std::string field, const std::string& message)
        : InvalidArgument(field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Expression syntax errors. position is a 0-based byte offset into the input.
class SyntaxError : public InvalidArgument {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : InvalidArgument("syntax error at position " + std::to_string(position) + ": " + message),
          position_(position),
          message_(message) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t position_;
    std::string message_;
};

class UnknownIdentifier : public InvalidArgument {
public:
    UnknownIdentifier(std::string name, std::size_t position)
        : InvalidArgument("unknown identifier '" + name + "' at position " + std::to_string(position)),
          name_(std::move(name)),
          position_(position) {}

    const std::string& name() const noexcept { return name_; }
    std::size_t position() const noexcept { return position_; }

private:
    std::string name_;
    std::size_t position_;
};

// Errors that depend on the physics of the requested evaluation (CLI exit code 2).
class DomainError : public Error {
public:
    using Error::Error;
};

class TimedDomainError : public DomainError {
public:
    TimedDomainError(double t, const std::string& message)
        : DomainError(message + " (t = " + std::to_string(t) + ")"), time_(t) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class EvalDomainError : public TimedDomainError {
public:
    using TimedDomainError::TimedDomainError;
};

class OutOfTableRange : public TimedDomainError {
public:
    explicit OutOfTableRange(double t)
        : TimedDomainError(t, "force table does not cover the requested time") {}
};

class TimeOutOfRange : public TimedDomainError {
public:
    explicit TimeOutOfRange(double t)
        : TimedDomainError(t, "time lies outside the trajectory horizon") {}
};

class CausticSingular : public DomainError {
public:
    explicit CausticSingular(double angle);

    // The rotation angle that hit the caustic, and its signed offset from the nearest multiple of pi.
    double angle() const noexcept { return angle_; }
    double angle_mod_pi() const noexcept { return angle_mod_pi_; }

private:
    double angle_;
    double angle_mod_pi_;
};

class GridTooCoarse : public DomainError {
public:
    using DomainError::DomainError;
};

class PacketTouchesBoundary : public DomainError {
public:
    using DomainError::DomainError;
};

class NotNormalized : public DomainError {
public:
    explicit NotNormalized(double norm)
        : DomainError("wave function is not normalized (norm^2 = " + std::to_string(norm) + ")"),
          norm_(norm) {}

    double norm() const noexcept { return norm_; }

private:
    double norm_;
};

}  // namespace qfho
