#pragma once

#include <stdexcept>
#include <string>

namespace opmod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed arguments: bad block lists, non-projections, wrong shapes.
class InvalidInput : public Error {
public:
    using Error::Error;
};

class ZeroModule : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

// Operands that live over different algebras or ambient modules.
class Incompatible : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

// Raised when a certificate contradicts itself (e.g. kernel dimensions differ).
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

class GenerationError : public Error {
public:
    using Error::Error;
};

// Instance and report documents that cannot be read back.
class FormatError : public Error {
public:
    using Error::Error;
};

class ParseError : public FormatError {
public:
    ParseError(const std::string& what, std::size_t byte_offset)
        : FormatError(what + " (at byte " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class ValidationError : public FormatError {
public:
    ValidationError(std::string field, const std::string& what)
        : FormatError("field '" + field + "': " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace opmod
