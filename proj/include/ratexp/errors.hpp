#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ratexp {

/// Base class of everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Concrete-syntax error; carries the byte offset of the offending input.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, const std::string& what)
        : Error("parse error at byte " + std::to_string(offset) + ": " + what),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// A starred subexpression has a non-starrable constant term.
class ValidityError : public Error {
public:
    using Error::Error;
};

/// Dimension mismatches, maps that are not morphisms, malformed atoms.
class StructureError : public Error {
public:
    using Error::Error;
};

/// Operation not defined for this monoid or expression class.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

}  // namespace ratexp
