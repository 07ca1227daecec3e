#pragma once

#include <stdexcept>
#include <string>

namespace kgraph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// s(left) != r(right)
class CompositionError : public Error {
public:
    using Error::Error;
};

// A mixed out-of-order adjacent pair has no commutation square, or a square is ill-formed.
class MalformedGraphError : public Error {
public:
    using Error::Error;
};

// Enumeration budget exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

class ConstructionError : public Error {
public:
    using Error::Error;
};

// Path or operator does not belong to the space it is used with.
class DomainError : public Error {
public:
    using Error::Error;
};

class UnsupportedGraphError : public Error {
public:
    using Error::Error;
};

// Point outside the open product ball where the eigenvector series diverges.
class DivergenceError : public Error {
public:
    using Error::Error;
};

class VarietyError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace kgraph
