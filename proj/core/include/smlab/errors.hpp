#pragma once

#include <stdexcept>
#include <string>

namespace smlab {

// Argument outside an operation's documented domain.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A root-solve or inversion target that no price attains.
class NoSolution : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A bound whose precondition does not hold for the given inputs.
class NotApplicable : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Curve with Q(0) = 0; the pricing dynamic is undefined.
class NoDemand : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace smlab
