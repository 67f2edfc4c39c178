#pragma once

#include <stdexcept>
#include <string>

namespace resolvent {

// Violated mathematical precondition or failed numerical contract.
// The CLI maps these to exit status 2.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text (JSON, cycle strings, complex literals).
// The CLI maps these to exit status 1.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace resolvent
