#pragma once

#include <stdexcept>
#include <string>

namespace monopart {

// Caller broke a documented contract (bad sizes, out-of-range vertices, ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// Input exceeds a hard cap of an exact procedure.
class size_error : public precondition_error {
public:
    explicit size_error(const std::string& what) : precondition_error(what) {}
};

// Requested combination is outside what the implementation supports.
class unsupported_error : public std::runtime_error {
public:
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, long line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// A budgeted search ran out of budget. Not a disproof of existence.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace monopart
