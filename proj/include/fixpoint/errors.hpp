#pragma once

#include <stdexcept>
#include <string>

namespace fixpoint {

// Malformed or out-of-contract user input (bad file, bad literal index, ...).
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A caller violated a documented precondition of an operation.
class contract_error : public std::logic_error {
public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

// A configured resource budget (brute-force cap, width, degree, search size)
// would be exceeded; the operation refuses instead of running away.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fixpoint
