#pragma once

#include <stdexcept>
#include <string>

namespace fillnorm {

// Base class for all toolkit errors. The category maps onto CLI exit codes.
class Error : public std::runtime_error {
public:
    enum class Category { Validation, ResourceLimit, Internal };

    Error(Category cat, std::string msg)
        : std::runtime_error(std::move(msg)), category_(cat) {}

    Category category() const { return category_; }

private:
    Category category_;
};

// A word references a symbol outside the generator alphabet, or a document
// field fails validation.
class MalformedWordError : public Error {
public:
    explicit MalformedWordError(std::string msg)
        : Error(Category::Validation, std::move(msg)) {}
};

// Reduction exceeded its step budget; signals a bad rule set.
class NonTerminationError : public Error {
public:
    explicit NonTerminationError(std::string msg)
        : Error(Category::ResourceLimit, std::move(msg)) {}
};

// A configured cap (ball size, enumeration count, solver nodes) was hit.
class ResourceLimitError : public Error {
public:
    explicit ResourceLimitError(std::string msg)
        : Error(Category::ResourceLimit, std::move(msg)) {}
};

// An operation needed a cell or translate that falls outside the window.
class WindowTooSmallError : public Error {
public:
    explicit WindowTooSmallError(std::string msg)
        : Error(Category::ResourceLimit, std::move(msg)) {}
};

// A complex specification is inconsistent, e.g. the boundary formula does not
// square to zero after instantiation.
class SpecConsistencyError : public Error {
public:
    explicit SpecConsistencyError(std::string msg)
        : Error(Category::Internal, std::move(msg)) {}
};

// Bad input documents, dangling references, invalid parameters.
class ValidationError : public Error {
public:
    explicit ValidationError(std::string msg)
        : Error(Category::Validation, std::move(msg)) {}
};

}  // namespace fillnorm
