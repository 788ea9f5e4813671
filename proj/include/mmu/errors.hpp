#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mmu {

/// Base class for every error the library reports on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " at offset " + std::to_string(position)), position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Input formula violates a structural requirement (closedness,
/// alternation-freeness, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A configurable resource cap (arena nodes, guess count, model size) was hit.
class ResourceLimitError : public Error {
public:
    using Error::Error;
};

/// Malformed model, certificate or other JSON document.
class FormatError : public Error {
public:
    using Error::Error;
};

}  // namespace mmu
