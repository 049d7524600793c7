#ifndef STACKFILT_ERRORS_HPP
#define STACKFILT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stackfilt {

/// Malformed or unsupported file content; carries the byte offset where
/// parsing failed.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& what, size_t byte_offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}
    size_t byte_offset() const { return offset_; }

private:
    size_t offset_;
};

/// A caller broke a documented precondition that is checkable at runtime,
/// e.g. applying a non-monotone truth table as a stack filter.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace stackfilt

#endif
