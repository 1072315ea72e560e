#pragma once

#include <stdexcept>
#include <string>

namespace dpfq {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed; indicates a bug or an unsupported case.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace dpfq

namespace dpfq {

/// A class lookup matched no record or more than one.
class LookupError : public Error {
public:
    LookupError(const std::string& what, bool ambiguous) : Error(what), ambiguous_(ambiguous) {}
    bool ambiguous() const noexcept { return ambiguous_; }

private:
    bool ambiguous_;
};

}  // namespace dpfq
