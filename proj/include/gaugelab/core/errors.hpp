#pragma once

#include <stdexcept>
#include <string>

namespace gaugelab {

/// Base of every error raised by the library. The CLI maps all of these to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation left the domain where a quantity is finite or defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Caller supplied malformed arguments (empty samples, too-small grid, bad config field).
class UsageError : public Error {
public:
    using Error::Error;
};

/// An operation's documented precondition was not met.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class UnsupportedMethodError : public Error {
public:
    using Error::Error;
};

/// A configured resource cap (e.g. step count) would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Reading or writing an artifact file failed.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gaugelab
