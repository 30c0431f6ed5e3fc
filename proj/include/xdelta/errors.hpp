#ifndef XDELTA_ERRORS_HPP
#define XDELTA_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace xdelta {

/*
 * Everything thrown by the library derives from Error and carries a stable
 * machine-checkable code ("NonUnitGenerator", "GenusMismatch", ...) next to
 * the human-readable message.  The three subclasses match the CLI exit-code
 * contract: usage 1, data 2, integrity 3.
 */
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class UsageError : public Error {
public:
    UsageError(std::string code, const std::string& what)
        : Error(std::move(code), what) {}
};

class DataError : public Error {
public:
    DataError(std::string code, const std::string& what)
        : Error(std::move(code), what) {}
};

class IntegrityError : public Error {
public:
    IntegrityError(std::string code, const std::string& what)
        : Error(std::move(code), what) {}
};

} // namespace xdelta

#endif // XDELTA_ERRORS_HPP
