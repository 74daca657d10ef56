#pragma once

#include <stdexcept>
#include <string>

namespace photodet {

/// Base class for every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: violated precondition, malformed file, out-of-range parameter.
class ValidationError : public Error {
public:
    using Error::Error;
};

enum class RefusalReason {
    IllConditioned,
    Negativity,
    RankDeficient,
    TruncationInsufficient,
};

const char* to_string(RefusalReason reason);

/// The computation is well posed but its result cannot be trusted
/// (conditioning bound tripped, truncation too small, ...).
class RefusalError : public Error {
public:
    RefusalError(RefusalReason reason, const std::string& what)
        : Error(what), reason_(reason) {}

    RefusalReason reason() const noexcept { return reason_; }

private:
    RefusalReason reason_;
};

}  // namespace photodet
