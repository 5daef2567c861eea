#pragma once

#include <stdexcept>
#include <string>

namespace compdof {

// Error categories; exit_code() is the CLI's contract
// (0 ok, 1 validation/domain, 2 parse/io, 3 budget, 4 verification).
enum class ErrorKind {
    Domain,
    Validation,
    Parse,
    Budget,
    Verification,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    int exit_code() const {
        switch (kind_) {
        case ErrorKind::Domain:
        case ErrorKind::Validation: return 1;
        case ErrorKind::Parse: return 2;
        case ErrorKind::Budget: return 3;
        case ErrorKind::Verification: return 4;
        }
        return 1;
    }

private:
    ErrorKind kind_;
};

}  // namespace compdof
