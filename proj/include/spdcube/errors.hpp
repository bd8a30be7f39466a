#pragma once

#include <stdexcept>
#include <string>

namespace spdcube {

// Base class for every error thrown by the library. ConfigError maps to CLI
// exit code 2, everything else (numeric domain) to exit code 3.
class SpdcError : public std::runtime_error {
public:
    explicit SpdcError(const std::string& msg) : std::runtime_error(msg) {}
};

class SymmetryViolation : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class OutOfValidityRange : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class InvalidNA : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class InsufficientSidebands : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class IllConditionedFit : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class InvalidTransmission : public SpdcError {
public:
    using SpdcError::SpdcError;
};

class ConfigError : public SpdcError {
public:
    using SpdcError::SpdcError;
};

}
