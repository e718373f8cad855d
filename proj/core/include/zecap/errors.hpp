#pragma once

#include <stdexcept>
#include <string>

namespace zecap {

/// Base class for all zecap errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyKrausList : public Error {
public:
    EmptyKrausList() : Error("Kraus list is empty") {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

class NotBipartite : public Error {
public:
    explicit NotBipartite(const std::string& msg) : Error(msg) {}
};

class ZeroMatrix : public Error {
public:
    explicit ZeroMatrix(const std::string& msg) : Error(msg) {}
};

class InvalidSchmidtNumber : public Error {
public:
    explicit InvalidSchmidtNumber(const std::string& msg) : Error(msg) {}
};

class NotInComplement : public Error {
public:
    explicit NotInComplement(const std::string& msg) : Error(msg) {}
};

class ComplementTooLarge : public Error {
public:
    explicit ComplementTooLarge(const std::string& msg) : Error(msg) {}
};

class HypothesisViolation : public Error {
public:
    explicit HypothesisViolation(const std::string& msg) : Error(msg) {}
};

class IndexOutOfRange : public Error {
public:
    explicit IndexOutOfRange(const std::string& msg) : Error(msg) {}
};

class AmbientTooLarge : public Error {
public:
    explicit AmbientTooLarge(const std::string& msg) : Error(msg) {}
};

class NotDensityOperator : public Error {
public:
    explicit NotDensityOperator(const std::string& msg) : Error(msg) {}
};

class NotTracePreserving : public Error {
public:
    explicit NotTracePreserving(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace zecap
