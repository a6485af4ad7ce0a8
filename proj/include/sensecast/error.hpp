#pragma once

#include <stdexcept>
#include <string>

namespace sensecast {

// Base for every error the toolkit raises on bad input or broken contracts.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public Error {
public:
    using Error::Error;
};

// Stream parsed but yielded zero usable records.
class EmptyCorpusError : public Error {
public:
    using Error::Error;
};

// A record or index falls outside the configured range.
class RangeError : public Error {
public:
    using Error::Error;
};

// A value violates the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class MissingPopulationError : public Error {
public:
    using Error::Error;
};

// Face annotation client could not complete a request.
class ClientError : public Error {
public:
    using Error::Error;
};

class EmptyVocabularyError : public Error {
public:
    using Error::Error;
};

// Training data contains a single class.
class DegenerateLabelsError : public Error {
public:
    using Error::Error;
};

// Feature vector dimensionality does not match the model.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Contradictory or malformed cohort specification.
class SpecError : public Error {
public:
    using Error::Error;
};

class MissingProfileError : public Error {
public:
    using Error::Error;
};

class StateMissingError : public Error {
public:
    using Error::Error;
};

class MissingPenetrationError : public Error {
public:
    using Error::Error;
};

// A target week lacks the lagged regressors the model requires.
class BurnInError : public Error {
public:
    using Error::Error;
};

// Design matrix rank-deficient within tolerance; no silent regularization.
class SingularDesignError : public Error {
public:
    using Error::Error;
};

class PlanError : public Error {
public:
    using Error::Error;
};

class PlanMismatchError : public Error {
public:
    using Error::Error;
};

// Too many per-case failures for the backtest to be meaningful.
class BacktestInvalidError : public Error {
public:
    using Error::Error;
};

// Statistical input with no usable variation (or empty).
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Pipeline configuration fails schema validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace sensecast
