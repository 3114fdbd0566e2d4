#pragma once

#include <stdexcept>
#include <string>

namespace sentibench {

// Error taxonomy. The CLI maps these to exit codes:
//   ConfigError -> 1, DataError -> 2, TrainError -> 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad usage or an inconsistent experiment configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed, missing or mutually inconsistent input data.
class DataError : public Error {
public:
    using Error::Error;
};

// Training failed or an optimizer did not converge.
class TrainError : public Error {
public:
    using Error::Error;
};

class CorpusError : public DataError {
public:
    using DataError::DataError;
};

class ParseError : public DataError {
public:
    using DataError::DataError;
};

class AlignmentError : public DataError {
public:
    using DataError::DataError;
};

class VocabularyError : public DataError {
public:
    using DataError::DataError;
};

class DimensionError : public DataError {
public:
    using DataError::DataError;
};

class FoldError : public DataError {
public:
    using DataError::DataError;
};

class InputError : public DataError {
public:
    using DataError::DataError;
};

class TrainingError : public TrainError {
public:
    using TrainError::TrainError;
};

class ConvergenceError : public TrainError {
public:
    using TrainError::TrainError;
};

} // namespace sentibench
