#pragma once

#include <stdexcept>

namespace sentiscope {

// Base of every toolkit error. The CLI maps the two branches below onto its
// exit-code contract: InputError -> 2, DegeneracyError -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed files, unknown labels, invalid configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that cannot be trained/split on (all one class,
// empty vocabulary, a split side that would come out empty, ...).
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class MissingColumn : public InputError { public: using InputError::InputError; };
class BadLabel : public InputError { public: using InputError::InputError; };
class EmptyText : public InputError { public: using InputError::InputError; };
class DuplicateId : public InputError { public: using InputError::InputError; };
class EmptyCorpus : public InputError { public: using InputError::InputError; };
class ConfigError : public InputError { public: using InputError::InputError; };
class LengthMismatch : public InputError { public: using InputError::InputError; };
class UnknownLabel : public InputError { public: using InputError::InputError; };
class EmptyMatrix : public InputError { public: using InputError::InputError; };
class NoEmotionLabels : public InputError { public: using InputError::InputError; };
class BadN : public InputError { public: using InputError::InputError; };
class DimensionMismatch : public InputError { public: using InputError::InputError; };
class VersionMismatch : public InputError { public: using InputError::InputError; };
class CorruptPayload : public InputError { public: using InputError::InputError; };
class IoFailure : public InputError { public: using InputError::InputError; };

class DegenerateSplit : public DegeneracyError { public: using DegeneracyError::DegeneracyError; };
class EmptyVocabulary : public DegeneracyError { public: using DegeneracyError::DegeneracyError; };
class EmptyTrainingSet : public DegeneracyError { public: using DegeneracyError::DegeneracyError; };
class SingleClassTraining : public DegeneracyError { public: using DegeneracyError::DegeneracyError; };
class DegenerateLeaf : public DegeneracyError { public: using DegeneracyError::DegeneracyError; };

}  // namespace sentiscope
