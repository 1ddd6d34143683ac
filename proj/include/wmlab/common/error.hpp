#pragma once

#include <stdexcept>
#include <string>

namespace wmlab {

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WMLAB_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

WMLAB_DEFINE_ERROR(UnknownSymbol);        // text has a character the vocabulary cannot encode
WMLAB_DEFINE_ERROR(EmptyCorpus);
WMLAB_DEFINE_ERROR(EmptyInput);           // detection on an empty sequence
WMLAB_DEFINE_ERROR(InvalidDistribution);  // a hook broke the probability simplex
WMLAB_DEFINE_ERROR(KeyExhausted);         // Inverse key sequence shorter than the generation
WMLAB_DEFINE_ERROR(ConfigError);
WMLAB_DEFINE_ERROR(AttackFailed);
WMLAB_DEFINE_ERROR(JudgeFailed);
WMLAB_DEFINE_ERROR(Unsupported);
WMLAB_DEFINE_ERROR(ScenarioSkipped);

#undef WMLAB_DEFINE_ERROR

}  // namespace wmlab
