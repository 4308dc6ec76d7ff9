#pragma once

#include <stdexcept>
#include <string>

namespace ymlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define YMLAB_ERROR(Name)                          \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what)         \
        : Error(std::string(#Name ": ") + what) {} \
  }

YMLAB_ERROR(InvalidGroup);
YMLAB_ERROR(NonUnitaryInput);
YMLAB_ERROR(ResolutionTooLow);
YMLAB_ERROR(InvalidCoupling);
YMLAB_ERROR(InvalidLattice);
YMLAB_ERROR(ShapeMismatch);
YMLAB_ERROR(UnconvergedChain);
YMLAB_ERROR(StepTooLarge);
YMLAB_ERROR(InfraredDivergent);
YMLAB_ERROR(RangeTooNoisy);
YMLAB_ERROR(SuiteFailed);

#undef YMLAB_ERROR

// Names the offending field so callers can surface it verbatim.
class ConfigInvalid : public Error {
 public:
  ConfigInvalid(std::string field, const std::string& reason)
      : Error("ConfigInvalid: " + field + ": " + reason), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace ymlab
