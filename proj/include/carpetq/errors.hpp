#pragma once

#include <stdexcept>
#include <string>

namespace carpetq {

/// Base of every error the library raises. name() is the stable identifier
/// that the command line prints on the diagnostic stream.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* name() const noexcept = 0;
};

#define CARPETQ_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                        \
   public:                                                           \
    using Error::Error;                                              \
    const char* name() const noexcept override { return #Type; }     \
  };

// Word longer than the configured depth cap.
CARPETQ_DEFINE_ERROR(LengthError)
// Overlapping regions, empty inputs, out-of-range arguments.
CARPETQ_DEFINE_ERROR(PreconditionError)
// Split target is not part of the set.
CARPETQ_DEFINE_ERROR(MembershipError)
// Set violates the sibling or cover invariants.
CARPETQ_DEFINE_ERROR(StructuralError)
// Enumeration or discretization exceeds its configured bound.
CARPETQ_DEFINE_ERROR(CapacityError)
// An atom is equidistant from two codepoints.
CARPETQ_DEFINE_ERROR(TieError)
CARPETQ_DEFINE_ERROR(ParseError)

#undef CARPETQ_DEFINE_ERROR

}  // namespace carpetq
