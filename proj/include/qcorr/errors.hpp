#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define QCORR_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

QCORR_DEFINE_ERROR(NonHermitian);
QCORR_DEFINE_ERROR(NonSquare);
QCORR_DEFINE_ERROR(DimensionMismatch);
QCORR_DEFINE_ERROR(NotAState);
QCORR_DEFINE_ERROR(NotPure);
QCORR_DEFINE_ERROR(BadSpectrum);
QCORR_DEFINE_ERROR(BadRank);
QCORR_DEFINE_ERROR(OutOfRange);
QCORR_DEFINE_ERROR(OutsideRegion);
QCORR_DEFINE_ERROR(IoError);
QCORR_DEFINE_ERROR(MalformedCsv);

#undef QCORR_DEFINE_ERROR

}  // namespace qcorr
