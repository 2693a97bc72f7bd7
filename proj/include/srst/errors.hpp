#ifndef SRST_ERRORS_HPP
#define SRST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace srst {

enum class Errc {
    NotPrime,
    BadParams,
    LengthMismatch,
    TooLarge,
    ZeroModulus,
    NotPrimeNorm,
    SingularInfoSet,
    DimensionMismatch,
    ZeroEnergy,
    InvalidPrefix,
    StackOverflow,
    SingularBlock,
    Usage,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

}  // namespace srst

#endif
