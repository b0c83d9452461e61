#pragma once

#include <stdexcept>
#include <string>

namespace fzw {

// Base of every error thrown by the library. The CLI maps ParameterError to
// exit status 2 and everything else to status 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

#define FZW_DEFINE_ERROR(Name, tag)                                   \
    class Name : public Error {                                       \
    public:                                                           \
        using Error::Error;                                           \
        const char* kind() const noexcept override { return tag; }    \
    };

FZW_DEFINE_ERROR(ParameterError, "parameter_error")
FZW_DEFINE_ERROR(FormatError, "format_error")
FZW_DEFINE_ERROR(SingularModeError, "singular_mode_error")
FZW_DEFINE_ERROR(ValidityError, "validity_error")
FZW_DEFINE_ERROR(ResolutionError, "resolution_error")
FZW_DEFINE_ERROR(InsufficientDataError, "insufficient_data_error")
FZW_DEFINE_ERROR(PlacementError, "placement_error")
FZW_DEFINE_ERROR(StabilityError, "stability_error")
FZW_DEFINE_ERROR(NoFrontError, "no_front_error")

#undef FZW_DEFINE_ERROR

inline void require(bool cond, const std::string& what) {
    if (!cond) throw ParameterError(what);
}

} // namespace fzw
