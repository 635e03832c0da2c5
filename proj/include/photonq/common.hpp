#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>

namespace photonq {

using cplx = std::complex<double>;

// Named parameter values, radians.
using ParamMap = std::map<std::string, double>;

// Every failure mode surfaces as a typed exception with a readable message.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : Error { using Error::Error; };       // bad setup description
struct EncodingError : Error { using Error::Error; };     // occupation/cutoff violation
struct LookupError : Error { using Error::Error; };       // unknown path/mode/parameter
struct ValidationError : Error { using Error::Error; };   // non-Hermitian generator, unnormalized target, ...
struct BindingError : Error { using Error::Error; };      // unbound circuit parameter
struct ResourceError : Error { using Error::Error; };     // register size over the configured limit
struct UnsupportedError : Error { using Error::Error; };  // element or feature outside scope
struct DegenerateFidelityError : Error { using Error::Error; }; // zero post-selection probability
struct DifferentiationError : Error { using Error::Error; };    // gate not shift-eligible
struct SchemaError : Error { using Error::Error; };       // setup file violation

} // namespace photonq
