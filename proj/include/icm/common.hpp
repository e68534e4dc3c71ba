#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace icm {

// Exact arithmetic carriers. Inner products and moment exponents must come
// out as exact rationals, so everything upstream of the numeric layer uses
// arbitrary-precision integers.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return static_cast<double>(r); }

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegreeMismatch : Error { using Error::Error; };
struct OrderBound : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotAbelian : Error { using Error::Error; };
struct NotInteger : Error { using Error::Error; };
struct NotSection3Frame : Error { using Error::Error; };
struct NotAutomorphism : Error { using Error::Error; };
struct NonIntegral : Error { using Error::Error; };
struct NonIntegralWeightOffset : Error { using Error::Error; };
struct CrossCheckMismatch : Error { using Error::Error; };
struct InsufficientSpan : Error { using Error::Error; };
struct EpsilonTooSmall : Error { using Error::Error; };
struct ZeroSeries : Error { using Error::Error; };
struct DomainExceeded : Error { using Error::Error; };
struct BadFixture : Error { using Error::Error; };

}  // namespace icm
