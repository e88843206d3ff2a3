#pragma once

// Floating-point views of exact values.  Only the atom extraction code uses
// these; no decision depends on them.

#include <boost/multiprecision/float128.hpp>

#include "momentcurve/exactmath.hpp"

namespace mc {

using Real = boost::multiprecision::float128;

Real to_real(const Rat& x);
Real to_real(const QuadScalar& x);

inline long double to_ld(const Real& x) { return static_cast<long double>(x); }

}  // namespace mc
