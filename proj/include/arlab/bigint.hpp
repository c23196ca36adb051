#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace arlab {

// Exact integer used on every formula path. Word lengths grow exponentially
// in the directive index, so fixed-width arithmetic is not an option.
using Int = boost::multiprecision::cpp_int;

}  // namespace arlab
