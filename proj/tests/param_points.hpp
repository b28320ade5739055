#pragma once

// The exact identity tests sweep the same rational (q, alpha) points the
// identity checker uses.

#include "shs6v/identity_suite.hpp"

namespace shs6v_test {

using shs6v::Rational;
using shs6v::rational_param_points;
using shs6v::rational_point_label;

}  // namespace shs6v_test
