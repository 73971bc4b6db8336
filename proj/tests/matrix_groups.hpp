#pragma once

// Matrix groups used across the test suites.

#include "neron/hopf.hpp"

namespace testgroups {

inline neron::HopfPresentation gl2() {
  return neron::make_hopf_text(
      "GL2", {"a11", "a12", "a21", "a22", "d"}, {"d*(a11*a22 - a12*a21) - 1"},
      {{"a11", "a11'*a11'' + a12'*a21''"},
       {"a12", "a11'*a12'' + a12'*a22''"},
       {"a21", "a21'*a11'' + a22'*a21''"},
       {"a22", "a21'*a12'' + a22'*a22''"},
       {"d", "d'*d''"}},
      {{"a11", "1"}, {"a12", "0"}, {"a21", "0"}, {"a22", "1"}, {"d", "1"}},
      {{"a11", "a22*d"}, {"a12", "-a12*d"}, {"a21", "-a21*d"}, {"a22", "a11*d"}, {"d", "a11*a22 - a12*a21"}});
}

/// Invertible upper triangular 2x2 matrices.
inline neron::HopfPresentation borel() {
  return neron::make_hopf_text(
      "B", {"a11", "a12", "a22", "d"}, {"a11*a22*d - 1"},
      {{"a11", "a11'*a11''"}, {"a12", "a11'*a12'' + a12'*a22''"}, {"a22", "a22'*a22''"}, {"d", "d'*d''"}},
      {{"a11", "1"}, {"a12", "0"}, {"a22", "1"}, {"d", "1"}},
      {{"a11", "a22*d"}, {"a12", "-a12*d"}, {"a22", "a11*d"}, {"d", "a11*a22"}});
}

}  // namespace testgroups
