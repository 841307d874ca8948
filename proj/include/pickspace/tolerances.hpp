#pragma once

#include "pickspace/errors.hpp"

namespace pickspace {

// Numerical thresholds used throughout.  All three are relative to the
// scale of the matrices or singular values they are compared against.
struct Tolerances {
  // Positive (semi)definiteness: eigenvalues below psd_tol times the
  // largest eigenvalue count as zero.
  double psd_tol = 1e-9;
  // Rank-one tests: second singular value at most rankone_tol times the
  // first.
  double rankone_tol = 1e-8;
  // Equality of computed quantities.
  double match_tol = 1e-8;

  Tolerances() = default;
  Tolerances(double psd, double rankone, double match)
      : psd_tol(psd), rankone_tol(rankone), match_tol(match) {
    validate();
  }

  void validate() const {
    if (psd_tol < 0 || rankone_tol < 0 || match_tol < 0)
      throw ValidationError("tolerances must be nonnegative");
  }

  static Tolerances uniform(double t) { return Tolerances(t, t, t); }
};

// Points this close to the unit sphere are rejected.
inline constexpr double kBoundaryTol = 1e-12;

}  // namespace pickspace
