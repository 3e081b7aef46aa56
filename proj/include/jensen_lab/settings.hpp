#pragma once

#include "jensen_lab/error.hpp"
#include "jensen_lab/quadrature.hpp"

namespace jlab {

/// Numerical knobs shared by the checkers and verifiers. Defaults are the documented ones.
struct Settings {
  QuadratureConfig quad{};
  int grid = 513;             // shape-check grid points
  int scan_resolution = 513;  // t-grid points for density SP scans
  double shape_tol = 1e-9;
  double cert_tol = 1e-9;
  double hyp_tol = 1e-9;
  double gap_tol = 1e-9;

  void validate() const {
    quad.validate();
    if (grid < 3) throw InputError("grid must be >= 3");
    if (scan_resolution < 2) throw InputError("scan_resolution must be >= 2");
    if (!(shape_tol >= 0) || !(cert_tol >= 0) || !(hyp_tol >= 0) || !(gap_tol >= 0))
      throw InputError("tolerances must be nonnegative");
  }
};

}  // namespace jlab
