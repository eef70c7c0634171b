#pragma once

// Closed form vs. oracle comparison over a grid of (K, t, phi, xi0).

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ntic/oracle.hpp"
#include "ntic/process.hpp"

namespace ntic {

struct ConformanceRecord {
  std::string quantity;
  std::string context;  // human-readable grid point, e.g. "K=2 t=3 phi=(...) xi0=(...)"
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  // A failure whose discrepancy is within the library's own 1e-10 agreement
  // level, i.e. caused by a tolerance tighter than double rounding.
  bool tolerance_induced = false;
};

struct ConformanceOptions {
  std::size_t max_alphabet = 3;
  std::uint64_t max_t = 8;
  double tolerance = 1e-10;
  // Quadrature checks are pinned to this tolerance or the requested one,
  // whichever is looser; the quadrature itself targets 1e-8.
  double quadrature_tolerance = 1e-7;
  JointLimits limits;
};

struct ConformanceSummary {
  std::vector<ConformanceRecord> records;
  std::vector<std::string> warnings;  // grid points skipped by resource caps
  std::size_t passed() const;
  std::size_t failed() const;
  std::size_t tolerance_induced() const;
  bool ok() const { return failed() == 0; }
};

// Five-point parameter grid for an alphabet of size K (one point for K = 1).
std::vector<CategoricalParam> phi_grid(std::size_t alphabet_size);
// Four-point initial hyperparameter grid: symmetric, sub-unit/asymmetric,
// moderate and strong priors.
std::vector<Hyperparameter> xi0_grid(std::size_t alphabet_size);

ConformanceSummary run_conformance(const ConformanceOptions& options);

std::string describe(std::span<const double> values);

}  // namespace ntic
