#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "olgdet/cdces.hpp"

namespace olgdet::sweep {

enum class Scale { Linear, Log };

struct Range {
  std::string name;  ///< one of beta, A, alpha, rho, delta
  double lo = 0.0;
  double hi = 0.0;
  std::size_t n_points = 0;
  Scale scale = Scale::Linear;
};

struct SweepSpec {
  std::vector<Range> ranges;
  cdces::Theta fixed;  ///< values for parameters not swept
  std::size_t cap = 1'000'000;
  double boundary_band = 1e-6;  ///< |beta delta (c-1) - 1| below this counts as agreement
  unsigned threads = 0;
};

/// Parses "name:lo:hi:n" or "name:lo:hi:n:log".
Range parse_range(const std::string& text);

/// Grid value i of a range (i < n_points).
double grid_value(const Range& r, std::size_t i);

/// Throws DomainError for unknown names, out-of-domain bounds, or grids over the cap.
void validate(const SweepSpec& spec);

/// Atlas CSV: header plus one row per grid cell in row-major order (first range outermost).
void run_sweep(const SweepSpec& spec, std::ostream& os);

std::string csv_header();

}  // namespace olgdet::sweep
