#pragma once

#include <cstdint>
#include <functional>
#include <string>

namespace spdcsim {

/// sin(u)/u, continued by its series through u = 0 so that sinc(0) = 1.
double sinc(double u);

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the minimum of a function assumed unimodal
/// on [a, b]. Stops when the bracket is shorter than x_tol.
MinimizeResult golden_section_minimize(const std::function<double(double)>& f,
                                       double a, double b, double x_tol,
                                       int max_iter = 200);

/// FNV-1a 64-bit hash, hex encoded. Used to stamp outputs with the
/// configuration they came from.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace spdcsim
