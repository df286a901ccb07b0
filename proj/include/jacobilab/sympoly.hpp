#ifndef JACOBILAB_SYMPOLY_HPP
#define JACOBILAB_SYMPOLY_HPP

#include <span>
#include <vector>

namespace jlab {

/// Values (e_0, ..., e_N) of the elementary symmetric polynomials at x,
/// built by the one-pass product recurrence (one variable at a time).
std::vector<double> esym_all(std::span<const double> x);

/// Elementary symmetric values of x with coordinate j (0-based) removed.
/// Throws std::out_of_range for bad j.
std::vector<double> esym_leave_one_out(std::span<const double> x, std::size_t j);

/// G[n][i] = d e_n / d x_i = e_{n-1}^{N-1}(x without coordinate i).
/// Pure second derivatives d^2 e_n / d x_i^2 vanish identically.
std::vector<std::vector<double>> esym_gradient(std::span<const double> x);

/// sum_{n=0}^N (-1)^n e_n y^{N-n}, i.e. prod(y - x_i) when e = esym_all(x).
double charpoly_from_esym(std::span<const double> e, double y);

} // namespace jlab

#endif
