#ifndef JACOBILAB_JACOBI1D_HPP
#define JACOBILAB_JACOBI1D_HPP

#include <span>
#include <vector>

namespace jlab {

/// Monic Jacobi polynomial P_n^{(alpha,beta)} / l_n^{(alpha,beta)} in the
/// monomial basis. coeffs[m] is the coefficient of y^m; coeffs[n] == 1.
struct JacobiPoly {
    int degree = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::vector<double> coeffs;

    double eval(double y) const;
};

/// P_n^{(alpha,beta)}(y) by the standard three-term recurrence in n.
/// Throws std::domain_error for alpha <= -1 or beta <= -1.
double jacobi_eval(int n, double alpha, double beta, double y);

/// d/dy P_n^{(alpha,beta)}(y) = (n+alpha+beta+1)/2 * P_{n-1}^{(alpha+1,beta+1)}(y).
double jacobi_prime(int n, double alpha, double beta, double y);

/// Leading coefficient l_n = 2^{-n} binom(2n+alpha+beta, n), via log-gamma.
double leading_coeff(int n, double alpha, double beta);

JacobiPoly monic_jacobi(int n, double alpha, double beta);

/// The n ordered zeros of P_n^{(alpha,beta)}, all in (-1,1).
/// Newton with deflation from Chebyshev-point initial guesses, bisection
/// fallback. Throws std::runtime_error on non-convergence.
std::vector<double> jacobi_zeros(int n, double alpha, double beta);

/// Stieltjes electrostatic residual at a strictly increasing interior x:
/// component j = sum_{i!=j} 1/(x_j-x_i) + (alpha+1)/(2(x_j-1)) + (beta+1)/(2(x_j+1)).
/// Vanishes exactly at the zero vector of P_N^{(alpha,beta)}.
std::vector<double> stieltjes_residual(std::span<const double> x, double alpha, double beta);

/// Generalized binomial binom(a, k) for real a, integer k >= 0, with sign
/// tracking through the log-gamma route.
double real_binomial(double a, int k);

/// Rising factorial (a)_k.
double pochhammer(double a, int k);

} // namespace jlab

#endif
