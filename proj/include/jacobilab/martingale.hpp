#ifndef JACOBILAB_MARTINGALE_HPP
#define JACOBILAB_MARTINGALE_HPP

#include <span>
#include <vector>

namespace jlab {

/// Exponential rates r_n and the unit lower-triangular coefficient matrix T
/// with T[n][n-l] = c_{n,l}, so that exp(r_n t) * (T e(X_t))_n is a
/// martingale for the normalized process. Entries depend on (N, p, q) only,
/// never on kappa.
struct MartingaleSystem {
    int n_particles = 0;
    double p = 0.0;
    double q = 0.0;
    std::vector<double> rates;              // r_0..r_N, r_n = n(p+q-n+1)
    std::vector<std::vector<double>> coeff; // (N+1)x(N+1), unit lower triangular
};

/// r_n = n (p + q - n + 1).
double rate_r(int n, double p, double q);

/// Canonical coefficients c_{n,0..n} from drift cancellation:
/// c_{n,l} = [(N-n+l)(N-n+l-1) c_{n,l-2} - (p-q)(N-n+l) c_{n,l-1}] / (r_n - r_{n-l}).
/// Throws std::domain_error when some denominator r_n - r_{n-l} vanishes.
std::vector<double> mart_coeffs(int n_particles, int n, double p, double q);

/// The recurrences exactly as printed in the source recurrences (opposite
/// sign on the c_{n,l-1} term, shifted factor on c_{n,l-2}), for the
/// discrepancy report only.
std::vector<double> mart_coeffs_printed(int n_particles, int n, double p, double q);

/// Printed closed form for p = q: c_{n,2l} with sign (-1)^l and Pochhammer
/// base N-n+2; discrepancy-report companion of mart_coeffs.
double closed_form_even_coeff_printed(int n_particles, int n, int l, double p, double q);

MartingaleSystem make_martingale_system(int n_particles, double p, double q);

/// q_n(x) = e_n(x) + sum_l c_{n,l} e_{n-l}(x).
double q_n_eval(const MartingaleSystem& sys, int n, std::span<const double> x);
double q_n_from_esym(const MartingaleSystem& sys, int n, std::span<const double> e);

/// E[e_n(X~_t)] for the normalized process started at x0, as the
/// transfer-matrix product T^{-1} diag(exp(-r_l t)) T e(x0).
std::vector<double> expected_esym_curve(const MartingaleSystem& sys,
                                        std::span<const double> x0, double t);

/// e_n(z) at the Jacobi-zero vector, by the explicit finite sum
/// (prefactor 2^N / binom(2N+a+b, N)). Index n = 0..N.
std::vector<double> esym_at_z(int n_particles, double alpha, double beta);

/// Printed parity closed form for p = q (alpha = beta): returns the printed
/// value of e_n(z) (0 for the vanishing parity). Discrepancy-report use only.
double parity_printed(int n_particles, double alpha, int n);

/// Monic P_N^{(alpha,beta)}(y); equals E[prod(y - X_{t,i})] from the start z.
double expected_charpoly(int n_particles, double alpha, double beta, double y);

} // namespace jlab

#endif
