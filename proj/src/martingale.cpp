#include "jacobilab/martingale.hpp"

#include "jacobilab/jacobi1d.hpp"
#include "jacobilab/sympoly.hpp"

#include <cmath>
#include <stdexcept>

namespace jlab {

double rate_r(int n, double p, double q) {
    return n * (p + q - n + 1.0);
}

namespace {

double rate_gap(int n, int l, double p, double q) {
    const double d = rate_r(n, p, q) - rate_r(n - l, p, q);
    if (d == 0.0)
        throw std::domain_error("mart_coeffs: degenerate parameters, r_n == r_{n-l}");
    return d;
}

} // namespace

std::vector<double> mart_coeffs(int n_particles, int n, double p, double q) {
    const double pq = p - q;
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    for (int l = 1; l <= n; ++l) {
        const double f = n_particles - n + l;
        const double prev2 = (l >= 2) ? c[l - 2] : 0.0;
        c[l] = (f * (f - 1.0) * prev2 - pq * f * c[l - 1]) / rate_gap(n, l, p, q);
    }
    return c;
}

std::vector<double> mart_coeffs_printed(int n_particles, int n, double p, double q) {
    const double pq = p - q;
    std::vector<double> c(n + 1, 0.0);
    c[0] = 1.0;
    if (n >= 1)
        c[1] = pq * (n_particles - n + 1.0) / rate_gap(n, 1, p, q);
    for (int l = 2; l <= n; ++l) {
        const double f = n_particles - n + l;
        c[l] = (pq * f * c[l - 1] - f * (f + 1.0) * c[l - 2]) / rate_gap(n, l, p, q);
    }
    return c;
}

double closed_form_even_coeff_printed(int n_particles, int n, int l, double p, double q) {
    double denom = 1.0;
    for (int j = 1; j <= l; ++j) denom *= (p + q - 2.0 * n + 2.0 * j + 1.0);
    double lfact = 1.0;
    for (int j = 2; j <= l; ++j) lfact *= j;
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    return sign * pochhammer(n_particles - n + 2.0, 2 * l) /
           (lfact * std::pow(2.0, l) * denom);
}

MartingaleSystem make_martingale_system(int n_particles, double p, double q) {
    MartingaleSystem sys;
    sys.n_particles = n_particles;
    sys.p = p;
    sys.q = q;
    sys.rates.resize(n_particles + 1);
    sys.coeff.assign(n_particles + 1, std::vector<double>(n_particles + 1, 0.0));
    for (int n = 0; n <= n_particles; ++n) {
        sys.rates[n] = rate_r(n, p, q);
        const auto c = mart_coeffs(n_particles, n, p, q);
        for (int l = 0; l <= n; ++l) sys.coeff[n][n - l] = c[l];
    }
    return sys;
}

double q_n_from_esym(const MartingaleSystem& sys, int n, std::span<const double> e) {
    double acc = 0.0;
    for (int m = 0; m <= n; ++m) acc += sys.coeff[n][m] * e[m];
    return acc;
}

double q_n_eval(const MartingaleSystem& sys, int n, std::span<const double> x) {
    const auto e = esym_all(x);
    return q_n_from_esym(sys, n, e);
}

std::vector<double> expected_esym_curve(const MartingaleSystem& sys,
                                        std::span<const double> x0, double t) {
    const int np = sys.n_particles;
    const auto e0 = esym_all(x0);
    std::vector<double> w(np + 1, 0.0);
    for (int n = 0; n <= np; ++n) {
        for (int m = 0; m <= n; ++m) w[n] += sys.coeff[n][m] * e0[m];
        w[n] *= std::exp(-sys.rates[n] * t);
    }
    // forward substitution, T is unit lower triangular
    std::vector<double> v(np + 1, 0.0);
    for (int n = 0; n <= np; ++n) {
        double s = w[n];
        for (int m = 0; m < n; ++m) s -= sys.coeff[n][m] * v[m];
        v[n] = s;
    }
    return v;
}

std::vector<double> esym_at_z(int n_particles, double alpha, double beta) {
    const int np = n_particles;
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::domain_error("esym_at_z: need alpha, beta > -1");
    double factorial = 1.0;
    for (int i = 2; i <= np; ++i) factorial *= i;
    const double pref = std::pow(2.0, np) / real_binomial(2.0 * np + alpha + beta, np);
    std::vector<double> e(np + 1, 0.0);
    for (int n = 0; n <= np; ++n) {
        double s = 0.0;
        for (int l = np - n; l <= np; ++l) {
            const double sign = ((np - l) % 2 == 0) ? 1.0 : -1.0;
            s += sign * real_binomial(static_cast<double>(np), l) *
                 real_binomial(static_cast<double>(l), np - n) *
                 pochhammer(np + alpha + beta + 1.0, l) *
                 pochhammer(alpha + l + 1.0, np - l) / (factorial * std::pow(2.0, l));
        }
        e[n] = pref * s;
    }
    e[0] = 1.0;
    return e;
}

double parity_printed(int n_particles, double alpha, int n) {
    if (n == 0) return 1.0;
    const bool n_even = (n_particles % 2 == 0);
    if (n_even) {
        if (n % 2 != 0) return 0.0;
        const int big_r = n_particles / 2;
        const int m = n / 2;
        if (m > big_r) return 0.0;
        double fact = 1.0;
        for (int i = big_r - m + 1; i <= big_r; ++i) fact *= i; // R!/(R-m)!
        for (int i = 2; i <= m; ++i) fact *= i;                 // * m!
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return sign * fact * pochhammer(2.0 * big_r + alpha + 0.5 - m, m) /
               pochhammer(0.5 + big_r - m, m);
    }
    if (n % 2 == 0) return 0.0;
    const int big_r = (n_particles - 1) / 2;
    const int m = (n - 1) / 2;
    if (m > big_r) return 0.0;
    double fact = 1.0;
    for (int i = big_r - m + 1; i <= big_r; ++i) fact *= i;
    for (int i = 2; i <= m; ++i) fact *= i;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * fact * pochhammer(2.0 * big_r + alpha + 1.5 - m, m) /
           pochhammer(1.5 + big_r - m, m);
}

double expected_charpoly(int n_particles, double alpha, double beta, double y) {
    return monic_jacobi(n_particles, alpha, beta).eval(y);
}

} // namespace jlab
