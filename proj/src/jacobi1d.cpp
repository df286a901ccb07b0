#include "jacobilab/jacobi1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jlab {

namespace {

void check_ab(double alpha, double beta, const char* where) {
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw std::domain_error(std::string(where) + ": need alpha, beta > -1");
}

} // namespace

double pochhammer(double a, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= a + i;
    return r;
}

double real_binomial(double a, int k) {
    if (k < 0) return 0.0;
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= (a - i) / (k - i);
    return r;
}

double jacobi_eval(int n, double alpha, double beta, double y) {
    check_ab(alpha, beta, "jacobi_eval");
    if (n <= 0) return 1.0;
    double y0 = 1.0;
    double y1 = (alpha + 1.0) + (alpha + beta + 2.0) * (y - 1.0) / 2.0;
    for (int k = 2; k <= n; ++k) {
        const double a = alpha, b = beta;
        const double denom = 2.0 * k * (k + a + b) * (2.0 * k + a + b - 2.0);
        const double c1 = (2.0 * k + a + b - 1.0) *
                          ((2.0 * k + a + b) * (2.0 * k + a + b - 2.0) * y + a * a - b * b);
        const double c0 = -2.0 * (k + a - 1.0) * (k + b - 1.0) * (2.0 * k + a + b);
        const double yk = (c1 * y1 + c0 * y0) / denom;
        y0 = y1;
        y1 = yk;
    }
    return y1;
}

double jacobi_prime(int n, double alpha, double beta, double y) {
    if (n <= 0) return 0.0;
    return 0.5 * (n + alpha + beta + 1.0) * jacobi_eval(n - 1, alpha + 1.0, beta + 1.0, y);
}

double leading_coeff(int n, double alpha, double beta) {
    if (!(alpha + beta > -2.0))
        throw std::domain_error("leading_coeff: need alpha+beta > -2");
    // 2^{-n} Gamma(2n+a+b+1) / (Gamma(n+1) Gamma(n+a+b+1)); all arguments > 0 for n >= 1
    if (n == 0) return 1.0;
    const double s = alpha + beta;
    return std::exp(-n * std::log(2.0) + std::lgamma(2.0 * n + s + 1.0) -
                    std::lgamma(n + 1.0) - std::lgamma(n + s + 1.0));
}

double JacobiPoly::eval(double y) const {
    double acc = 0.0;
    for (int m = degree; m >= 0; --m) acc = acc * y + coeffs[m];
    return acc;
}

JacobiPoly monic_jacobi(int n, double alpha, double beta) {
    check_ab(alpha, beta, "monic_jacobi");
    // expand the hypergeometric sum  P_n(y) = sum_k B_k ((y-1)/2)^k  into monomials
    std::vector<double> c(n + 1, 0.0);
    double factorial_n = 1.0;
    for (int i = 2; i <= n; ++i) factorial_n *= i;
    for (int k = 0; k <= n; ++k) {
        const double bk = real_binomial(static_cast<double>(n), k) *
                          pochhammer(n + alpha + beta + 1.0, k) *
                          pochhammer(alpha + k + 1.0, n - k) / factorial_n;
        const double scale = bk * std::pow(0.5, k);
        double binom = 1.0;
        for (int m = 0; m <= k; ++m) {
            const double sign = ((k - m) % 2 == 0) ? 1.0 : -1.0;
            c[m] += scale * binom * sign;
            binom = binom * (k - m) / (m + 1.0);
        }
    }
    const double lead = c[n];
    JacobiPoly poly{n, alpha, beta, std::move(c)};
    for (double& v : poly.coeffs) v /= lead;
    poly.coeffs[n] = 1.0;
    return poly;
}

namespace {

// eigenvalues of a symmetric tridiagonal matrix by the implicit-shift QL
// algorithm (EISPACK tql1); d = diagonal, e = subdiagonal (e[0] unused)
void tridiag_eigenvalues(std::vector<double>& d, std::vector<double>& e) {
    const int n = static_cast<int>(d.size());
    if (n <= 1) return;
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        for (int iter = 0; iter < 64; ++iter) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= 1e-17 * dd) break;
            }
            if (m == l) break;
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            for (int i = m - 1; i >= l; --i) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

} // namespace

std::vector<double> jacobi_zeros(int n, double alpha, double beta) {
    check_ab(alpha, beta, "jacobi_zeros");
    if (n <= 0) return {};
    // Golub-Welsch: the zeros are the eigenvalues of the symmetric
    // tridiagonal Jacobi matrix of the monic three-term recurrence
    // p_{k+1} = (x - a_k) p_k - b_k p_{k-1}.
    const double s = alpha + beta;
    std::vector<double> diag(n), sub(n, 0.0);
    diag[0] = (beta - alpha) / (s + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + s;
        diag[k] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
        const double bk =
            k == 1 ? 4.0 * (1.0 + alpha) * (1.0 + beta) / ((s + 2.0) * (s + 2.0) * (s + 3.0))
                   : 4.0 * k * (k + alpha) * (k + beta) * (k + s) /
                         (t * t * (t + 1.0) * (t - 1.0));
        sub[k] = std::sqrt(bk);
    }
    tridiag_eigenvalues(diag, sub);
    std::vector<double> zeros = std::move(diag);
    std::sort(zeros.begin(), zeros.end());
    // Newton polish to full residual accuracy
    for (double& z : zeros) {
        for (int it = 0; it < 3; ++it) {
            const double p = jacobi_eval(n, alpha, beta, z);
            const double dp = jacobi_prime(n, alpha, beta, z);
            if (dp == 0.0) break;
            const double zn = z - p / dp;
            if (zn > -1.0 && zn < 1.0) z = zn;
        }
    }
    std::sort(zeros.begin(), zeros.end());
    for (int i = 0; i + 1 < n; ++i)
        if (!(zeros[i] < zeros[i + 1]))
            throw std::runtime_error("jacobi_zeros: zeros failed to separate");
    return zeros;
}

std::vector<double> stieltjes_residual(std::span<const double> x, double alpha, double beta) {
    const std::size_t n = x.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        if (std::abs(x[j]) >= 1.0)
            throw std::domain_error("stieltjes_residual: coordinate on the boundary");
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j) continue;
            const double d = x[j] - x[i];
            if (d == 0.0)
                throw std::domain_error("stieltjes_residual: coincident coordinates");
            s += 1.0 / d;
        }
        s += 0.5 * (alpha + 1.0) / (x[j] - 1.0);
        s += 0.5 * (beta + 1.0) / (x[j] + 1.0);
        r[j] = s;
    }
    return r;
}

} // namespace jlab
