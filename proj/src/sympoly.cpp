#include "jacobilab/sympoly.hpp"

#include <stdexcept>

namespace jlab {

std::vector<double> esym_all(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<double> e(n + 1, 0.0);
    e[0] = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        // multiply the running product by (z - x[m]); update top-down
        for (std::size_t k = m + 1; k >= 1; --k)
            e[k] += x[m] * e[k - 1];
    }
    return e;
}

std::vector<double> esym_leave_one_out(std::span<const double> x, std::size_t j) {
    if (j >= x.size())
        throw std::out_of_range("esym_leave_one_out: index out of range");
    std::vector<double> e(x.size(), 0.0);
    e[0] = 1.0;
    std::size_t used = 0;
    for (std::size_t m = 0; m < x.size(); ++m) {
        if (m == j) continue;
        ++used;
        for (std::size_t k = used; k >= 1; --k)
            e[k] += x[m] * e[k - 1];
    }
    return e;
}

std::vector<std::vector<double>> esym_gradient(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> g(n + 1, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const auto loo = esym_leave_one_out(x, i);
        for (std::size_t m = 1; m <= n; ++m)
            g[m][i] = loo[m - 1];
    }
    return g;
}

double charpoly_from_esym(std::span<const double> e, double y) {
    // Horner form of sum_n (-1)^n e_n y^{N-n}
    double acc = 0.0;
    double sign = 1.0;
    for (std::size_t n = 0; n < e.size(); ++n) {
        acc = acc * y + sign * e[n];
        sign = -sign;
    }
    return acc;
}

} // namespace jlab
