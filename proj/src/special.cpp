#include "liesym/special.hpp"

#include <cmath>
#include <string>

namespace liesym {

double rgamma(double x) {
    if (x <= 0 && x == std::floor(x)) return 0.0;
    int sign = 1;
    const double lg = lgamma_r(x, &sign);
    return sign * std::exp(-lg);
}

double mittag_leffler(double alpha, double beta, double z) {
    if (!(alpha > 0)) throw DomainError("Mittag-Leffler needs alpha > 0");
    if (!(std::abs(z) <= 50)) throw DomainError("Mittag-Leffler series window is |z| <= 50");
    if (z == 0) return rgamma(beta);
    const double logz = std::log(std::abs(z));
    double sum = 0.0, comp = 0.0, largest = 0.0;
    int small = 0;
    for (int k = 0; k < 100000; ++k) {
        const double arg = alpha * k + beta;
        double term = 0.0;
        if (!(arg <= 0 && arg == std::floor(arg))) {
            int sign = 1;
            const double lg = lgamma_r(arg, &sign);
            term = sign * std::exp(k * logz - lg);
            if (z < 0 && (k & 1)) term = -term;
        }
        largest = std::max(largest, std::abs(term));
        // Kahan summation
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) < 1e-16 * std::abs(sum) || (term == 0 && k > 0 && sum == 0)) {
            if (++small == 3) break;
        } else {
            small = 0;
        }
    }
    if (largest > 1e8 * std::max(std::abs(sum), 1e-300))
        throw DomainError("Mittag-Leffler series loses all precision at z = " + std::to_string(z));
    return sum;
}

}  // namespace liesym
