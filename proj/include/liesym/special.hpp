#pragma once

#include <stdexcept>

namespace liesym {

/// 1/Gamma(x), exactly 0 at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Mittag-Leffler E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha k + beta) for
/// real z with |z| <= 50. Terms are formed through log-Gamma with sign
/// tracking and summed with Kahan compensation; the series stops once three
/// consecutive terms fall below 1e-16 of the running sum.
double mittag_leffler(double alpha, double beta, double z);

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace liesym
