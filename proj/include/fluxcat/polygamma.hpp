#pragma once

namespace fluxcat {

/// psi(x) for x > 0: upward recurrence to x >= 10, then the asymptotic series.
double digamma(double x);

/// psi_1(x) for x > 0, same scheme.
double trigamma(double x);

/// order 0 -> digamma, order 1 -> trigamma. Throws DomainError for x <= 0 or other orders.
double polygamma(int order, double x);

}  // namespace fluxcat
