#pragma once

#include <stdexcept>
#include <string>

namespace lcycle {

/// Thrown when an argument lies outside the mathematical domain of an
/// operation (invalid parameters, energy outside a family's range, ...).
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a numerical procedure fails to reach its accuracy target.
class numeric_error : public std::runtime_error {
public:
    numeric_error(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

/// Model constants of the perturbed quartic system
///
///   x' = 4y(ab x^2 - b y^2 + 1) + eps x (u x^n + v y^n - b (beta+1)/(mu+1) x^mu y^beta - u x^2 - lambda0)
///   y' = 4x(a x^2 - ab y^2 - 1) + eps y (u x^n + v y^n + b x^mu y^beta - v y^2 - lambda0)
///
/// with 0 < a < b < 1, n even >= 4 and mu + beta = n.
struct SystemParams {
    double a = 1.0 / 3.0;
    double b = 0.5;
    double u = 0.007;
    double v = -0.028;
    double lambda0 = 0.0;
    double epsilon = 1e-3;
    int n = 12;
    int mu = 6;
    int beta = 6;

    void validate() const {
        if (!(a > 0.0 && a < b && b < 1.0))
            throw domain_error("SystemParams: require 0 < a < b < 1 (got a=" + std::to_string(a) +
                               ", b=" + std::to_string(b) + ")");
        if (n < 4 || n % 2 != 0)
            throw domain_error("SystemParams: perturbation degree n must be even and >= 4 (got n=" +
                               std::to_string(n) + ")");
        if (mu < 0 || beta < 0 || mu + beta != n)
            throw domain_error("SystemParams: require mu, beta >= 0 with mu + beta = n (got mu=" +
                               std::to_string(mu) + ", beta=" + std::to_string(beta) + ")");
        if (epsilon < 0.0)
            throw domain_error("SystemParams: epsilon must be >= 0");
    }
};

/// The four critical energies separating the level-set families, in
/// increasing order: 0 < 1/b < 1/a < H(A).
struct CriticalEnergies {
    double origin;  ///< H at the center O
    double hetero;  ///< 1/b, heteroclinic level through B1, B2
    double homo;    ///< 1/a, homoclinic level through C1, C2
    double upper;   ///< H(A_i) = (2ab + a + b) / (ab (1 - ab))
};

inline CriticalEnergies critical_energies(const SystemParams& p) {
    const double ab = p.a * p.b;
    return {0.0, 1.0 / p.b, 1.0 / p.a, (2.0 * ab + p.a + p.b) / (ab * (1.0 - ab))};
}

/// x^k for small non-negative integer k by repeated squaring.
inline double powi(double x, int k) {
    double r = 1.0;
    double base = x;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

}  // namespace lcycle
