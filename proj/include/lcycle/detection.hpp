#pragma once

#include <vector>

#include "lcycle/hamiltonian.hpp"
#include "lcycle/params.hpp"

namespace lcycle {

/// Coefficients of the detection function at one energy level:
/// lambda(h; u, v) = cu * u + cv * v. The integrand of the driving area
/// integral is linear and homogeneous in (u, v), so the pair (cu, cv)
/// characterises lambda(h) for every (u, v) at once.
struct DetectionSample {
    double h;
    double cu;
    double cv;
    double area;  ///< area of the single bounded region (one orbit)
};

/// A detection curve sampled on a strictly increasing h grid, with a
/// monotone piecewise-cubic interpolant (Fritsch-Carlson slopes).
class DetectionCurve {
public:
    DetectionCurve() = default;
    DetectionCurve(OrbitFamilyId family, std::vector<DetectionSample> samples);

    OrbitFamilyId family() const { return family_; }
    const std::vector<DetectionSample>& samples() const { return samples_; }

    /// Insert a sample, keeping strict h ordering; rebuilds the interpolant.
    void insert(const DetectionSample& s);

    /// Interpolated lambda(h) for given weights.
    double value(double h, double u, double v) const;
    /// Interpolant derivative d lambda / dh.
    double slope(double h, double u, double v) const;

    double h_front() const { return samples_.front().h; }
    double h_back() const { return samples_.back().h; }

private:
    void rebuild();
    OrbitFamilyId family_ = OrbitFamilyId::Gamma1;
    std::vector<DetectionSample> samples_;
    std::vector<double> dcu_, dcv_;  // interpolant slopes per sample
};

/// Divergence of the perturbation field (d/d eps at eps = 0), closed form:
/// (2+n)(u x^n + v y^n) - 3(u x^2 + v y^2) - 2 lambda0.
double divergence(double x, double y, const SystemParams& p);

/// Same quantity assembled from the partial derivatives of the two
/// perturbation components, with the b x^mu y^beta terms carried through
/// explicitly. Agrees with divergence() identically; the b-terms cancel.
double divergence_from_parts(double x, double y, const SystemParams& p);

/// g(theta)  = u cos^n + v sin^n,  g1(theta) = u cos^2 + v sin^2
double g_theta(double theta, int n, double u, double v);
double g1_theta(double theta, double u, double v);

/// Detection-function coefficients for one family at energy h, strictly
/// inside the family's range (a guard band of 1e-6 around the bounding
/// critical levels is refused). tol is the quadrature tolerance.
DetectionSample lambda_j(OrbitFamilyId family, double h, const SystemParams& p, double tol = 1e-9);

/// Width of the refused strip around each family's bounding critical levels.
inline constexpr double kGuardBand = 1e-6;

DetectionCurve detection_curve(OrbitFamilyId family, const std::vector<double>& h_grid,
                               const SystemParams& p, double tol = 1e-9);

/// A(h) = 2 area(h) (cu u + cv v - lambda0); simple zeros in h mark
/// bifurcating limit cycles.
double abelian_integral(OrbitFamilyId family, double h, const SystemParams& p, double tol = 1e-9);

}  // namespace lcycle
