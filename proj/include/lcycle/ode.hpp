#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "lcycle/cycles.hpp"
#include "lcycle/hamiltonian.hpp"
#include "lcycle/params.hpp"

namespace lcycle {

struct TrajectoryPoint {
    double t;
    double x;
    double y;
    double h;  ///< energy H(x,y) along the flow
};

/// A section ray from the origin at a fixed angle; points on it are
/// parametrised by the distance r > 0 from the origin.
struct SectionRay {
    double angle = 0.0;
};

struct ReturnMapResult {
    SectionRay section;
    double r_in = 0.0;
    double r_out = 0.0;
    double period_estimate = 0.0;    ///< return time
    double derivative_estimate = 0.0;  ///< finite-difference d r_out / d r_in
    double floquet_exponent = 0.0;   ///< integral of the field divergence over the return loop
};

struct VerificationRecord {
    CycleFinding finding;
    bool verified = false;
    bool fixed_point_found = false;
    double r_star = 0.0;
    double h_star = 0.0;           ///< energy of the located cycle on the section
    double h_gap = 0.0;            ///< |h_star - h_root|
    double return_derivative = 0.0;
    Stability observed = Stability::stable;
    bool stability_match = false;
    std::string message;
};

/// Right-hand side of the full perturbed system.
Eigen::Vector2d vector_field(const Eigen::Vector2d& q, const SystemParams& p);

/// Adaptive Dormand-Prince 5(4) integration with absolute and relative
/// local error control at tol; one TrajectoryPoint per accepted step. On
/// step-size underflow the run aborts and the partial trajectory is
/// returned (detectable from back().t < t_span).
std::vector<TrajectoryPoint> integrate_orbit(const Eigen::Vector2d& start, double t_span,
                                             const SystemParams& p, double tol = 1e-10);

/// Period of the unperturbed orbit through the family at energy h.
double unperturbed_period(OrbitFamilyId family, double h, const SystemParams& p, double tol = 1e-10);

/// Next same-direction crossing of the section ray. The crossing time is
/// refined to 1e-10 by bisecting re-integrated sub-steps. Throws
/// numeric_error when no return occurs within t_cap (<= 0 selects 100x the
/// unperturbed period estimate at the starting energy). When
/// with_derivative is set, a second trajectory at r_in (1 + 1e-5) fills
/// derivative_estimate.
ReturnMapResult poincare_return(const SectionRay& section, double r_in, const SystemParams& p,
                                double tol = 1e-10, double t_cap = 0.0,
                                bool with_derivative = false);

/// Places a section through the predicted orbit, brackets and bisects the
/// return-map fixed point, and compares location and stability with the
/// prediction. epsilon overrides p.epsilon (must be > 0).
VerificationRecord verify_prediction(const CycleFinding& finding, const SystemParams& p,
                                     double epsilon, double tol = 1e-10);

}  // namespace lcycle
