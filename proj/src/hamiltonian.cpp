#include "lcycle/hamiltonian.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lcycle {

namespace {

constexpr double kClampTol = 1e-12;  // float spill allowance at exact critical levels
constexpr double kSnapTol = 1e-13;   // snap-to-endpoint width inside [-1, 1]

// Clamp x into [-1, 1] if within kClampTol outside; values that land within
// kSnapTol inside an endpoint are snapped onto it, so that evaluation at an
// exact critical level yields the exact limiting angle (acos rises like
// sqrt() near +-1, so rounding in x alone would otherwise shift the angle by
// ~1e-8). Returns false when x is out of range beyond the allowance.
bool clamp_unit(double& x) {
    if (x > 1.0 + kClampTol || x < -1.0 - kClampTol) return false;
    if (x > 1.0 - kSnapTol)
        x = 1.0;
    else if (x < -1.0 + kSnapTol)
        x = -1.0;
    return true;
}

bool near(double x, double y) {
    return std::abs(x - y) <= kClampTol * std::max(1.0, std::abs(y));
}

}  // namespace

double p_theta(double theta, const SystemParams& p) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double c2 = c * c, s2 = s * s;
    return p.a * c2 * c2 + p.b * s2 * s2 - 2.0 * p.a * p.b * c2 * s2;
}

double hamiltonian(double x, double y, const SystemParams& p) {
    const double x2 = x * x, y2 = y * y;
    return -(p.a * x2 * x2 + p.b * y2 * y2) + 2.0 * p.a * p.b * x2 * y2 + 2.0 * (x2 + y2);
}

std::pair<double, double> r_squared_branches(double theta, double h, const SystemParams& p) {
    const double pt = p_theta(theta, p);
    double disc = 1.0 - h * pt;
    if (disc < 0.0) {
        if (disc < -kClampTol * std::max(1.0, std::abs(h)))
            throw domain_error("r_squared_branches: 1 - h p(theta) < 0 at theta=" +
                               std::to_string(theta) + ", h=" + std::to_string(h) +
                               " (level curve absent at this angle)");
        disc = 0.0;
    }
    const double s = std::sqrt(disc);
    return {(1.0 + s) / pt, (1.0 - s) / pt};
}

AngularBounds theta_bounds(double h, const SystemParams& p) {
    if (h <= 0.0) throw domain_error("theta_bounds: requires h > 0");
    const double A = p.a + p.b + 2.0 * p.a * p.b;
    double disc = p.a * p.a * p.b * p.b - p.a * p.b + A / h;
    if (disc < 0.0) {
        if (disc < -kClampTol)
            throw domain_error("theta_bounds: discriminant negative (h=" + std::to_string(h) +
                               " beyond the upper critical energy)");
        disc = 0.0;
    } else if (disc < 1e-15) {
        disc = 0.0;  // collapse level: theta1 and theta2 coincide exactly
    }
    const double sq = 2.0 * std::sqrt(disc);
    double t_plus = (p.b - p.a + sq) / A;   // larger cos(2 theta)  -> theta1
    double t_minus = (p.b - p.a - sq) / A;  // smaller cos(2 theta) -> theta2
    AngularBounds out;
    if (!clamp_unit(t_minus))
        throw domain_error("theta_bounds: no real theta2 at h=" + std::to_string(h));
    out.theta2 = 0.5 * std::acos(t_minus);
    if (t_plus > 1.0 + kClampTol) {
        out.theta1 = 0.0;  // Gamma3 regime: angular domain is (-theta2, theta2)
        out.theta1_defined = false;
    } else {
        clamp_unit(t_plus);
        out.theta1 = 0.5 * std::acos(t_plus);
        out.theta1_defined = true;
    }
    return out;
}

std::array<SingularPoint, 9> singular_points(const SystemParams& p) {
    p.validate();
    const double a = p.a, b = p.b;
    const double ab = a * b;
    // closed-form coordinates
    const double xA = std::sqrt((1.0 + a) / (a * (1.0 - ab)));
    const double yA = std::sqrt(b * (1.0 - ab) * (1.0 + b)) / (b - b * b * a);
    const double yB = std::sqrt(1.0 / b);
    const double xC = std::sqrt(1.0 / a);

    const CriticalEnergies crit = critical_energies(p);

    auto classify = [&p](double x, double y) {
        // Jacobian of (x', y') = (H_y, -H_x); trace is zero, so the eigenvalues
        // are +-sqrt(-det): det > 0 gives a pure-imaginary pair (center),
        // det < 0 a real opposite-sign pair (saddle).
        const double fx_x = 8.0 * p.a * p.b * x * y;
        const double fx_y = 4.0 * (p.a * p.b * x * x - 3.0 * p.b * y * y + 1.0);
        const double fy_x = 4.0 * (3.0 * p.a * x * x - p.a * p.b * y * y - 1.0);
        const double fy_y = -8.0 * p.a * p.b * x * y;
        const double det = fx_x * fy_y - fx_y * fy_x;
        return det > 0.0 ? PointKind::center : PointKind::saddle;
    };

    std::array<SingularPoint, 9> pts;
    auto set = [&](int i, double x, double y, double energy, PointLabel label) {
        pts[i] = SingularPoint{Eigen::Vector2d(x, y), classify(x, y), energy, label};
    };
    set(0, 0.0, 0.0, crit.origin, PointLabel::O);
    set(1, xA, yA, crit.upper, PointLabel::A1);
    set(2, xA, -yA, crit.upper, PointLabel::A2);
    set(3, -xA, yA, crit.upper, PointLabel::A3);
    set(4, -xA, -yA, crit.upper, PointLabel::A4);
    set(5, 0.0, yB, crit.hetero, PointLabel::B1);
    set(6, 0.0, -yB, crit.hetero, PointLabel::B2);
    set(7, xC, 0.0, crit.homo, PointLabel::C1);
    set(8, -xC, 0.0, crit.homo, PointLabel::C2);
    return pts;
}

LevelClassification classify_level(double h, const SystemParams& p) {
    const CriticalEnergies c = critical_energies(p);
    LevelClassification out;
    // Exact boundaries report the families valid on approach from below.
    if (near(h, c.origin)) {
        out.families = {OrbitFamilyId::Gamma1};
        out.boundary = BoundaryKind::origin_level;
    } else if (near(h, c.hetero)) {
        out.families = {OrbitFamilyId::Gamma1, OrbitFamilyId::Gamma2};
        out.boundary = BoundaryKind::heteroclinic;
    } else if (near(h, c.homo)) {
        out.families = {OrbitFamilyId::Gamma3};
        out.boundary = BoundaryKind::homoclinic;
    } else if (near(h, c.upper)) {
        out.families = {OrbitFamilyId::Gamma4};
        out.boundary = BoundaryKind::upper_critical;
    } else if (h < c.origin) {
        out.families = {OrbitFamilyId::Gamma1};
    } else if (h < c.hetero) {
        out.families = {OrbitFamilyId::Gamma1, OrbitFamilyId::Gamma2};
    } else if (h < c.homo) {
        out.families = {OrbitFamilyId::Gamma3};
    } else if (h < c.upper) {
        out.families = {OrbitFamilyId::Gamma4};
    }
    return out;
}

OrbitFamily family_info(OrbitFamilyId id, const SystemParams& p) {
    const CriticalEnergies c = critical_energies(p);
    switch (id) {
        case OrbitFamilyId::Gamma1:
            return {id, -std::numeric_limits<double>::infinity(), c.hetero, 1, Orientation::shrinks};
        case OrbitFamilyId::Gamma2:
            return {id, c.origin, c.hetero, 1, Orientation::extends};
        case OrbitFamilyId::Gamma3:
            return {id, c.hetero, c.homo, 2, Orientation::shrinks};
        case OrbitFamilyId::Gamma4:
            return {id, c.homo, c.upper, 4, Orientation::shrinks};
    }
    throw domain_error("family_info: invalid family id");
}

const char* family_name(OrbitFamilyId id) {
    switch (id) {
        case OrbitFamilyId::Gamma1: return "Gamma1";
        case OrbitFamilyId::Gamma2: return "Gamma2";
        case OrbitFamilyId::Gamma3: return "Gamma3";
        case OrbitFamilyId::Gamma4: return "Gamma4";
    }
    return "?";
}

const char* point_label_name(PointLabel l) {
    switch (l) {
        case PointLabel::O: return "O";
        case PointLabel::A1: return "A1";
        case PointLabel::A2: return "A2";
        case PointLabel::A3: return "A3";
        case PointLabel::A4: return "A4";
        case PointLabel::B1: return "B1";
        case PointLabel::B2: return "B2";
        case PointLabel::C1: return "C1";
        case PointLabel::C2: return "C2";
    }
    return "?";
}

}  // namespace lcycle
