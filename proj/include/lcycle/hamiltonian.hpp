#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "lcycle/params.hpp"

namespace lcycle {

enum class OrbitFamilyId { Gamma1 = 1, Gamma2 = 2, Gamma3 = 3, Gamma4 = 4 };

enum class Orientation { shrinks, extends };

/// One of the four families of closed level curves of H.
struct OrbitFamily {
    OrbitFamilyId id;
    double h_min;             ///< lower end of the open h-range (-inf for Gamma1)
    double h_max;             ///< upper end of the open h-range
    int multiplicity;         ///< disjoint orbits in the family at each h
    Orientation orientation;  ///< behaviour of the enclosed region as h increases
};

enum class PointKind { center, saddle };

enum class PointLabel { O, A1, A2, A3, A4, B1, B2, C1, C2 };

struct SingularPoint {
    Eigen::Vector2d position;
    PointKind kind;
    double energy;
    PointLabel label;
};

/// Level-set classification of H(x,y) = h (which families exist at h, and
/// whether h sits exactly on a separatrix or degenerate level).
enum class BoundaryKind { none, origin_level, heteroclinic, homoclinic, upper_critical };

struct LevelClassification {
    std::vector<OrbitFamilyId> families;  ///< families present (at a boundary: those valid just below)
    BoundaryKind boundary = BoundaryKind::none;
};

struct AngularBounds {
    double theta1 = 0.0;
    double theta2 = 0.0;
    bool theta1_defined = true;  ///< false on 1/b <= h < 1/a where the arccos argument exceeds 1
};

/// p(theta) = a cos^4 + b sin^4 - 2ab cos^2 sin^2
double p_theta(double theta, const SystemParams& p);

/// H(x,y) = -(a x^4 + b y^4) + 2ab x^2 y^2 + 2(x^2 + y^2)
double hamiltonian(double x, double y, const SystemParams& p);
inline double hamiltonian(const Eigen::Vector2d& q, const SystemParams& p) {
    return hamiltonian(q.x(), q.y(), p);
}

/// Squared radii of the two level-curve branches at angle theta:
///   r_{+-}^2 = (1 +- sqrt(1 - h p(theta))) / p(theta),
/// returned as (r1, r2) = (r_+^2, r_-^2), r1 >= r2.
/// Throws domain_error when 1 - h p(theta) < 0 (curve absent at this angle);
/// values within 1e-12 below zero are clamped to zero.
std::pair<double, double> r_squared_branches(double theta, double h, const SystemParams& p);

/// Angular extent of the Gamma3/Gamma4 regions at energy h > 0.
/// theta2 always defined for 1/b <= h <= H(A); theta1 only for h >= 1/a
/// (reported as 0 with theta1_defined=false on 1/b <= h < 1/a).
AngularBounds theta_bounds(double h, const SystemParams& p);

/// The nine finite singular points with eigenvalue-based classification.
std::array<SingularPoint, 9> singular_points(const SystemParams& p);

LevelClassification classify_level(double h, const SystemParams& p);

OrbitFamily family_info(OrbitFamilyId id, const SystemParams& p);

const char* family_name(OrbitFamilyId id);
const char* point_label_name(PointLabel l);

}  // namespace lcycle
