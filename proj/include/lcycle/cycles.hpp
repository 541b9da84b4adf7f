#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lcycle/detection.hpp"

namespace lcycle {

enum class Stability { stable, unstable };

struct CycleFinding {
    OrbitFamilyId family;
    double h_root;
    double lambda0;
    double slope;  ///< d lambda / dh at the root (interpolant)
    Stability stability;
    int count;  ///< family multiplicity
    bool near_critical = false;  ///< root within 1e-6 of a guard-band edge
};

struct RootWarning {
    OrbitFamilyId family;
    double h;
    std::string message;  ///< e.g. tangency: curve touches lambda0 without crossing
};

struct DistributionReport {
    double lambda0;
    std::vector<CycleFinding> findings;
    std::vector<RootWarning> warnings;
    int total = 0;
    double band_lo = 0.0;  ///< lambda0 interval over which the pattern is constant
    double band_hi = 0.0;
};

/// A maximal lambda0 interval on which every curve keeps a fixed number of
/// crossings. counts[f] = crossings of curve f+1; total weights by multiplicity.
struct Band {
    double lo;  ///< -inf on the bottom band
    double hi;  ///< +inf on the top band
    std::array<int, 4> counts{};
    int total = 0;
    std::vector<CycleFinding> findings;  ///< representative findings at the band midpoint
};

struct RootSet {
    std::vector<std::pair<double, double>> roots;  ///< (h_root, slope)
    std::vector<RootWarning> warnings;
};

/// Intersections of the sampled curve with the line lambda = lambda0:
/// brackets sign changes on the grid, bisects the interpolant to 1e-8 in h,
/// then polishes once against a direct lambda_j evaluation (disable polish
/// for curves not backed by lambda_j). Tangencies (touch without crossing)
/// are reported as warnings, not roots.
RootSet find_roots(const DetectionCurve& curve, double lambda0, double u, double v,
                   const SystemParams& p, double tol = 1e-9, bool polish = true);

/// Stability of the limit cycle bifurcating at a simple root.
/// Validated against the return-map oracle: for a family whose region grows
/// with h (Gamma2), a negative slope gives the stable cycle; for the
/// shrinking families (Gamma1, Gamma3, Gamma4) a positive slope does.
/// Zero slope is degenerate and refused.
Stability stability(Orientation orientation, double slope);

/// Default sampling grids mirroring the reference tables:
/// Gamma1 -2(0.1)2-, Gamma2 0.01(0.1)1.91, Gamma3 2+(0.02)3-,
/// Gamma4 3+(0.04)4 then 4(0.2)8.2 (guard band at critical levels).
std::vector<double> default_grid(OrbitFamilyId family, const SystemParams& p);

/// Sample all four curves on their default grids and refine near interior
/// extrema (local grid halving down to an h-bracket of 1e-8) so that band
/// breakpoints are sharp.
std::array<DetectionCurve, 4> build_default_curves(const SystemParams& p, double tol = 1e-9);

void refine_extrema(DetectionCurve& curve, const SystemParams& p, double u, double v,
                    double tol = 1e-9, double h_tol = 1e-8);

DistributionReport distribution(double lambda0, const SystemParams& p,
                                const std::array<DetectionCurve, 4>& curves, double tol = 1e-9);

std::vector<Band> lambda_bands(const SystemParams& p, const std::array<DetectionCurve, 4>& curves,
                               double tol = 1e-9);

}  // namespace lcycle
