#include "lcycle/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcycle {

namespace {

constexpr double kRootHTol = 1e-8;

double curve_s(const DetectionCurve& c, double h, double u, double v, double lambda0) {
    return c.value(h, u, v) - lambda0;
}

}  // namespace

RootSet find_roots(const DetectionCurve& curve, double lambda0, double u, double v,
                   const SystemParams& p, double tol, bool polish) {
    const auto& s = curve.samples();
    RootSet out;
    std::vector<double> vals(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) vals[i] = u * s[i].cu + v * s[i].cv - lambda0;

    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double va = vals[i], vb = vals[i + 1];
        if (va == 0.0) {
            // grid point exactly on the line: crossing if the signs flip around it
            const bool flip = i > 0 && i + 1 < s.size() && vals[i - 1] * vb < 0.0;
            if (!flip)
                out.warnings.push_back({curve.family(), s[i].h,
                                        "curve touches lambda0 at a grid point without crossing"});
            continue;
        }
        if (va * vb >= 0.0) continue;
        double lo = s[i].h, hi = s[i + 1].h;
        double flo = va;
        while (hi - lo > kRootHTol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = curve_s(curve, mid, u, v, lambda0);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        double h_root = 0.5 * (lo + hi);
        if (polish) {
            // The interpolant root can sit ~1e-3 off the true curve between
            // coarse samples, which would break the residual contract
            // |lambda(h_root) - lambda0| <= 1e-6; re-bisect the bracketing
            // cell against direct evaluations, starting from the interpolant
            // root as the first probe.
            double tlo = s[i].h, thi = s[i + 1].h, ftlo = va;
            double probe = h_root;
            try {
                for (int iter = 0; iter < 64 && thi - tlo > kRootHTol; ++iter) {
                    const DetectionSample ds = lambda_j(curve.family(), probe, p, tol);
                    const double fm = u * ds.cu + v * ds.cv - lambda0;
                    if (fm == 0.0) {
                        tlo = thi = probe;
                        break;
                    }
                    if (ftlo * fm < 0.0) {
                        thi = probe;
                    } else {
                        tlo = probe;
                        ftlo = fm;
                    }
                    probe = 0.5 * (tlo + thi);
                }
                h_root = 0.5 * (tlo + thi);
            } catch (const domain_error&) {
                // probe fell into the guard band: keep the interpolant root
            }
        }
        const double slope = curve.slope(h_root, u, v);
        if (slope == 0.0) {
            out.warnings.push_back({curve.family(), h_root, "tangency: zero interpolant slope at root"});
            continue;
        }
        out.roots.emplace_back(h_root, slope);
    }
    return out;
}

Stability stability(Orientation orientation, double slope) {
    if (slope == 0.0) throw domain_error("stability: zero slope is degenerate");
    const bool stable_for_extends = slope < 0.0;
    if (orientation == Orientation::extends) return stable_for_extends ? Stability::stable : Stability::unstable;
    return stable_for_extends ? Stability::unstable : Stability::stable;
}

std::vector<double> default_grid(OrbitFamilyId family, const SystemParams& p) {
    // Proportional to the reference layout, which at a = 1/3, b = 1/2 gives
    // exactly: Gamma1 -2(0.1)2-, Gamma2 0.01(0.1)1.91, Gamma3 2+(0.02)3-,
    // Gamma4 3+(0.04)4 then 4(0.2)8.2. Other parameters scale the anchors
    // with the critical energies so the grids stay inside the family ranges.
    const CriticalEnergies c = critical_energies(p);
    std::vector<double> g;
    auto fill = [&g](double lo, double hi, double step) {
        for (double h = lo; h < hi - 1e-12; h += step) g.push_back(h);
        g.push_back(hi);
    };
    const double span4 = c.upper - c.homo;
    switch (family) {
        case OrbitFamilyId::Gamma1:
            fill(-c.hetero, c.hetero - kGuardBand, c.hetero / 20.0);
            break;
        case OrbitFamilyId::Gamma2:
            fill(c.hetero / 200.0, 0.955 * c.hetero, c.hetero / 20.0);
            break;
        case OrbitFamilyId::Gamma3:
            fill(c.hetero + kGuardBand, c.homo - kGuardBand, (c.homo - c.hetero) / 50.0);
            break;
        case OrbitFamilyId::Gamma4:
            fill(c.homo + kGuardBand, c.homo + span4 / 5.4, span4 * (0.04 / 5.4));
            fill(c.homo + span4 * (4.2 - 3.0) / 5.4, c.homo + span4 * (5.2 / 5.4),
                 span4 * (0.2 / 5.4));
            break;
    }
    return g;
}

void refine_extrema(DetectionCurve& curve, const SystemParams& p, double u, double v, double tol,
                    double h_tol) {
    // local grid halving around every interior extremum of u*cu + v*cv
    for (int round = 0; round < 2048; ++round) {
        const auto& s = curve.samples();
        std::vector<double> vals(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) vals[i] = u * s[i].cu + v * s[i].cv;
        double insert_at = std::numeric_limits<double>::quiet_NaN();
        for (std::size_t i = 1; i + 1 < s.size(); ++i) {
            const bool is_max = vals[i] > vals[i - 1] && vals[i] > vals[i + 1];
            const bool is_min = vals[i] < vals[i - 1] && vals[i] < vals[i + 1];
            if (!is_max && !is_min) continue;
            const double wl = s[i].h - s[i - 1].h;
            const double wr = s[i + 1].h - s[i].h;
            if (std::max(wl, wr) <= h_tol) continue;
            insert_at = wl >= wr ? s[i].h - 0.5 * wl : s[i].h + 0.5 * wr;
            break;
        }
        if (std::isnan(insert_at)) return;
        curve.insert(lambda_j(curve.family(), insert_at, p, tol));
    }
}

std::array<DetectionCurve, 4> build_default_curves(const SystemParams& p, double tol) {
    std::array<DetectionCurve, 4> curves;
    for (int f = 0; f < 4; ++f) {
        const auto id = static_cast<OrbitFamilyId>(f + 1);
        curves[f] = detection_curve(id, default_grid(id, p), p, tol);
        refine_extrema(curves[f], p, p.u, p.v, tol);
    }
    return curves;
}

namespace {

struct Breakpoint {
    double lambda;
    bool from_extremum;
};

std::vector<Breakpoint> collect_breakpoints(const SystemParams& p,
                                            const std::array<DetectionCurve, 4>& curves) {
    std::vector<Breakpoint> bps;
    for (const auto& c : curves) {
        const auto& s = c.samples();
        auto lam = [&](std::size_t i) { return p.u * s[i].cu + p.v * s[i].cv; };
        bps.push_back({lam(0), false});
        bps.push_back({lam(s.size() - 1), false});
        // slope-sign change with zero deltas skipped: refined extrema sit on
        // plateaus of equal doubles, which a strict neighbour test misses
        int sign_prev = 0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            const double d = lam(i) - lam(i - 1);
            const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
            if (sign == 0) continue;
            if (sign_prev != 0 && sign != sign_prev) bps.push_back({lam(i - 1), true});
            sign_prev = sign;
        }
    }
    std::sort(bps.begin(), bps.end(),
              [](const Breakpoint& a, const Breakpoint& b) { return a.lambda < b.lambda; });
    // merge breakpoints indistinguishable at guard-band resolution (the two
    // homoclinic curve ends land on nearly the same value)
    std::vector<Breakpoint> merged;
    for (const auto& bp : bps) {
        if (!merged.empty() &&
            std::abs(bp.lambda - merged.back().lambda) <= 1e-5 * std::max(1.0, std::abs(bp.lambda)))
            continue;
        merged.push_back(bp);
    }
    return merged;
}

int grid_crossings(const DetectionCurve& c, double lambda0, const SystemParams& p) {
    const auto& s = c.samples();
    int k = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double va = p.u * s[i].cu + p.v * s[i].cv - lambda0;
        const double vb = p.u * s[i + 1].cu + p.v * s[i + 1].cv - lambda0;
        if (va * vb < 0.0) ++k;
    }
    return k;
}

}  // namespace

DistributionReport distribution(double lambda0, const SystemParams& p,
                                const std::array<DetectionCurve, 4>& curves, double tol) {
    DistributionReport rep;
    rep.lambda0 = lambda0;
    for (const auto& c : curves) {
        const OrbitFamily fam = family_info(c.family(), p);
        RootSet rs = find_roots(c, lambda0, p.u, p.v, p, tol);
        for (auto [h_root, slope] : rs.roots) {
            CycleFinding f;
            f.family = c.family();
            f.h_root = h_root;
            f.lambda0 = lambda0;
            f.slope = slope;
            f.stability = stability(fam.orientation, slope);
            f.count = fam.multiplicity;
            f.near_critical = (!std::isinf(fam.h_min) && h_root < fam.h_min + kGuardBand + 1e-6) ||
                              h_root > fam.h_max - kGuardBand - 1e-6;
            rep.findings.push_back(f);
            rep.total += f.count;
        }
        for (auto& w : rs.warnings) rep.warnings.push_back(std::move(w));
    }
    // containing constancy band
    const auto bps = collect_breakpoints(p, curves);
    rep.band_lo = -std::numeric_limits<double>::infinity();
    rep.band_hi = std::numeric_limits<double>::infinity();
    for (const auto& bp : bps) {
        if (bp.lambda <= lambda0)
            rep.band_lo = bp.lambda;
        else {
            rep.band_hi = bp.lambda;
            break;
        }
    }
    return rep;
}

std::vector<Band> lambda_bands(const SystemParams& p, const std::array<DetectionCurve, 4>& curves,
                               double tol) {
    const auto bps = collect_breakpoints(p, curves);
    std::vector<Band> bands;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> edges;
    edges.emplace_back(-inf, bps.empty() ? inf : bps.front().lambda);
    for (std::size_t i = 0; i + 1 < bps.size(); ++i) edges.emplace_back(bps[i].lambda, bps[i + 1].lambda);
    if (!bps.empty()) edges.emplace_back(bps.back().lambda, inf);

    for (auto [lo, hi] : edges) {
        Band band;
        band.lo = lo;
        band.hi = hi;
        double mid;
        if (std::isinf(lo) && std::isinf(hi))
            mid = 0.0;
        else if (std::isinf(lo))
            mid = hi - std::max(1.0, std::abs(hi));
        else if (std::isinf(hi))
            mid = lo + std::max(1.0, std::abs(lo));
        else
            mid = 0.5 * (lo + hi);
        if (!std::isinf(lo) && !std::isinf(hi) && hi - lo < 1e-12) continue;
        DistributionReport rep = distribution(mid, p, curves, tol);
        band.total = 0;
        for (int f = 0; f < 4; ++f) {
            band.counts[f] = grid_crossings(curves[f], mid, p);
            band.total +=
                band.counts[f] * family_info(static_cast<OrbitFamilyId>(f + 1), p).multiplicity;
        }
        band.findings = std::move(rep.findings);
        bands.push_back(std::move(band));
    }
    return bands;
}

}  // namespace lcycle
