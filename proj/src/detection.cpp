#include "lcycle/detection.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lcycle/quadrature.hpp"

namespace lcycle {

namespace {

// (1+s)^m - (1-s)^m via the odd binomial terms; exact for integer m and
// stable when s is small (the branches nearly coincide near theta1/theta2).
double pow_diff(double s, int m) {
    double sum = 0.0;
    double coef = m;          // C(m, 1)
    double spow = s;          // s^1
    for (int k = 1; k <= m; k += 2) {
        sum += coef * spow;
        // C(m, k+2) = C(m, k) (m-k)(m-k-1) / ((k+1)(k+2))
        coef *= double(m - k) * double(m - k - 1) / (double(k + 1) * double(k + 2));
        spow *= s * s;
    }
    return 2.0 * sum;
}

struct RegionIntegrals {
    double gu, gv;    // int r^m cos^n, int r^m sin^n      (branch difference for Gamma3/4)
    double i2u, i2v;  // int r^2 cos^2, int r^2 sin^2
    double den;       // int r
};

void check_range(OrbitFamilyId family, double h, const SystemParams& p) {
    const OrbitFamily fam = family_info(family, p);
    const bool below = !std::isinf(fam.h_min) && h < fam.h_min + kGuardBand;
    const bool above = h > fam.h_max - kGuardBand;
    if (below || above) {
        throw domain_error(std::string("lambda_j: h=") + std::to_string(h) + " outside the open range (" +
                           (std::isinf(fam.h_min) ? std::string("-inf") : std::to_string(fam.h_min)) + ", " +
                           std::to_string(fam.h_max) + ") of " + family_name(family) +
                           " (a guard band of 1e-6 around the critical levels is refused)");
    }
}

RegionIntegrals region_integrals(OrbitFamilyId family, double h, const SystemParams& p, double tol) {
    const int m = (p.n + 2) / 2;
    RegionIntegrals out{};
    if (family == OrbitFamilyId::Gamma1 || family == OrbitFamilyId::Gamma2) {
        const bool outer = family == OrbitFamilyId::Gamma1;
        auto with_r = [&](auto&& weight) {
            return [&p, h, outer, weight](double th) {
                auto [r1, r2] = r_squared_branches(th, h, p);
                return weight(outer ? r1 : r2, th);
            };
        };
        const double two_pi = 2.0 * std::acos(-1.0);
        out.gu = integrate(with_r([&](double r, double th) { return powi(r, m) * powi(std::cos(th), p.n); }),
                           0.0, two_pi, tol).value;
        out.gv = integrate(with_r([&](double r, double th) { return powi(r, m) * powi(std::sin(th), p.n); }),
                           0.0, two_pi, tol).value;
        out.i2u = integrate(with_r([](double r, double th) { const double c = std::cos(th); return r * r * c * c; }),
                            0.0, two_pi, tol).value;
        out.i2v = integrate(with_r([](double r, double th) { const double s = std::sin(th); return r * r * s * s; }),
                            0.0, two_pi, tol).value;
        out.den = integrate(with_r([](double r, double) { return r; }), 0.0, two_pi, tol).value;
        return out;
    }

    const AngularBounds bounds = theta_bounds(h, p);
    const double lo = family == OrbitFamilyId::Gamma3 ? -bounds.theta2 : bounds.theta1;
    const double hi = bounds.theta2;
    // On the branch difference, write r1^k - r2^k through s = sqrt(1 - h p):
    // r1^k - r2^k = ((1+s)^k - (1-s)^k) / p^k, which vanishes like s ~
    // sqrt(|theta - bound|) at the angular bounds.
    auto diff_pow = [&p, h](double th, int k) {
        const double pt = p_theta(th, p);
        const double disc = std::max(0.0, 1.0 - h * pt);
        return pow_diff(std::sqrt(disc), k) / powi(pt, k);
    };
    const int n = p.n;
    out.gu = integrate_sqrt_endpoints(
                 [&](double th) { return diff_pow(th, m) * powi(std::cos(th), n); }, lo, hi, tol).value;
    out.gv = integrate_sqrt_endpoints(
                 [&](double th) { return diff_pow(th, m) * powi(std::sin(th), n); }, lo, hi, tol).value;
    out.i2u = integrate_sqrt_endpoints(
                  [&](double th) { const double c = std::cos(th); return diff_pow(th, 2) * c * c; }, lo, hi, tol).value;
    out.i2v = integrate_sqrt_endpoints(
                  [&](double th) { const double s = std::sin(th); return diff_pow(th, 2) * s * s; }, lo, hi, tol).value;
    out.den = integrate_sqrt_endpoints([&](double th) { return diff_pow(th, 1); }, lo, hi, tol).value;
    return out;
}

}  // namespace

DetectionCurve::DetectionCurve(OrbitFamilyId family, std::vector<DetectionSample> samples)
    : family_(family), samples_(std::move(samples)) {
    if (samples_.empty()) throw domain_error("DetectionCurve: empty sample set");
    for (std::size_t i = 1; i < samples_.size(); ++i)
        if (!(samples_[i - 1].h < samples_[i].h))
            throw domain_error("DetectionCurve: h grid must be strictly increasing");
    rebuild();
}

void DetectionCurve::insert(const DetectionSample& s) {
    auto it = std::lower_bound(samples_.begin(), samples_.end(), s.h,
                               [](const DetectionSample& a, double h) { return a.h < h; });
    if (it != samples_.end() && it->h == s.h) return;
    samples_.insert(it, s);
    rebuild();
}

namespace {

// Fritsch-Carlson monotone slopes for one coefficient sequence.
std::vector<double> pchip_slopes(const std::vector<DetectionSample>& s, double DetectionSample::*field) {
    const std::size_t n = s.size();
    std::vector<double> d(n, 0.0);
    if (n == 1) return d;
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        delta[i] = (s[i + 1].*field - s[i].*field) / (s[i + 1].h - s[i].h);
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * (s[i + 1].h - s[i].h) + (s[i].h - s[i - 1].h);
            const double w2 = (s[i + 1].h - s[i].h) + 2.0 * (s[i].h - s[i - 1].h);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return d;
}

}  // namespace

void DetectionCurve::rebuild() {
    dcu_ = pchip_slopes(samples_, &DetectionSample::cu);
    dcv_ = pchip_slopes(samples_, &DetectionSample::cv);
}

double DetectionCurve::value(double h, double u, double v) const {
    const auto& s = samples_;
    if (s.size() == 1) return u * s[0].cu + v * s[0].cv;
    auto it = std::upper_bound(s.begin(), s.end(), h,
                               [](double x, const DetectionSample& a) { return x < a.h; });
    std::size_t i = it == s.begin() ? 0 : std::size_t(it - s.begin()) - 1;
    if (i + 1 >= s.size()) i = s.size() - 2;
    const double dh = s[i + 1].h - s[i].h;
    const double t = (h - s[i].h) / dh;
    auto hermite = [&](double y0, double y1, double m0, double m1) {
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * dh * m0 +
               (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * dh * m1;
    };
    return u * hermite(s[i].cu, s[i + 1].cu, dcu_[i], dcu_[i + 1]) +
           v * hermite(s[i].cv, s[i + 1].cv, dcv_[i], dcv_[i + 1]);
}

double DetectionCurve::slope(double h, double u, double v) const {
    const auto& s = samples_;
    if (s.size() == 1) return 0.0;
    auto it = std::upper_bound(s.begin(), s.end(), h,
                               [](double x, const DetectionSample& a) { return x < a.h; });
    std::size_t i = it == s.begin() ? 0 : std::size_t(it - s.begin()) - 1;
    if (i + 1 >= s.size()) i = s.size() - 2;
    const double dh = s[i + 1].h - s[i].h;
    const double t = (h - s[i].h) / dh;
    auto dhermite = [&](double y0, double y1, double m0, double m1) {
        const double t2 = t * t;
        return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * dh * m0 + (-6 * t2 + 6 * t) * y1 +
                (3 * t2 - 2 * t) * dh * m1) / dh;
    };
    return u * dhermite(s[i].cu, s[i + 1].cu, dcu_[i], dcu_[i + 1]) +
           v * dhermite(s[i].cv, s[i + 1].cv, dcv_[i], dcv_[i + 1]);
}

double divergence(double x, double y, const SystemParams& p) {
    return (2.0 + p.n) * (p.u * powi(x, p.n) + p.v * powi(y, p.n)) -
           3.0 * (p.u * x * x + p.v * y * y) - 2.0 * p.lambda0;
}

double divergence_from_parts(double x, double y, const SystemParams& p) {
    const double xn = powi(x, p.n), yn = powi(y, p.n);
    const double cross = p.b * powi(x, p.mu) * powi(y, p.beta);
    const double ratio = double(p.beta + 1) / double(p.mu + 1);
    // P = x (u x^n + v y^n - b (beta+1)/(mu+1) x^mu y^beta - u x^2 - lambda0)
    // Q = y (u x^n + v y^n + b x^mu y^beta - v y^2 - lambda0)
    const double P_over_x = p.u * xn + p.v * yn - ratio * cross - p.u * x * x - p.lambda0;
    const double Q_over_y = p.u * xn + p.v * yn + cross - p.v * y * y - p.lambda0;
    const double x_dPx = p.n * p.u * xn - ratio * p.mu * cross - 2.0 * p.u * x * x;  // x dP/dx (inner part)
    const double y_dQy = p.n * p.v * yn + p.beta * cross - 2.0 * p.v * y * y;        // y dQ/dy (inner part)
    return P_over_x + x_dPx + Q_over_y + y_dQy;
}

double g_theta(double theta, int n, double u, double v) {
    return u * powi(std::cos(theta), n) + v * powi(std::sin(theta), n);
}

double g1_theta(double theta, double u, double v) {
    const double c = std::cos(theta), s = std::sin(theta);
    return u * c * c + v * s * s;
}

DetectionSample lambda_j(OrbitFamilyId family, double h, const SystemParams& p, double tol) {
    p.validate();
    check_range(family, h, p);
    const RegionIntegrals ri = region_integrals(family, h, p, tol);
    DetectionSample out;
    out.h = h;
    out.cu = (ri.gu - 0.75 * ri.i2u) / ri.den;
    out.cv = (ri.gv - 0.75 * ri.i2v) / ri.den;
    out.area = 0.5 * ri.den;
    return out;
}

DetectionCurve detection_curve(OrbitFamilyId family, const std::vector<double>& h_grid,
                               const SystemParams& p, double tol) {
    if (h_grid.empty()) throw domain_error("detection_curve: empty h grid");
    std::vector<DetectionSample> samples;
    samples.reserve(h_grid.size());
    for (double h : h_grid) {
        try {
            samples.push_back(lambda_j(family, h, p, tol));
        } catch (const std::exception& e) {
            throw domain_error(std::string("detection_curve: failure at h=") + std::to_string(h) + ": " +
                               e.what());
        }
    }
    return DetectionCurve(family, std::move(samples));
}

double abelian_integral(OrbitFamilyId family, double h, const SystemParams& p, double tol) {
    const DetectionSample s = lambda_j(family, h, p, tol);
    return 2.0 * s.area * (s.cu * p.u + s.cv * p.v - p.lambda0);
}

}  // namespace lcycle
