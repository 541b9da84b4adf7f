#include "lcycle/ode.hpp"

#include <cmath>

#include "lcycle/detection.hpp"
#include "lcycle/quadrature.hpp"

namespace lcycle {

Eigen::Vector2d vector_field(const Eigen::Vector2d& q, const SystemParams& p) {
    const double x = q.x(), y = q.y();
    const double xn = powi(x, p.n), yn = powi(y, p.n);
    const double cross = p.b * powi(x, p.mu) * powi(y, p.beta);
    const double px = p.u * xn + p.v * yn - cross * double(p.beta + 1) / double(p.mu + 1) -
                      p.u * x * x - p.lambda0;
    const double qy = p.u * xn + p.v * yn + cross - p.v * y * y - p.lambda0;
    return {4.0 * y * (p.a * p.b * x * x - p.b * y * y + 1.0) + p.epsilon * x * px,
            4.0 * x * (p.a * x * x - p.a * p.b * y * y - 1.0) + p.epsilon * y * qy};
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

// One integrator state: (x, y, w) where w accumulates the divergence of the
// full field along the flow (used for the Floquet exponent of a loop).
struct State {
    Eigen::Vector2d q;
    double w;
};

struct Rhs {
    const SystemParams& p;
    State operator()(const State& s) const {
        State d;
        d.q = vector_field(s.q, p);
        // div of the full field: the Hamiltonian part is divergence-free and
        // the mu/beta cross terms cancel, leaving the closed form.
        d.w = p.epsilon * divergence(s.q.x(), s.q.y(), p);
        return d;
    }
};

State axpy(const State& s, double h, const State& k) { return {s.q + h * k.q, s.w + h * k.w}; }

class Dopri5 {
public:
    Dopri5(const SystemParams& p, double tol) : rhs_{p}, tol_(tol) {}

    // One adaptive step from (t, s); updates t, s, and h_. Returns the step
    // actually taken. k1_ holds the derivative at the new point (FSAL).
    double step(double& t, State& s) {
        if (!have_k1_) {
            k1_ = rhs_(s);
            have_k1_ = true;
        }
        for (int attempt = 0; attempt < 64; ++attempt) {
            const double h = h_;
            State k2 = rhs_(axpy(s, h * a21, k1_));
            State k3 = rhs_({s.q + h * (a31 * k1_.q + a32 * k2.q), s.w + h * (a31 * k1_.w + a32 * k2.w)});
            State k4 = rhs_({s.q + h * (a41 * k1_.q + a42 * k2.q + a43 * k3.q),
                             s.w + h * (a41 * k1_.w + a42 * k2.w + a43 * k3.w)});
            State k5 = rhs_({s.q + h * (a51 * k1_.q + a52 * k2.q + a53 * k3.q + a54 * k4.q),
                             s.w + h * (a51 * k1_.w + a52 * k2.w + a53 * k3.w + a54 * k4.w)});
            State k6 = rhs_({s.q + h * (a61 * k1_.q + a62 * k2.q + a63 * k3.q + a64 * k4.q + a65 * k5.q),
                             s.w + h * (a61 * k1_.w + a62 * k2.w + a63 * k3.w + a64 * k4.w + a65 * k5.w)});
            State snew{s.q + h * (b1 * k1_.q + b3 * k3.q + b4 * k4.q + b5 * k5.q + b6 * k6.q),
                       s.w + h * (b1 * k1_.w + b3 * k3.w + b4 * k4.w + b5 * k5.w + b6 * k6.w)};
            State k7 = rhs_(snew);
            const Eigen::Vector2d errq =
                h * (e1 * k1_.q + e3 * k3.q + e4 * k4.q + e5 * k5.q + e6 * k6.q + e7 * k7.q);
            double err = 0.0;
            for (int i = 0; i < 2; ++i) {
                const double sc = tol_ + tol_ * std::max(std::abs(s.q[i]), std::abs(snew.q[i]));
                err += (errq[i] / sc) * (errq[i] / sc);
            }
            err = std::sqrt(0.5 * err);
            const double factor =
                std::clamp(0.9 * std::pow(std::max(err, 1e-30), -0.2), 0.2, 5.0);
            if (err <= 1.0) {
                t += h;
                s = snew;
                k1_ = k7;
                h_ = h * factor;
                return h;
            }
            h_ = h * factor;
            if (h_ < 1e-14 * std::max(1.0, std::abs(t)))
                throw numeric_error("ode: step size underflow at t=" + std::to_string(t), t, h_);
        }
        throw numeric_error("ode: repeated step rejection", t, h_);
    }

    void reset(double h0) {
        h_ = h0;
        have_k1_ = false;
    }

    double suggested() const { return h_; }

private:
    Rhs rhs_;
    double tol_;
    double h_ = 1e-4;
    State k1_{};
    bool have_k1_ = false;
};

// Advance (t, s) to exactly t_target with clamped adaptive steps.
void advance_to(double& t, State& s, double t_target, const SystemParams& p, double tol) {
    if (t_target <= t) return;
    Dopri5 st(p, tol);
    st.reset(t_target - t);
    while (t_target - t > 1e-15 * std::max(1.0, std::abs(t_target))) {
        if (st.suggested() > t_target - t) st.reset(t_target - t);
        st.step(t, s);
    }
}

}  // namespace

std::vector<TrajectoryPoint> integrate_orbit(const Eigen::Vector2d& start, double t_span,
                                             const SystemParams& p, double tol) {
    if (!(tol > 0.0)) throw domain_error("integrate_orbit: requires tol > 0");
    p.validate();
    Dopri5 stepper(p, tol);
    stepper.reset(std::min(1e-4, t_span));
    double t = 0.0;
    State s{start, 0.0};
    std::vector<TrajectoryPoint> traj;
    traj.push_back({0.0, s.q.x(), s.q.y(), hamiltonian(s.q, p)});
    while (t_span - t > 1e-15 * std::max(1.0, t_span)) {
        if (stepper.suggested() > t_span - t) stepper.reset(t_span - t);
        try {
            stepper.step(t, s);
        } catch (const numeric_error&) {
            break;  // step-size underflow: abort with the partial trajectory
        }
        traj.push_back({t, s.q.x(), s.q.y(), hamiltonian(s.q, p)});
    }
    return traj;
}

double unperturbed_period(OrbitFamilyId family, double h, const SystemParams& p, double tol) {
    // dtheta/dt = 4 (r^2 p(theta) - 1) = +-4 sqrt(1 - h p(theta)) on the two
    // branches; a circulating orbit costs int dtheta / (4 sqrt(1 - h p)),
    // an annular orbit twice the integral between its angular bounds.
    auto integrand = [&](double th) {
        const double d = std::max(0.0, 1.0 - h * p_theta(th, p));
        return 1.0 / (4.0 * std::sqrt(d));
    };
    if (family == OrbitFamilyId::Gamma1 || family == OrbitFamilyId::Gamma2) {
        return integrate(integrand, 0.0, 2.0 * std::acos(-1.0), tol).value;
    }
    const AngularBounds b = theta_bounds(h, p);
    const double lo = family == OrbitFamilyId::Gamma3 ? -b.theta2 : b.theta1;
    return 2.0 * integrate_sqrt_endpoints(integrand, lo, b.theta2, tol).value;
}

namespace {

struct CrossingDetector {
    // signed perpendicular coordinate relative to the ray direction
    double operator()(const Eigen::Vector2d& q) const {
        return -q.x() * std::sin(angle) + q.y() * std::cos(angle);
    }
    bool on_positive_side(const Eigen::Vector2d& q) const {
        return q.x() * std::cos(angle) + q.y() * std::sin(angle) > 0.0;
    }
    double angle;
};

}  // namespace

ReturnMapResult poincare_return(const SectionRay& section, double r_in, const SystemParams& p,
                                double tol, double t_cap, bool with_derivative) {
    if (!(r_in > 0.0)) throw domain_error("poincare_return: requires r_in > 0");
    p.validate();
    const CrossingDetector det{section.angle};
    const Eigen::Vector2d start{r_in * std::cos(section.angle), r_in * std::sin(section.angle)};
    if (t_cap <= 0.0) {
        const double h0 = hamiltonian(start, p);
        const CriticalEnergies c = critical_energies(p);
        double period = 10.0;
        try {
            if (h0 < c.hetero)
                period = unperturbed_period(OrbitFamilyId::Gamma1, h0, p, 1e-9);
            else if (h0 < c.homo)
                period = unperturbed_period(OrbitFamilyId::Gamma3, h0, p, 1e-9);
            else if (h0 < c.upper)
                period = unperturbed_period(OrbitFamilyId::Gamma4, h0, p, 1e-9);
        } catch (const std::exception&) {
        }
        t_cap = 100.0 * period;
    }

    Dopri5 stepper(p, tol);
    stepper.reset(1e-4);
    double t = 0.0;
    State s{start, 0.0};
    const Rhs rhs{p};
    const double dir0 = det(rhs(s).q);  // crossing direction at departure
    if (dir0 == 0.0) throw domain_error("poincare_return: start point is tangent to the section");

    ReturnMapResult out;
    out.section = section;
    out.r_in = r_in;

    double g_prev = det(s.q);  // == 0 at start
    while (t < t_cap) {
        const double t_prev = t;
        const State s_prev = s;
        stepper.step(t, s);
        const double g_now = det(s.q);
        if (t_prev > 1e-12 && g_prev * g_now < 0.0 && det.on_positive_side(s.q) &&
            (g_now - g_prev) * dir0 > 0.0) {
            // bisect the crossing time by re-integrating the bracketing step
            double lo = t_prev, hi = t;
            State s_lo = s_prev;
            for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
                const double mid = 0.5 * (lo + hi);
                State sm = s_lo;
                double tm = lo;
                advance_to(tm, sm, mid, p, tol);
                if (g_prev * det(sm.q) < 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    s_lo = sm;
                }
            }
            out.period_estimate = 0.5 * (lo + hi);
            out.r_out = s_lo.q.norm();
            out.floquet_exponent = s_lo.w;
            if (with_derivative) {
                const double dr = 1e-5 * r_in;
                const ReturnMapResult probe =
                    poincare_return(section, r_in + dr, p, tol, t_cap, false);
                out.derivative_estimate = (probe.r_out - out.r_out) / dr;
            }
            return out;
        }
        g_prev = g_now;
    }
    throw numeric_error("poincare_return: no same-direction return within the time cap (t_cap=" +
                            std::to_string(t_cap) + "); orbit left the family's region",
                        t_cap, 0.0);
}

namespace {

double section_energy(const SectionRay& ray, double r, const SystemParams& p) {
    return hamiltonian(r * std::cos(ray.angle), r * std::sin(ray.angle), p);
}

}  // namespace

VerificationRecord verify_prediction(const CycleFinding& finding, const SystemParams& p_in,
                                     double epsilon, double tol) {
    VerificationRecord rec;
    rec.finding = finding;
    if (epsilon == 0.0) {
        rec.message = "degenerate: eps=0 (every orbit is periodic; nothing to verify)";
        return rec;
    }
    SystemParams p = p_in;
    p.epsilon = epsilon;
    p.lambda0 = finding.lambda0;
    p.validate();

    SectionRay ray{0.0};
    double r_pred;
    switch (finding.family) {
        case OrbitFamilyId::Gamma1:
        case OrbitFamilyId::Gamma3:
            r_pred = std::sqrt(r_squared_branches(0.0, finding.h_root, p).first);
            break;
        case OrbitFamilyId::Gamma2:
            r_pred = std::sqrt(r_squared_branches(0.0, finding.h_root, p).second);
            break;
        case OrbitFamilyId::Gamma4: {
            // the positive x-axis misses these orbits; use the ray through
            // the middle of the angular window around the first-quadrant center
            const AngularBounds b = theta_bounds(finding.h_root, p);
            ray.angle = 0.5 * (b.theta1 + b.theta2);
            r_pred = std::sqrt(r_squared_branches(ray.angle, finding.h_root, p).first);
            break;
        }
        default:
            throw domain_error("verify_prediction: invalid family");
    }

    auto residual = [&](double r) { return poincare_return(ray, r, p, tol).r_out - r; };

    // bracket the fixed point around the predicted radius
    double lo = 0.0, hi = 0.0, flo = 0.0, fhi = 0.0;
    bool bracketed = false;
    for (double delta : {0.002, 0.005, 0.01, 0.02}) {
        try {
            lo = r_pred * (1.0 - delta);
            hi = r_pred * (1.0 + delta);
            flo = residual(lo);
            fhi = residual(hi);
        } catch (const numeric_error&) {
            continue;  // a probe escaped; try a different bracket size
        }
        if (flo == 0.0 || fhi == 0.0 || flo * fhi < 0.0) {
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        rec.message = "fixed point not found in the bracketing annulus around the predicted orbit";
        return rec;
    }
    for (int it = 0; it < 100 && hi - lo > 1e-11 * std::max(1.0, r_pred); ++it) {
        const double mid = 0.5 * (lo + hi);
        double fm;
        try {
            fm = residual(mid);
        } catch (const numeric_error&) {
            rec.message = "return map lost the orbit during bisection";
            return rec;
        }
        if (flo * fm <= 0.0) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    const double r_star = 0.5 * (lo + hi);
    rec.fixed_point_found = true;
    rec.r_star = r_star;
    rec.h_star = section_energy(ray, r_star, p);
    rec.h_gap = std::abs(rec.h_star - finding.h_root);

    // finite-difference return-map derivative across the fixed point
    const double dr = 1e-5 * r_star;
    try {
        const double rp = poincare_return(ray, r_star + dr, p, tol).r_out;
        const double rm = poincare_return(ray, r_star - dr, p, tol).r_out;
        rec.return_derivative = (rp - rm) / (2.0 * dr);
    } catch (const numeric_error&) {
        rec.message = "derivative probes escaped the annulus";
        return rec;
    }
    rec.observed = std::abs(rec.return_derivative) < 1.0 ? Stability::stable : Stability::unstable;
    rec.stability_match = rec.observed == finding.stability;
    rec.verified = rec.stability_match;
    rec.message = rec.verified ? "verified" : "stability mismatch";
    return rec;
}

}  // namespace lcycle
