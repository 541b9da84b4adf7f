#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcycle/detection.hpp"
#include "lcycle/ode.hpp"

using namespace lcycle;

namespace {

SystemParams unperturbed() {
    SystemParams p;
    p.epsilon = 0.0;
    return p;
}

SystemParams degree(int n) {
    SystemParams p;
    p.n = n;
    p.mu = n / 2;
    p.beta = n - p.mu;
    return p;
}

CycleFinding finding_at(OrbitFamilyId fam, double lambda0, const SystemParams& p, double h_lo,
                        double h_hi) {
    // locate the root of the detection curve by direct bisection
    auto f = [&](double h) {
        const DetectionSample s = lambda_j(fam, h, p);
        return p.u * s.cu + p.v * s.cv - lambda0;
    };
    double lo = h_lo, hi = h_hi, flo = f(lo);
    REQUIRE(flo * f(hi) < 0.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (flo * fm <= 0.0)
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    const double h_root = 0.5 * (lo + hi);
    const double d = 1e-6;
    const double slope = (f(h_root + d) - f(h_root - d)) / (2.0 * d);
    CycleFinding out;
    out.family = fam;
    out.h_root = h_root;
    out.lambda0 = lambda0;
    out.slope = slope;
    out.stability = stability(family_info(fam, p).orientation, slope);
    out.count = family_info(fam, p).multiplicity;
    return out;
}

}  // namespace

TEST_CASE("vector field values") {
    SystemParams p = unperturbed();
    CHECK(vector_field({0.0, 0.0}, p).norm() == 0.0);
    CHECK(vector_field({0.0, std::sqrt(2.0)}, p).norm() < 1e-14);
    const Eigen::Vector2d f = vector_field({1.0, 1.0}, p);
    CHECK(f.x() == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(f.y() == doctest::Approx(-10.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("energy conservation over one period per family") {
    const SystemParams p = unperturbed();
    struct Case {
        OrbitFamilyId fam;
        double h;
        double theta;
        bool outer;
    };
    for (const Case c : {Case{OrbitFamilyId::Gamma1, -1.0, 0.0, true},
                         Case{OrbitFamilyId::Gamma2, 1.0, 0.0, false},
                         Case{OrbitFamilyId::Gamma3, 2.5, 0.0, true},
                         Case{OrbitFamilyId::Gamma4, 4.0, 0.7, true}}) {
        const auto [r1, r2] = r_squared_branches(c.theta, c.h, p);
        const double r = std::sqrt(c.outer ? r1 : r2);
        const double period = unperturbed_period(c.fam, c.h, p);
        const auto traj = integrate_orbit({r * std::cos(c.theta), r * std::sin(c.theta)}, period, p,
                                          1e-10);
        double drift = 0.0;
        for (const auto& tp : traj) drift = std::max(drift, std::abs(tp.h - c.h));
        CHECK(drift < 1e-8);
    }
}

TEST_CASE("the unperturbed flow commutes with the point reflection") {
    const SystemParams p = unperturbed();
    const Eigen::Vector2d q0{1.3, 0.4};
    const auto fwd = integrate_orbit(q0, 2.0, p, 1e-11);
    const auto mir = integrate_orbit(-q0, 2.0, p, 1e-11);
    const auto& a = fwd.back();
    const auto& b = mir.back();
    CHECK(std::abs(a.x + b.x) < 1e-8);
    CHECK(std::abs(a.y + b.y) < 1e-8);
}

TEST_CASE("closed unperturbed orbits return to the section") {
    const SystemParams p = unperturbed();
    const double r_in = std::sqrt(r_squared_branches(0.0, 1.0, p).second);
    const ReturnMapResult r = poincare_return(SectionRay{0.0}, r_in, p, 1e-11);
    CHECK(std::abs(r.r_out - r.r_in) < 1e-7);
    CHECK(r.period_estimate ==
          doctest::Approx(unperturbed_period(OrbitFamilyId::Gamma2, 1.0, p)).epsilon(1e-6));
    CHECK(std::abs(r.floquet_exponent) < 1e-12);

    // small orbit around the center at the origin
    const ReturnMapResult c = poincare_return(SectionRay{0.0}, 0.2, p, 1e-11);
    CHECK(std::abs(c.r_out - 0.2) < 1e-6);

    // the unperturbed return map is the identity, so its derivative is 1
    const ReturnMapResult d = poincare_return(SectionRay{0.0}, r_in, p, 1e-11, 0.0, true);
    CHECK(d.derivative_estimate == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("energy stays conserved over ten revolutions") {
    const SystemParams p = unperturbed();
    const double r = std::sqrt(r_squared_branches(0.0, 1.0, p).second);
    const double period = unperturbed_period(OrbitFamilyId::Gamma2, 1.0, p);
    const auto traj = integrate_orbit({r, 0.0}, 10.0 * period, p, 1e-10);
    CHECK(traj.back().t == doctest::Approx(10.0 * period).epsilon(1e-12));
    double drift = 0.0;
    for (const auto& tp : traj) drift = std::max(drift, std::abs(tp.h - 1.0));
    CHECK(drift < 1e-8);
}

TEST_CASE("period grows toward the homoclinic level") {
    const SystemParams p = unperturbed();
    double prev = 0.0;
    for (double h : {2.9, 2.99, 2.999}) {
        const double r_in = std::sqrt(r_squared_branches(0.0, h, p).first);
        const ReturnMapResult r = poincare_return(SectionRay{0.0}, r_in, p, 1e-10);
        CHECK(r.period_estimate > prev);
        CHECK(r.period_estimate ==
              doctest::Approx(unperturbed_period(OrbitFamilyId::Gamma3, h, p)).epsilon(1e-5));
        prev = r.period_estimate;
    }
}

TEST_CASE("verification refuses the degenerate case") {
    const SystemParams p = degree(12);
    CycleFinding f;
    f.family = OrbitFamilyId::Gamma2;
    f.h_root = 1.0;
    f.lambda0 = 0.0;
    f.slope = -1.0;
    f.stability = Stability::stable;
    f.count = 1;
    const VerificationRecord rec = verify_prediction(f, p, 0.0);
    CHECK_FALSE(rec.verified);
    CHECK_FALSE(rec.fixed_point_found);
    CHECK(rec.message.find("degenerate") != std::string::npos);
}

TEST_CASE("inner-family cycle is located and stable at negative slope") {
    SystemParams p = degree(12);  // defaults u = 0.007, v = -0.028
    const CycleFinding f = finding_at(OrbitFamilyId::Gamma2, -0.01, p, 1.3, 1.9);
    CHECK(f.slope < 0.0);
    CHECK(f.stability == Stability::stable);
    const VerificationRecord rec = verify_prediction(f, p, 1e-3, 1e-11);
    CHECK(rec.fixed_point_found);
    CHECK(rec.h_gap < 1e-3);
    CHECK(std::abs(rec.return_derivative) < 1.0);
    CHECK(rec.stability_match);
    CHECK(rec.verified);

    // the reported fixed point closes the return map
    SystemParams pv = p;
    pv.epsilon = 1e-3;
    pv.lambda0 = f.lambda0;
    const ReturnMapResult rm = poincare_return(SectionRay{0.0}, rec.r_star, pv, 1e-11);
    CHECK(std::abs(rm.r_out - rm.r_in) < 1e-8);
}

TEST_CASE("both slope signs verify on the inner family") {
    SystemParams p = degree(12);
    p.u = 0.7;
    p.v = -2.8;  // scaled weights sharpen the return-map derivative
    const CycleFinding rising = finding_at(OrbitFamilyId::Gamma2, 0.2, p, 0.1, 1.2);
    CHECK(rising.slope > 0.0);
    CHECK(rising.stability == Stability::unstable);
    const VerificationRecord rec_r = verify_prediction(rising, p, 1e-3, 1e-11);
    CHECK(rec_r.fixed_point_found);
    CHECK(std::abs(rec_r.return_derivative) > 1.0);
    CHECK(rec_r.stability_match);

    const CycleFinding falling = finding_at(OrbitFamilyId::Gamma2, 0.2, p, 1.3, 1.8);
    CHECK(falling.slope < 0.0);
    CHECK(falling.stability == Stability::stable);
    const VerificationRecord rec_f = verify_prediction(falling, p, 1e-3, 1e-11);
    CHECK(rec_f.fixed_point_found);
    CHECK(std::abs(rec_f.return_derivative) < 1.0);
    CHECK(rec_f.stability_match);
}

TEST_CASE("outer-family cycle verifies at low degree") {
    // at n = 4 the cross term stays small on the outer orbits, so eps = 1e-3
    // is honestly perturbative there
    SystemParams p = degree(4);
    const CycleFinding f = finding_at(OrbitFamilyId::Gamma1, -0.39, p, -1.9, 1.9);
    CHECK(f.slope > 0.0);
    CHECK(f.stability == Stability::stable);
    const VerificationRecord rec = verify_prediction(f, p, 1e-3, 1e-11);
    CHECK(rec.fixed_point_found);
    CHECK(rec.h_gap < 0.05 * std::abs(f.h_root) + 0.05);
    CHECK(rec.stability_match);
}

TEST_CASE("annular families verify through their section rays") {
    // low degree keeps eps = 1e-3 perturbative on the side and corner orbits
    SystemParams p = degree(4);

    const CycleFinding f3 = finding_at(OrbitFamilyId::Gamma3, -0.385, p, 2.1, 2.9);
    CHECK(f3.slope < 0.0);
    CHECK(f3.stability == Stability::unstable);
    CHECK(f3.count == 2);
    const VerificationRecord r3 = verify_prediction(f3, p, 1e-3, 1e-11);
    CHECK(r3.fixed_point_found);
    CHECK(r3.h_gap < 0.05 * std::abs(f3.h_root) + 0.05);
    CHECK(std::abs(r3.return_derivative) > 1.0);
    CHECK(r3.stability_match);

    const CycleFinding f4 = finding_at(OrbitFamilyId::Gamma4, -0.46, p, 3.2, 8.0);
    CHECK(f4.slope < 0.0);
    CHECK(f4.stability == Stability::unstable);
    CHECK(f4.count == 4);
    const VerificationRecord r4 = verify_prediction(f4, p, 1e-3, 1e-11);
    CHECK(r4.fixed_point_found);
    CHECK(r4.h_gap < 0.05 * std::abs(f4.h_root) + 0.05);
    CHECK(std::abs(r4.return_derivative) > 1.0);
    CHECK(r4.stability_match);
}

TEST_CASE("located energy converges as the perturbation shrinks") {
    SystemParams p = degree(4);
    const CycleFinding f = finding_at(OrbitFamilyId::Gamma1, -0.39, p, -1.9, 1.9);
    double prev = 1e300;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
        const VerificationRecord rec = verify_prediction(f, p, eps, 1e-11);
        REQUIRE(rec.fixed_point_found);
        CHECK(rec.h_gap < prev);
        prev = rec.h_gap;
    }
}

TEST_CASE("non-perturbative outer case reports a clean failure") {
    // at n = 12 the fixed cross term dominates the outer orbits at eps = 1e-3;
    // the predicted cycle has no counterpart and verification must say so
    SystemParams p = degree(12);
    const CycleFinding f = finding_at(OrbitFamilyId::Gamma1, 300.0, p, -1.9, 1.9);
    const VerificationRecord rec = verify_prediction(f, p, 1e-3, 1e-8);
    CHECK_FALSE(rec.fixed_point_found);
    CHECK_FALSE(rec.verified);
    CHECK(!rec.message.empty());
}
