#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <utility>
#include <vector>

#include "lcycle/params.hpp"

namespace lcycle {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  ///< absolute
    long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGK15WeightsK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule (at nodes 1, 3, 5, 7).
inline constexpr double kGK15WeightsG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
void gk15(F& f, double a, double b, double& value, double& error) {
    const double c = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double ik = 0.0, ig = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kGK15Nodes[i];
        const double f1 = f(c - dx);
        const double f2 = (i == 7) ? f1 : f(c + dx);
        const double both = (i == 7) ? f1 : f1 + f2;
        ik += kGK15WeightsK[i] * both;
        if (i % 2 == 1) ig += kGK15WeightsG[i / 2] * both;
    }
    value = ik * half;
    error = std::abs((ik - ig) * half);
}

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 integration of f over [lo, hi].
/// Terminates when the summed error estimate drops below
/// max(tol, tol * |integral|); raises numeric_error (carrying the best
/// estimate) if 2^15 subintervals do not reach that.
template <class F>
QuadratureResult integrate(F&& f, double lo, double hi, double tol = 1e-9) {
    if (!(lo <= hi)) throw domain_error("integrate: requires lo <= hi");
    if (!(tol > 0.0)) throw domain_error("integrate: requires tol > 0");
    QuadratureResult res;
    if (lo == hi) {
        res.evaluations = 1;
        return res;
    }
    long evals = 0;
    auto counted = [&](double x) {
        ++evals;
        return f(x);
    };

    constexpr std::size_t kMaxSegments = std::size_t(1) << 15;
    std::priority_queue<detail::Segment> heap;
    double total = 0.0, total_err = 0.0;
    auto push = [&](double a, double b) {
        detail::Segment s{a, b, 0.0, 0.0};
        detail::gk15(counted, a, b, s.value, s.error);
        total += s.value;
        total_err += s.error;
        heap.push(s);
    };
    push(lo, hi);
    std::size_t segments = 1;
    while (total_err > std::max(tol, tol * std::abs(total))) {
        if (segments >= kMaxSegments)
            throw numeric_error("integrate: accuracy target not reached after 2^15 subintervals",
                                total, total_err);
        detail::Segment worst = heap.top();
        heap.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw numeric_error("integrate: interval too small to subdivide further", total + worst.value,
                                total_err + worst.error);
        push(worst.a, mid);
        push(mid, worst.b);
        ++segments;
    }
    res.value = total;
    res.error_estimate = total_err;
    res.evaluations = evals;
    return res;
}

/// As integrate(), for integrands with |x - endpoint|^(+-1/2) behaviour at a
/// flagged endpoint. The substitution x = lo + t^2 (resp. hi - t^2) converts
/// both square-root and inverse-square-root endpoint behaviour into a smooth
/// integrand before the adaptive rule runs.
template <class F>
QuadratureResult integrate_sqrt_endpoints(F&& f, double lo, double hi, double tol = 1e-9,
                                          bool sqrt_at_lo = true, bool sqrt_at_hi = true) {
    if (!(lo <= hi)) throw domain_error("integrate_sqrt_endpoints: requires lo <= hi");
    if (lo == hi || (!sqrt_at_lo && !sqrt_at_hi))
        return integrate(std::forward<F>(f), lo, hi, tol);

    QuadratureResult out;
    const double mid = 0.5 * (lo + hi);
    const double half_tol = (sqrt_at_lo && sqrt_at_hi) ? 0.5 * tol : tol;
    auto accumulate = [&out](const QuadratureResult& r) {
        out.value += r.value;
        out.error_estimate += r.error_estimate;
        out.evaluations += r.evaluations;
    };
    if (sqrt_at_lo) {
        auto g = [&](double t) { return 2.0 * t * f(lo + t * t); };
        accumulate(integrate(g, 0.0, std::sqrt(mid - lo), half_tol));
    } else {
        accumulate(integrate(f, lo, mid, half_tol));
    }
    if (sqrt_at_hi) {
        auto g = [&](double t) { return 2.0 * t * f(hi - t * t); };
        accumulate(integrate(g, 0.0, std::sqrt(hi - mid), half_tol));
    } else {
        accumulate(integrate(f, mid, hi, half_tol));
    }
    return out;
}

}  // namespace lcycle
