#pragma once
// Independent reference computations used only by the tests: adaptive
// Simpson quadrature of the kinetic interface densities, bisection for
// steady states, and a textbook MOC march.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                           double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int max_depth = 50) {
    if (b <= a) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// Integral over [a, b] split at the given points, so that each piece is free
// of the indicator discontinuities.
inline double integrate_pieces(const std::function<double(double)>& f, double a, double b,
                               std::vector<double> cuts, double tol) {
    cuts.push_back(a);
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double lo = std::clamp(cuts[k], a, b);
        const double hi = std::clamp(cuts[k + 1], a, b);
        if (hi > lo) sum += adaptive_simpson(f, lo, hi, tol);
    }
    return sum;
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iterations = 200) {
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw std::runtime_error("bisect: root not bracketed");
    for (int k = 0; k < iterations; ++k) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct Half {
    double area = 0.0;      // integral of xi M(xi)
    double momentum = 0.0;  // integral of xi^2 M(xi)
};

struct Fluxes {
    Half minus, plus;
};

// Rectangular equilibrium A / (2 c sqrt3) on [u - c sqrt3, u + c sqrt3].
inline double box(double A, double u, double c, double xi) {
    const double s = c * std::sqrt(3.0);
    return (xi >= u - s && xi <= u + s) ? A / (2.0 * s) : 0.0;
}

// Interface densities with reflection below and transmission above the
// potential barrier 2 g dZ, integrated against xi and xi^2.
inline Fluxes interface_fluxes(double al, double ql, double ar, double qr, double zl, double zr,
                               double c, double g, double tol = 1e-14) {
    const double ul = ql / al;
    const double ur = qr / ar;
    const double s = c * std::sqrt(3.0);
    const double dm = 2.0 * g * (zr - zl);  // barrier seen from the left
    const double dp = -dm;                   // barrier seen from the right

    const auto m_minus = [&](double xi) {
        if (xi >= 0.0) return box(al, ul, c, xi);
        double v = 0.0;
        if (xi * xi <= dm) v += box(al, ul, c, -xi);
        if (xi * xi >= dm) v += box(ar, ur, c, -std::sqrt(xi * xi - dm));
        return v;
    };
    const auto m_plus = [&](double xi) {
        if (xi <= 0.0) return box(ar, ur, c, xi);
        double v = 0.0;
        if (xi * xi <= dp) v += box(ar, ur, c, -xi);
        if (xi * xi >= dp) v += box(al, ul, c, std::sqrt(xi * xi - dp));
        return v;
    };

    // Breakpoints of every indicator, in xi.
    std::vector<double> cuts = {0.0};
    for (double d : {dm, dp}) {
        if (d > 0.0) {
            cuts.push_back(std::sqrt(d));
            cuts.push_back(-std::sqrt(d));
        }
    }
    for (double edge : {ul - s, ul + s, ur - s, ur + s}) {
        cuts.push_back(edge);
        cuts.push_back(-edge);
        for (double d : {dm, dp}) {
            const double e2 = edge * edge + d;
            if (e2 > 0.0) {
                cuts.push_back(std::sqrt(e2));
                cuts.push_back(-std::sqrt(e2));
            }
        }
    }
    const double reach =
        std::sqrt(std::pow(std::max(std::abs(ul), std::abs(ur)) + s, 2) + std::abs(dm)) * 1.01 +
        1.0;

    const double scale_a = std::max(al, ar) * c;
    const double scale_q = std::max(al, ar) * c * c;
    Fluxes out;
    out.minus.area = integrate_pieces([&](double x) { return x * m_minus(x); }, -reach, reach,
                                      cuts, tol * scale_a);
    out.minus.momentum = integrate_pieces([&](double x) { return x * x * m_minus(x); }, -reach,
                                          reach, cuts, tol * scale_q);
    out.plus.area = integrate_pieces([&](double x) { return x * m_plus(x); }, -reach, reach, cuts,
                                     tol * scale_a);
    out.plus.momentum = integrate_pieces([&](double x) { return x * x * m_plus(x); }, -reach,
                                         reach, cuts, tol * scale_q);
    return out;
}

// Steady area from u^2/2 + g z + c^2 ln A = head by bisection around S.
inline double steady_area(double head, double q, double z, double c, double g, double S) {
    const auto f = [&](double A) {
        const double u = q / A;
        return 0.5 * u * u + g * z + c * c * std::log(A) - head;
    };
    return bisect(f, 0.5 * S, 2.0 * S);
}

// Textbook frictionless MOC, written independently of the library: nodes
// 0..n-1, reservoir upstream at constant head, discharge law downstream.
struct Moc {
    std::vector<double> H, Q;
    double B = 0.0;  // a / (g S)
    double dt = 0.0;

    template <typename Law>
    void step(double reservoir_head, double t_next, Law&& law) {
        const std::size_t n = H.size();
        std::vector<double> h(n), q(n);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            const double cp = H[i - 1] + B * Q[i - 1];
            const double cm = H[i + 1] - B * Q[i + 1];
            h[i] = 0.5 * (cp + cm);
            q[i] = (cp - cm) / (2.0 * B);
        }
        h[0] = reservoir_head;
        q[0] = (reservoir_head - (H[1] - B * Q[1])) / B;
        q[n - 1] = law(t_next);
        h[n - 1] = H[n - 2] + B * Q[n - 2] - B * q[n - 1];
        H.swap(h);
        Q.swap(q);
    }
};

}  // namespace oracle
