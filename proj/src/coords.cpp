#include "planelab/coords.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace planelab {

// --- radial specs -----------------------------------------------------------

double RadialSpec::eval(double x) const {
    switch (kind) {
    case Kind::Identity: return x;
    case Kind::Power: return std::pow(x, exponent);
    case Kind::QuadMean: return 0.5 * (x + x * x);
    case Kind::TableSpline: {
        if (x <= knots.front().first) {
            // linear from the origin through the first knot
            double k0 = knots.front().second / std::max(knots.front().first, 1e-300);
            return k0 * x;
        }
        for (size_t i = 1; i < knots.size(); ++i) {
            if (x <= knots[i].first) {
                double t = (x - knots[i - 1].first) / (knots[i].first - knots[i - 1].first);
                return knots[i - 1].second + t * (knots[i].second - knots[i - 1].second);
            }
        }
        auto& a = knots[knots.size() - 2];
        auto& b = knots.back();
        double slope = (b.second - a.second) / (b.first - a.first);
        return b.second + slope * (x - b.first);
    }
    }
    return x;
}

double RadialSpec::inverse(double y) const {
    switch (kind) {
    case Kind::Identity: return y;
    case Kind::Power: return std::pow(y, 1.0 / exponent);
    case Kind::QuadMean: return 0.5 * (-1.0 + std::sqrt(1.0 + 8.0 * y));
    case Kind::TableSpline: {
        // bracket then bisect to 1e-12
        double lo = 0.0, hi = 1.0;
        while (eval(hi) < y && hi < 1e300) hi *= 2.0;
        for (int i = 0; i < 200; ++i) {
            double mid = 0.5 * (lo + hi);
            if (eval(mid) < y) lo = mid; else hi = mid;
            if (hi - lo < 1e-13 * (1.0 + hi)) break;
        }
        return 0.5 * (lo + hi);
    }
    }
    return y;
}

double RadialSpec::odd_eval(double x) const {
    return x >= 0 ? eval(x) : -eval(-x);
}

double RadialSpec::odd_inverse(double y) const {
    return y >= 0 ? inverse(y) : -inverse(-y);
}

RadialSpec RadialSpec::identity() { return RadialSpec{}; }

RadialSpec RadialSpec::power(double r) {
    if (!(r > 0)) throw parameter_error("radial power exponent must be > 0");
    RadialSpec s;
    s.kind = Kind::Power;
    s.exponent = r;
    return s;
}

RadialSpec RadialSpec::quad_mean() {
    RadialSpec s;
    s.kind = Kind::QuadMean;
    return s;
}

RadialSpec RadialSpec::spline(std::vector<std::pair<double, double>> knots) {
    if (knots.size() < 2) throw parameter_error("spline needs at least two knots");
    for (size_t i = 1; i < knots.size(); ++i)
        if (knots[i].first <= knots[i - 1].first || knots[i].second <= knots[i - 1].second)
            throw parameter_error("spline knots must be strictly increasing");
    RadialSpec s;
    s.kind = Kind::TableSpline;
    s.knots = std::move(knots);
    // must fix 1
    if (std::fabs(s.eval(1.0) - 1.0) > 1e-12)
        throw parameter_error("spline must fix 1");
    return s;
}

// --- Andre direction map ----------------------------------------------------

static double pl_table(double u, const double (*kn)[2], int n) {
    if (u <= kn[0][0]) return kn[0][1];
    for (int i = 1; i < n; ++i)
        if (u <= kn[i][0]) {
            double t = (u - kn[i - 1][0]) / (kn[i][0] - kn[i - 1][0]);
            return kn[i - 1][1] + t * (kn[i][1] - kn[i - 1][1]);
        }
    return kn[n - 1][1];
}

Elem AndreSpec::phi(double s_abs) const {
    if (kind == Kind::Hom) {
        double a = beta * std::log(s_abs);
        return Elem(Alg::H, {std::cos(a), std::sin(a), 0.0, 0.0});
    }
    // fixed non-homomorphic table in u = log|s|, zero at u = 0 so phi(1) = 1
    static const double ka[5][2] = {{-3, -0.8}, {-1, -0.5}, {0, 0}, {1, 0.3}, {3, 0.9}};
    static const double kb[4][2] = {{-3, 0.5}, {0, 0}, {2, -0.7}, {3, -0.7}};
    double u = std::log(s_abs);
    Elem v(Alg::H, {1.0, pl_table(u, ka, 5), pl_table(u, kb, 4), 0.0});
    return (1.0 / norm(v)) * v;
}

// --- structure setup --------------------------------------------------------

void CoordinateStructure::validate() const {
    switch (family) {
    case Family::MutationH:
    case Family::MutationO:
        if (!(mu > 0.5)) throw parameter_error("mutation weight must satisfy mu > 1/2");
        break;
    case Family::Rees:
        if (!(theta > 0.0 && theta < 3.14159265358979323846))
            throw parameter_error("rees angle must lie in (0, pi)");
        break;
    case Family::Lenz5:
        if (!(alpha > 0.0 && alpha < 1.5707963267948966))
            throw parameter_error("lenz5 angle must lie in (0, pi/2)");
        break;
    case Family::Spin:
        if (!(spin_r > 0.0)) throw parameter_error("spin parameter must be > 0");
        break;
    case Family::Moulton:
        if (!(moulton_k > 1.0)) throw parameter_error("moulton constant must be > 1");
        break;
    case Family::Tschet:
    case Family::TschetDual:
        if (!tschet_kinked && radial.kind == RadialSpec::Kind::Power && !(radial.exponent > 0))
            throw parameter_error("tschet exponent must be > 0");
        break;
    default:
        break;
    }
}

bool CoordinateStructure::left_distributive() const {
    switch (family) {
    case Family::Classical:
    case Family::MutationH:
    case Family::MutationO:
    case Family::Rees:
    case Family::Lenz5:
    case Family::Spin:
    case Family::Andre:
    case Family::HaehlSO4:
        return true;
    default:
        return false;
    }
}

CoordinateStructure cs_classical(Alg a) {
    CoordinateStructure cs;
    cs.family = Family::Classical;
    cs.carrier = a;
    return cs;
}

CoordinateStructure cs_mutation_h(double mu) {
    CoordinateStructure cs;
    cs.family = Family::MutationH;
    cs.carrier = Alg::H;
    cs.mu = mu;
    cs.validate();
    return cs;
}

CoordinateStructure cs_mutation_o(double mu) {
    CoordinateStructure cs;
    cs.family = Family::MutationO;
    cs.carrier = Alg::O;
    cs.mu = mu;
    cs.validate();
    return cs;
}

CoordinateStructure cs_rees(double theta) {
    CoordinateStructure cs;
    cs.family = Family::Rees;
    cs.carrier = Alg::H; // C^2 packed into four coordinates
    cs.theta = theta;
    cs.validate();
    return cs;
}

CoordinateStructure cs_lenz5(double alpha) {
    CoordinateStructure cs;
    cs.family = Family::Lenz5;
    cs.carrier = Alg::H;
    cs.alpha = alpha;
    cs.validate();
    return cs;
}

CoordinateStructure cs_andre_hom(double beta) {
    CoordinateStructure cs;
    cs.family = Family::Andre;
    cs.carrier = Alg::H;
    cs.andre.kind = AndreSpec::Kind::Hom;
    cs.andre.beta = beta;
    return cs;
}

CoordinateStructure cs_andre_spline() {
    CoordinateStructure cs;
    cs.family = Family::Andre;
    cs.carrier = Alg::H;
    cs.andre.kind = AndreSpec::Kind::Spline;
    return cs;
}

CoordinateStructure cs_haehl(RadialSpec rho) {
    CoordinateStructure cs;
    cs.family = Family::HaehlSO4;
    cs.carrier = Alg::H;
    cs.radial = std::move(rho);
    return cs;
}

CoordinateStructure cs_distorted_h(RadialSpec rho) {
    CoordinateStructure cs;
    cs.family = Family::DistortedH;
    cs.carrier = Alg::H;
    cs.radial = std::move(rho);
    return cs;
}

CoordinateStructure cs_distorted_o(RadialSpec rho) {
    CoordinateStructure cs;
    cs.family = Family::DistortedO;
    cs.carrier = Alg::O;
    cs.radial = std::move(rho);
    return cs;
}

CoordinateStructure cs_spin(double r) {
    CoordinateStructure cs;
    cs.family = Family::Spin;
    cs.carrier = Alg::H;
    cs.spin_r = r;
    cs.validate();
    return cs;
}

CoordinateStructure cs_moulton(double k) {
    CoordinateStructure cs;
    cs.family = Family::Moulton;
    cs.carrier = Alg::R;
    cs.moulton_k = k;
    cs.validate();
    return cs;
}

CoordinateStructure cs_tschet(double r) {
    CoordinateStructure cs;
    cs.family = Family::Tschet;
    cs.carrier = Alg::R;
    cs.radial = RadialSpec::power(r);
    return cs;
}

CoordinateStructure cs_tschet_kinked(double k) {
    CoordinateStructure cs;
    cs.family = Family::Tschet;
    cs.carrier = Alg::R;
    cs.tschet_kinked = true;
    cs.radial.exponent = k; // kink factor
    return cs;
}

CoordinateStructure cs_tschet_dual(double r) {
    CoordinateStructure cs;
    cs.family = Family::TschetDual;
    cs.carrier = Alg::R;
    cs.radial = RadialSpec::power(r);
    return cs;
}

// Numbers through the branch map of a Tschetweruchin structure.
static double rho1(const CoordinateStructure& cs, double x) {
    return cs.tschet_kinked ? cs.radial.kinked_eval(x) : cs.radial.odd_eval(x);
}

static double rho1_inv(const CoordinateStructure& cs, double y) {
    if (cs.tschet_kinked) return y >= 0 ? y : y / cs.radial.exponent;
    return cs.radial.odd_inverse(y);
}

double cs_star(const CoordinateStructure& cs, double r, double s) {
    if (r == 0.0 || s == 0.0) return 0.0;
    double sign = (r < 0 ? -1.0 : 1.0) * (s < 0 ? -1.0 : 1.0);
    return sign * cs.radial.inverse(cs.radial.eval(std::fabs(r)) * cs.radial.eval(std::fabs(s)));
}

// Lenz type V decomposition c = sigma + fs a, a = e^{i alpha}.
static void lenz_decompose(const CoordinateStructure& cs, const Elem& c, double& sigma, Elem& fs) {
    double ca = std::cos(cs.alpha), sa = std::sin(cs.alpha);
    double s1 = c[1] / ca;
    double s2 = c[2] * ca - c[3] * sa;
    double s3 = c[2] * sa + c[3] * ca;
    sigma = c[0] + s1 * sa;
    fs = Elem(Alg::H, {0.0, s1, s2, s3});
}

Elem cs_multiply(const CoordinateStructure& cs, const Elem& s, const Elem& x) {
    switch (cs.family) {
    case Family::Classical:
        return mul(s, x);
    case Family::MutationH:
    case Family::MutationO:
        return cs.mu * mul(s, x) + (1.0 - cs.mu) * mul(x, s);
    case Family::Rees: {
        // (a,b) o (x,y) = (a x + e^{i theta} b~ y, b x + a~ y) on C^2
        double ar = s[0], ai = s[1], br = s[2], bi = s[3];
        double xr = x[0], xi = x[1], yr = x[2], yi = x[3];
        double ct = std::cos(cs.theta), st = std::sin(cs.theta);
        // b~ y
        double by_r = br * yr + bi * yi;
        double by_i = br * yi - bi * yr;
        // e^{i theta} (b~ y)
        double eby_r = ct * by_r - st * by_i;
        double eby_i = st * by_r + ct * by_i;
        double u_r = ar * xr - ai * xi + eby_r;
        double u_i = ar * xi + ai * xr + eby_i;
        // b x + a~ y
        double v_r = br * xr - bi * xi + ar * yr + ai * yi;
        double v_i = br * xi + bi * xr + ar * yi - ai * yr;
        return Elem(Alg::H, {u_r, u_i, v_r, v_i});
    }
    case Family::Lenz5: {
        double sigma;
        Elem fs(Alg::H);
        lenz_decompose(cs, s, sigma, fs);
        Elem a(Alg::H, {std::cos(cs.alpha), std::sin(cs.alpha), 0.0, 0.0});
        return sigma * x + mul(mul(fs, x), a);
    }
    case Family::Andre: {
        double ns = norm(s);
        if (ns == 0.0 || norm2(x) == 0.0) return Elem::zero(cs.carrier);
        Elem g = cs.andre.phi(ns);
        return mul(s, mul(mul(inverse(g), x), g));
    }
    case Family::HaehlSO4: {
        double ns = norm(s);
        if (ns == 0.0) return Elem::zero(cs.carrier);
        double phi_s = cs.radial.eval(ns) / ns;
        Elem v = Elem::real(cs.carrier, x[0]) + phi_s * pure(x);
        return mul(s, v);
    }
    case Family::DistortedH:
    case Family::DistortedO: {
        double nc = norm(s), nz = norm(x);
        if (nc == 0.0 || nz == 0.0) return Elem::zero(cs.carrier);
        Elem p = mul(s, x);
        return (cs_star(cs, nc, nz) / norm(p)) * p;
    }
    case Family::Spin: {
        Elem p = mul(s, x);
        p[0] += 2.0 * cs.spin_r * (s[2] * x[3] - s[3] * x[2]);
        return p;
    }
    case Family::Moulton: {
        double sv = s[0], xv = x[0];
        double prod = (sv < 0.0 && xv < 0.0) ? sv * cs.moulton_k * xv : sv * xv;
        return Elem(Alg::R, {prod});
    }
    case Family::Tschet:
    case Family::TschetDual:
        // tau(s,x,0) reduces to the ordinary product for the odd power map
        return cs_ternary(cs, s, x, Elem::zero(Alg::R));
    }
    throw structural_error("unknown family");
}

Elem cs_add(const CoordinateStructure& cs, const Elem& x, const Elem& t) {
    if (cs.family == Family::TschetDual) {
        double xv = x[0], tv = t[0];
        if (xv >= cs.branch_shift) return Elem(Alg::R, {xv + tv});
        return Elem(Alg::R, {rho1_inv(cs, rho1(cs, xv) + rho1(cs, tv))});
    }
    return x + t;
}

Elem cs_ternary(const CoordinateStructure& cs, const Elem& s, const Elem& x, const Elem& t) {
    switch (cs.family) {
    case Family::Tschet: {
        double sv = s[0], xv = x[0], tv = t[0];
        if (sv >= cs.branch_shift)
            return Elem(Alg::R, {sv * xv + tv});
        return Elem(Alg::R, {rho1_inv(cs, rho1(cs, sv) * rho1(cs, xv) + rho1(cs, tv))});
    }
    case Family::TschetDual: {
        double sv = s[0], xv = x[0], tv = t[0];
        if (xv >= cs.branch_shift)
            return Elem(Alg::R, {sv * xv + tv});
        return Elem(Alg::R, {rho1_inv(cs, rho1(cs, sv) * rho1(cs, xv) + rho1(cs, tv))});
    }
    default:
        return cs_multiply(cs, s, x) + t;
    }
}

Mat left_mul_op(const CoordinateStructure& cs, const Elem& s) {
    const int n = cs.carrier_dim();
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        Elem col = cs_multiply(cs, s, Elem::unit(cs.carrier, j));
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

Mat right_mul_op(const CoordinateStructure& cs, const Elem& x) {
    const int n = cs.carrier_dim();
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        Elem col = cs_multiply(cs, Elem::unit(cs.carrier, j), x);
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

static Elem solve_via(const Mat& op, const Elem& w, Alg tag) {
    std::vector<double> b(static_cast<size_t>(dim(tag)));
    for (int i = 0; i < dim(tag); ++i) b[static_cast<size_t>(i)] = w[i];
    auto x = solve_linear(op, b);
    Elem r(tag);
    for (int i = 0; i < dim(tag); ++i) r[i] = x[static_cast<size_t>(i)];
    return r;
}

// Bracketed bisection for a continuous g with g(lo) and g(hi) of opposite
// sign. Scans a log grid when no bracket is supplied.
static double bisect_root(const std::function<double(double)>& g, double lo, double hi,
                          int steps) {
    double glo = g(lo), ghi = g(hi);
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if (glo * ghi > 0.0) throw solver_error("bisection: no bracket", std::fabs(glo));
    for (int i = 0; i < steps; ++i) {
        double mid = 0.5 * (lo + hi);
        double gm = g(mid);
        if (gm == 0.0) return mid;
        if (glo * gm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            glo = gm;
        }
    }
    return 0.5 * (lo + hi);
}

// find r > 0 with g(r) = 0, scanning a log grid for the first sign change
static double positive_root(const std::function<double(double)>& g, int steps, double offset) {
    double prev = 1e-9 * offset;
    double gprev = g(prev);
    if (gprev == 0.0) return prev;
    double best = std::fabs(gprev);
    for (double r = 1e-8 * offset; r < 1e12; r *= 1.35) {
        double gr = g(r);
        best = std::min(best, std::fabs(gr));
        if (gr == 0.0) return r;
        if (gprev * gr < 0.0) return bisect_root(g, prev, r, steps);
        prev = r;
        gprev = gr;
    }
    throw solver_error("radial solve: no sign change found", best);
}

Elem solve_slope(const CoordinateStructure& cs, const Elem& x, const Elem& w) {
    if (norm2(x) == 0.0) throw parameter_error("solve_slope requires x != 0");
    if (norm2(w) == 0.0) return Elem::zero(cs.carrier);
    switch (cs.family) {
    case Family::Classical:
        return mul(w, inverse(x));
    case Family::MutationH:
    case Family::MutationO:
    case Family::Rees:
    case Family::Lenz5:
    case Family::Spin:
        return solve_via(right_mul_op(cs, x), w, cs.carrier);
    case Family::Andre: {
        double sig = norm(w) / norm(x);
        Elem g = cs.andre.phi(sig);
        Elem xg = mul(mul(inverse(g), x), g);
        return mul(w, inverse(xg));
    }
    case Family::HaehlSO4: {
        double x0 = x[0];
        double np = norm(pure(x));
        double nw = norm(w);
        auto g = [&](double sig) {
            double rs = cs.radial.eval(sig);
            return std::sqrt(sig * sig * x0 * x0 + rs * rs * np * np) - nw;
        };
        double sig = positive_root(g, cs.solver.bisect_steps, 1.0);
        double phi_s = cs.radial.eval(sig) / sig;
        Elem v = Elem::real(cs.carrier, x0) + phi_s * pure(x);
        return mul(w, inverse(v));
    }
    case Family::DistortedH:
    case Family::DistortedO: {
        double nx = norm(x), nw = norm(w);
        double sig = cs.radial.inverse(cs.radial.eval(nw) / cs.radial.eval(nx));
        Elem xhat = (1.0 / nx) * x;
        Elem what = (1.0 / nw) * w;
        Elem shat = mul(what, inverse(xhat));
        return sig * shat;
    }
    case Family::Moulton: {
        double xv = x[0], wv = w[0];
        double cand = wv / xv;
        if (cand >= 0.0) return Elem(Alg::R, {cand});
        double neg = (xv < 0.0) ? wv / (cs.moulton_k * xv) : cand;
        return Elem(Alg::R, {neg});
    }
    case Family::Tschet:
    case Family::TschetDual:
        return Elem(Alg::R, {w[0] / x[0]});
    }
    throw structural_error("unknown family");
}

Elem solve_point(const CoordinateStructure& cs, const Elem& s, const Elem& w) {
    if (norm2(s) == 0.0) throw parameter_error("solve_point requires s != 0");
    if (norm2(w) == 0.0) return Elem::zero(cs.carrier);
    switch (cs.family) {
    case Family::Classical:
        return mul(inverse(s), w);
    case Family::MutationH:
    case Family::MutationO:
    case Family::Rees:
    case Family::Lenz5:
    case Family::Spin:
        return solve_via(left_mul_op(cs, s), w, cs.carrier);
    case Family::Andre: {
        Elem g = cs.andre.phi(norm(s));
        Elem xg = mul(inverse(s), w);
        return mul(mul(g, xg), inverse(g));
    }
    case Family::HaehlSO4: {
        Elem v = mul(inverse(s), w);
        double phi_s = cs.radial.eval(norm(s)) / norm(s);
        return Elem::real(cs.carrier, v[0]) + (1.0 / phi_s) * pure(v);
    }
    case Family::DistortedH:
    case Family::DistortedO: {
        double ns = norm(s), nw = norm(w);
        double xi = cs.radial.inverse(cs.radial.eval(nw) / cs.radial.eval(ns));
        Elem shat = (1.0 / ns) * s;
        Elem what = (1.0 / nw) * w;
        Elem xhat = mul(inverse(shat), what);
        return xi * xhat;
    }
    case Family::Moulton: {
        double sv = s[0], wv = w[0];
        if (sv >= 0.0) return Elem(Alg::R, {wv / sv});
        double cand = wv / sv;
        if (cand >= 0.0) return Elem(Alg::R, {cand});
        return Elem(Alg::R, {wv / (cs.moulton_k * sv)});
    }
    case Family::Tschet:
    case Family::TschetDual:
        return Elem(Alg::R, {w[0] / s[0]});
    }
    throw structural_error("unknown family");
}

Elem solve_join_slope(const CoordinateStructure& cs, const Elem& x1, const Elem& x2,
                      const Elem& d) {
    if (cs.left_distributive())
        return solve_slope(cs, x1 - x2, d);
    switch (cs.family) {
    case Family::Moulton: {
        double dx = x1[0] - x2[0];
        double cand = d[0] / dx;
        if (cand >= 0.0) return Elem(Alg::R, {cand});
        auto m = [&](double x) { return x < 0.0 ? cs.moulton_k * x : x; };
        return Elem(Alg::R, {d[0] / (m(x1[0]) - m(x2[0]))});
    }
    case Family::DistortedH:
    case Family::DistortedO: {
        double n1 = norm(x1), n2 = norm(x2);
        Elem h1 = (n1 > 0) ? (1.0 / n1) * x1 : Elem::zero(cs.carrier);
        Elem h2 = (n2 > 0) ? (1.0 / n2) * x2 : Elem::zero(cs.carrier);
        double nd = norm(d);
        if (nd == 0.0) return Elem::zero(cs.carrier);
        auto g = [&](double sig) {
            Elem v = cs_star(cs, sig, n1) * h1 - cs_star(cs, sig, n2) * h2;
            return norm(v) - nd;
        };
        double sig = positive_root(g, cs.solver.bisect_steps, 1.0);
        double l1 = (n1 > 0) ? cs_star(cs, sig, n1) / (sig * n1) : 0.0;
        double l2 = (n2 > 0) ? cs_star(cs, sig, n2) / (sig * n2) : 0.0;
        Elem v = l1 * x1 - l2 * x2;
        return mul(d, inverse(v));
    }
    default:
        throw structural_error("solve_join_slope: family handled by the plane engine");
    }
}

Elem solve_meet_x(const CoordinateStructure& cs, const Elem& s1, const Elem& s2,
                  const Elem& w) {
    switch (cs.family) {
    case Family::Classical:
    case Family::MutationH:
    case Family::MutationO:
    case Family::Rees:
    case Family::Lenz5:
    case Family::Spin:
    case Family::Andre:
    case Family::HaehlSO4: {
        const int n = cs.carrier_dim();
        Mat a = left_mul_op(cs, s1);
        Mat b = left_mul_op(cs, s2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) -= b(i, j);
        return solve_via(a, w, cs.carrier);
    }
    case Family::Moulton: {
        double dv = w[0];
        double sp = s1[0] - s2[0];
        double cand = dv / sp;
        if (cand >= 0.0) return Elem(Alg::R, {cand});
        auto a = [&](double s) { return s < 0.0 ? cs.moulton_k * s : s; };
        return Elem(Alg::R, {dv / (a(s1[0]) - a(s2[0]))});
    }
    case Family::DistortedH:
    case Family::DistortedO: {
        double m1 = norm(s1), m2 = norm(s2);
        Elem h1 = (m1 > 0) ? (1.0 / m1) * s1 : Elem::zero(cs.carrier);
        Elem h2 = (m2 > 0) ? (1.0 / m2) * s2 : Elem::zero(cs.carrier);
        double nw = norm(w);
        if (nw == 0.0) return Elem::zero(cs.carrier);
        auto g = [&](double r) {
            Elem v = cs_star(cs, m1, r) * h1 - cs_star(cs, m2, r) * h2;
            return norm(v) - nw;
        };
        double r = positive_root(g, cs.solver.bisect_steps, 1.0);
        double l1 = (m1 > 0) ? cs_star(cs, m1, r) / (m1 * r) : 0.0;
        double l2 = (m2 > 0) ? cs_star(cs, m2, r) / (m2 * r) : 0.0;
        Elem q = l1 * s1 - l2 * s2;
        return mul(inverse(q), w);
    }
    default:
        throw structural_error("solve_meet_x: family handled by the plane engine");
    }
}

MorphismReport structure_morphism_verify(const CoordinateStructure& cs, const Morphism& m,
                                         int n_samples, std::uint64_t seed, double tol) {
    MorphismReport rep;
    Rng rng(seed);
    for (int i = 0; i < n_samples; ++i) {
        Elem a = random_elem(rng, cs.carrier);
        Elem b = random_elem(rng, cs.carrier);
        Elem lhs = morphism_apply(m, cs_multiply(cs, a, b));
        Elem rhs = (m.variance == Variance::Automorphism)
                       ? cs_multiply(cs, morphism_apply(m, a), morphism_apply(m, b))
                       : cs_multiply(cs, morphism_apply(m, b), morphism_apply(m, a));
        double res = dist(lhs, rhs) / (1.0 + norm(lhs));
        if (res > rep.max_law_residual) {
            rep.max_law_residual = res;
            if (res > tol) {
                rep.witness_a = a;
                rep.witness_b = b;
            }
        }
        double ires = dist(morphism_apply(m, morphism_apply(m, a)), a) / (1.0 + norm(a));
        rep.max_involution_residual = std::max(rep.max_involution_residual, ires);
    }
    rep.involution = rep.max_involution_residual <= tol;
    if (rep.max_law_residual > tol) {
        rep.pass = false;
        rep.message = "declared variance law violated for the structure product";
    }
    return rep;
}

// --- identifiers ------------------------------------------------------------

static std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& id,
                                                                 std::string& head) {
    std::vector<std::string> toks;
    std::string cur;
    for (char ch : id) {
        if (ch == ':') {
            toks.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    toks.push_back(cur);
    head = toks[0];
    std::vector<std::pair<std::string, std::string>> kv;
    for (size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos) {
            // continuation of the previous value ("rho=power:2")
            if (kv.empty()) throw parameter_error("bad identifier: " + id);
            kv.back().second += ":" + toks[i];
        } else {
            kv.emplace_back(toks[i].substr(0, eq), toks[i].substr(eq + 1));
        }
    }
    return kv;
}

static RadialSpec parse_radial(const std::string& v) {
    if (v == "identity") return RadialSpec::identity();
    if (v == "quadmean") return RadialSpec::quad_mean();
    if (v.rfind("power:", 0) == 0) return RadialSpec::power(std::stod(v.substr(6)));
    if (v == "spline")
        return RadialSpec::spline({{0.25, 0.4}, {0.5, 0.7}, {1.0, 1.0}, {2.0, 1.8}, {4.0, 4.5}});
    throw parameter_error("unknown radial spec: " + v);
}

CoordinateStructure parse_structure(const std::string& id) {
    std::string head;
    auto kv = parse_kv(id, head);
    auto get = [&](const std::string& k, std::optional<std::string> dflt =
                                              std::nullopt) -> std::string {
        for (auto& p : kv)
            if (p.first == k) return p.second;
        if (dflt) return *dflt;
        throw parameter_error("identifier " + id + " missing key " + k);
    };
    if (head == "classical-r") return cs_classical(Alg::R);
    if (head == "classical-c") return cs_classical(Alg::C);
    if (head == "classical-h") return cs_classical(Alg::H);
    if (head == "classical-o") return cs_classical(Alg::O);
    if (head == "mutation-h") return cs_mutation_h(std::stod(get("mu")));
    if (head == "mutation-o") return cs_mutation_o(std::stod(get("mu")));
    if (head == "rees") return cs_rees(std::stod(get("theta")));
    if (head == "lenz5") return cs_lenz5(std::stod(get("alpha")));
    if (head == "andre") {
        std::string phi = get("phi");
        if (phi == "spline") return cs_andre_spline();
        if (phi.rfind("hom:", 0) == 0) return cs_andre_hom(std::stod(phi.substr(4)));
        throw parameter_error("andre phi must be hom:<beta> or spline");
    }
    if (head == "haehl-so4") return cs_haehl(parse_radial(get("rho", std::string("power:2"))));
    if (head == "distorted-h") return cs_distorted_h(parse_radial(get("rho")));
    if (head == "distorted-o") return cs_distorted_o(parse_radial(get("rho")));
    if (head == "spin") return cs_spin(std::stod(get("r")));
    if (head == "moulton") return cs_moulton(std::stod(get("k")));
    if (head == "tschet") {
        for (auto& p : kv)
            if (p.first == "kink") return cs_tschet_kinked(std::stod(p.second));
        return cs_tschet(std::stod(get("r")));
    }
    if (head == "tschet-dual") return cs_tschet_dual(std::stod(get("r")));
    throw parameter_error("unknown structure family: " + head);
}

static std::string radial_id(const RadialSpec& r) {
    switch (r.kind) {
    case RadialSpec::Kind::Identity: return "identity";
    case RadialSpec::Kind::Power: {
        std::ostringstream os;
        os << "power:" << r.exponent;
        return os.str();
    }
    case RadialSpec::Kind::QuadMean: return "quadmean";
    case RadialSpec::Kind::TableSpline: return "spline";
    }
    return "identity";
}

std::string structure_id(const CoordinateStructure& cs) {
    std::ostringstream os;
    switch (cs.family) {
    case Family::Classical:
        os << "classical-" << (cs.carrier == Alg::R   ? "r"
                               : cs.carrier == Alg::C ? "c"
                               : cs.carrier == Alg::H ? "h"
                                                      : "o");
        break;
    case Family::MutationH: os << "mutation-h:mu=" << cs.mu; break;
    case Family::MutationO: os << "mutation-o:mu=" << cs.mu; break;
    case Family::Rees: os << "rees:theta=" << cs.theta; break;
    case Family::Lenz5: os << "lenz5:alpha=" << cs.alpha; break;
    case Family::Andre:
        if (cs.andre.kind == AndreSpec::Kind::Hom)
            os << "andre:phi=hom:" << cs.andre.beta;
        else
            os << "andre:phi=spline";
        break;
    case Family::HaehlSO4: os << "haehl-so4:rho=" << radial_id(cs.radial); break;
    case Family::DistortedH: os << "distorted-h:rho=" << radial_id(cs.radial); break;
    case Family::DistortedO: os << "distorted-o:rho=" << radial_id(cs.radial); break;
    case Family::Spin: os << "spin:r=" << cs.spin_r; break;
    case Family::Moulton: os << "moulton:k=" << cs.moulton_k; break;
    case Family::Tschet:
        if (cs.tschet_kinked)
            os << "tschet:kink=" << cs.radial.exponent;
        else
            os << "tschet:r=" << cs.radial.exponent;
        break;
    case Family::TschetDual: os << "tschet-dual:r=" << cs.radial.exponent; break;
    }
    return os.str();
}

} // namespace planelab
