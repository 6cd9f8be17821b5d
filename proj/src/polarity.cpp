#include "planelab/polarity.hpp"

#include <algorithm>
#include <cmath>

namespace planelab {

static Elem quat_k() { return Elem(Alg::H, {0.0, 0.0, 0.0, 1.0}); }
static Elem quat_i() { return Elem(Alg::H, {0.0, 1.0, 0.0, 0.0}); }

Polarity make_polarity(const PlaneModel& plane, const std::string& name) {
    Polarity pol;
    pol.plane = plane;
    pol.name = name;
    if (plane.kind == PlaneModel::Kind::Shift) {
        if (name != "pi") throw parameter_error("shift planes only carry the polarity 'pi'");
        pol.rule = Polarity::Rule::Shift;
        return pol;
    }
    const auto& cs = plane.cs;
    switch (cs.family) {
    case Family::Classical:
        if (name == "rho-bar") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(cs.carrier);
            return pol;
        }
        if (name == "elliptic" && cs.carrier != Alg::O) {
            pol.rule = Polarity::Rule::Elliptic;
            return pol;
        }
        break;
    case Family::MutationH:
        if (name == "rho-bar") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(Alg::H);
            return pol;
        }
        if (name == "pi") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::twisted_conj(Alg::H, quat_i());
            return pol;
        }
        break;
    case Family::MutationO:
        if (name == "rho-bar") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(Alg::O);
            return pol;
        }
        if (name == "pi") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conj_half_flip();
            return pol;
        }
        break;
    case Family::Rees:
        if (name == "kappa-hat") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::rees_conj();
            return pol;
        }
        break;
    case Family::Spin:
        if (name == "kappa-hat") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::twisted_conj(Alg::H, quat_k());
            return pol;
        }
        if (name == "pi") {
            pol.rule = Polarity::Rule::SpinPi;
            return pol;
        }
        break;
    case Family::DistortedH:
        if (name == "rho") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(Alg::H);
            return pol;
        }
        if (name == "kappa") {
            pol.rule = Polarity::Rule::DoubleFlagKappa;
            return pol;
        }
        break;
    case Family::DistortedO:
        if (name == "pi") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(Alg::O);
            return pol;
        }
        if (name == "kappa") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conj_half_flip();
            return pol;
        }
        break;
    case Family::Moulton:
        if (name == "pi") {
            pol.rule = Polarity::Rule::AntiAuto;
            pol.iota = Morphism::conjugation(Alg::R); // the identity on R
            return pol;
        }
        break;
    default:
        break;
    }
    throw parameter_error("plane " + plane_id(plane) + " has no polarity named " + name);
}

std::vector<std::string> polarity_names(const PlaneModel& plane) {
    if (plane.kind == PlaneModel::Kind::Shift) return {"pi"};
    switch (plane.cs.family) {
    case Family::Classical:
        return plane.cs.carrier == Alg::O ? std::vector<std::string>{"rho-bar"}
                                          : std::vector<std::string>{"rho-bar", "elliptic"};
    case Family::MutationH:
    case Family::MutationO: return {"rho-bar", "pi"};
    case Family::Rees: return {"kappa-hat"};
    case Family::Spin: return {"kappa-hat", "pi"};
    case Family::DistortedH: return {"rho", "kappa"};
    case Family::DistortedO: return {"pi", "kappa"};
    case Family::Moulton: return {"pi"};
    default: return {};
    }
}

// --- the point -> line map ---------------------------------------------------

static Elem iota_of(const Polarity& pol, const Elem& z) { return morphism_apply(pol.iota, z); }

Line polar(const Polarity& pol, const Point& p) {
    const Alg tag = pol.plane.carrier();
    switch (pol.rule) {
    case Polarity::Rule::AntiAuto:
        switch (p.kind) {
        case Point::Kind::Affine: return Line::non_vertical(iota_of(pol, p.x), -iota_of(pol, p.y));
        case Point::Kind::Slope: return Line::vertical(iota_of(pol, p.x));
        case Point::Kind::Infinity: return Line::at_infinity(tag);
        }
        break;
    case Polarity::Rule::SpinPi: {
        Elem k = quat_k();
        switch (p.kind) {
        case Point::Kind::Affine:
            return Line::non_vertical(mul(conj(p.x), k),
                                      -cs_multiply(pol.plane.cs, k, mul(k, conj(p.y))));
        case Point::Kind::Slope: return Line::vertical(mul(k, conj(p.x)));
        case Point::Kind::Infinity: return Line::at_infinity(tag);
        }
        break;
    }
    case Polarity::Rule::DoubleFlagKappa: {
        Elem k = quat_k();
        auto tw = [&](const Elem& z) { return mul(mul(k, conj(z)), k); };
        switch (p.kind) {
        case Point::Kind::Affine: return Line::non_vertical(tw(p.x), tw(p.y));
        case Point::Kind::Slope: return Line::vertical(tw(p.x));
        case Point::Kind::Infinity: return Line::at_infinity(tag);
        }
        break;
    }
    case Polarity::Rule::Shift:
        switch (p.kind) {
        case Point::Kind::Affine: return Line::non_vertical(-p.x, -p.y);
        case Point::Kind::Slope: return Line::vertical(-p.x);
        case Point::Kind::Infinity: return Line::at_infinity(tag);
        }
        break;
    case Polarity::Rule::Elliptic:
        switch (p.kind) {
        case Point::Kind::Affine: {
            if (norm2(p.y) > 0.0) {
                Elem binv = inverse(conj(p.y));
                return Line::non_vertical(-mul(binv, conj(p.x)), -binv);
            }
            if (norm2(p.x) > 0.0) return Line::vertical(-inverse(conj(p.x)));
            return Line::at_infinity(tag);
        }
        case Point::Kind::Slope:
            if (norm2(p.x) > 0.0) return Line::non_vertical(-inverse(conj(p.x)), Elem(tag));
            return Line::vertical(Elem(tag));
        case Point::Kind::Infinity: return Line::non_vertical(Elem(tag), Elem(tag));
        }
        break;
    }
    throw structural_error("polar: unhandled case");
}

Point polar(const Polarity& pol, const Line& l) {
    const Alg tag = pol.plane.carrier();
    switch (pol.rule) {
    case Polarity::Rule::AntiAuto:
        switch (l.kind) {
        case Line::Kind::NonVertical: return Point::affine(iota_of(pol, l.s), -iota_of(pol, l.t));
        case Line::Kind::Vertical: return Point::slope(iota_of(pol, l.s));
        case Line::Kind::AtInfinity: return Point::infinity(tag);
        }
        break;
    case Polarity::Rule::SpinPi: {
        Elem k = quat_k();
        switch (l.kind) {
        case Line::Kind::NonVertical: {
            Elem x = mul(k, conj(l.s));
            Elem z = solve_point(pol.plane.cs, k, -l.t); // k o z = -t
            Elem y = mul(conj(z), k);
            return Point::affine(x, y);
        }
        case Line::Kind::Vertical: return Point::slope(mul(conj(l.s), k));
        case Line::Kind::AtInfinity: return Point::infinity(tag);
        }
        break;
    }
    case Polarity::Rule::DoubleFlagKappa: {
        Elem k = quat_k();
        auto tw = [&](const Elem& z) { return mul(mul(k, conj(z)), k); };
        switch (l.kind) {
        case Line::Kind::NonVertical: return Point::affine(tw(l.s), tw(l.t));
        case Line::Kind::Vertical: return Point::slope(tw(l.s));
        case Line::Kind::AtInfinity: return Point::infinity(tag);
        }
        break;
    }
    case Polarity::Rule::Shift:
        switch (l.kind) {
        case Line::Kind::NonVertical: return Point::affine(-l.s, -l.t);
        case Line::Kind::Vertical: return Point::slope(-l.s);
        case Line::Kind::AtInfinity: return Point::infinity(tag);
        }
        break;
    case Polarity::Rule::Elliptic:
        switch (l.kind) {
        case Line::Kind::NonVertical: {
            if (norm2(l.t) > 0.0) {
                Elem tinv = inverse(conj(l.t));
                return Point::affine(mul(conj(l.s), tinv), -tinv);
            }
            if (norm2(l.s) > 0.0) return Point::slope(-inverse(conj(l.s)));
            return Point::infinity(tag);
        }
        case Line::Kind::Vertical:
            if (norm2(l.s) > 0.0) return Point::affine(-inverse(conj(l.s)), Elem(tag));
            return Point::slope(Elem(tag));
        case Line::Kind::AtInfinity: return Point::affine(Elem(tag), Elem(tag));
        }
        break;
    }
    throw structural_error("polar: unhandled case");
}

// --- membership --------------------------------------------------------------

// linear operator B with membership equation B(y) = q(x)
static Elem b_of_y(const Polarity& pol, const Elem& y) {
    switch (pol.rule) {
    case Polarity::Rule::AntiAuto:
        return y + iota_of(pol, y);
    case Polarity::Rule::SpinPi:
        return y + cs_multiply(pol.plane.cs, quat_k(), mul(quat_k(), conj(y)));
    case Polarity::Rule::DoubleFlagKappa: {
        Elem k = quat_k();
        return y - mul(mul(k, conj(y)), k); // y + y~^k
    }
    case Polarity::Rule::Shift:
        return 2.0 * y;
    case Polarity::Rule::Elliptic:
        return Elem(pol.plane.carrier());
    }
    throw structural_error("unhandled rule");
}

static Elem q_of_x(const Polarity& pol, const Elem& x) {
    switch (pol.rule) {
    case Polarity::Rule::AntiAuto:
        if (pol.plane.kind == PlaneModel::Kind::Ternary)
            return cs_multiply(pol.plane.cs, iota_of(pol, x), x);
        break;
    case Polarity::Rule::SpinPi:
        return cs_multiply(pol.plane.cs, mul(conj(x), quat_k()), x);
    case Polarity::Rule::DoubleFlagKappa: {
        Elem k = quat_k();
        return cs_multiply(pol.plane.cs, mul(mul(k, conj(x)), k), x);
    }
    case Polarity::Rule::Shift:
        return pol.plane.shift.eval(2.0 * x);
    case Polarity::Rule::Elliptic:
        break;
    }
    throw structural_error("unhandled rule");
}

std::vector<double> membership_residual_vector(const Polarity& pol, const Elem& x,
                                               const Elem& y) {
    const int n = pol.plane.carrier_dim();
    std::vector<double> r(static_cast<size_t>(n));
    if (pol.rule == Polarity::Rule::Elliptic) {
        // |x|^2 + |y|^2 + 1 = 0 has no solutions; keep it as the residual
        r.assign(static_cast<size_t>(n), 0.0);
        r[0] = norm2(x) + norm2(y) + 1.0;
        return r;
    }
    Elem g = b_of_y(pol, y) - q_of_x(pol, x);
    for (int i = 0; i < n; ++i) r[static_cast<size_t>(i)] = g[i];
    return r;
}

double absolute_residual(const Polarity& pol, const Point& p) {
    switch (p.kind) {
    case Point::Kind::Infinity:
        return pol.rule == Polarity::Rule::Elliptic ? 1.0 : 0.0;
    case Point::Kind::Slope:
        return 1.0; // slope points are never absolute in the catalog
    case Point::Kind::Affine: {
        auto r = membership_residual_vector(pol, p.x, p.y);
        double s = 0.0;
        for (double v : r) s += v * v;
        return std::sqrt(s) / (1.0 + norm(p.x) + norm(p.y));
    }
    }
    return 1.0;
}

bool is_absolute(const Polarity& pol, const Point& p, double tol) {
    return absolute_residual(pol, p) <= tol;
}

// --- probes ------------------------------------------------------------------

// matrix of the linear map y -> B(y)
static Mat b_matrix(const Polarity& pol) {
    const int n = pol.plane.carrier_dim();
    Mat m(n, n);
    for (int j = 0; j < n; ++j) {
        Elem col = b_of_y(pol, Elem::unit(pol.plane.carrier(), j));
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

// absolute affine point with random free coordinates; empty when inconsistent
static bool sample_absolute(const Polarity& pol, Rng& rng, Point& out, double scale = 1.2) {
    const Alg tag = pol.plane.carrier();
    const int n = dim(tag);
    Elem x = random_elem(rng, tag, scale);
    Elem q = q_of_x(pol, x);
    std::vector<double> qv(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) qv[static_cast<size_t>(i)] = q[i];
    auto sol = solve_affine(b_matrix(pol), qv, 1e-10);
    if (!sol.consistent) return false;
    Elem y(tag);
    for (int i = 0; i < n; ++i) y[i] = sol.particular[static_cast<size_t>(i)];
    for (auto& dir : sol.nullspace) {
        double w = scale * rng.normal();
        for (int i = 0; i < n; ++i) y[i] += w * dir[static_cast<size_t>(i)];
    }
    out = Point::affine(x, y);
    return true;
}

static int local_dim_at(const Polarity& pol, const Point& p) {
    const int n = pol.plane.carrier_dim();
    const double h = 1e-5;
    Mat jac(n, 2 * n);
    for (int j = 0; j < 2 * n; ++j) {
        Elem xp = p.x, yp = p.y, xm = p.x, ym = p.y;
        if (j < n) {
            xp[j] += h;
            xm[j] -= h;
        } else {
            yp[j - n] += h;
            ym[j - n] -= h;
        }
        auto rp = membership_residual_vector(pol, xp, yp);
        auto rm = membership_residual_vector(pol, xm, ym);
        for (int i = 0; i < n; ++i)
            jac(i, j) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
    }
    return 2 * n - matrix_rank(jac, 1e-6);
}

UnitalSample unital_probe(const Polarity& pol, int n, std::uint64_t seed) {
    UnitalSample out;
    if (pol.rule == Polarity::Rule::Elliptic) return out; // empty unital
    Rng rng(seed);
    int tries = 0;
    while (static_cast<int>(out.points.size()) < n && tries < 4 * n + 64) {
        ++tries;
        Point p;
        if (!sample_absolute(pol, rng, p)) {
            ++out.skipped;
            continue;
        }
        if (absolute_residual(pol, p) > 1e-8) {
            ++out.skipped;
            continue;
        }
        out.points.push_back(p);
    }
    const int probes = std::min<int>(10, static_cast<int>(out.points.size()));
    std::vector<int> dims;
    for (int i = 0; i < probes; ++i) dims.push_back(local_dim_at(pol, out.points[static_cast<size_t>(i)]));
    out.probes = probes;
    if (!dims.empty()) {
        // majority vote
        std::sort(dims.begin(), dims.end());
        int best = dims[0], best_count = 1, cur = dims[0], count = 1;
        for (size_t i = 1; i < dims.size(); ++i) {
            if (dims[i] == cur)
                ++count;
            else {
                cur = dims[i];
                count = 1;
            }
            if (count > best_count) {
                best = cur;
                best_count = count;
            }
        }
        out.local_dimension = best;
        out.probes_agreeing = best_count;
    }
    return out;
}

// --- line classification -----------------------------------------------------

static bool newton_on_line(const Polarity& pol, const Line& l, Elem x, Elem& out) {
    const auto& plane = pol.plane;
    const int n = plane.carrier_dim();
    auto value = [&](const Elem& xx) {
        Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                     ? cs_ternary(plane.cs, l.s, xx, l.t)
                     : plane.shift.eval(xx - l.s) + l.t;
        return membership_residual_vector(pol, xx, y);
    };
    auto res_norm = [&](const std::vector<double>& r) {
        double s = 0.0;
        for (double v : r) s += v * v;
        return std::sqrt(s);
    };
    auto r = value(x);
    double res = res_norm(r);
    for (int it = 0; it < 60; ++it) {
        if (res <= 1e-10 * (1.0 + norm(x))) {
            out = x;
            return true;
        }
        const double h = 1e-6;
        Mat jac(n, n);
        for (int j = 0; j < n; ++j) {
            Elem xp = x, xm = x;
            xp[j] += h;
            xm[j] -= h;
            auto rp = value(xp), rm = value(xm);
            for (int i = 0; i < n; ++i)
                jac(i, j) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
        }
        // Levenberg-Marquardt step: the membership Jacobian is rank-deficient
        // on purpose (the solution set is a manifold), so solve the damped
        // normal equations instead of the square system
        Mat jtj(n, n);
        std::vector<double> jtr(static_cast<size_t>(n), 0.0);
        double scale = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(jac(i, j)));
        double lambda = 1e-10 * std::max(scale * scale, 1.0);
        for (int a2 = 0; a2 < n; ++a2)
            for (int b2 = 0; b2 < n; ++b2) {
                double acc = 0.0;
                for (int i = 0; i < n; ++i) acc += jac(i, a2) * jac(i, b2);
                jtj(a2, b2) = acc + (a2 == b2 ? lambda : 0.0);
            }
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i) acc -= jac(i, j) * r[static_cast<size_t>(i)];
            jtr[static_cast<size_t>(j)] = acc;
        }
        std::vector<double> step;
        try {
            step = solve_linear(jtj, jtr);
        } catch (const std::runtime_error&) {
            return false;
        }
        double lam = 1.0;
        for (int back = 0; back < 25; ++back) {
            Elem xn = x;
            for (int j = 0; j < n; ++j) xn[j] += lam * step[static_cast<size_t>(j)];
            auto rn = value(xn);
            double resn = res_norm(rn);
            if (resn < res) {
                x = xn;
                r = rn;
                res = resn;
                break;
            }
            lam *= 0.5;
            if (back == 24) return false;
        }
    }
    if (res <= 1e-9 * (1.0 + norm(x))) {
        out = x;
        return true;
    }
    return false;
}

LineClassification classify_line(const Polarity& pol, const Line& l, int budget,
                                 std::uint64_t seed) {
    LineClassification out;
    const auto& plane = pol.plane;
    const Alg tag = plane.carrier();

    if (pol.rule == Polarity::Rule::Elliptic) {
        out.cls = LineClass::Exterior; // empty unital
        return out;
    }

    // a polar unital's tangents are exactly the lines containing their pole
    Point pole = polar(pol, l);
    if (incident(plane, pole, l, 1e-8) && is_absolute(pol, pole, 1e-8)) {
        out.cls = LineClass::Tangent;
        out.tangent_point = pole;
        return out;
    }

    if (l.kind == Line::Kind::AtInfinity) {
        // for every catalog rule this line is the tangent at the vertical
        // direction point, caught above; anything else stays undecided
        out.cls = LineClass::Indeterminate;
        return out;
    }

    Rng rng(seed);
    const int n = plane.carrier_dim();
    std::vector<Point> found;
    if (l.kind == Line::Kind::Vertical) {
        // ideal point of the vertical is absolute for every catalog rule
        found.push_back(Point::infinity(tag));
        Elem q = q_of_x(pol, l.s);
        std::vector<double> qv(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) qv[static_cast<size_t>(i)] = q[i];
        auto sol = solve_affine(b_matrix(pol), qv, 1e-10);
        if (sol.consistent) {
            for (int rep = 0; rep < std::max(2, budget / 4); ++rep) {
                Elem y(tag);
                for (int i = 0; i < n; ++i) y[i] = sol.particular[static_cast<size_t>(i)];
                for (auto& dirv : sol.nullspace) {
                    double w = 1.2 * rng.normal();
                    for (int i = 0; i < n; ++i) y[i] += w * dirv[static_cast<size_t>(i)];
                }
                found.push_back(Point::affine(l.s, y));
                if (sol.nullspace.empty()) break;
            }
        }
    } else {
        for (int start = 0; start < budget; ++start) {
            Elem x0 = random_elem(rng, tag, 1.5);
            Elem xs(tag);
            if (!newton_on_line(pol, l, x0, xs)) continue;
            Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                         ? cs_ternary(plane.cs, l.s, xs, l.t)
                         : plane.shift.eval(xs - l.s) + l.t;
            Point cand = Point::affine(xs, y);
            bool dup = false;
            for (auto& p : found)
                if (same_point(plane, p, cand, 1e-6)) dup = true;
            if (!dup) found.push_back(cand);
        }
    }

    if (found.empty()) {
        // claim exterior only when the residual stays far from zero
        double min_res = 1e300;
        for (int t = 0; t < 32; ++t) {
            Elem x0 = random_elem(rng, tag, 1.5);
            Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                         ? cs_ternary(plane.cs, l.s, x0, l.t)
                         : plane.shift.eval(x0 - l.s) + l.t;
            min_res = std::min(min_res, absolute_residual(pol, Point::affine(x0, y)));
        }
        out.cls = (min_res > 1e-2) ? LineClass::Exterior : LineClass::Indeterminate;
        return out;
    }

    out.cls = LineClass::Secant;
    out.samples = found;
    if (l.kind == Line::Kind::Vertical) {
        // intersection is {(c, y) : B(y) = q(c)}; its dimension is the kernel of B
        auto sol = solve_affine(b_matrix(pol), std::vector<double>(static_cast<size_t>(n), 0.0));
        out.local_dimension = static_cast<int>(sol.nullspace.size());
        return out;
    }
    // local dimension of the restricted solution set at an affine sample
    for (auto& p : found) {
        if (p.kind != Point::Kind::Affine) continue;
        const double h = 1e-5;
        Mat jac(n, n);
        for (int j = 0; j < n; ++j) {
            Elem xp = p.x, xm = p.x;
            xp[j] += h;
            xm[j] -= h;
            Elem yp = (plane.kind == PlaneModel::Kind::Ternary)
                          ? cs_ternary(plane.cs, l.s, xp, l.t)
                          : plane.shift.eval(xp - l.s) + l.t;
            Elem ym = (plane.kind == PlaneModel::Kind::Ternary)
                          ? cs_ternary(plane.cs, l.s, xm, l.t)
                          : plane.shift.eval(xm - l.s) + l.t;
            auto rp = membership_residual_vector(pol, xp, yp);
            auto rm = membership_residual_vector(pol, xm, ym);
            for (int i = 0; i < n; ++i)
                jac(i, j) = (rp[static_cast<size_t>(i)] - rm[static_cast<size_t>(i)]) / (2.0 * h);
        }
        out.local_dimension = n - matrix_rank(jac, 1e-6);
        break;
    }
    return out;
}

} // namespace planelab
