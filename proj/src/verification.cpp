#include "planelab/verification.hpp"

#include <cmath>
#include <json.hpp>

namespace planelab {

using nlohmann::json;

std::string VerificationReport::to_json() const {
    json j;
    j["suite"] = suite;
    j["plane"] = plane;
    j["seed"] = seed;
    j["attempted"] = attempted;
    j["passed"] = passed;
    j["skipped"] = skipped;
    j["max_residual"] = max_residual;
    j["pass"] = pass;
    j["subtests"] = subtests;
    j["witnesses"] = json::array();
    for (const auto& w : witnesses) {
        json wj;
        wj["trial"] = w.trial;
        wj["discrepancy"] = w.discrepancy;
        wj["description"] = w.description;
        wj["coords"] = w.coords;
        j["witnesses"].push_back(wj);
    }
    return j.dump(2);
}

static std::vector<double> coords_of(const Point& p) {
    std::vector<double> v;
    if (p.kind == Point::Kind::Affine) {
        for (int i = 0; i < p.x.n(); ++i) v.push_back(p.x[i]);
        for (int i = 0; i < p.y.n(); ++i) v.push_back(p.y[i]);
    } else if (p.kind == Point::Kind::Slope) {
        for (int i = 0; i < p.x.n(); ++i) v.push_back(p.x[i]);
    }
    return v;
}

// --- plane axioms -------------------------------------------------------------

static bool is_iterative(const PlaneModel& plane) {
    if (plane.kind == PlaneModel::Kind::Shift) return true;
    switch (plane.cs.family) {
    case Family::DistortedH:
    case Family::DistortedO:
    case Family::HaehlSO4:
        return true;
    default:
        return false;
    }
}

VerificationReport check_plane_axioms(const PlaneModel& plane, int n, std::uint64_t seed,
                                      double tol_closed, double tol_iter) {
    VerificationReport rep;
    rep.suite = "plane-axioms";
    rep.plane = plane_id(plane);
    rep.seed = seed;
    const double tol = is_iterative(plane) ? tol_iter : tol_closed;
    bool join_ok = true, meet_ok = true, parallel_ok = true, quad_ok = true;

    for (int i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        ++rep.attempted;
        bool trial_pass = true;
        try {
            double u = rng.uniform();
            if (u < 0.45) {
                // unique join: both incidences
                Point p = random_affine(rng, plane);
                Point q;
                double v = rng.uniform();
                if (v < 0.80)
                    q = random_affine(rng, plane);
                else if (v < 0.90)
                    q = Point::slope(random_elem(rng, plane.carrier(), 1.5));
                else
                    q = Point::infinity(plane.carrier());
                Line l = join(plane, p, q);
                double res = std::max(incidence_residual(plane, p, l),
                                      incidence_residual(plane, q, l));
                rep.max_residual = std::max(rep.max_residual, res);
                if (res > tol) {
                    trial_pass = join_ok = false;
                    Witness w;
                    w.trial = i;
                    w.discrepancy = res;
                    w.description = "join incidence failure";
                    w.coords = {coords_of(p), coords_of(q)};
                    rep.note_failure(w);
                }
            } else if (u < 0.75) {
                // unique meet
                Line l = random_line(rng, plane);
                Line m = random_line(rng, plane);
                if (same_line(plane, l, m, 1e-12)) {
                    ++rep.skipped;
                    continue;
                }
                Point p = meet(plane, l, m);
                double res = std::max(incidence_residual(plane, p, l),
                                      incidence_residual(plane, p, m));
                rep.max_residual = std::max(rep.max_residual, res);
                if (res > tol) {
                    trial_pass = meet_ok = false;
                    Witness w;
                    w.trial = i;
                    w.discrepancy = res;
                    w.description = "meet incidence failure";
                    w.coords = {coords_of(p)};
                    rep.note_failure(w);
                }
            } else if (u < 0.9) {
                // parallels: through p there is a line of slope s meeting [s,t] ideally
                Elem s = random_elem(rng, plane.carrier(), 1.5);
                Elem t = random_elem(rng, plane.carrier(), 1.5);
                Line l = Line::non_vertical(s, t);
                Point p = random_affine(rng, plane);
                Line par = join(plane, p, Point::slope(s));
                double res = incidence_residual(plane, p, par);
                rep.max_residual = std::max(rep.max_residual, res);
                bool fail = res > tol;
                if (!same_line(plane, par, l, 1e-12)) {
                    // distinct lines of equal slope must be affinely disjoint
                    Point x = meet(plane, l, par);
                    if (x.kind == Point::Kind::Affine) fail = true;
                }
                if (fail) {
                    trial_pass = parallel_ok = false;
                    Witness w;
                    w.trial = i;
                    w.discrepancy = res;
                    w.description = "parallel axiom failure";
                    w.coords = {coords_of(p)};
                    rep.note_failure(w);
                }
            } else {
                // quadrangle nondegeneracy: no three of four random points collinear
                Point a = random_affine(rng, plane), b = random_affine(rng, plane);
                Point c = random_affine(rng, plane), d = random_affine(rng, plane);
                const Point* tri[4][3] = {
                    {&a, &b, &c}, {&a, &b, &d}, {&a, &c, &d}, {&b, &c, &d}};
                for (auto& t3 : tri) {
                    Line l = join(plane, *t3[0], *t3[1]);
                    if (incident(plane, *t3[2], l, 1e-10)) {
                        // measure-zero coincidence: treat as a skip, not a failure
                        ++rep.skipped;
                        break;
                    }
                }
            }
        } catch (const degenerate_input&) {
            ++rep.skipped;
            continue;
        } catch (const solver_error& e) {
            trial_pass = false;
            join_ok = meet_ok = false;
            Witness w;
            w.trial = i;
            w.discrepancy = e.best_residual;
            w.description = std::string("solver: ") + e.what();
            rep.note_failure(w);
        }
        if (trial_pass) ++rep.passed;
    }
    rep.subtests["unique-join"] = join_ok;
    rep.subtests["unique-meet"] = meet_ok;
    rep.subtests["parallels"] = parallel_ok;
    rep.subtests["quadrangle"] = quad_ok;
    rep.pass = join_ok && meet_ok && parallel_ok && quad_ok;
    return rep;
}

// --- algebra classes ----------------------------------------------------------

AlgebraClass algebra_class_from_string(const std::string& s) {
    if (s == "cartesian") return AlgebraClass::Cartesian;
    if (s == "quasifield") return AlgebraClass::Quasifield;
    if (s == "semifield") return AlgebraClass::Semifield;
    if (s == "nearfield") return AlgebraClass::Nearfield;
    if (s == "skewfield") return AlgebraClass::Skewfield;
    throw parameter_error("unknown algebra class: " + s);
}

std::string to_string(AlgebraClass c) {
    switch (c) {
    case AlgebraClass::Cartesian: return "cartesian";
    case AlgebraClass::Quasifield: return "quasifield";
    case AlgebraClass::Semifield: return "semifield";
    case AlgebraClass::Nearfield: return "nearfield";
    case AlgebraClass::Skewfield: return "skewfield";
    }
    return "?";
}

VerificationReport check_algebra_axioms(const CoordinateStructure& cs, AlgebraClass cls, int n,
                                        std::uint64_t seed) {
    VerificationReport rep;
    rep.suite = "algebra-" + to_string(cls);
    rep.plane = structure_id(cs);
    rep.seed = seed;
    const double tol = 1e-9;
    const Alg tag = cs.carrier;

    bool need_left = cls != AlgebraClass::Cartesian;
    bool need_right = cls == AlgebraClass::Semifield || cls == AlgebraClass::Skewfield;
    bool need_assoc = cls == AlgebraClass::Nearfield || cls == AlgebraClass::Skewfield;

    std::map<std::string, bool> ok = {{"additive-group", true}, {"cartesian-form", true},
                                      {"unit-laws", true},      {"solvability", true}};
    if (need_left) ok["left-distributive"] = true;
    if (need_right) ok["right-distributive"] = true;
    if (need_assoc) ok["associativity"] = true;

    auto fail = [&](const std::string& sub, int trial, double res,
                    std::initializer_list<Elem> els) {
        ok[sub] = false;
        Witness w;
        w.trial = trial;
        w.discrepancy = res;
        w.description = sub;
        for (const auto& e : els) {
            std::vector<double> v;
            for (int i = 0; i < e.n(); ++i) v.push_back(e[i]);
            w.coords.push_back(v);
        }
        rep.note_failure(w);
    };

    for (int i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        ++rep.attempted;
        Elem a = random_elem(rng, tag), b = random_elem(rng, tag), c = random_elem(rng, tag);

        double res = dist(cs_add(cs, cs_add(cs, a, b), c), cs_add(cs, a, cs_add(cs, b, c)));
        res = std::max(res, dist(cs_add(cs, a, b), cs_add(cs, b, a)));
        res = std::max(res, dist(cs_add(cs, a, Elem::zero(tag)), a));
        res = std::max(res, norm(cs_add(cs, a, -a)));
        rep.max_residual = std::max(rep.max_residual, res);
        if (res > tol) fail("additive-group", i, res, {a, b, c});

        res = dist(cs_ternary(cs, a, b, c), cs_add(cs, cs_multiply(cs, a, b), c));
        if (res > tol * (1.0 + norm(a) * norm(b))) fail("cartesian-form", i, res, {a, b, c});

        res = dist(cs_ternary(cs, Elem::one(tag), a, Elem::zero(tag)), a);
        res = std::max(res, dist(cs_ternary(cs, a, Elem::one(tag), Elem::zero(tag)), a));
        if (res > tol) fail("unit-laws", i, res, {a});

        if (need_left) {
            Elem lhs = cs_multiply(cs, a, b + c);
            Elem rhs = cs_multiply(cs, a, b) + cs_multiply(cs, a, c);
            res = dist(lhs, rhs) / (1.0 + norm(lhs));
            if (res > tol) fail("left-distributive", i, res, {a, b, c});
        }
        if (need_right) {
            Elem lhs = cs_multiply(cs, a + b, c);
            Elem rhs = cs_multiply(cs, a, c) + cs_multiply(cs, b, c);
            res = dist(lhs, rhs) / (1.0 + norm(lhs));
            if (res > tol) fail("right-distributive", i, res, {a, b, c});
        }
        if (need_assoc) {
            Elem lhs = cs_multiply(cs, cs_multiply(cs, a, b), c);
            Elem rhs = cs_multiply(cs, a, cs_multiply(cs, b, c));
            res = dist(lhs, rhs) / (1.0 + norm(lhs));
            if (res > tol) fail("associativity", i, res, {a, b, c});
        }
        {
            try {
                if (norm(b) > 1e-6 && norm(a) > 1e-6) {
                    Elem w = cs_multiply(cs, a, b);
                    Elem s2 = solve_slope(cs, b, w);
                    Elem x2 = solve_point(cs, a, w);
                    res = dist(cs_multiply(cs, s2, b), w) / (1.0 + norm(w));
                    res = std::max(res, dist(cs_multiply(cs, a, x2), w) / (1.0 + norm(w)));
                    rep.max_residual = std::max(rep.max_residual, res);
                    if (res > 1e-9) fail("solvability", i, res, {a, b});
                } else {
                    ++rep.skipped;
                }
            } catch (const solver_error& e) {
                fail("solvability", i, e.best_residual, {a, b});
            }
        }
        ++rep.passed;
    }
    rep.subtests = ok;
    rep.pass = true;
    for (auto& kv : ok) rep.pass = rep.pass && kv.second;
    return rep;
}

// --- configurations -----------------------------------------------------------

bool Region::contains(double x, double y) const {
    switch (kind) {
    case Kind::None: return true;
    case Kind::Window: return x >= xmin && x <= xmax && y >= ymin && y <= ymax;
    case Kind::Disk: return (x - cx) * (x - cx) + (y - cy) * (y - cy) <= radius * radius;
    }
    return true;
}

Region Region::window(double x0, double x1, double y0, double y1) {
    Region r;
    r.kind = Kind::Window;
    r.xmin = x0;
    r.xmax = x1;
    r.ymin = y0;
    r.ymax = y1;
    return r;
}

Region Region::disk(double cx, double cy, double rad) {
    Region r;
    r.kind = Kind::Disk;
    r.cx = cx;
    r.cy = cy;
    r.radius = rad;
    return r;
}

namespace {

struct RegionSampler {
    const PlaneModel& plane;
    const Region& region;
    Rng& rng;

    Point draw() {
        const Alg tag = plane.carrier();
        for (int t = 0; t < 400; ++t) {
            Elem x(tag), y(tag);
            if (region.kind == Region::Kind::None) {
                x = random_elem(rng, tag, 1.5);
                y = random_elem(rng, tag, 1.5);
            } else if (region.kind == Region::Kind::Window) {
                x[0] = rng.uniform(region.xmin, region.xmax);
                y[0] = rng.uniform(region.ymin, region.ymax);
                for (int i = 1; i < dim(tag); ++i) {
                    x[i] = rng.normal();
                    y[i] = rng.normal();
                }
            } else {
                double ang = rng.uniform(0.0, 6.283185307179586);
                double rad = region.radius * std::sqrt(rng.uniform());
                x[0] = region.cx + rad * std::cos(ang);
                y[0] = region.cy + rad * std::sin(ang);
            }
            if (region.contains(x[0], y[0])) return Point::affine(x, y);
        }
        throw solver_error("region sampling failed", 0.0);
    }

    // a point on l, inside the region, away from given points
    Point draw_on(const Line& l, const std::vector<Point>& avoid) {
        for (int t = 0; t < 400; ++t) {
            Point p = draw();
            Point q;
            if (l.kind == Line::Kind::Vertical) {
                q = Point::affine(l.s, p.y);
            } else {
                Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                             ? cs_ternary(plane.cs, l.s, p.x, l.t)
                             : plane.shift.eval(p.x - l.s) + l.t;
                q = Point::affine(p.x, y);
            }
            if (!region.contains(q.x[0], q.y[0])) continue;
            bool clash = false;
            for (const auto& a : avoid)
                if (a.kind == Point::Kind::Affine && dist(a.x, q.x) + dist(a.y, q.y) < 1e-4)
                    clash = true;
            if (!clash) return q;
        }
        throw solver_error("on-line sampling failed", 0.0);
    }
};

double point_line_distance(const PlaneModel& plane, const Point& p, const Line& l) {
    if (p.kind != Point::Kind::Affine) return incident(plane, p, l, 1e-10) ? 0.0 : 1.0;
    if (l.kind == Line::Kind::AtInfinity) return 1.0;
    if (l.kind == Line::Kind::Vertical) return dist(p.x, l.s);
    Elem v = (plane.kind == PlaneModel::Kind::Ternary) ? cs_ternary(plane.cs, l.s, p.x, l.t)
                                                       : plane.shift.eval(p.x - l.s) + l.t;
    double dy = dist(p.y, v);
    if (plane.carrier_dim() == 1) {
        // euclideanize with the local slope
        const double h = 1e-6;
        Elem x2 = p.x;
        x2[0] += h;
        Elem v2 = (plane.kind == PlaneModel::Kind::Ternary)
                      ? cs_ternary(plane.cs, l.s, x2, l.t)
                      : plane.shift.eval(x2 - l.s) + l.t;
        double slope = (v2[0] - v[0]) / h;
        return dy / std::sqrt(1.0 + slope * slope);
    }
    return dy / (1.0 + norm(l.s));
}

// one Desargues closure attempt; throws solver_error / degenerate_input on bad draws
double desargues_once(const PlaneModel& plane, RegionSampler& smp, Witness& w) {
    Point o = smp.draw();
    Point a = smp.draw(), b = smp.draw(), c = smp.draw();
    Line oa = join(plane, o, a), ob = join(plane, o, b), oc = join(plane, o, c);
    // the three rays must be distinct
    if (same_line(plane, oa, ob, 1e-6) || same_line(plane, ob, oc, 1e-6) ||
        same_line(plane, oa, oc, 1e-6))
        throw degenerate_input("collapsed rays");
    Point a2 = smp.draw_on(oa, {o, a});
    Point b2 = smp.draw_on(ob, {o, b});
    Point c2 = smp.draw_on(oc, {o, c});
    Line ab = join(plane, a, b), a2b2 = join(plane, a2, b2);
    Line bc = join(plane, b, c), b2c2 = join(plane, b2, c2);
    Line ac = join(plane, a, c), a2c2 = join(plane, a2, c2);
    if (same_line(plane, ab, a2b2, 1e-4) || same_line(plane, bc, b2c2, 1e-4) ||
        same_line(plane, ac, a2c2, 1e-4))
        throw degenerate_input("coincident triangle sides");
    Point p = meet(plane, ab, a2b2);
    Point q = meet(plane, bc, b2c2);
    Point r = meet(plane, ac, a2c2);
    if (p.kind != Point::Kind::Affine || q.kind != Point::Kind::Affine ||
        r.kind != Point::Kind::Affine)
        throw degenerate_input("ideal closure points");
    if (dist(p.x, q.x) + dist(p.y, q.y) < 1e-4) throw degenerate_input("closure collapse");
    Line pq = join(plane, p, q);
    double d = point_line_distance(plane, r, pq);
    w.coords = {coords_of(o), coords_of(a), coords_of(b), coords_of(c), coords_of(a2),
                coords_of(b2), coords_of(c2), coords_of(p), coords_of(q), coords_of(r)};
    return d;
}

double pappus_once(const PlaneModel& plane, RegionSampler& smp, Witness& w) {
    Point u1 = smp.draw(), u2 = smp.draw();
    Line l1 = join(plane, u1, u2);
    Point v1 = smp.draw(), v2 = smp.draw();
    Line l2 = join(plane, v1, v2);
    if (same_line(plane, l1, l2, 1e-6)) throw degenerate_input("coincident carriers");
    Point a = smp.draw_on(l1, {}), b = smp.draw_on(l1, {a}), c = smp.draw_on(l1, {a, b});
    Point a2 = smp.draw_on(l2, {}), b2 = smp.draw_on(l2, {a2}), c2 = smp.draw_on(l2, {a2, b2});
    Point x = meet(plane, join(plane, a, b2), join(plane, a2, b));
    Point y = meet(plane, join(plane, a, c2), join(plane, a2, c));
    Point z = meet(plane, join(plane, b, c2), join(plane, b2, c));
    if (x.kind != Point::Kind::Affine || y.kind != Point::Kind::Affine ||
        z.kind != Point::Kind::Affine)
        throw degenerate_input("ideal closure points");
    if (dist(x.x, y.x) + dist(x.y, y.y) < 1e-4) throw degenerate_input("closure collapse");
    Line xy = join(plane, x, y);
    double d = point_line_distance(plane, z, xy);
    w.coords = {coords_of(a),  coords_of(b),  coords_of(c),  coords_of(a2), coords_of(b2),
                coords_of(c2), coords_of(x),  coords_of(y),  coords_of(z)};
    return d;
}

} // namespace

ConfigurationResult configuration_test(const PlaneModel& plane, ConfigKind kind,
                                       const Region& region, int trials, std::uint64_t seed) {
    ConfigurationResult out;
    for (int i = 0; i < trials; ++i) {
        for (int attempt = 0; attempt < 80; ++attempt) {
            Rng rng(seed, static_cast<std::uint64_t>(i) * 1000 + static_cast<std::uint64_t>(attempt));
            RegionSampler smp{plane, region, rng};
            try {
                Witness w;
                w.trial = i;
                double d = (kind == ConfigKind::Desargues) ? desargues_once(plane, smp, w)
                                                           : pappus_once(plane, smp, w);
                ++out.trials_done;
                if (d > out.max_discrepancy) {
                    out.max_discrepancy = d;
                    w.discrepancy = d;
                    w.description =
                        (kind == ConfigKind::Desargues) ? "desargues closure" : "pappus closure";
                    out.witness = w;
                }
                break;
            } catch (const degenerate_input&) {
                ++out.degenerate_redraws;
            } catch (const solver_error&) {
                ++out.degenerate_redraws;
            }
        }
    }
    return out;
}

double configuration_replay(const PlaneModel& plane, ConfigKind kind, const Region& region,
                            std::uint64_t seed, int trial) {
    for (int attempt = 0; attempt < 80; ++attempt) {
        Rng rng(seed, static_cast<std::uint64_t>(trial) * 1000 + static_cast<std::uint64_t>(attempt));
        RegionSampler smp{plane, region, rng};
        try {
            Witness w;
            return (kind == ConfigKind::Desargues) ? desargues_once(plane, smp, w)
                                                   : pappus_once(plane, smp, w);
        } catch (const degenerate_input&) {
        } catch (const solver_error&) {
        }
    }
    return -1.0;
}

// --- smoothness ----------------------------------------------------------------

SmoothnessReport smoothness_probe(const CoordinateStructure& cs, Locus locus, int order) {
    SmoothnessReport rep;
    const bool glued = cs.family == Family::Moulton || cs.family == Family::Tschet ||
                       cs.family == Family::TschetDual;
    if (!glued) {
        rep.has_locus = false;
        rep.locus = "none";
        return rep;
    }
    rep.has_locus = true;
    rep.locus = (locus == Locus::SlopeSign) ? "slope-sign" : "coordinate-sign";

    auto tau = [&](double s, double x, double t) {
        return cs_ternary(cs, Elem(Alg::R, {s}), Elem(Alg::R, {x}), Elem(Alg::R, {t}))[0];
    };

    const double t0 = 1.0;
    for (int pi2 = 0; pi2 < 20; ++pi2) {
        double probe = -2.5 + 0.12 * pi2; // x (or s) values, mostly negative
        double best1 = 0.0, best2 = 0.0;
        for (double h : {1e-3, 1e-4, 1e-5, 1e-6}) {
            double dplus, dminus, d2plus, d2minus;
            if (locus == Locus::SlopeSign) {
                dplus = (tau(h, probe, t0) - tau(0.0, probe, t0)) / h;
                dminus = (tau(0.0, probe, t0) - tau(-h, probe, t0)) / h;
                d2plus = (tau(2 * h, probe, t0) - 2 * tau(h, probe, t0) + tau(0, probe, t0)) /
                         (h * h);
                d2minus = (tau(-2 * h, probe, t0) - 2 * tau(-h, probe, t0) + tau(0, probe, t0)) /
                          (h * h);
            } else {
                double s0 = -1.5; // cross the x locus on the glued branch
                dplus = (tau(s0, h, t0) - tau(s0, 0.0, t0)) / h;
                dminus = (tau(s0, 0.0, t0) - tau(s0, -h, t0)) / h;
                d2plus = (tau(s0, 2 * h, t0) - 2 * tau(s0, h, t0) + tau(s0, 0, t0)) / (h * h);
                d2minus = (tau(s0, -2 * h, t0) - 2 * tau(s0, -h, t0) + tau(s0, 0, t0)) / (h * h);
            }
            if (h == 1e-5) {
                rep.probes.push_back({probe, dminus, dplus});
                best1 = std::fabs(dplus - dminus);
                best2 = std::fabs(d2plus - d2minus);
            }
        }
        if (order >= 1) rep.max_jump_order1 = std::max(rep.max_jump_order1, best1);
        if (order >= 2) rep.max_jump_order2 = std::max(rep.max_jump_order2, best2);
    }
    return rep;
}

// --- polarity laws ---------------------------------------------------------------

VerificationReport check_polarity_laws(const Polarity& pol, int n, std::uint64_t seed,
                                       double tol) {
    VerificationReport rep;
    rep.suite = "polarity-" + pol.name;
    rep.plane = plane_id(pol.plane);
    rep.seed = seed;
    const PlaneModel& plane = pol.plane;
    const Alg tag = plane.carrier();
    bool invol_ok = true, duality_ok = true, predicate_ok = true;

    auto point_dist = [&](const Point& a, const Point& b) {
        if (a.kind != b.kind) return 1.0;
        if (a.kind == Point::Kind::Infinity) return 0.0;
        if (a.kind == Point::Kind::Slope) return dist(a.x, b.x) / (1.0 + norm(a.x));
        return (dist(a.x, b.x) + dist(a.y, b.y)) / (1.0 + norm(a.x) + norm(a.y));
    };
    auto line_dist = [&](const Line& a, const Line& b) {
        if (a.kind != b.kind) return 1.0;
        if (a.kind == Line::Kind::AtInfinity) return 0.0;
        if (a.kind == Line::Kind::Vertical) return dist(a.s, b.s) / (1.0 + norm(a.s));
        return (dist(a.s, b.s) + dist(a.t, b.t)) / (1.0 + norm(a.s) + norm(a.t));
    };

    for (int i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        ++rep.attempted;
        double u = rng.uniform();
        Point p;
        if (u < 0.8)
            p = random_affine(rng, plane, 1.2);
        else if (u < 0.9)
            p = Point::slope(random_elem(rng, tag, 1.2));
        else
            p = Point::infinity(tag);

        // involution on the point and on a random line
        double res = point_dist(polar(pol, polar(pol, p)), p);
        Line rl = random_line(rng, plane, 1.2);
        res = std::max(res, line_dist(polar(pol, polar(pol, rl)), rl));
        rep.max_residual = std::max(rep.max_residual, res);
        bool ideal = p.kind != Point::Kind::Affine;
        if (res > (ideal ? 1e-14 : tol) && res > tol) {
            invol_ok = false;
            Witness w;
            w.trial = i;
            w.discrepancy = res;
            w.description = "involution failure";
            w.coords = {coords_of(p)};
            rep.note_failure(w);
        }

        // duality law x in y^rho <=> y in x^rho: random pair plus a forced-true pair
        Point q = (rng.uniform() < 0.85) ? random_affine(rng, plane, 1.2)
                                         : Point::slope(random_elem(rng, tag, 1.2));
        bool d1 = incident(plane, p, polar(pol, q), 1e-7);
        bool d2 = incident(plane, q, polar(pol, p), 1e-7);
        if (d1 != d2) {
            duality_ok = false;
            Witness w;
            w.trial = i;
            w.discrepancy = 1.0;
            w.description = "duality law disagreement (random pair)";
            w.coords = {coords_of(p), coords_of(q)};
            rep.note_failure(w);
        }
        // a point on p^rho must see p on its own polar
        try {
            Line lp = polar(pol, p);
            if (lp.kind == Line::Kind::NonVertical) {
                Elem x = random_elem(rng, tag, 1.2);
                Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                             ? cs_ternary(plane.cs, lp.s, x, lp.t)
                             : plane.shift.eval(x - lp.s) + lp.t;
                Point on = Point::affine(x, y);
                if (!incident(plane, p, polar(pol, on), 1e-7)) {
                    duality_ok = false;
                    Witness w;
                    w.trial = i;
                    w.discrepancy = incidence_residual(plane, p, polar(pol, on));
                    w.description = "duality law failure (incident pair)";
                    w.coords = {coords_of(p), coords_of(on)};
                    rep.note_failure(w);
                }
            }
        } catch (const solver_error&) {
            ++rep.skipped;
        }

        // closed-form predicate matches incidence on p and on a sampled absolute point
        bool pred = is_absolute(pol, p, 1e-9);
        bool inc = incident(plane, p, polar(pol, p), 1e-7);
        if (pred != inc) {
            predicate_ok = false;
            Witness w;
            w.trial = i;
            w.discrepancy = absolute_residual(pol, p);
            w.description = "predicate/incidence disagreement";
            w.coords = {coords_of(p)};
            rep.note_failure(w);
        }
        ++rep.passed;
    }

    // absolute samples must also agree
    UnitalSample us = unital_probe(pol, std::min(64, std::max(8, n / 100)), seed ^ 0xabcdefULL);
    for (const auto& p : us.points) {
        if (!incident(plane, p, polar(pol, p), 1e-7) || !is_absolute(pol, p, 1e-8)) {
            predicate_ok = false;
            Witness w;
            w.discrepancy = absolute_residual(pol, p);
            w.description = "sampled absolute point fails incidence";
            w.coords = {coords_of(p)};
            rep.note_failure(w);
        }
    }

    rep.subtests["involution"] = invol_ok;
    rep.subtests["duality"] = duality_ok;
    rep.subtests["predicate-agreement"] = predicate_ok;
    rep.pass = invol_ok && duality_ok && predicate_ok;
    return rep;
}

// --- motion equivalence ---------------------------------------------------------

namespace {

Collineation draw_mutation_map(const Polarity& pol, Rng& rng, bool constrained) {
    const Alg tag = pol.plane.carrier();
    Morphism gamma;
    if (tag == Alg::H) {
        Elem h = random_unit(rng, Alg::H);
        if (constrained && pol.iota.kind == Morphism::Kind::TwistedConj) {
            // h in C or h perpendicular to C
            double th = rng.uniform(0.0, 6.283185307179586);
            if (rng.uniform() < 0.5)
                h = Elem(Alg::H, {std::cos(th), std::sin(th), 0.0, 0.0});
            else
                h = Elem(Alg::H, {0.0, 0.0, std::cos(th), std::sin(th)});
        }
        gamma = Morphism::inner_auto(Alg::H, h);
    } else {
        gamma = Morphism::pair_auto(random_unit(rng, Alg::H), random_unit(rng, Alg::H));
    }
    double r = (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(rng.normal() * 0.3);
    double s = constrained ? r : (rng.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(rng.normal() * 0.3);
    Elem m = random_elem(rng, tag);
    Elem q = constrained ? morphism_apply(pol.iota, m) : random_elem(rng, tag);
    Elem n = random_elem(rng, tag);
    if (constrained) {
        // solve n + n^iota = m^iota o m, then randomize along the kernel
        const int nd = dim(tag);
        Mat bmat(nd, nd);
        for (int j = 0; j < nd; ++j) {
            Elem e = Elem::unit(tag, j);
            Elem col = e + morphism_apply(pol.iota, e);
            for (int i = 0; i < nd; ++i) bmat(i, j) = col[i];
        }
        Elem target = cs_multiply(pol.plane.cs, morphism_apply(pol.iota, m), m);
        std::vector<double> tv(static_cast<size_t>(nd));
        for (int i = 0; i < nd; ++i) tv[static_cast<size_t>(i)] = target[i];
        auto sol = solve_affine(bmat, tv);
        n = Elem(tag);
        for (int i = 0; i < nd; ++i) n[i] = sol.particular[static_cast<size_t>(i)];
        for (auto& dir : sol.nullspace) {
            double wv = rng.normal();
            for (int i = 0; i < nd; ++i) n[i] += wv * dir[static_cast<size_t>(i)];
        }
    }
    return mutation_general(pol.plane, gamma, r, s, q, m, n);
}

Collineation draw_double_flag_map(const Polarity& pol, Rng& rng, bool constrained) {
    Elem k(Alg::H, {0, 0, 0, 1});
    Elem a = random_unit(rng, Alg::H);
    Elem c = random_unit(rng, Alg::H);
    Elem b = random_unit(rng, Alg::H);
    Elem n = random_elem(rng, Alg::H);
    if (constrained) {
        if (pol.rule == Polarity::Rule::AntiAuto) {
            b = conj(c);
            n[0] = 0.0; // pure
        } else {
            double e = rng.uniform() < 0.5 ? 1.0 : -1.0;
            double th = rng.uniform(0.0, 6.283185307179586);
            a = (e > 0) ? Elem(Alg::H, {std::cos(th), 0, 0, std::sin(th)})
                        : Elem(Alg::H, {0, std::cos(th), std::sin(th), 0});
            // b from c k = e k b~
            Elem bbar = e * mul(mul(inverse(k), c), k);
            b = conj(bbar);
            n = Elem(Alg::H, {0, 0, 0, rng.normal()}); // n~ k = k~ n forces n in R k
        }
    }
    return double_flag_map(pol.plane, a, b, c, n);
}

} // namespace

EquivalenceResult motion_equivalence(const Polarity& pol, int draws, std::uint64_t seed) {
    EquivalenceResult out;
    const bool df = pol.plane.kind == PlaneModel::Kind::Ternary &&
                    pol.plane.cs.family == Family::DistortedH;
    for (int i = 0; i < draws; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        bool constrained = (i % 2) == 1;
        Collineation f = df ? draw_double_flag_map(pol, rng, constrained)
                            : draw_mutation_map(pol, rng, constrained);
        MotionTest mt = motion_test(pol, f, 40, seed ^ (0x9e37u + static_cast<unsigned>(i)));
        ++out.draws;
        if (mt.condition_membership) ++out.members;
        if (mt.condition_membership != mt.commutes) ++out.disagreements;
    }
    return out;
}

IsomorphismResult dual_exponent_isomorphism(double r, int n, std::uint64_t seed) {
    IsomorphismResult out;
    PlaneModel src = plane_over(cs_tschet_dual(r));
    PlaneModel dst = plane_over(cs_tschet_dual(1.0 / r));
    RadialSpec rho = RadialSpec::power(r);
    auto fwd = [&](double v) { return rho.odd_eval(v); };

    for (int i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        double u = rng.uniform();
        Point p;
        Line l;
        if (u < 0.8) {
            l = Line::non_vertical(Elem(Alg::R, {rng.normal() * 1.5}),
                                   Elem(Alg::R, {rng.normal() * 1.5}));
            Elem x(Alg::R, {rng.normal() * 1.5});
            p = Point::affine(x, cs_ternary(src.cs, l.s, x, l.t));
        } else if (u < 0.9) {
            l = Line::vertical(Elem(Alg::R, {rng.normal() * 1.5}));
            p = Point::affine(l.s, Elem(Alg::R, {rng.normal() * 1.5}));
        } else {
            l = Line::at_infinity(Alg::R);
            p = Point::slope(Elem(Alg::R, {rng.normal() * 1.5}));
        }
        // image under (x, y) -> (-x^rho, y^rho), [s, t] -> [-s^rho, t^rho]
        Point p2;
        Line l2;
        if (p.kind == Point::Kind::Affine)
            p2 = Point::affine(Elem(Alg::R, {-fwd(p.x[0])}), Elem(Alg::R, {fwd(p.y[0])}));
        else if (p.kind == Point::Kind::Slope)
            p2 = Point::slope(Elem(Alg::R, {-fwd(p.x[0])}));
        else
            p2 = p;
        if (l.kind == Line::Kind::NonVertical)
            l2 = Line::non_vertical(Elem(Alg::R, {-fwd(l.s[0])}), Elem(Alg::R, {fwd(l.t[0])}));
        else if (l.kind == Line::Kind::Vertical)
            l2 = Line::vertical(Elem(Alg::R, {-fwd(l.s[0])}));
        else
            l2 = l;
        out.max_residual = std::max(out.max_residual, incidence_residual(dst, p2, l2));
        ++out.checked;
    }
    return out;
}

} // namespace planelab
