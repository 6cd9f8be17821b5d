#include "planelab/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace planelab {

using nlohmann::json;

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
        f << content;
        if (!f) throw std::runtime_error("write failed on " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed for " + path);
}

namespace {

// fixed-precision numbers keep the output byte-stable
std::string fmt(double v) {
    char buf[40];
    if (std::fabs(v) < 5e-5) v = 0.0;
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

struct Mapper {
    const RenderSpec& spec;
    double w = 800, h = 800;
    double px(double x) const { return (x - spec.xmin) / (spec.xmax - spec.xmin) * w; }
    double py(double y) const { return h - (y - spec.ymin) / (spec.ymax - spec.ymin) * h; }
    bool inside(double x, double y) const {
        return x >= spec.xmin && x <= spec.xmax && y >= spec.ymin && y <= spec.ymax;
    }
};

void emit_polyline(std::ostringstream& os, const Mapper& map,
                   const std::vector<std::pair<double, double>>& pts, const char* color,
                   double width) {
    // split the trace where it leaves the window
    std::vector<std::pair<double, double>> run;
    auto flush = [&]() {
        if (run.size() < 2) {
            run.clear();
            return;
        }
        os << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << width
           << "\" points=\"";
        for (auto& p : run) os << fmt(map.px(p.first)) << "," << fmt(map.py(p.second)) << " ";
        os << "\"/>\n";
        run.clear();
    };
    for (auto& p : pts) {
        if (map.inside(p.first, p.second) && std::isfinite(p.second))
            run.push_back(p);
        else
            flush();
    }
    flush();
}

} // namespace

void render_svg(const RenderSpec& spec) {
    const PlaneModel& plane = spec.plane;
    if (plane.carrier_dim() != 1)
        throw parameter_error("render_svg supports planes over a one-dimensional carrier");
    if (spec.xmax <= spec.xmin || spec.ymax <= spec.ymin)
        throw parameter_error("render window is empty");
    if (spec.slope_count < 1 || spec.intercept_count < 1 || spec.vertical_count < 1)
        throw parameter_error("grid counts must be >= 1");

    Mapper map{spec};
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << map.w << "\" height=\""
       << map.h << "\" viewBox=\"0 0 " << map.w << " " << map.h << "\">\n";
    os << "  <!-- " << tool_version() << " plane=" << plane_id(plane) << " -->\n";
    os << "  <rect width=\"" << map.w << "\" height=\"" << map.h
       << "\" fill=\"white\"/>\n";

    auto line_y = [&](double s, double t, double x) {
        Elem xe(Alg::R, {x});
        return (plane.kind == PlaneModel::Kind::Ternary)
                   ? cs_ternary(plane.cs, Elem(Alg::R, {s}), xe, Elem(Alg::R, {t}))[0]
                   : plane.shift.eval(xe - Elem(Alg::R, {s}))[0] + t;
    };

    // axes
    emit_polyline(os, map, {{spec.xmin, 0.0}, {spec.xmax, 0.0}}, "#cccccc", 1.0);
    emit_polyline(os, map, {{0.0, spec.ymin}, {0.0, spec.ymax}}, "#cccccc", 1.0);

    const double smax = 3.0;
    for (int i = 0; i < spec.slope_count; ++i) {
        double s = (spec.slope_count == 1)
                       ? 1.0
                       : -smax + 2.0 * smax * i / (spec.slope_count - 1);
        for (int j = 0; j < spec.intercept_count; ++j) {
            double t = (spec.intercept_count == 1)
                           ? 0.0
                           : spec.ymin + (spec.ymax - spec.ymin) * j / (spec.intercept_count - 1);
            std::vector<std::pair<double, double>> pts;
            for (int k = 0; k < spec.samples_per_line; ++k) {
                double x = spec.xmin + (spec.xmax - spec.xmin) * k / (spec.samples_per_line - 1);
                pts.emplace_back(x, line_y(s, t, x));
            }
            emit_polyline(os, map, pts, "#3465a4", 0.7);
        }
    }
    for (int i = 0; i < spec.vertical_count; ++i) {
        double c = (spec.vertical_count == 1)
                       ? 0.5 * (spec.xmin + spec.xmax)
                       : spec.xmin + (spec.xmax - spec.xmin) * (i + 0.5) / spec.vertical_count;
        emit_polyline(os, map, {{c, spec.ymin}, {c, spec.ymax}}, "#73d216", 0.7);
    }

    if (!spec.overlay_polarity.empty()) {
        Polarity pol = make_polarity(plane, spec.overlay_polarity);
        std::vector<std::pair<double, double>> pts;
        for (int k = 0; k < 2 * spec.samples_per_line; ++k) {
            double x =
                spec.xmin + (spec.xmax - spec.xmin) * k / (2.0 * spec.samples_per_line - 1);
            // membership equation B(y) = q(x) is linear in the flat fibre
            Elem xe(Alg::R, {x});
            auto r0 = membership_residual_vector(pol, xe, Elem(Alg::R, {0.0}));
            auto r1 = membership_residual_vector(pol, xe, Elem(Alg::R, {1.0}));
            double slope = r1[0] - r0[0];
            if (std::fabs(slope) < 1e-14) continue;
            pts.emplace_back(x, -r0[0] / slope);
        }
        emit_polyline(os, map, pts, "#cc0000", 1.6);
    }

    os << "</svg>\n";
    atomic_write(spec.out_path, os.str());
}

static json point_coords_json(const Point& p) {
    json arr = json::array();
    json xs = json::array(), ys = json::array();
    for (int i = 0; i < p.x.n(); ++i) xs.push_back(p.x[i]);
    for (int i = 0; i < p.y.n(); ++i) ys.push_back(p.y[i]);
    for (auto& v : xs) arr.push_back(v);
    for (auto& v : ys) arr.push_back(v);
    return arr;
}

void export_unital_samples(const Polarity& pol, int n, std::uint64_t seed,
                           const std::string& format, const std::string& path) {
    UnitalSample us = n > 0 ? unital_probe(pol, n, seed) : UnitalSample{};
    if (format == "json") {
        json j;
        j["tool"] = tool_version();
        j["plane"] = plane_id(pol.plane);
        j["polarity"] = pol.name;
        j["seed"] = seed;
        j["local_dimension"] = us.local_dimension;
        j["points"] = json::array();
        for (const auto& p : us.points) j["points"].push_back(point_coords_json(p));
        atomic_write(path, j.dump(2) + "\n");
        return;
    }
    if (format == "csv") {
        std::ostringstream os;
        const int m = pol.plane.carrier_dim();
        for (int i = 0; i < m; ++i) os << (i ? "," : "") << "x" << i;
        for (int i = 0; i < m; ++i) os << ",y" << i;
        os << "\n";
        for (const auto& p : us.points) {
            for (int i = 0; i < m; ++i) os << (i ? "," : "") << p.x[i];
            for (int i = 0; i < m; ++i) os << "," << p.y[i];
            os << "\n";
        }
        atomic_write(path, os.str());
        return;
    }
    throw parameter_error("unital export format must be json or csv");
}

void export_plane_incidences(const PlaneModel& plane, int n, std::uint64_t seed,
                             const std::string& format, const std::string& path) {
    std::vector<std::pair<Point, Line>> flags;
    for (int i = 0; i < n; ++i) {
        Rng rng(seed, static_cast<std::uint64_t>(i));
        Line l = Line::non_vertical(random_elem(rng, plane.carrier(), 1.5),
                                    random_elem(rng, plane.carrier(), 1.5));
        Elem x = random_elem(rng, plane.carrier(), 1.5);
        Elem y = (plane.kind == PlaneModel::Kind::Ternary)
                     ? cs_ternary(plane.cs, l.s, x, l.t)
                     : plane.shift.eval(x - l.s) + l.t;
        flags.emplace_back(Point::affine(x, y), l);
    }
    if (format == "json") {
        json j;
        j["tool"] = tool_version();
        j["plane"] = plane_id(plane);
        j["seed"] = seed;
        j["flags"] = json::array();
        for (auto& [p, l] : flags) {
            json f;
            f["point"] = point_coords_json(p);
            json ls = json::array();
            for (int i = 0; i < l.s.n(); ++i) ls.push_back(l.s[i]);
            for (int i = 0; i < l.t.n(); ++i) ls.push_back(l.t[i]);
            f["line"] = ls;
            j["flags"].push_back(f);
        }
        atomic_write(path, j.dump(2) + "\n");
        return;
    }
    if (format == "csv") {
        std::ostringstream os;
        const int m = plane.carrier_dim();
        for (int i = 0; i < m; ++i) os << (i ? "," : "") << "x" << i;
        for (int i = 0; i < m; ++i) os << ",y" << i;
        for (int i = 0; i < m; ++i) os << ",s" << i;
        for (int i = 0; i < m; ++i) os << ",t" << i;
        os << "\n";
        for (auto& [p, l] : flags) {
            for (int i = 0; i < m; ++i) os << (i ? "," : "") << p.x[i];
            for (int i = 0; i < m; ++i) os << "," << p.y[i];
            for (int i = 0; i < m; ++i) os << "," << l.s[i];
            for (int i = 0; i < m; ++i) os << "," << l.t[i];
            os << "\n";
        }
        atomic_write(path, os.str());
        return;
    }
    throw parameter_error("incidence export format must be json or csv");
}

} // namespace planelab
