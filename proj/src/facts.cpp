#include "planelab/facts.hpp"

#include <json.hpp>
#include <sstream>

namespace planelab {

using nlohmann::json;

FixedConfig fixed_config_from_string(const std::string& s) {
    if (s == "empty" || s == "none") return FixedConfig::Empty;
    if (s == "W" || s == "line") return FixedConfig::FixedLine;
    if (s == "flag") return FixedConfig::Flag;
    if (s == "o-W" || s == "point-line") return FixedConfig::PointLine;
    if (s == "u-v") return FixedConfig::TwoPoints;
    if (s == "u-v-w") return FixedConfig::ThreePoints;
    if (s == "u-v-ov" || s == "double-flag") return FixedConfig::DoubleFlag;
    if (s == "o-u-v" || s == "triangle") return FixedConfig::Triangle;
    if (s == "arbitrary") return FixedConfig::Arbitrary;
    throw parameter_error("unknown fixed configuration: " + s);
}

GroupClass group_class_from_string(const std::string& s) {
    if (s == "semisimple") return GroupClass::Semisimple;
    if (s == "normal-torus") return GroupClass::NormalTorus;
    if (s == "normal-vector") return GroupClass::NormalVector;
    if (s == "arbitrary") return GroupClass::Arbitrary;
    throw parameter_error("unknown group class: " + s);
}

std::string to_string(FixedConfig c) {
    switch (c) {
    case FixedConfig::Empty: return "empty";
    case FixedConfig::FixedLine: return "W";
    case FixedConfig::Flag: return "flag";
    case FixedConfig::PointLine: return "o-W";
    case FixedConfig::TwoPoints: return "u-v";
    case FixedConfig::ThreePoints: return "u-v-w";
    case FixedConfig::DoubleFlag: return "u-v-ov";
    case FixedConfig::Triangle: return "o-u-v";
    case FixedConfig::Arbitrary: return "arbitrary";
    }
    return "?";
}

std::string to_string(GroupClass g) {
    switch (g) {
    case GroupClass::Semisimple: return "semisimple";
    case GroupClass::NormalTorus: return "normal-torus";
    case GroupClass::NormalVector: return "normal-vector";
    case GroupClass::Arbitrary: return "arbitrary";
    }
    return "?";
}

namespace {

FactBounds B() { return {}; }
FactBounds& set_b(FactBounds& f, int v) { f.known = v; return f; }
FactBounds& set_bp(FactBounds& f, int v) { f.translation = v; return f; }
FactBounds& set_bpp(FactBounds& f, int v) { f.cartesian = v; return f; }
FactBounds& set_bs(FactBounds& f, int v) { f.hughes = v; return f; }
FactBounds& set_c(FactBounds& f, int v) { f.classical = v; return f; }
FactBounds& set_d(FactBounds& f, int v) { f.upper = v; return f; }
FactBounds& set_g(FactBounds& f, int v) { f.group_known = v; return f; }

std::vector<FactRow> build_table() {
    std::vector<FactRow> t;
    auto row = [&](FixedConfig cfg, GroupClass gc, FactBounds b, std::vector<int> fns,
                   std::string cite) {
        t.push_back({cfg, gc, b, std::move(fns), std::move(cite)});
    };
    using FC = FixedConfig;
    using GC = GroupClass;

    // fixed configuration: none
    {
        std::string cite = "2.1, [sz4], 2.3";
        FactBounds f = B(); set_bs(f, 12);
        row(FC::Empty, GC::Semisimple, f, {1}, cite);
        f = B(); set_bs(f, 10);
        row(FC::Empty, GC::NormalTorus, f, {}, cite);
        f = B(); set_d(f, 10);
        row(FC::Empty, GC::NormalVector, f, {2}, cite);
        f = B(); set_b(f, 12); set_c(f, 18);
        row(FC::Empty, GC::Arbitrary, f, {}, cite);
    }
    // one fixed line
    {
        std::string cite = "3.1,2,3, 1.10";
        FactBounds f = B(); set_d(f, 10);
        row(FC::FixedLine, GC::Semisimple, f, {3}, cite);
        f = B(); set_d(f, 13);
        row(FC::FixedLine, GC::NormalTorus, f, {}, cite);
        f = B(); set_b(f, 16);
        row(FC::FixedLine, GC::NormalVector, f, {}, cite);
        f = B(); set_bp(f, 16); set_c(f, 17);
        row(FC::FixedLine, GC::Arbitrary, f, {}, cite);
    }
    // fixed flag
    {
        std::string cite = "4.1,2, [sz3], 1.10";
        FactBounds f = B(); set_d(f, 11);
        row(FC::Flag, GC::Semisimple, f, {4}, cite);
        f = B(); set_d(f, 11);
        row(FC::Flag, GC::NormalTorus, f, {}, cite);
        f = B(); set_bp(f, 17);
        row(FC::Flag, GC::NormalVector, f, {}, cite);
        f = B(); set_b(f, 17); set_c(f, 19);
        row(FC::Flag, GC::Arbitrary, f, {}, cite);
    }
    // non-incident point-line pair
    {
        std::string cite = "4.4,5,6";
        FactBounds f = B(); set_c(f, 14);
        row(FC::PointLine, GC::Semisimple, f, {5}, cite);
        f = B(); set_c(f, 13);
        row(FC::PointLine, GC::NormalTorus, f, {}, cite);
        f = B(); set_c(f, 15);
        row(FC::PointLine, GC::NormalVector, f, {}, cite);
        f = B(); set_c(f, 15);
        row(FC::PointLine, GC::Arbitrary, f, {}, cite);
    }
    // two fixed points
    {
        std::string cite = "5.1,3,4, 1.10(3)";
        FactBounds f = B(); set_d(f, 10);
        row(FC::TwoPoints, GC::Semisimple, f, {}, cite);
        f = B(); set_d(f, 9);
        row(FC::TwoPoints, GC::NormalTorus, f, {}, cite);
        f = B(); set_bpp(f, 15);
        row(FC::TwoPoints, GC::NormalVector, f, {}, cite);
        f = B(); set_b(f, 17); set_c(f, 18);
        row(FC::TwoPoints, GC::Arbitrary, f, {}, cite);
    }
    // three collinear fixed points
    {
        std::string cite = "5.2,3,5";
        FactBounds f = B(); set_d(f, 10);
        row(FC::ThreePoints, GC::Semisimple, f, {6}, cite);
        f = B(); set_d(f, 7);
        row(FC::ThreePoints, GC::NormalTorus, f, {}, cite);
        f = B(); set_bp(f, 13);
        row(FC::ThreePoints, GC::NormalVector, f, {7}, cite);
        f = B(); set_c(f, 14);
        row(FC::ThreePoints, GC::Arbitrary, f, {}, cite);
    }
    // double flag
    {
        std::string cite = "6.1,2,4";
        FactBounds f = B(); set_d(f, 10);
        row(FC::DoubleFlag, GC::Semisimple, f, {}, cite);
        f = B(); set_c(f, 13);
        row(FC::DoubleFlag, GC::NormalTorus, f, {}, cite);
        f = B(); set_b(f, 14);
        row(FC::DoubleFlag, GC::NormalVector, f, {}, cite);
        f = B(); set_c(f, 15);
        row(FC::DoubleFlag, GC::Arbitrary, f, {}, cite);
    }
    // triangle
    {
        std::string cite = "[sz4] 6.1, 1.7";
        FactBounds f = B(); set_d(f, 9);
        row(FC::Triangle, GC::Semisimple, f, {}, cite);
        f = B(); set_d(f, 9);
        row(FC::Triangle, GC::NormalTorus, f, {}, cite);
        f = B(); set_d(f, 11);
        row(FC::Triangle, GC::NormalVector, f, {}, cite);
        f = B(); set_d(f, 11); set_g(f, 11);
        row(FC::Triangle, GC::Arbitrary, f, {}, cite);
    }
    // arbitrary configuration
    {
        std::string cite = "7.1,2, [sz3]";
        FactBounds f = B(); set_bs(f, 14);
        row(FC::Arbitrary, GC::Semisimple, f, {}, cite);
        f = B(); set_bs(f, 14);
        row(FC::Arbitrary, GC::NormalTorus, f, {}, cite);
        f = B(); set_bp(f, 17);
        row(FC::Arbitrary, GC::NormalVector, f, {}, cite);
        f = B(); set_b(f, 17); set_c(f, 19);
        row(FC::Arbitrary, GC::Arbitrary, f, {}, cite);
    }
    return t;
}

} // namespace

const std::vector<FactRow>& facts_all() {
    static const std::vector<FactRow> table = build_table();
    return table;
}

FactRow facts_lookup(FixedConfig config, GroupClass group) {
    for (const auto& r : facts_all())
        if (r.config == config && r.group == group) return r;
    throw parameter_error("no fact row for " + to_string(config) + " / " + to_string(group));
}

std::string footnote_text(int id) {
    switch (id) {
    case 1: return "dim D = 11 forces D ~ SL3R x SO3R ([sz4] Cor. 2.3)";
    case 2: return "dim D = 10 forces D ~ SL3R x L2 ([sz7] Th. 1)";
    case 3: return "dim D = 10 forces D ~ O'5(R,1) or D/Z ~ O'5(R,2) (3.1)";
    case 4: return "dim D = 11 forces D/Z ~ PSU3(C,1) x PSL2R with trivial kernel ([sz4] Th. 3.2)";
    case 5: return "dim D = 13 forces D ~ U2(H,r).SU2C ([sz4] Th. 3.3)";
    case 6: return "dim D = 10 forces D/Z ~ O'5(R,2) with trivial kernel ([sz4] Th. 4.1)";
    case 7: return "dim D = 13 forces D ~ R^4 : e^R U2C ([sz7] Th. 5)";
    default: throw parameter_error("unknown footnote id");
    }
}

const std::vector<UnitalSummaryRow>& unital_summary_8d() {
    static const std::vector<UnitalSummaryRow> rows = {
        {"Classical", "3", "empty, S7, S5", "21, 21, 15"},
        {"Hughes", "1", "dim U = 5", "6"},
        {"Mutations", "2", "S7, S5", "11, 7"},
        {"Rees", "1", "S5", "7"},
        {"Spin", "2", "S5", "7, 9"},
        {"Double flag", "2", "S7, S5", "9, 5"},
    };
    return rows;
}

const std::vector<UnitalSummaryRow>& unital_summary_16d() {
    static const std::vector<UnitalSummaryRow> rows = {
        {"Classical", "3", "empty, S15, S11", "52, 52, 36"},
        {"Hughes", "1", "dim U = 11", "15"},
        {"Mutations", "2", "S15, S11", "30, 18"},
        {"Double flag", "2", "S15, S11", "28, ?"},
    };
    return rows;
}

static std::string bounds_text(const FactBounds& b) {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const char* k, const std::optional<int>& v) {
        if (!v) return;
        if (!first) os << " ";
        os << k << "=" << *v;
        first = false;
    };
    put("b", b.known);
    put("b'", b.translation);
    put("b''", b.cartesian);
    put("b*", b.hughes);
    put("c", b.classical);
    put("d", b.upper);
    put("g", b.group_known);
    if (first) os << "-";
    return os.str();
}

std::string facts_render_text() {
    std::ostringstream os;
    os << "dimension bounds for the automorphism group (8-dimensional compact planes)\n";
    os << "legend: b known, b' translation plane, b'' Cartesian plane, b* Hughes,\n";
    os << "        c classical, d upper bound, g group known\n\n";
    os << "config    | semisimple      | normal-torus    | normal-vector   | arbitrary"
          "            | citation\n";
    os << "----------+-----------------+-----------------+-----------------+----------"
          "------------+-----------------\n";
    using GC = GroupClass;
    const GC order[4] = {GC::Semisimple, GC::NormalTorus, GC::NormalVector, GC::Arbitrary};
    const FixedConfig cfgs[9] = {
        FixedConfig::Empty,      FixedConfig::FixedLine, FixedConfig::Flag,
        FixedConfig::PointLine,  FixedConfig::TwoPoints, FixedConfig::ThreePoints,
        FixedConfig::DoubleFlag, FixedConfig::Triangle,  FixedConfig::Arbitrary};
    for (auto cfg : cfgs) {
        std::string cite;
        std::ostringstream line;
        line << to_string(cfg);
        for (size_t i = to_string(cfg).size(); i < 10; ++i) line << ' ';
        for (auto gc : order) {
            FactRow r = facts_lookup(cfg, gc);
            cite = r.citation;
            std::string cell = bounds_text(r.bounds);
            for (int fn : r.footnotes) cell += " ^" + std::to_string(fn);
            line << "| " << cell;
            size_t width = (gc == GC::Arbitrary) ? 21u : 16u;
            for (size_t i = cell.size(); i + 1 < width; ++i) line << ' ';
        }
        line << "| " << cite;
        os << line.str() << "\n";
    }
    os << "\nfootnotes\n";
    for (int i = 1; i <= 7; ++i) os << "  ^" << i << "  " << footnote_text(i) << "\n";
    os << "\nunitals of 8-dimensional planes\n";
    os << "planes       | classes | unitals          | dim of motion groups\n";
    for (const auto& r : unital_summary_8d()) {
        std::ostringstream line;
        line << r.planes;
        for (size_t i = r.planes.size(); i < 13; ++i) line << ' ';
        line << "| " << r.classes;
        for (size_t i = r.classes.size(); i < 8; ++i) line << ' ';
        line << "| " << r.unitals;
        for (size_t i = r.unitals.size(); i < 17; ++i) line << ' ';
        line << "| " << r.motion_dims;
        os << line.str() << "\n";
    }
    os << "\nunitals of 16-dimensional planes\n";
    os << "planes       | classes | unitals          | dim of motion groups\n";
    for (const auto& r : unital_summary_16d()) {
        std::ostringstream line;
        line << r.planes;
        for (size_t i = r.planes.size(); i < 13; ++i) line << ' ';
        line << "| " << r.classes;
        for (size_t i = r.classes.size(); i < 8; ++i) line << ' ';
        line << "| " << r.unitals;
        for (size_t i = r.unitals.size(); i < 17; ++i) line << ' ';
        line << "| " << r.motion_dims;
        os << line.str() << "\n";
    }
    return os.str();
}

std::string facts_render_json() {
    json j;
    j["rows"] = json::array();
    for (const auto& r : facts_all()) {
        json rj;
        rj["config"] = to_string(r.config);
        rj["group"] = to_string(r.group);
        json b;
        if (r.bounds.known) b["b"] = *r.bounds.known;
        if (r.bounds.translation) b["b'"] = *r.bounds.translation;
        if (r.bounds.cartesian) b["b''"] = *r.bounds.cartesian;
        if (r.bounds.hughes) b["b*"] = *r.bounds.hughes;
        if (r.bounds.classical) b["c"] = *r.bounds.classical;
        if (r.bounds.upper) b["d"] = *r.bounds.upper;
        if (r.bounds.group_known) b["g"] = *r.bounds.group_known;
        rj["bounds"] = b;
        rj["footnotes"] = r.footnotes;
        rj["citation"] = r.citation;
        j["rows"].push_back(rj);
    }
    json u8 = json::array(), u16 = json::array();
    for (const auto& r : unital_summary_8d())
        u8.push_back({{"planes", r.planes},
                      {"classes", r.classes},
                      {"unitals", r.unitals},
                      {"motion_dims", r.motion_dims}});
    for (const auto& r : unital_summary_16d())
        u16.push_back({{"planes", r.planes},
                       {"classes", r.classes},
                       {"unitals", r.unitals},
                       {"motion_dims", r.motion_dims}});
    j["unital_summary_8d"] = u8;
    j["unital_summary_16d"] = u16;
    return j.dump(2);
}

} // namespace planelab
