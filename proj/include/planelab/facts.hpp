#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planelab/coords.hpp"

namespace planelab {

// Classification fact base: for a fixed configuration of the automorphism
// group and a structural class of the group, the dimension bounds that decide
// what the plane must be. Bounds are absent, never zero, when the source
// leaves the cell empty.
enum class FixedConfig {
    Empty,        // no fixed elements
    FixedLine,    // {W}
    Flag,         // incident point-line pair
    PointLine,    // {o, W}, non-incident
    TwoPoints,    // <u, v>
    ThreePoints,  // <u, v, w> collinear
    DoubleFlag,   // <u, v, ov>
    Triangle,     // <o, u, v>
    Arbitrary
};

enum class GroupClass { Semisimple, NormalTorus, NormalVector, Arbitrary };

struct FactBounds {
    std::optional<int> known;        // b:  dim >= b  => plane known
    std::optional<int> translation;  // b': dim >= b' => translation plane
    std::optional<int> cartesian;    // b'': dim >= b'' => Cartesian plane
    std::optional<int> hughes;       // b*: dim >= b* => Hughes plane
    std::optional<int> classical;    // c:  dim >= c  => classical
    std::optional<int> upper;        // d:  dim <= d
    std::optional<int> group_known;  // g:  dim >= g  => group known
};

struct FactRow {
    FixedConfig config;
    GroupClass group;
    FactBounds bounds;
    std::vector<int> footnotes;
    std::string citation;
};

FixedConfig fixed_config_from_string(const std::string& s);
GroupClass group_class_from_string(const std::string& s);
std::string to_string(FixedConfig c);
std::string to_string(GroupClass g);

// throws parameter_error when the combination is unknown
FactRow facts_lookup(FixedConfig config, GroupClass group);

const std::vector<FactRow>& facts_all();
std::string footnote_text(int id);

// summary of the polarity/unital landscape per plane family
struct UnitalSummaryRow {
    std::string planes;
    std::string classes;
    std::string unitals;
    std::string motion_dims;
};
const std::vector<UnitalSummaryRow>& unital_summary_8d();
const std::vector<UnitalSummaryRow>& unital_summary_16d();

// the full fact base as aligned text (golden-tested) and as JSON
std::string facts_render_text();
std::string facts_render_json();

} // namespace planelab
