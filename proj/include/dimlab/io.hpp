#pragma once
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dimlab/games_loss.hpp"
#include "dimlab/types.hpp"
#include "dimlab/width.hpp"
#include "dimlab/witness.hpp"

namespace dimlab {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Rationals ride as "num/den" strings so JSON round-trips are bit-exact.

inline Json rat_to_json(const Rat& r) { return r.str(); }

inline Rat rat_from_json(const Json& j) {
    require(j.is_string(), "ValueOutOfRange", "rationals must be 'num/den' strings");
    return Rat::parse(j.get<std::string>());
}

inline Json rat_vec_to_json(const std::vector<Rat>& v) {
    Json arr = Json::array();
    for (const Rat& r : v) arr.push_back(rat_to_json(r));
    return arr;
}

inline std::vector<Rat> rat_vec_from_json(const Json& j) {
    require(j.is_array(), "ValueOutOfRange", "expected an array of rationals");
    std::vector<Rat> v;
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

// ---------------------------------------------------------------------------
// Class files: {"x": [...], "y": [...], "values": [["num/den", ...], ...]}

inline Json class_to_json(const HypothesisClass& h) {
    Json j;
    j["x"] = h.x_labels;
    j["y"] = h.y_labels;
    Json rows = Json::array();
    for (const auto& row : h.values) rows.push_back(rat_vec_to_json(row));
    j["values"] = rows;
    return j;
}

inline HypothesisClass class_from_json(const Json& j) {
    require(j.is_object() && j.contains("x") && j.contains("y") && j.contains("values"),
            "DimensionMismatch", "class file needs x, y, values");
    HypothesisClass h;
    h.x_labels = j.at("x").get<std::vector<std::string>>();
    h.y_labels = j.at("y").get<std::vector<std::string>>();
    for (const auto& row : j.at("values")) h.values.push_back(rat_vec_from_json(row));
    h.validate();
    return h;
}

// Distributions: {"over": "x"|"y", "support": [...], "weights": [...]}
struct TaggedDistribution {
    std::string over;  // "x" or "y"
    Distribution dist;
};

inline Json distribution_to_json(const TaggedDistribution& d) {
    Json j;
    j["over"] = d.over;
    j["support"] = d.dist.support;
    j["weights"] = rat_vec_to_json(d.dist.weights);
    return j;
}

inline TaggedDistribution distribution_from_json(const Json& j) {
    TaggedDistribution d;
    d.over = j.at("over").get<std::string>();
    require(d.over == "x" || d.over == "y", "ValueOutOfRange", "'over' must be 'x' or 'y'");
    d.dist.support = j.at("support").get<std::vector<std::size_t>>();
    d.dist.weights = rat_vec_from_json(j.at("weights"));
    return d;
}

inline Json family_to_json(const MeasurableFamily& f) {
    Json j;
    j["weights"] = rat_vec_to_json(f.omega_weights);
    Json arr = Json::array();
    for (const auto& c : f.classes) arr.push_back(class_to_json(c));
    j["classes"] = arr;
    return j;
}

inline MeasurableFamily family_from_json(const Json& j) {
    MeasurableFamily f;
    f.omega_weights = rat_vec_from_json(j.at("weights"));
    for (const auto& c : j.at("classes")) f.classes.push_back(class_from_json(c));
    f.validate();
    return f;
}

inline Json cloud_to_json(const PointCloud& a) {
    Json j;
    j["n"] = a.dim;
    Json pts = Json::array();
    for (const auto& p : a.points) pts.push_back(rat_vec_to_json(p));
    j["points"] = pts;
    return j;
}

inline PointCloud cloud_from_json(const Json& j) {
    PointCloud a;
    a.dim = j.at("n").get<std::size_t>();
    for (const auto& p : j.at("points")) a.points.push_back(rat_vec_from_json(p));
    a.validate();
    return a;
}

inline Json monotone_map_to_json(const MonotoneMap& f) {
    Json arr = Json::array();
    for (const auto& [in, out] : f.breakpoints)
        arr.push_back(Json::array({rat_to_json(in), rat_to_json(out)}));
    return Json{{"breakpoints", arr}};
}

inline MonotoneMap monotone_map_from_json(const Json& j) {
    MonotoneMap f;
    for (const auto& bp : j.at("breakpoints"))
        f.breakpoints.emplace_back(rat_from_json(bp.at(0)), rat_from_json(bp.at(1)));
    f.validate();
    return f;
}

// ---------------------------------------------------------------------------
// Witness files, tagged by "type". Trees ride in canonical level order.

inline Json set_shatter_to_json(const SetShatterWitness& w) {
    Json j;
    j["type"] = "set_shatter";
    j["gamma"] = rat_to_json(w.gamma);
    j["points"] = w.points;
    j["thresholds"] = rat_vec_to_json(w.thresholds);
    j["selector"] = w.selector;
    return j;
}

inline SetShatterWitness set_shatter_from_json(const Json& j) {
    SetShatterWitness w;
    w.gamma = rat_from_json(j.at("gamma"));
    w.points = j.at("points").get<std::vector<std::size_t>>();
    w.thresholds = rat_vec_from_json(j.at("thresholds"));
    w.selector = j.at("selector").get<std::vector<std::size_t>>();
    return w;
}

inline Json seq_shatter_to_json(const SeqShatterWitness& w) {
    Json j;
    j["type"] = "seq_shatter";
    j["gamma"] = rat_to_json(w.gamma);
    j["depth"] = w.points.depth;
    j["points"] = w.points.nodes;
    j["thresholds"] = rat_vec_to_json(w.thresholds.nodes);
    j["branch_labels"] = w.branch_labels;
    return j;
}

inline SeqShatterWitness seq_shatter_from_json(const Json& j) {
    SeqShatterWitness w;
    w.gamma = rat_from_json(j.at("gamma"));
    w.points.depth = j.at("depth").get<std::size_t>();
    w.points.nodes = j.at("points").get<std::vector<std::size_t>>();
    w.thresholds.depth = w.points.depth;
    w.thresholds.nodes = rat_vec_from_json(j.at("thresholds"));
    w.branch_labels = j.at("branch_labels").get<std::vector<std::size_t>>();
    return w;
}

inline Json threshold_witness_to_json(const ThresholdWitness& w) {
    Json j;
    j["type"] = "threshold";
    j["mode"] = w.mode == ThresholdWitness::Mode::Gamma ? "gamma" : "rs";
    if (w.mode == ThresholdWitness::Mode::Gamma) {
        j["gamma"] = rat_to_json(w.gamma);
    } else {
        j["r"] = rat_to_json(w.r);
        j["s"] = rat_to_json(w.s);
    }
    Json pairs = Json::array();
    for (const auto& [x, y] : w.pairs) pairs.push_back(Json::array({x, y}));
    j["pairs"] = pairs;
    return j;
}

inline ThresholdWitness threshold_witness_from_json(const Json& j) {
    ThresholdWitness w;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "gamma") {
        w.mode = ThresholdWitness::Mode::Gamma;
        w.gamma = rat_from_json(j.at("gamma"));
    } else {
        require(mode == "rs", "ShapeMismatch", "threshold mode must be 'gamma' or 'rs'");
        w.mode = ThresholdWitness::Mode::RS;
        w.r = rat_from_json(j.at("r"));
        w.s = rat_from_json(j.at("s"));
    }
    for (const auto& p : j.at("pairs"))
        w.pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
    return w;
}

inline Json graph_witness_to_json(const GraphDimWitness& w) {
    Json j;
    j["type"] = "graph";
    j["gamma"] = rat_to_json(w.gamma);
    j["points"] = w.points;
    j["targets"] = rat_vec_to_json(w.targets);
    j["selector"] = w.selector;
    return j;
}

inline GraphDimWitness graph_witness_from_json(const Json& j) {
    GraphDimWitness w;
    w.gamma = rat_from_json(j.at("gamma"));
    w.points = j.at("points").get<std::vector<std::size_t>>();
    w.targets = rat_vec_from_json(j.at("targets"));
    w.selector = j.at("selector").get<std::vector<std::size_t>>();
    return w;
}

inline Json online_witness_to_json(const OnlineDimWitness& w) {
    Json j;
    j["type"] = "online";
    j["depth"] = w.points.depth;
    j["points"] = w.points.nodes;
    j["tau"] = rat_vec_to_json(w.tau.nodes);
    j["branch_labels"] = w.branch_labels;
    j["value"] = rat_to_json(w.value);
    return j;
}

inline OnlineDimWitness online_witness_from_json(const Json& j) {
    OnlineDimWitness w;
    w.points.depth = j.at("depth").get<std::size_t>();
    w.points.nodes = j.at("points").get<std::vector<std::size_t>>();
    w.tau.depth = w.points.depth;
    w.tau.nodes = rat_vec_from_json(j.at("tau"));
    w.branch_labels = j.at("branch_labels").get<std::vector<std::size_t>>();
    w.value = rat_from_json(j.at("value"));
    return w;
}

// ---------------------------------------------------------------------------
// Loss spec strings: "id", "l:<eps>", "L:<eps>"

inline LossFunction loss_from_string(const std::string& s) {
    if (s == "id") return LossFunction::identity();
    if (s.rfind("l:", 0) == 0) return LossFunction::truncated(Rat::parse(s.substr(2)));
    if (s.rfind("L:", 0) == 0) return LossFunction::threshold(Rat::parse(s.substr(2)));
    fail("BadRange", "loss must be id, l:<eps>, or L:<eps>");
}

// ---------------------------------------------------------------------------
// Run manifests: FNV-1a 64-bit digests of the exact input bytes.

inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(static_cast<bool>(in), "BadRange", "cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(static_cast<bool>(out), "BadRange", "cannot write file '" + path + "'");
    out << content;
}

} // namespace dimlab
