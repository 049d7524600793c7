#include "stackfilt/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stackfilt/errors.hpp"

namespace stackfilt {
namespace {

using nlohmann::json;

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError(std::string("JSON: ") + e.what(), e.byte);
    }
}

Rect parse_rect(const json& j) {
    return Rect{j.at("x").get<int>(), j.at("y").get<int>(),
                j.at("w").get<int>(), j.at("h").get<int>()};
}

DesiredSpec parse_stat(const json& j, const DesiredSpec& fallback) {
    if (!j.contains("stat")) return fallback;
    const std::string s = j.at("stat").get<std::string>();
    DesiredSpec spec;
    if (s == "mean") spec.stat = DesiredSpec::Stat::Mean;
    else if (s == "median") spec.stat = DesiredSpec::Stat::Median;
    else if (s == "lower-quartile") spec.stat = DesiredSpec::Stat::LowerQuartile;
    else if (s == "upper-quartile") spec.stat = DesiredSpec::Stat::UpperQuartile;
    else if (s == "constant") {
        spec.stat = DesiredSpec::Stat::Constant;
        spec.constant_value = j.at("value").get<int>();
    } else {
        throw FormatError("ROI: unknown stat '" + s + "'", 0);
    }
    return spec;
}

G0Params parse_g0(const json& j) {
    G0Params p;
    p.alpha = j.at("alpha").get<double>();
    p.looks = j.value("looks", 1.0);
    if (j.contains("gamma"))
        p.gamma = j.at("gamma").get<double>();
    else
        p.gamma = gamma_star(p.alpha, p.looks);
    return p;
}

Window parse_window(const json& j, const Window& fallback) {
    if (!j.contains("window")) return fallback;
    const auto& w = j.at("window");
    return Window(w.at(0).get<int>(), w.at(1).get<int>());
}

}  // namespace

std::vector<TrainingRegion> parse_training_regions(const std::string& json_text,
                                                   const DesiredSpec& default_spec) {
    const json doc = parse(json_text);
    if (!doc.is_array()) throw FormatError("ROI: top-level JSON array expected", 0);
    std::vector<TrainingRegion> regions;
    for (const json& entry : doc) {
        TrainingRegion region;
        if (entry.contains("rects")) {
            for (const json& r : entry.at("rects"))
                region.roi.rects.push_back(parse_rect(r));
        } else {
            region.roi.rects.push_back(parse_rect(entry));
        }
        region.spec = parse_stat(entry, default_spec);
        regions.push_back(std::move(region));
    }
    if (regions.empty()) throw FormatError("ROI: no regions given", 0);
    return regions;
}

PhantomSpec parse_phantom_spec(const std::string& json_text) {
    const json doc = parse(json_text);
    PhantomSpec spec;
    spec.width = doc.value("width", spec.width);
    spec.height = doc.value("height", spec.height);
    if (doc.contains("left")) spec.left = parse_g0(doc.at("left"));
    if (doc.contains("right")) spec.right = parse_g0(doc.at("right"));
    spec.border_col = doc.value("border", spec.width / 2);
    if (doc.contains("contrast")) {
        spec.contrast_num = doc.at("contrast").at(0).get<double>();
        spec.contrast_den = doc.at("contrast").at(1).get<double>();
    }
    spec.levels = doc.value("levels", spec.levels);
    spec.clip_quantile = doc.value("clip_quantile", spec.clip_quantile);
    spec.seed = doc.value("seed", spec.seed);
    return spec;
}

QualityMcConfig parse_quality_mc_config(const std::string& json_text) {
    const json doc = parse(json_text);
    QualityMcConfig cfg;
    cfg.replications = doc.value("replications", cfg.replications);
    cfg.width = doc.value("width", cfg.width);
    cfg.height = doc.value("height", cfg.height);
    cfg.looks = doc.value("looks", cfg.looks);
    cfg.alpha_left = doc.value("alpha_left", cfg.alpha_left);
    cfg.alpha_right = doc.value("alpha_right", cfg.alpha_right);
    if (doc.contains("contrasts")) {
        cfg.contrasts.clear();
        for (const json& c : doc.at("contrasts"))
            cfg.contrasts.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
    }
    cfg.filter_window = parse_window(doc, cfg.filter_window);
    cfg.stack_iterations = doc.value("stack_iterations", cfg.stack_iterations);
    cfg.quality_window = doc.value("quality_window", cfg.quality_window);
    cfg.levels = doc.value("levels", cfg.levels);
    cfg.clip_quantile = doc.value("clip_quantile", cfg.clip_quantile);
    cfg.seed = doc.value("seed", cfg.seed);
    return cfg;
}

ClassifExpConfig parse_classif_exp_config(const std::string& json_text) {
    const json doc = parse(json_text);
    ClassifExpConfig cfg;
    if (doc.contains("phantom"))
        cfg.phantom = parse_phantom_spec(doc.at("phantom").dump());
    if (doc.contains("iterations"))
        cfg.iterations = doc.at("iterations").get<std::vector<int>>();
    cfg.filter_window = parse_window(doc, cfg.filter_window);
    if (doc.contains("lee_looks")) cfg.lee_params.looks = doc.at("lee_looks").get<double>();
    if (doc.contains("frost_damping"))
        cfg.frost_params.damping = doc.at("frost_damping").get<double>();
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path, 0);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace stackfilt
