#include "stackfilt/experiments.hpp"

#include "stackfilt/quality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace stackfilt {
namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string contrast_name(double num, double den) {
    std::ostringstream os;
    os << fmt_double(num) << ":" << fmt_double(den);
    return os.str();
}

struct MeanStd {
    double mean;
    double std;
};

MeanStd mean_std(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, n > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

}  // namespace

uint64_t derive_seed(uint64_t base, uint64_t contrast_index, uint64_t replication) {
    uint64_t x = base;
    x ^= contrast_index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL;
    x ^= replication * 0xd1342543de82ef95ULL + 0x94d049bb133111ebULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<RegionOfInterest> default_train_rois(int width, int height, int border_col) {
    auto region_rois = [&](int x0, int x1) {
        const int m = x1 - x0;
        RegionOfInterest roi;
        roi.rects.push_back({x0 + m / 8, height / 8, m / 4, height / 4});
        roi.rects.push_back({x0 + m / 2, 5 * height / 8, m / 4, height / 4});
        return roi;
    };
    return {region_rois(0, border_col), region_rois(border_col, width)};
}

std::vector<RegionOfInterest> default_eval_rois(int width, int height, int border_col) {
    auto region_roi = [&](int x0, int x1) {
        const int m = x1 - x0;
        RegionOfInterest roi;
        // Band between the two training rectangles; disjoint from both.
        roi.rects.push_back({x0 + m / 8, 3 * height / 8, 3 * m / 4, height / 4});
        return roi;
    };
    return {region_roi(0, border_col), region_roi(border_col, width)};
}

std::vector<TrainingRegion> mean_training_regions(const std::vector<RegionOfInterest>& rois) {
    std::vector<TrainingRegion> regions;
    for (const RegionOfInterest& roi : rois)
        regions.push_back({roi, DesiredSpec{DesiredSpec::Stat::Mean, 0}});
    return regions;
}

void QualityMcConfig::validate() const {
    if (replications < 2) throw std::domain_error("QualityMcConfig: replications must be >= 2");
    if (contrasts.empty()) throw std::domain_error("QualityMcConfig: no contrasts");
    if (width < 16 || height < 16) throw std::domain_error("QualityMcConfig: image too small");
    if (!(looks >= 1.0)) throw std::domain_error("QualityMcConfig: looks must be >= 1");
    if (!(alpha_left < -1.0) || !(alpha_right < -1.0))
        throw std::domain_error("QualityMcConfig: alphas must be < -1");
    if (stack_iterations < 1)
        throw std::domain_error("QualityMcConfig: stack_iterations must be >= 1");
}

QualityMcResult run_quality_mc(const QualityMcConfig& cfg) {
    cfg.validate();
    QualityMcResult result;
    const int border = cfg.width / 2;
    const std::vector<RegionOfInterest> train_rois =
        default_train_rois(cfg.width, cfg.height, border);
    const std::vector<TrainingRegion> regions = mean_training_regions(train_rois);

    for (size_t ci = 0; ci < cfg.contrasts.size(); ++ci) {
        const auto [num, den] = cfg.contrasts[ci];
        const std::string cname = contrast_name(num, den);
        for (int rep = 0; rep < cfg.replications; ++rep) {
            PhantomSpec spec;
            spec.width = cfg.width;
            spec.height = cfg.height;
            spec.left = {cfg.alpha_left, gamma_star(cfg.alpha_left, cfg.looks), cfg.looks};
            spec.right = {cfg.alpha_right, gamma_star(cfg.alpha_right, cfg.looks), cfg.looks};
            spec.border_col = border;
            spec.contrast_num = num;
            spec.contrast_den = den;
            spec.levels = cfg.levels;
            spec.clip_quantile = cfg.clip_quantile;
            spec.seed = derive_seed(cfg.seed, ci, static_cast<uint64_t>(rep));
            const Phantom phantom = generate_phantom(spec);

            const PositiveBooleanFunction f = train(phantom.image, regions, cfg.filter_window);
            const QuantizedImage stack_out = iterate(phantom.image, f, cfg.stack_iterations);
            const QuantizedImage lee_out = lee(phantom.image, {Window{3, 3}, cfg.looks});

            result.rows.push_back({rep, cname, "stack",
                                   q_index(stack_out, phantom.reference, cfg.quality_window),
                                   beta_index(stack_out, phantom.reference)});
            result.rows.push_back({rep, cname, "lee",
                                   q_index(lee_out, phantom.reference, cfg.quality_window),
                                   beta_index(lee_out, phantom.reference)});
        }
    }
    result.aggregates = aggregate_quality_rows(result.rows);
    return result;
}

std::vector<QualityAggregate> aggregate_quality_rows(const std::vector<QualityRow>& rows) {
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>> groups;
    for (const QualityRow& row : rows) {
        const auto key = std::make_pair(row.contrast, row.filter);
        if (!groups.count(key)) order.push_back(key);
        groups[key].first.push_back(row.q);
        groups[key].second.push_back(row.beta);
    }
    std::vector<QualityAggregate> aggs;
    for (const auto& key : order) {
        const auto& [qs, betas] = groups[key];
        const MeanStd q = mean_std(qs);
        const MeanStd b = mean_std(betas);
        aggs.push_back({key.first, key.second, q.mean, q.std, b.mean, b.std});
    }
    return aggs;
}

std::string quality_rows_csv(const std::vector<QualityRow>& rows) {
    std::ostringstream os;
    os << "replication,contrast,filter,Q,beta\n";
    for (const QualityRow& r : rows)
        os << r.replication << "," << r.contrast << "," << r.filter << ","
           << fmt_double(r.q) << "," << fmt_double(r.beta) << "\n";
    return os.str();
}

std::string quality_aggregates_csv(const std::vector<QualityAggregate>& aggs) {
    std::ostringstream os;
    os << "contrast,filter,q_mean,q_std,beta_mean,beta_std\n";
    for (const QualityAggregate& a : aggs)
        os << a.contrast << "," << a.filter << "," << fmt_double(a.q_mean) << ","
           << fmt_double(a.q_std) << "," << fmt_double(a.beta_mean) << ","
           << fmt_double(a.beta_std) << "\n";
    return os.str();
}

void ClassifExpConfig::validate() const {
    phantom.validate();
    if (iterations.empty()) throw std::domain_error("ClassifExpConfig: no iteration counts");
    for (int k : iterations)
        if (k < 1) throw std::domain_error("ClassifExpConfig: iteration count must be >= 1");
}

namespace {

// Column deviation of the retrieved border: per row, fit the step
// position minimizing label disagreement (ties resolved toward the true
// border), then take the worst row. Robust to isolated interior errors.
int border_error_distance(const QuantizedImage& labels, int border_col) {
    const int w = labels.width();
    int worst = 0;
    for (int r = 0; r < labels.height(); ++r) {
        // prefix[c] = count of label-1 pixels in columns [0, c)
        std::vector<int> prefix(w + 1, 0);
        for (int c = 0; c < w; ++c)
            prefix[c + 1] = prefix[c] + (labels.at(r, c) == 1 ? 1 : 0);
        int best_misfit = w + 1, best_dist = w;
        for (int c = 0; c <= w; ++c) {
            // step at c: columns < c should be 0, columns >= c should be 1
            const int misfit = prefix[c] + (w - c) - (prefix[w] - prefix[c]);
            const int dist = std::abs(c - border_col);
            if (misfit < best_misfit || (misfit == best_misfit && dist < best_dist)) {
                best_misfit = misfit;
                best_dist = dist;
            }
        }
        worst = std::max(worst, best_dist);
    }
    return worst;
}

ClassifRow score_image(const std::string& name, const QuantizedImage& img,
                       const QuantizedImage& truth,
                       const std::vector<RegionOfInterest>& train_rois,
                       const std::vector<uint8_t>& eval_mask, int border_col) {
    const ClassModel model = fit_gmlc(img, train_rois);
    const QuantizedImage labels = classify(img, model);
    const ConfusionMatrix conf = confusion(labels, truth, eval_mask,
                                           static_cast<int>(train_rois.size()));
    ClassifRow row;
    row.filter = name;
    for (int c = 0; c < conf.class_count; ++c)
        row.diagonal_percent.push_back(conf.diagonal_percent(c));
    row.max_error_distance_to_border = border_error_distance(labels, border_col);
    return row;
}

}  // namespace

ClassifExpResult run_classification_exp(const ClassifExpConfig& cfg) {
    cfg.validate();
    const Phantom phantom = generate_phantom(cfg.phantom);

    std::vector<RegionOfInterest> train_rois = cfg.train_rois;
    if (train_rois.empty())
        train_rois = default_train_rois(cfg.phantom.width, cfg.phantom.height,
                                        cfg.phantom.border_col);
    std::vector<RegionOfInterest> eval_rois = cfg.eval_rois;
    if (eval_rois.empty())
        eval_rois = default_eval_rois(cfg.phantom.width, cfg.phantom.height,
                                      cfg.phantom.border_col);

    std::vector<uint8_t> eval_mask(phantom.image.pixels().size(), 0);
    for (const RegionOfInterest& roi : eval_rois) {
        const std::vector<uint8_t> m = roi.mask(cfg.phantom.width, cfg.phantom.height);
        for (size_t i = 0; i < m.size(); ++i) eval_mask[i] |= m[i];
    }

    ClassifExpResult result;
    const int border = cfg.phantom.border_col;
    result.rows.push_back(score_image("none", phantom.image, phantom.labels,
                                      train_rois, eval_mask, border));
    result.rows.push_back(score_image("lee", lee(phantom.image, cfg.lee_params),
                                      phantom.labels, train_rois, eval_mask, border));
    result.rows.push_back(score_image("frost", frost(phantom.image, cfg.frost_params),
                                      phantom.labels, train_rois, eval_mask, border));

    const PositiveBooleanFunction f =
        train(phantom.image, mean_training_regions(train_rois), cfg.filter_window);
    std::vector<int> iters = cfg.iterations;
    std::sort(iters.begin(), iters.end());
    QuantizedImage current = phantom.image;
    int done = 0;
    for (int k : iters) {
        current = iterate(current, f, k - done);
        done = k;
        result.rows.push_back(score_image("stack-" + std::to_string(k), current,
                                          phantom.labels, train_rois, eval_mask, border));
    }
    return result;
}

std::string classification_csv(const ClassifExpResult& result) {
    std::ostringstream os;
    size_t classes = 0;
    for (const ClassifRow& r : result.rows)
        classes = std::max(classes, r.diagonal_percent.size());
    os << "filter";
    for (size_t c = 0; c < classes; ++c) os << ",diag_" << c;
    os << ",max_error_distance_to_border\n";
    for (const ClassifRow& r : result.rows) {
        os << r.filter;
        for (double d : r.diagonal_percent) os << "," << fmt_double(d);
        os << "," << r.max_error_distance_to_border << "\n";
    }
    return os.str();
}

}  // namespace stackfilt
