#ifndef STACKFILT_EXPERIMENTS_HPP
#define STACKFILT_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stackfilt/classic_filters.hpp"
#include "stackfilt/gmlc.hpp"
#include "stackfilt/image.hpp"
#include "stackfilt/speckle.hpp"
#include "stackfilt/stack_filter.hpp"

namespace stackfilt {

/// Monte Carlo study of the Q and beta indexes on two-region phantoms,
/// comparing a per-replication trained stack filter against the Lee
/// filter at several contrast ratios.
///
/// Defaults: both regions share a moderately textured law (alpha -3) so
/// that the contrast ratio is the only thing varying across the region
/// border, and the trained filter is iterated a few times before scoring.
struct QualityMcConfig {
    int replications = 200;
    int width = 64;
    int height = 64;
    double looks = 1.0;
    double alpha_left = -3.0;
    double alpha_right = -3.0;
    std::vector<std::pair<double, double>> contrasts = {
        {10, 1}, {10, 2}, {10, 4}, {10, 8}};
    Window filter_window{3, 3};
    int stack_iterations = 5;
    int quality_window = 8;
    int levels = 255;
    double clip_quantile = 0.995;
    uint64_t seed = 1;

    void validate() const;
};

struct QualityRow {
    int replication;
    std::string contrast;  // e.g. "10:1"
    std::string filter;    // "stack" or "lee"
    double q;
    double beta;
};

struct QualityAggregate {
    std::string contrast;
    std::string filter;
    double q_mean, q_std;
    double beta_mean, beta_std;
};

struct QualityMcResult {
    std::vector<QualityRow> rows;
    std::vector<QualityAggregate> aggregates;
};

QualityMcResult run_quality_mc(const QualityMcConfig& cfg);

/// Recomputes aggregates from persisted rows; used for CSV self-checks.
std::vector<QualityAggregate> aggregate_quality_rows(const std::vector<QualityRow>& rows);

std::string quality_rows_csv(const std::vector<QualityRow>& rows);
std::string quality_aggregates_csv(const std::vector<QualityAggregate>& aggs);

/// Classification study on the hard two-region phantom (equal unit means,
/// single look): GMLC accuracy of the unfiltered image, Lee, Frost, and
/// the trained stack filter at several iteration counts.
struct ClassifExpConfig {
    PhantomSpec phantom;                 // defaults match the hard phantom
    std::vector<int> iterations = {1, 22, 95};
    Window filter_window{3, 3};
    LeeParams lee_params;
    FrostParams frost_params;
    // Per-class train and eval regions; defaults derived from the phantom
    // geometry when left empty (two rectangles per region, eval disjoint
    // from train).
    std::vector<RegionOfInterest> train_rois;
    std::vector<RegionOfInterest> eval_rois;

    void validate() const;
};

struct ClassifRow {
    std::string filter;  // "none", "lee", "frost", "stack-<k>"
    std::vector<double> diagonal_percent;
    /// Worst-row deviation (in columns) of the best-fit step position of
    /// the label map from the true border (border retrieval quality).
    int max_error_distance_to_border;
};

struct ClassifExpResult {
    std::vector<ClassifRow> rows;
};

ClassifExpResult run_classification_exp(const ClassifExpConfig& cfg);

std::string classification_csv(const ClassifExpResult& result);

/// Default ROI geometry for a two-region phantom: two train and one eval
/// rectangle per region, all inset from the image edge and the border.
std::vector<RegionOfInterest> default_train_rois(int width, int height, int border_col);
std::vector<RegionOfInterest> default_eval_rois(int width, int height, int border_col);

/// Training regions (mean statistic) from per-class ROIs.
std::vector<TrainingRegion> mean_training_regions(const std::vector<RegionOfInterest>& rois);

/// Derived phantom seed for (base seed, contrast index, replication).
uint64_t derive_seed(uint64_t base, uint64_t contrast_index, uint64_t replication);

}  // namespace stackfilt

#endif
