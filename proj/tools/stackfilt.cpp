#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stackfilt/classic_filters.hpp"
#include "stackfilt/errors.hpp"
#include "stackfilt/experiments.hpp"
#include "stackfilt/gmlc.hpp"
#include "stackfilt/json_io.hpp"
#include "stackfilt/pgm.hpp"
#include "stackfilt/quality.hpp"
#include "stackfilt/speckle.hpp"
#include "stackfilt/stack_filter.hpp"

namespace sf = stackfilt;

namespace {

sf::Window parse_window_arg(const std::string& s) {
    const size_t x = s.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--window", "expected RxC, e.g. 3x3");
    return sf::Window(std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1)));
}

sf::DesiredSpec parse_stat_arg(const std::string& s) {
    sf::DesiredSpec spec;
    if (s == "mean") spec.stat = sf::DesiredSpec::Stat::Mean;
    else if (s == "median") spec.stat = sf::DesiredSpec::Stat::Median;
    else if (s == "lower-quartile") spec.stat = sf::DesiredSpec::Stat::LowerQuartile;
    else if (s == "upper-quartile") spec.stat = sf::DesiredSpec::Stat::UpperQuartile;
    else if (s.rfind("constant:", 0) == 0) {
        spec.stat = sf::DesiredSpec::Stat::Constant;
        spec.constant_value = std::stoi(s.substr(9));
    } else {
        throw CLI::ValidationError("--stat", "unknown statistic '" + s + "'");
    }
    return spec;
}

std::string pattern_string(uint32_t p, int n) {
    std::string s(n, '0');
    for (int i = 0; i < n; ++i)
        if (p & (uint32_t{1} << i)) s[i] = '1';
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stackfilt: adaptive stack filters for speckled imagery"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a two-region G0 phantom");
    double alpha_left = -1.5, alpha_right = -10.0, looks = 1.0, clip_q = 0.995;
    int size = 128, sim_width = 0, sim_height = 0, border = 0, levels = 255;
    std::vector<double> contrast{10.0, 10.0};
    uint64_t seed = 0;
    std::string out_path, labels_path, reference_path;
    sim->add_option("--alpha-left", alpha_left, "left-region roughness (< -1)");
    sim->add_option("--alpha-right", alpha_right, "right-region roughness (< -1)");
    sim->add_option("--looks", looks, "number of looks (>= 1)");
    sim->add_option("--size", size, "square image size");
    sim->add_option("--width", sim_width);
    sim->add_option("--height", sim_height);
    sim->add_option("--border", border, "border column (default width/2)");
    sim->add_option("--contrast", contrast, "mean ratio, e.g. --contrast 10 1")->expected(2);
    sim->add_option("--levels", levels);
    sim->add_option("--clip-quantile", clip_q);
    sim->add_option("--seed", seed);
    sim->add_option("--out", out_path, "output PGM")->required();
    sim->add_option("--labels", labels_path, "sidecar label PGM");
    sim->add_option("--reference", reference_path, "noiseless reference PGM");

    // train
    auto* tr = app.add_subcommand("train", "fit a stack filter on ROI samples");
    std::string tr_in, tr_roi, tr_stat = "mean", tr_window = "3x3", tr_out;
    tr->add_option("--in", tr_in)->required();
    tr->add_option("--roi", tr_roi, "JSON list of training regions")->required();
    tr->add_option("--stat", tr_stat,
                   "mean|median|lower-quartile|upper-quartile|constant:<v>");
    tr->add_option("--window", tr_window, "window RxC");
    tr->add_option("--out", tr_out, "output STACKF file")->required();

    // apply
    auto* ap = app.add_subcommand("apply", "apply a stack filter");
    std::string ap_in, ap_filter, ap_out;
    int ap_iters = 1;
    ap->add_option("--in", ap_in)->required();
    ap->add_option("--filter", ap_filter)->required();
    ap->add_option("--iters", ap_iters, "number of applications");
    ap->add_option("--out", ap_out)->required();

    // lee / frost
    auto* le = app.add_subcommand("lee", "Lee despeckling filter");
    std::string le_in, le_out, le_window = "3x3";
    double le_looks = 1.0;
    le->add_option("--in", le_in)->required();
    le->add_option("--out", le_out)->required();
    le->add_option("--window", le_window);
    le->add_option("--looks", le_looks);

    auto* fr = app.add_subcommand("frost", "Frost despeckling filter");
    std::string fr_in, fr_out, fr_window = "3x3";
    double fr_damping = 2.0;
    fr->add_option("--in", fr_in)->required();
    fr->add_option("--out", fr_out)->required();
    fr->add_option("--window", fr_window);
    fr->add_option("--damping", fr_damping);

    // quality
    auto* qu = app.add_subcommand("quality", "Q and beta indexes of two images");
    std::string qu_in, qu_ref;
    int qu_window = 8;
    qu->add_option("--in", qu_in)->required();
    qu->add_option("--ref", qu_ref)->required();
    qu->add_option("--q-window", qu_window);

    // gmlc
    auto* gm = app.add_subcommand("gmlc", "Gaussian maximum likelihood classification");
    std::string gm_in, gm_roi, gm_out, gm_truth, gm_confusion;
    gm->add_option("--in", gm_in)->required();
    gm->add_option("--roi", gm_roi, "JSON: one region per class, in class order")->required();
    gm->add_option("--out", gm_out, "label map PGM")->required();
    gm->add_option("--truth", gm_truth, "ground-truth label PGM");
    gm->add_option("--confusion", gm_confusion, "confusion CSV (requires --truth)");

    // mc-quality / mc-classify
    auto* mq = app.add_subcommand("mc-quality", "Monte Carlo quality-index study");
    std::string mq_config, mq_rows, mq_agg;
    mq->add_option("--config", mq_config, "JSON config (empty = defaults)");
    mq->add_option("--out-rows", mq_rows, "per-replication CSV")->required();
    mq->add_option("--out-agg", mq_agg, "aggregate CSV")->required();

    auto* mc = app.add_subcommand("mc-classify", "classification pipeline study");
    std::string mc_config, mc_out;
    mc->add_option("--config", mc_config, "JSON config (empty = defaults)");
    mc->add_option("--out", mc_out, "result CSV")->required();

    // inspect-filter
    auto* in = app.add_subcommand("inspect-filter", "print filter structure");
    std::string in_filter;
    int in_terms = 10;
    in->add_option("--filter", in_filter)->required();
    in->add_option("--terms", in_terms, "minimal DNF terms to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*sim) {
            sf::PhantomSpec spec;
            spec.width = sim_width > 0 ? sim_width : size;
            spec.height = sim_height > 0 ? sim_height : size;
            spec.left = {alpha_left, sf::gamma_star(alpha_left, looks), looks};
            spec.right = {alpha_right, sf::gamma_star(alpha_right, looks), looks};
            spec.border_col = border > 0 ? border : spec.width / 2;
            spec.contrast_num = contrast[0];
            spec.contrast_den = contrast[1];
            spec.levels = levels;
            spec.clip_quantile = clip_q;
            spec.seed = seed;
            const sf::Phantom phantom = sf::generate_phantom(spec);
            sf::write_pgm(phantom.image, out_path);
            if (!labels_path.empty()) sf::write_pgm(phantom.labels, labels_path);
            if (!reference_path.empty()) sf::write_pgm(phantom.reference, reference_path);
        } else if (*tr) {
            const sf::QuantizedImage img = sf::read_pgm(tr_in);
            const auto regions = sf::parse_training_regions(sf::read_text_file(tr_roi),
                                                            parse_stat_arg(tr_stat));
            const sf::PositiveBooleanFunction f =
                sf::train(img, regions, parse_window_arg(tr_window));
            sf::write_filter(f, tr_out);
        } else if (*ap) {
            const sf::QuantizedImage img = sf::read_pgm(ap_in);
            const sf::PositiveBooleanFunction f = sf::read_filter(ap_filter);
            sf::write_pgm(sf::iterate(img, f, ap_iters), ap_out);
        } else if (*le) {
            const sf::QuantizedImage img = sf::read_pgm(le_in);
            sf::write_pgm(sf::lee(img, {parse_window_arg(le_window), le_looks}), le_out);
        } else if (*fr) {
            const sf::QuantizedImage img = sf::read_pgm(fr_in);
            sf::write_pgm(sf::frost(img, {parse_window_arg(fr_window), fr_damping}), fr_out);
        } else if (*qu) {
            const sf::QuantizedImage x = sf::read_pgm(qu_in);
            const sf::QuantizedImage r = sf::read_pgm(qu_ref);
            std::printf("Q %.9g\n", sf::q_index(x, r, qu_window));
            std::printf("beta %.9g\n", sf::beta_index(x, r));
        } else if (*gm) {
            const sf::QuantizedImage img = sf::read_pgm(gm_in);
            const auto regions = sf::parse_training_regions(sf::read_text_file(gm_roi),
                                                            sf::DesiredSpec{});
            std::vector<sf::RegionOfInterest> rois;
            for (const auto& r : regions) rois.push_back(r.roi);
            const sf::ClassModel model = sf::fit_gmlc(img, rois);
            const sf::QuantizedImage labels = sf::classify(img, model);
            sf::write_pgm(labels, gm_out);
            if (!gm_truth.empty()) {
                const sf::QuantizedImage truth = sf::read_pgm(gm_truth);
                std::vector<uint8_t> mask(truth.pixels().size(), 1);
                const sf::ConfusionMatrix conf =
                    sf::confusion(labels, truth, mask, static_cast<int>(rois.size()));
                std::string csv = "truth,predicted,count\n";
                for (int t = 0; t < conf.class_count; ++t)
                    for (int p = 0; p < conf.class_count; ++p)
                        csv += std::to_string(t) + "," + std::to_string(p) + "," +
                               std::to_string(conf.at(t, p)) + "\n";
                if (!gm_confusion.empty())
                    sf::write_text_file(gm_confusion, csv);
                else
                    std::fputs(csv.c_str(), stdout);
                for (int t = 0; t < conf.class_count; ++t)
                    std::printf("diag_%d %.9g\n", t, conf.diagonal_percent(t));
            }
        } else if (*mq) {
            sf::QualityMcConfig cfg;
            if (!mq_config.empty())
                cfg = sf::parse_quality_mc_config(sf::read_text_file(mq_config));
            const sf::QualityMcResult result = sf::run_quality_mc(cfg);
            sf::write_text_file(mq_rows, sf::quality_rows_csv(result.rows));
            sf::write_text_file(mq_agg, sf::quality_aggregates_csv(result.aggregates));
        } else if (*mc) {
            sf::ClassifExpConfig cfg;
            if (!mc_config.empty())
                cfg = sf::parse_classif_exp_config(sf::read_text_file(mc_config));
            const sf::ClassifExpResult result = sf::run_classification_exp(cfg);
            sf::write_text_file(mc_out, sf::classification_csv(result));
        } else if (*in) {
            const sf::PositiveBooleanFunction f = sf::read_filter(in_filter);
            const auto dnf = sf::to_dnf(f);
            std::printf("window %dx%d\n", f.window.rows, f.window.cols);
            std::printf("levels %d\n", f.levels);
            std::printf("minimal_terms %zu\n", dnf.size());
            for (size_t i = 0; i < dnf.size() && i < static_cast<size_t>(in_terms); ++i)
                std::printf("term %s\n", pattern_string(dnf[i], f.arity()).c_str());
        }
    } catch (const sf::ContractViolation& e) {
        std::fprintf(stderr, "error: contract: %s\n", e.what());
        return 3;
    } catch (const sf::FormatError& e) {
        std::fprintf(stderr, "error: format: %s\n", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: data: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: runtime: %s\n", e.what());
        return 2;
    }
    return 0;
}
