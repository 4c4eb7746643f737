// lvef: ejection fraction from LV mask videos.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "commands.hpp"
#include "lvef/error.hpp"

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("lvef");
    logger->set_pattern("[%l] %v");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* env = std::getenv("LVEF_LOG")) {
        const auto level = spdlog::level::from_str(env);
        if (level == spdlog::level::off && std::string(env) != "off") {
            spdlog::warn("LVEF_LOG='{}' is not a log level; using warn", env);
        } else {
            spdlog::set_level(level);
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    using namespace lvef::cli;

    CLI::App app{"Left-ventricular ejection fraction from binary mask videos"};
    app.set_version_flag("--version", "lvef 0.1.0");
    app.require_subcommand(1);

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Per-frame volumes, cycles and EF for LVM1 mask stacks");
    estimate->add_option("stacks", est.stacks, "LVM1 mask stacks")->required()->check(CLI::ExistingFile);
    estimate->add_option("--median-window", est.median_window, "Odd median filter window")->capture_default_str();
    estimate->add_option("--min-prominence-frac", est.min_prominence_frac, "Prominence as a fraction of the range")
        ->capture_default_str();
    estimate->add_option("--min-separation", est.min_separation, "Minimum frames between same-kind extrema");
    estimate->add_option("--out", est.out, "Report JSON path (one stack only)");
    estimate->add_option("--volumes-csv", est.volumes_csv, "Per-frame volume CSV path (one stack only)");
    estimate->add_option("--ef-csv", est.ef_csv, "video_id,ef_pred CSV for all stacks");
    estimate->add_option("--workers", est.workers, "Videos processed concurrently")->check(CLI::PositiveNumber);
    estimate->add_flag("--json", est.json, "Print report JSON on stdout");

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "MAE, RMSE and class scores for predicted EF");
    evaluate->add_option("--pred", ev.pred, "CSV with video_id,ef_pred[,ef_true]")->required()->check(CLI::ExistingFile);
    evaluate->add_option("--truth", ev.truth, "CSV with video_id,ef_true")->check(CLI::ExistingFile);
    evaluate->add_option("--pred-masks", ev.pred_masks, "Predicted LVM1 stack for Dice")->check(CLI::ExistingFile);
    evaluate->add_option("--truth-masks", ev.truth_masks, "Reference LVM1 stack for Dice")->check(CLI::ExistingFile);
    evaluate->add_flag("--json", ev.json, "Print JSON on stdout");

    ClassifyArgs cl;
    auto* classify = app.add_subcommand("classify", "EF fraction to rEF, mrEF or pEF");
    classify->add_option("--ef", cl.ef, "Ejection fraction in [0, 1]")->required();
    classify->add_flag("--json", cl.json, "Print JSON on stdout");

    AugmentArgs au;
    auto* augment = app.add_subcommand("augment", "Seeded TPS and affine previous-frame masks");
    augment->add_option("input", au.input, "LVM1 stack (a single mask is a one-frame stack)")
        ->required()
        ->check(CLI::ExistingFile);
    augment->add_option("--seed", au.seed, "Seed")->required();
    augment->add_option("--count", au.count, "Augmented copies")->required()->check(CLI::PositiveNumber);
    augment->add_option("--out-dir", au.out_dir, "Output directory")->required();

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Synthetic beating semi-ellipse video with known EF");
    synth->add_option("--config", sy.config, "JSON config; defaults apply to missing keys")->check(CLI::ExistingFile);
    synth->add_option("--out", sy.out, "Output LVM1 stack")->required();
    synth->add_option("--truth", sy.truth, "Ground-truth JSON path");

    TracingsArgs tr;
    auto* tracings = app.add_subcommand("tracings", "Rasterize paired-segment tracings into LVM1 stacks");
    tracings->add_option("csv", tr.csv, "Tracing CSV")->required()->check(CLI::ExistingFile);
    tracings->add_option("--width", tr.width, "Frame width")->capture_default_str();
    tracings->add_option("--height", tr.height, "Frame height")->capture_default_str();
    tracings->add_option("--fps", tr.fps, "fps written to each stack")->capture_default_str();
    tracings->add_option("--out-dir", tr.out_dir, "Output directory, one <video_id>.lvm per video")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        if (*estimate) return run_estimate_cmd(est);
        if (*evaluate) return run_evaluate_cmd(ev);
        if (*classify) return run_classify_cmd(cl);
        if (*augment) return run_augment_cmd(au);
        if (*synth) return run_synth_cmd(sy);
        if (*tracings) return run_tracings_cmd(tr);
    } catch (const lvef::Error& e) {
        spdlog::error("{}", e.what());
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return kExitProcessing;
    }
    return kExitInput;
}
