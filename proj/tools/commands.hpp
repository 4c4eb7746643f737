#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lvef/error.hpp"

namespace lvef::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitProcessing = 2;

/// Malformed files, configs and arguments are input errors; everything
/// else failed during processing.
int exit_code_for(ErrorKind kind);

struct EstimateArgs {
    std::vector<std::filesystem::path> stacks;
    int median_window = 5;
    double min_prominence_frac = 0.05;
    std::optional<int> min_separation;
    std::optional<std::filesystem::path> out;
    std::optional<std::filesystem::path> volumes_csv;
    std::optional<std::filesystem::path> ef_csv;
    int workers = 1;
    bool json = false;
};

struct EvaluateArgs {
    std::filesystem::path pred;
    std::optional<std::filesystem::path> truth;
    std::optional<std::filesystem::path> pred_masks;
    std::optional<std::filesystem::path> truth_masks;
    bool json = false;
};

struct ClassifyArgs {
    double ef = 0.0;
    bool json = false;
};

struct AugmentArgs {
    std::filesystem::path input;
    std::uint64_t seed = 0;
    int count = 1;
    std::filesystem::path out_dir;
};

struct SynthArgs {
    std::optional<std::filesystem::path> config;
    std::filesystem::path out;
    std::optional<std::filesystem::path> truth;
};

struct TracingsArgs {
    std::filesystem::path csv;
    int width = 112;
    int height = 112;
    double fps = 0.0;
    std::filesystem::path out_dir;
};

int run_estimate_cmd(const EstimateArgs& args);
int run_evaluate_cmd(const EvaluateArgs& args);
int run_classify_cmd(const ClassifyArgs& args);
int run_augment_cmd(const AugmentArgs& args);
int run_synth_cmd(const SynthArgs& args);
int run_tracings_cmd(const TracingsArgs& args);

}  // namespace lvef::cli
