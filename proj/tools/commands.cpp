#include "commands.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "lvef/error.hpp"
#include "lvef/mask_stack.hpp"
#include "lvef/metrics.hpp"
#include "lvef/pipeline.hpp"
#include "lvef/random.hpp"
#include "lvef/synth.hpp"
#include "lvef/tps_augment.hpp"
#include "lvef/tracings.hpp"

namespace lvef::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
    out << text;
    if (!out) throw Error(ErrorKind::IoError, "short write to " + path.string());
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

struct VideoOutcome {
    std::optional<EstimateReport> report;
    std::optional<ErrorKind> error_kind;
    std::string error;
};

VideoOutcome estimate_one(const fs::path& path, const EstimateParams& params) {
    VideoOutcome out;
    try {
        const MaskStack stack = read_mask_stack(path);
        spdlog::info("{}: {} frames {}x{} at {} fps", path.string(), stack.frames.size(), stack.width, stack.height,
                     stack.fps);
        std::optional<double> fps;
        if (stack.fps > 0.0f) fps = stack.fps;
        out.report = run_estimate(stack.frames, fps, params, path.stem().string());
    } catch (const Error& e) {
        out.error_kind = e.kind();
        out.error = path.string() + ": " + e.what();
    }
    return out;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::BadMagic:
        case ErrorKind::CorruptHeader:
        case ErrorKind::TruncatedPayload:
        case ErrorKind::InvalidPixelValue:
        case ErrorKind::MalformedGroup:
        case ErrorKind::IoError:
        case ErrorKind::ConfigError:
        case ErrorKind::OutOfRange:
        case ErrorKind::InvalidWindow:
        case ErrorKind::EmptyInput:
        case ErrorKind::LengthMismatch:
        case ErrorKind::DimensionMismatch:
            return kExitInput;
        default:
            return kExitProcessing;
    }
}

int run_estimate_cmd(const EstimateArgs& args) {
    if (args.stacks.size() > 1 && (args.out || args.volumes_csv)) {
        std::cerr << "error: --out and --volumes-csv take a single stack; use --ef-csv or --json for several\n";
        return kExitInput;
    }
    EstimateParams params;
    params.beat.median_window = args.median_window;
    params.beat.min_prominence_frac = args.min_prominence_frac;
    params.beat.min_separation = args.min_separation;

    std::vector<VideoOutcome> outcomes(args.stacks.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < args.stacks.size(); i = next++) outcomes[i] = estimate_one(args.stacks[i], params);
    };
    {
        std::vector<std::jthread> pool;
        const int n_threads = std::min<int>(args.workers, static_cast<int>(args.stacks.size()));
        for (int t = 1; t < n_threads; ++t) pool.emplace_back(work);
        work();
    }

    int code = kExitOk;
    std::vector<EfRecord> ef_rows;
    json all = json::array();
    for (const auto& o : outcomes) {
        if (!o.report) {
            spdlog::error("{}", o.error);
            if (code != kExitInput) code = exit_code_for(*o.error_kind);
            continue;
        }
        const EstimateReport& r = *o.report;
        for (const auto& w : r.warnings) spdlog::warn("{}: {}", r.video_id, w);
        if (r.status != EstimateStatus::Ok && code == kExitOk) code = kExitProcessing;

        const std::string report_json = report_to_json(r);
        if (args.out) write_text(*args.out, report_json);
        if (args.volumes_csv) write_text(*args.volumes_csv, report_volumes_csv(r));
        if (r.estimate) ef_rows.push_back({r.video_id, r.estimate->ef_mean, std::nullopt});

        if (args.json) {
            all.push_back(json::parse(report_json));
        } else if (r.estimate) {
            std::printf("%s\tEF %.4f\t%s\t%zu cycles\n", r.video_id.c_str(), r.estimate->ef_mean,
                        std::string(to_string(r.estimate->ef_class)).c_str(), r.estimate->cycles.size());
        } else {
            std::printf("%s\tno EF\t%s\n", r.video_id.c_str(), std::string(to_string(r.status)).c_str());
        }
    }
    if (args.json) {
        if (all.size() == 1) {
            std::cout << all.front().dump(2) << "\n";
        } else {
            std::cout << all.dump(2) << "\n";
        }
    }
    if (args.ef_csv) write_text(*args.ef_csv, write_ef_csv(ef_rows));
    return code;
}

int run_evaluate_cmd(const EvaluateArgs& args) {
    const auto pred = parse_ef_csv(read_text(args.pred));
    std::vector<EfRecord> truth;
    if (args.truth) truth = parse_ef_csv(read_text(*args.truth));
    const EvaluationReport report = evaluate_ef(pred, truth);

    std::optional<double> mean_dice;
    if (args.pred_masks.has_value() != args.truth_masks.has_value()) {
        throw Error(ErrorKind::EmptyInput, "--pred-masks and --truth-masks go together");
    }
    if (args.pred_masks) {
        const MaskStack p = read_mask_stack(*args.pred_masks);
        const MaskStack t = read_mask_stack(*args.truth_masks);
        if (p.frames.size() != t.frames.size()) {
            throw Error(ErrorKind::LengthMismatch, std::to_string(p.frames.size()) + " predicted frames vs " +
                                                       std::to_string(t.frames.size()) + " reference frames");
        }
        if (p.frames.empty()) throw Error(ErrorKind::EmptyInput, "mask stacks have no frames");
        double sum = 0.0;
        for (std::size_t i = 0; i < p.frames.size(); ++i) sum += dice(p.frames[i], t.frames[i]);
        mean_dice = sum / static_cast<double>(p.frames.size());
    }

    for (const auto& w : report.scores.warnings) spdlog::warn("{}", w);
    if (args.json) {
        json j = json::parse(evaluation_to_json(report));
        j["dice"] = mean_dice ? json(*mean_dice) : json(nullptr);
        std::cout << j.dump(2) << "\n";
        return kExitOk;
    }
    const auto& s = report.scores;
    std::printf("n               %zu\n", report.n);
    std::printf("MAE             %.4f\n", report.mae_pct);
    std::printf("RMSE            %.4f\n", report.rmse_pct);
    std::printf("micro F1        %.4f\n", s.micro_f1);
    std::printf("macro F1        %.4f\n", s.macro_f1);
    std::printf("macro recall    %.4f\n", s.macro_recall);
    std::printf("macro precision %.4f\n", s.macro_precision);
    if (mean_dice) std::printf("Dice            %.4f\n", *mean_dice);
    std::printf("confusion (rows true, cols predicted; pEF rEF mrEF)\n");
    for (const auto& row : s.matrix.counts) std::printf("  %6lld %6lld %6lld\n", row[0], row[1], row[2]);
    return kExitOk;
}

int run_classify_cmd(const ClassifyArgs& args) {
    const EfClass c = classify_ef(args.ef);
    if (args.json) {
        std::cout << json{{"ef", args.ef}, {"class", std::string(to_string(c))}}.dump() << "\n";
    } else {
        std::cout << to_string(c) << "\n";
    }
    return kExitOk;
}

int run_augment_cmd(const AugmentArgs& args) {
    const MaskStack input = read_mask_stack(args.input);
    ensure_dir(args.out_dir);
    for (int k = 0; k < args.count; ++k) {
        MaskStack out{input.width, input.height, input.fps, {}};
        for (std::size_t f = 0; f < input.frames.size(); ++f) {
            const std::uint64_t seed = derive_seed(args.seed, static_cast<std::uint64_t>(k), f);
            const AugmentResult r = simulate_previous_mask(input.frames[f], seed);
            spdlog::debug("copy {} frame {}: scale {:.4f} shift ({:.2f}, {:.2f}) after {} attempt(s)", k, f,
                          r.affine.scale, r.affine.translate_x, r.affine.translate_y, r.attempts);
            out.frames.push_back(r.mask);
        }
        char name[32];
        std::snprintf(name, sizeof name, "aug_%03d.lvm", k);
        write_mask_stack(args.out_dir / name, out);
    }
    spdlog::info("wrote {} stacks to {}", args.count, args.out_dir.string());
    return kExitOk;
}

int run_synth_cmd(const SynthArgs& args) {
    const SynthConfig config = args.config ? parse_synth_config(read_text(*args.config)) : SynthConfig{};
    const SynthVideo video = generate_video(config);
    write_mask_stack(args.out, {config.frame_width, config.frame_height, static_cast<float>(video.fps), video.masks});
    if (args.truth) write_text(*args.truth, synth_truth_json(video, config));
    spdlog::info("wrote {} frames, truth EF {}", video.masks.size(), video.truth_ef);
    return kExitOk;
}

int run_tracings_cmd(const TracingsArgs& args) {
    const TracingTable table = parse_tracings_csv(read_text(args.csv));
    const auto masks = tracings_to_masks(table, args.width, args.height);
    std::map<std::string, std::vector<std::pair<int, const BinaryMask*>>> videos;
    for (const auto& [key, mask] : masks) videos[key.video_id].push_back({key.frame, &mask});

    ensure_dir(args.out_dir);
    for (const auto& [id, frames] : videos) {
        MaskStack stack{args.width, args.height, static_cast<float>(args.fps), {}};
        std::string listing;
        for (const auto& [frame, mask] : frames) {
            stack.frames.push_back(*mask);
            listing += " " + std::to_string(frame);
        }
        const fs::path out = args.out_dir / (fs::path(id).stem().string() + ".lvm");
        write_mask_stack(out, stack);
        std::printf("%s\tframes%s\n", out.string().c_str(), listing.c_str());
    }
    return kExitOk;
}

}  // namespace lvef::cli
