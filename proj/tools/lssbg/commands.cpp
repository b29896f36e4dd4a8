// Copyright 2026 The lssbg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include "lssbg/error.hpp"
#include "lssbg/eval.hpp"
#include "lssbg/imaging.hpp"
#include "lssbg/model.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;

namespace lssbg::cli {

    namespace {

        enum class Purpose { training, detection };

        struct FrameSource {
            fs::path frames_dir;
            std::optional<std::pair<int, int>> temporal_roi;
        };

        FrameSource resolve_source(const fs::path& input) {
            std::error_code ec;
            if(!fs::is_directory(input, ec))
                throw IoError("input directory '" + input.string() + "' does not exist");
            FrameSource src{input, std::nullopt};
            if(fs::is_directory(input / "input", ec)) {
                src.frames_dir = input / "input";
                if(fs::is_regular_file(input / "temporalROI.txt", ec)) {
                    const Sequence seq = load_dataset(input);
                    src.temporal_roi = {seq.roi_first, seq.roi_last};
                }
            }
            return src;
        }

        std::vector<std::pair<int, fs::path>> select_frames(const RunConfig& cfg, Purpose purpose) {
            const FrameSource src = resolve_source(cfg.input);
            auto frames = list_input_frames(src.frames_dir);
            std::vector<std::pair<int, fs::path>> out;
            const bool explicit_range = cfg.first_frame || cfg.last_frame;
            for(auto& f : frames) {
                bool keep = true;
                if(explicit_range)
                    keep = f.first >= cfg.first_frame.value_or(f.first) && f.first <= cfg.last_frame.value_or(f.first);
                else if(src.temporal_roi) {
                    const auto [first, last] = *src.temporal_roi;
                    keep = purpose == Purpose::training ? f.first < first : (f.first >= first && f.first <= last);
                }
                if(keep)
                    out.push_back(std::move(f));
            }
            if(purpose == Purpose::training && cfg.training_limit > 0 && out.size() > std::size_t(cfg.training_limit))
                out.resize(std::size_t(cfg.training_limit));
            return out;
        }

        // Writes through a temporary sibling (same extension, so image encoders still pick the format)
        // and renames it into place, so readers never observe a partial file.
        void write_atomically(const fs::path& path, const std::function<void(const fs::path&)>& writer) {
            const fs::path tmp = path.parent_path() / ("." + path.stem().string() + ".partial" + path.extension().string());
            try {
                writer(tmp);
                fs::rename(tmp, path);
            }
            catch(const fs::filesystem_error& e) {
                std::error_code ec;
                fs::remove(tmp, ec);
                throw IoError(std::string("cannot write '") + path.string() + "': " + e.what());
            }
            catch(...) {
                std::error_code ec;
                fs::remove(tmp, ec);
                throw;
            }
        }

        void write_text(const fs::path& path, const std::string& text) {
            write_atomically(path, [&](const fs::path& tmp) {
                std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
                if(!out)
                    throw IoError("cannot open '" + tmp.string() + "' for writing");
                out << text;
                if(!out)
                    throw IoError("failed writing '" + tmp.string() + "'");
            });
        }

        void ensure_directory(const fs::path& dir) {
            std::error_code ec;
            fs::create_directories(dir, ec);
            if(!fs::is_directory(dir))
                throw IoError("cannot create directory '" + dir.string() + "'");
        }

        std::string raw_mask_file_name(int frame_number) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "raw%06d.png", frame_number);
            return buf;
        }

        fs::path relative_or_dot(const fs::path& p, const fs::path& base) {
            const fs::path rel = fs::relative(p, base);
            return rel.empty() ? fs::path(".") : rel;
        }

    } // namespace

    PostprocessConfig effective_postprocess(const RunConfig& cfg, const LssParams& model_params) {
        PostprocessConfig pc = cfg.postprocess;
        if(!cfg.erode_radius_set)
            pc.erode_radius = model_params.region_radius;
        if(!cfg.border_radius_set)
            pc.border_dilate_radius = model_params.region_radius;
        return pc;
    }

    TrainResult cmd_train(const RunConfig& cfg, std::ostream& out) {
        const auto frames = select_frames(cfg, Purpose::training);
        if(frames.empty())
            throw UsageError("no training frames in the selected range of '" + cfg.input.string() + "'");
        std::optional<TrainingState> state;
        for(const auto& [number, path] : frames) {
            const Frame frame = load_frame(path);
            if(!state)
                state.emplace(frame.width(), frame.height(), cfg.lss, cfg.train_threshold);
            state->update(frame);
        }
        const BackgroundModel model = finalize(*state);
        if(cfg.model.has_parent_path())
            ensure_directory(cfg.model.parent_path());
        write_atomically(cfg.model, [&](const fs::path& tmp) { save_model(model, tmp); });
        TrainResult result{state->frames_seen(), state->mean_cluster_count()};
        char line[128];
        std::snprintf(line, sizeof(line), "trained on %d frames (%dx%d), average clusters per pixel: %.3f\n",
                      result.frames, model.width(), model.height(), result.mean_clusters);
        out << line;
        return result;
    }

    int cmd_detect(const RunConfig& cfg, std::ostream& out) {
        const BackgroundModel model = load_model(cfg.model);
        const PostprocessConfig pc = effective_postprocess(cfg, model.params());
        cfg.detector.validate();
        pc.validate();
        const auto frames = select_frames(cfg, Purpose::detection);
        if(frames.empty())
            throw UsageError("no frames to process in the selected range of '" + cfg.input.string() + "'");
        ensure_directory(cfg.output);
        for(const auto& [number, path] : frames) {
            const Frame frame = load_frame(path);
            if(frame.width() != model.width() || frame.height() != model.height())
                throw ArgumentError("frame " + std::to_string(number) + " is " + std::to_string(frame.width()) + "x" +
                                    std::to_string(frame.height()) + " but the model is " +
                                    std::to_string(model.width()) + "x" + std::to_string(model.height()));
            const BinaryMask raw = detect_raw(frame, model, cfg.detector);
            const BinaryMask final_mask = postprocess(raw, frame, model, pc);
            write_atomically(cfg.output / mask_file_name(number), [&](const fs::path& tmp) { save_mask(final_mask, tmp); });
            if(cfg.emit_raw_masks)
                write_atomically(cfg.output / raw_mask_file_name(number), [&](const fs::path& tmp) { save_mask(raw, tmp); });
        }
        out << "wrote " << frames.size() << " masks to " << cfg.output.string() << "\n";
        return static_cast<int>(frames.size());
    }

    void cmd_evaluate(const RunConfig& cfg, std::ostream& out) {
        const auto roots = find_sequences(cfg.dataset);
        if(roots.empty())
            throw IoError("no video (directory with temporalROI.txt) under '" + cfg.dataset.string() + "'");
        std::vector<VideoReport> videos;
        for(const auto& root : roots) {
            const Sequence seq = load_dataset(root);
            const fs::path rel = relative_or_dot(root, cfg.dataset);
            videos.push_back(evaluate_sequence(seq, rel == "." ? cfg.masks : cfg.masks / rel));
        }
        const EvaluationReport report = build_report(cfg.method, std::move(videos));
        const fs::path json_path = cfg.report_json.empty() ? cfg.masks / "report.json" : cfg.report_json;
        const fs::path csv_path = cfg.report_csv.empty() ? cfg.masks / "report.csv" : cfg.report_csv;
        write_text(json_path, report_to_json(report));
        write_text(csv_path, report_to_csv(report));
        for(const auto& v : report.videos) {
            char line[256];
            std::snprintf(line, sizeof(line), "%s/%s: recall %.4f precision %.4f fmeasure %.4f pbc %.4f\n",
                          v.category.c_str(), v.name.c_str(), v.metrics.recall, v.metrics.precision,
                          v.metrics.fmeasure, v.metrics.pbc);
            out << line;
        }
    }

    void cmd_rank(const RunConfig& cfg, std::ostream& out) {
        std::vector<MethodScores> table;
        for(const auto& path : cfg.reports) {
            std::ifstream in(path, std::ios::binary);
            if(!in)
                throw IoError("cannot read report '" + path.string() + "'");
            std::stringstream text;
            text << in.rdbuf();
            table.push_back(method_scores(report_from_json(text.str()), cfg.category));
        }
        const std::string csv = ranking_to_csv(rank_methods(table));
        if(cfg.output.empty())
            out << csv;
        else
            write_text(cfg.output, csv);
    }

    void cmd_run(const RunConfig& cfg, std::ostream& out) {
        const auto roots = find_sequences(cfg.dataset);
        if(roots.empty())
            throw IoError("no video (directory with temporalROI.txt) under '" + cfg.dataset.string() + "'");
        for(const auto& root : roots) {
            const fs::path rel = relative_or_dot(root, cfg.dataset);
            const fs::path dir = rel == "." ? cfg.output : cfg.output / rel;
            RunConfig step = cfg;
            step.input = root;
            step.model = dir / "model.lssbgm";
            step.output = dir;
            out << "[" << rel.string() << "] ";
            cmd_train(step, out);
            out << "[" << rel.string() << "] ";
            cmd_detect(step, out);
        }
        RunConfig eval = cfg;
        eval.masks = cfg.output;
        cmd_evaluate(eval, out);
    }

    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
        CLI::App app{"Background subtraction with local self-similarity descriptors", "lssbg"};
        app.require_subcommand(1);
        app.fallthrough();
        app.set_config("--config", "", "key=value configuration file; command-line flags take precedence");

        RunConfig cfg;
        app.add_option("--patch-size", cfg.lss.patch_size, "Patch side in pixels (odd)")->capture_default_str();
        app.add_option("--region-radius", cfg.lss.region_radius, "Correlation region radius")->capture_default_str();
        app.add_option("--angle-bins", cfg.lss.angle_bins)->capture_default_str();
        app.add_option("--radial-bins", cfg.lss.radial_bins)->capture_default_str();
        auto* noise_opt = app.add_option("--noise-variance", cfg.lss.noise_variance,
                                         "Lower bound of the similarity normalization (default 25 * patch_size^2)");
        app.add_option("--component-scale", cfg.lss.component_scale)->capture_default_str();
        app.add_option("--train-threshold", cfg.train_threshold, "Descriptor distance joining an existing cluster")
                ->capture_default_str();
        app.add_option("--detect-threshold", cfg.detector.detect_threshold, "Descriptor distance flagging foreground")
                ->capture_default_str();
        app.add_option("--close-radius", cfg.postprocess.close_radius)->capture_default_str();
        auto* erode_opt = app.add_option("--erode-radius", cfg.postprocess.erode_radius,
                                         "Core erosion radius (default: region radius)");
        auto* border_opt = app.add_option("--border-dilate-radius", cfg.postprocess.border_dilate_radius,
                                          "Border band radius (default: region radius)");
        app.add_option("--color-threshold", cfg.postprocess.color_threshold)->capture_default_str();
        app.add_option("--final-erode-radius", cfg.postprocess.final_erode_radius)->capture_default_str();
        app.add_option("--final-close-radius", cfg.postprocess.final_close_radius)->capture_default_str();
        app.add_option("--training-limit", cfg.training_limit, "Use at most N training frames (0 = all)")
                ->capture_default_str();
        app.add_flag("--emit-raw-masks", cfg.emit_raw_masks, "Also write raw%06d.png descriptor-threshold masks");

        auto* train = app.add_subcommand("train", "Build a background model from training frames");
        train->add_option("-i,--input", cfg.input, "Video directory (input/, temporalROI.txt) or frame directory")
                ->required();
        train->add_option("-m,--model", cfg.model, "Output model file")->required();
        train->add_option("--first", cfg.first_frame, "First frame number (inclusive)");
        train->add_option("--last", cfg.last_frame, "Last frame number (inclusive)");

        auto* detect = app.add_subcommand("detect", "Write foreground masks for frames");
        detect->add_option("-m,--model", cfg.model, "Model file")->required();
        detect->add_option("-i,--input", cfg.input, "Video directory or frame directory")->required();
        detect->add_option("-o,--output", cfg.output, "Mask output directory")->required();
        detect->add_option("--first", cfg.first_frame, "First frame number (inclusive)");
        detect->add_option("--last", cfg.last_frame, "Last frame number (inclusive)");

        auto* evaluate = app.add_subcommand("evaluate", "Score masks against ground truth");
        evaluate->add_option("-d,--dataset", cfg.dataset, "Video directory or dataset tree")->required();
        evaluate->add_option("--masks", cfg.masks, "Mask directory (mirrors the dataset tree)")->required();
        evaluate->add_option("--report-json", cfg.report_json, "JSON report path (default <masks>/report.json)");
        evaluate->add_option("--report-csv", cfg.report_csv, "CSV report path (default <masks>/report.csv)");
        evaluate->add_option("--method", cfg.method, "Method name stored in the report")->capture_default_str();

        auto* rank = app.add_subcommand("rank", "Rank methods by their average per-metric rank");
        rank->add_option("reports", cfg.reports, "JSON reports, one per method")->required();
        rank->add_option("-o,--output", cfg.output, "Ranking CSV path (default stdout)");
        rank->add_option("--category", cfg.category, "Rank on one category instead of the overall means");

        auto* run_cmd = app.add_subcommand("run", "train + detect + evaluate over a dataset");
        run_cmd->add_option("-d,--dataset", cfg.dataset, "Video directory or dataset tree")->required();
        run_cmd->add_option("-o,--output", cfg.output, "Output directory")->required();
        run_cmd->add_option("--method", cfg.method, "Method name stored in the report")->capture_default_str();

        std::vector<std::string> argv(args.rbegin(), args.rend());
        try {
            app.parse(argv);
        }
        catch(const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }

        if(noise_opt->count() == 0)
            cfg.lss.noise_variance = LssParams::default_noise_variance(cfg.lss.patch_size);
        cfg.erode_radius_set = erode_opt->count() > 0;
        cfg.border_radius_set = border_opt->count() > 0;

        try {
            cfg.lss.validate();
            cfg.detector.validate();
            cfg.postprocess.validate();
            if(!(cfg.train_threshold >= 0.0))
                throw ArgumentError("train-threshold must be >= 0");
            if(cfg.training_limit < 0)
                throw ArgumentError("training-limit must be >= 0");
        }
        catch(const ArgumentError& e) {
            err << "lssbg: invalid configuration: " << e.what() << "\n";
            return exit_usage;
        }

        try {
            if(train->parsed())
                cmd_train(cfg, out);
            else if(detect->parsed())
                cmd_detect(cfg, out);
            else if(evaluate->parsed())
                cmd_evaluate(cfg, out);
            else if(rank->parsed())
                cmd_rank(cfg, out);
            else if(run_cmd->parsed())
                cmd_run(cfg, out);
            return exit_ok;
        }
        catch(const UsageError& e) {
            err << "lssbg: " << e.what() << "\n";
            return exit_usage;
        }
        catch(const IoError& e) {
            err << "lssbg: I/O error: " << e.what() << "\n";
            return exit_io;
        }
        catch(const Error& e) {
            err << "lssbg: " << e.what() << "\n";
            return exit_format;
        }
        catch(const fs::filesystem_error& e) {
            err << "lssbg: I/O error: " << e.what() << "\n";
            return exit_io;
        }
    }

} // namespace lssbg::cli
