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

#pragma once

#include "lssbg/imaging.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lssbg {

    /// Ground-truth pixel classes of the change-detection benchmark, by their gray level.
    enum class GroundTruthLabel : std::uint8_t {
        Static = 0,
        HardShadow = 50,
        OutsideRoi = 85,
        Unknown = 170,
        Motion = 255,
    };

    class LabelMap {
    public:
        LabelMap() = default;
        LabelMap(int width, int height, GroundTruthLabel fill = GroundTruthLabel::Static);

        int width() const noexcept { return m_width; }
        int height() const noexcept { return m_height; }
        GroundTruthLabel at(int x, int y) const noexcept { return m_labels[static_cast<std::size_t>(y) * m_width + x]; }
        void set(int x, int y, GroundTruthLabel l) noexcept { m_labels[static_cast<std::size_t>(y) * m_width + x] = l; }

    private:
        int m_width = 0;
        int m_height = 0;
        std::vector<GroundTruthLabel> m_labels;
    };

    /// Throws FormatError on any gray level outside {0, 50, 85, 170, 255}.
    LabelMap decode_labels(const Frame& gray);
    LabelMap load_ground_truth(const std::filesystem::path& path);

    struct ConfusionCounts {
        std::uint64_t tp = 0;
        std::uint64_t fp = 0;
        std::uint64_t fn = 0;
        std::uint64_t tn = 0;

        std::uint64_t total() const noexcept { return tp + fp + fn + tn; }
        ConfusionCounts& operator+=(const ConfusionCounts& o) noexcept {
            tp += o.tp;
            fp += o.fp;
            fn += o.fn;
            tn += o.tn;
            return *this;
        }
        bool operator==(const ConfusionCounts&) const = default;
    };

    /// Scores a mask. OutsideRoi and Unknown pixels are skipped, as are pixels outside the optional
    /// spatial ROI. Motion is positive; Static and HardShadow are negative.
    ConfusionCounts confusion(const BinaryMask& mask, const LabelMap& gt, const BinaryMask* roi = nullptr);

    enum class Metric { recall, specificity, fpr, fnr, pbc, precision, fmeasure };
    inline constexpr std::array<Metric, 7> all_metrics = {Metric::recall, Metric::specificity, Metric::fpr, Metric::fnr,
                                                          Metric::pbc,    Metric::precision,   Metric::fmeasure};
    std::string_view metric_name(Metric m) noexcept;
    bool higher_is_better(Metric m) noexcept;

    struct MetricSet {
        double recall = 0.0;
        double specificity = 0.0;
        double fpr = 0.0;
        double fnr = 0.0;
        double pbc = 0.0;
        double precision = 0.0;
        double fmeasure = 0.0;

        double get(Metric m) const noexcept;
        double& get(Metric m) noexcept;
    };

    /// The seven benchmark metrics; every 0/0 ratio evaluates to 0.
    MetricSet metrics(const ConfusionCounts& c);

    struct VideoReport {
        std::string name;
        std::string category;
        int frames = 0;
        ConfusionCounts counts;
        MetricSet metrics;
    };

    struct CategoryReport {
        std::string name;
        int videos = 0;
        MetricSet metrics;
    };

    /// Per-metric arithmetic mean over the videos. Throws ArgumentError on an empty list.
    CategoryReport aggregate_category(std::span<const VideoReport> reports, std::string name = {});

    struct MethodScores {
        std::string method;
        std::map<std::string, double> metrics;
    };

    struct MethodRank {
        std::string method;
        std::array<double, 7> ranks{};
        double average_rank = 0.0;
    };

    /// Entries sorted by ascending average rank, ties by method name.
    struct MethodRanking {
        std::vector<MethodRank> entries;
    };

    /// Ranks methods per metric (1 = best, ties share the mean of their positions) and orders them by
    /// their average rank. Throws ArgumentError when a method lacks one of the seven metrics.
    MethodRanking rank_methods(std::span<const MethodScores> table);

    // Benchmark directory layout

    struct SequenceFrame {
        int number = 0;
        std::filesystem::path input;
        std::filesystem::path groundtruth;
    };

    /// One video: input/in%06d.{jpg,png}, groundtruth/gt%06d.png and temporalROI.txt.
    struct Sequence {
        std::filesystem::path root;
        std::string name;
        std::string category;
        int roi_first = 0;
        int roi_last = 0;
        /// Frames numbered before the temporal ROI.
        std::vector<SequenceFrame> training;
        /// Frames inside the temporal ROI, each with its ground truth.
        std::vector<SequenceFrame> evaluation;
        std::optional<std::filesystem::path> roi_image;
    };

    Sequence load_dataset(const std::filesystem::path& root);

    /// `root` itself when it is a video directory, otherwise every video below it (sorted by path).
    std::vector<std::filesystem::path> find_sequences(const std::filesystem::path& root);

    /// Sorted frame numbers and paths of every in%06d image of a directory.
    std::vector<std::pair<int, std::filesystem::path>> list_input_frames(const std::filesystem::path& dir);

    std::string mask_file_name(int frame_number);

    /// Scores bin%06d.png masks of mask_dir over the evaluation frames of seq, pooling counts.
    /// Throws FormatError naming the first missing mask.
    VideoReport evaluate_sequence(const Sequence& seq, const std::filesystem::path& mask_dir);

    // Reports

    struct EvaluationReport {
        std::string method;
        std::vector<VideoReport> videos;
        std::vector<CategoryReport> categories;
        /// Mean over categories.
        MetricSet overall;
    };

    /// Groups videos by category and fills categories and overall.
    EvaluationReport build_report(std::string method, std::vector<VideoReport> videos);

    std::string report_to_json(const EvaluationReport& r);
    std::string report_to_csv(const EvaluationReport& r);
    EvaluationReport report_from_json(std::string_view text);

    /// Overall metrics of the report, or those of one category when `category` is non-empty.
    MethodScores method_scores(const EvaluationReport& r, const std::string& category = {});

    std::string ranking_to_csv(const MethodRanking& ranking);

} // namespace lssbg
