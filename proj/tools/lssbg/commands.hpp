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

#include "lssbg/detect.hpp"
#include "lssbg/lss.hpp"
#include "lssbg/postprocess.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lssbg::cli {

    enum ExitCode : int {
        exit_ok = 0,
        exit_usage = 1,
        exit_io = 2,
        exit_format = 3,
    };

    /// Bad command-line usage detected after parsing (empty frame range, ...).
    class UsageError : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// Every tunable of the pipeline plus the paths of one invocation.
    struct RunConfig {
        LssParams lss;
        double train_threshold = 1.0;
        DetectorConfig detector;
        PostprocessConfig postprocess;
        bool erode_radius_set = false;
        bool border_radius_set = false;

        std::filesystem::path input;
        std::filesystem::path dataset;
        std::filesystem::path model;
        std::filesystem::path output;
        std::filesystem::path masks;
        std::filesystem::path report_json;
        std::filesystem::path report_csv;
        std::vector<std::filesystem::path> reports;
        std::string method = "lss";
        std::string category;
        std::optional<int> first_frame;
        std::optional<int> last_frame;
        /// Use at most this many training frames (0 = all).
        int training_limit = 0;
        bool emit_raw_masks = false;
    };

    /// Post-processing settings for a model: radii left at their defaults follow its region radius.
    PostprocessConfig effective_postprocess(const RunConfig& cfg, const LssParams& model_params);

    struct TrainResult {
        int frames = 0;
        double mean_clusters = 0.0;
    };

    TrainResult cmd_train(const RunConfig& cfg, std::ostream& out);
    int cmd_detect(const RunConfig& cfg, std::ostream& out);
    void cmd_evaluate(const RunConfig& cfg, std::ostream& out);
    void cmd_rank(const RunConfig& cfg, std::ostream& out);
    void cmd_run(const RunConfig& cfg, std::ostream& out);

    /// Parses `args` (without the program name), dispatches, and maps errors to exit codes.
    int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lssbg::cli
