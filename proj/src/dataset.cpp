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

#include "lssbg/error.hpp"
#include "lssbg/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace fs = std::filesystem;

namespace lssbg {

    namespace {

        std::pair<int, int> read_temporal_roi(const fs::path& file) {
            std::ifstream in(file);
            if(!in)
                throw IoError("cannot read '" + file.string() + "'");
            long first = 0, last = 0;
            std::string extra;
            if(!(in >> first >> last) || (in >> extra))
                throw FormatError("'" + file.string() + "' must hold exactly two integers");
            if(first < 1 || last < first || last > 99999999)
                throw FormatError("'" + file.string() + "' holds an invalid frame range " + std::to_string(first) +
                                  " " + std::to_string(last));
            return {static_cast<int>(first), static_cast<int>(last)};
        }

        std::string numbered(const char* prefix, int number, const char* ext) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%s%06d%s", prefix, number, ext);
            return buf;
        }

    } // namespace

    std::string mask_file_name(int frame_number) {
        return numbered("bin", frame_number, ".png");
    }

    std::vector<std::pair<int, fs::path>> list_input_frames(const fs::path& dir) {
        std::error_code ec;
        if(!fs::is_directory(dir, ec))
            throw IoError("'" + dir.string() + "' is not a directory");
        static const std::regex pattern(R"(in(\d{6,})\.(jpg|jpeg|png|bmp))", std::regex::icase);
        std::vector<std::pair<int, fs::path>> frames;
        for(const auto& entry : fs::directory_iterator(dir)) {
            std::smatch m;
            const std::string name = entry.path().filename().string();
            if(entry.is_regular_file() && std::regex_match(name, m, pattern))
                frames.emplace_back(std::stoi(m[1].str()), entry.path());
        }
        std::sort(frames.begin(), frames.end());
        const auto dup = std::adjacent_find(frames.begin(), frames.end(),
                                            [](const auto& a, const auto& b) { return a.first == b.first; });
        if(dup != frames.end())
            throw FormatError("frame " + std::to_string(dup->first) + " appears twice in '" + dir.string() + "'");
        return frames;
    }

    Sequence load_dataset(const fs::path& root) {
        std::error_code ec;
        if(!fs::is_directory(root, ec))
            throw IoError("dataset directory '" + root.string() + "' does not exist");
        const fs::path input_dir = root / "input", gt_dir = root / "groundtruth", roi_file = root / "temporalROI.txt";
        if(!fs::is_directory(input_dir, ec))
            throw IoError("missing input/ directory in '" + root.string() + "'");
        if(!fs::is_directory(gt_dir, ec))
            throw IoError("missing groundtruth/ directory in '" + root.string() + "'");
        if(!fs::is_regular_file(roi_file, ec))
            throw IoError("missing temporalROI.txt in '" + root.string() + "'");

        Sequence seq;
        seq.root = root;
        const fs::path canonical = fs::weakly_canonical(root, ec);
        seq.name = canonical.filename().string();
        seq.category = canonical.parent_path().filename().string();
        std::tie(seq.roi_first, seq.roi_last) = read_temporal_roi(roi_file);

        const auto frames = list_input_frames(input_dir);
        for(const auto& [number, path] : frames) {
            if(number < seq.roi_first)
                seq.training.push_back({number, path, {}});
            else if(number <= seq.roi_last) {
                SequenceFrame f{number, path, gt_dir / numbered("gt", number, ".png")};
                if(!fs::is_regular_file(f.groundtruth, ec))
                    throw IoError("missing ground truth '" + f.groundtruth.string() + "'");
                seq.evaluation.push_back(std::move(f));
            }
        }
        const auto expected = static_cast<std::size_t>(seq.roi_last - seq.roi_first + 1);
        if(seq.evaluation.size() != expected)
            throw IoError("'" + input_dir.string() + "' holds " + std::to_string(seq.evaluation.size()) +
                          " frames of the temporal ROI, expected " + std::to_string(expected));
        for(const char* name : {"ROI.bmp", "ROI.png", "ROI.jpg"}) {
            if(fs::is_regular_file(root / name, ec)) {
                seq.roi_image = root / name;
                break;
            }
        }
        return seq;
    }

    std::vector<fs::path> find_sequences(const fs::path& root) {
        std::error_code ec;
        if(!fs::is_directory(root, ec))
            throw IoError("'" + root.string() + "' is not a directory");
        if(fs::is_regular_file(root / "temporalROI.txt", ec))
            return {root};
        std::vector<fs::path> found;
        for(const auto& entry : fs::recursive_directory_iterator(root))
            if(entry.is_directory() && fs::is_regular_file(entry.path() / "temporalROI.txt", ec))
                found.push_back(entry.path());
        std::sort(found.begin(), found.end());
        return found;
    }

    VideoReport evaluate_sequence(const Sequence& seq, const fs::path& mask_dir) {
        std::optional<BinaryMask> roi;
        if(seq.roi_image) {
            const Frame f = to_grayscale(load_frame(*seq.roi_image));
            roi.emplace(f.width(), f.height());
            for(std::size_t i = 0; i < f.pixels().size(); ++i)
                roi->bits()[i] = f.pixels()[i] >= 128 ? 1 : 0;
        }
        VideoReport report;
        report.name = seq.name;
        report.category = seq.category;
        std::error_code ec;
        for(const auto& f : seq.evaluation) {
            const fs::path mask_path = mask_dir / mask_file_name(f.number);
            if(!fs::is_regular_file(mask_path, ec))
                throw FormatError("no mask for frame " + std::to_string(f.number) + " ('" + mask_path.string() + "')");
            const BinaryMask mask = load_mask(mask_path);
            const LabelMap gt = load_ground_truth(f.groundtruth);
            report.counts += confusion(mask, gt, roi ? &*roi : nullptr);
            ++report.frames;
        }
        report.metrics = metrics(report.counts);
        return report;
    }

} // namespace lssbg
