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

#include "fixture.hpp"

#include <cstdio>
#include <fstream>

namespace lssbg::testing {

    namespace {
        std::string numbered(const char* prefix, int n) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%s%06d.png", prefix, n);
            return buf;
        }
    } // namespace

    void write_ground_truth(const BinaryMask& truth, const std::filesystem::path& path) {
        Frame gt(truth.width(), truth.height(), 1);
        for(std::size_t i = 0; i < truth.bits().size(); ++i)
            gt.pixels()[i] = truth.bits()[i] ? 255 : 0;
        save_frame(gt, path);
    }

    MovingSquareScene write_mini_dataset(const std::filesystem::path& root, std::uint32_t seed, int train, int eval) {
        namespace fs = std::filesystem;
        fs::create_directories(root / "input");
        fs::create_directories(root / "groundtruth");
        MovingSquareScene scene = moving_square_scene(seed, train, eval);
        int n = 1;
        for(const auto& f : scene.training) {
            save_frame(f, root / "input" / numbered("in", n));
            write_ground_truth(BinaryMask(f.width(), f.height()), root / "groundtruth" / numbered("gt", n));
            ++n;
        }
        for(std::size_t i = 0; i < scene.frames.size(); ++i, ++n) {
            save_frame(scene.frames[i], root / "input" / numbered("in", n));
            write_ground_truth(scene.truth[i], root / "groundtruth" / numbered("gt", n));
        }
        std::ofstream(root / "temporalROI.txt") << (train + 1) << " " << (train + eval) << "\n";
        return scene;
    }

} // namespace lssbg::testing
