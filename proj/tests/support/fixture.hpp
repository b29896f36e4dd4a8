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

#include "synthetic.hpp"

#include <filesystem>

namespace lssbg::testing {

    /// Writes a benchmark-layout video: input/in%06d.png, groundtruth/gt%06d.png, temporalROI.txt.
    /// Frames 1..train are static background, train+1..train+eval contain a moving square.
    MovingSquareScene write_mini_dataset(const std::filesystem::path& root, std::uint32_t seed = 1, int train = 6,
                                         int eval = 10);

    /// Writes ground truth for a mask: 255 where set, 0 elsewhere.
    void write_ground_truth(const BinaryMask& truth, const std::filesystem::path& path);

} // namespace lssbg::testing
