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
#include "lssbg/model.hpp"

namespace lssbg {

    /// Morphology and color-test parameters of the refinement stage.
    ///
    /// Shapes are fixed: square elements for the closings and the final erosion, disks for the core
    /// erosion and the border band.
    struct PostprocessConfig {
        int close_radius = 5;
        /// Core erosion; matches the descriptor region radius, which bounds how far raw detections spill.
        int erode_radius = 20;
        /// Width of the border band around the core; tracks the descriptor region radius.
        int border_dilate_radius = 20;
        double color_threshold = 30.0;
        int final_erode_radius = 1;
        int final_close_radius = 2;

        void validate() const;
    };

    struct CoreBorder {
        BinaryMask core;
        BinaryMask border;
    };

    CoreBorder split_core_border(const BinaryMask& raw, const PostprocessConfig& cfg);

    /// Keeps the border pixels whose color lies farther than color_threshold from the model color.
    BinaryMask refine_border(const BinaryMask& border, const Frame& frame, const BackgroundModel& model,
                             const PostprocessConfig& cfg);

    /// Full refinement: split, color-test the border, then erode and close the union.
    BinaryMask postprocess(const BinaryMask& raw, const Frame& frame, const BackgroundModel& model,
                           const PostprocessConfig& cfg);

} // namespace lssbg
