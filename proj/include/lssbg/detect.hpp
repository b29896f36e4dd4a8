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
#include "lssbg/lss.hpp"
#include "lssbg/model.hpp"

namespace lssbg {

    struct DetectorConfig {
        /// A pixel is foreground when its descriptor lies strictly farther than this from the model.
        double detect_threshold = 30.0;

        void validate() const;
    };

    /// Raw foreground mask: descriptor distance to the background model above the threshold.
    BinaryMask detect_raw(const Frame& frame, const BackgroundModel& model, const DetectorConfig& cfg);
    /// Same, with the frame descriptors already computed using model.params().
    BinaryMask detect_raw(const DescriptorGrid& descriptors, const BackgroundModel& model, const DetectorConfig& cfg);

} // namespace lssbg
