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

#include "lssbg/detect.hpp"

#include "lssbg/error.hpp"

#include <cmath>
#include <string>

namespace lssbg {

    void DetectorConfig::validate() const {
        if(!(detect_threshold > 0.0))
            throw ArgumentError("detect_threshold must be > 0");
    }

    BinaryMask detect_raw(const Frame& frame, const BackgroundModel& model, const DetectorConfig& cfg) {
        if(frame.width() != model.width() || frame.height() != model.height())
            throw ArgumentError("frame is " + std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                                " but the background model is " + std::to_string(model.width()) + "x" +
                                std::to_string(model.height()));
        return detect_raw(compute_descriptor_grid(frame, model.params()), model, cfg);
    }

    BinaryMask detect_raw(const DescriptorGrid& descriptors, const BackgroundModel& model, const DetectorConfig& cfg) {
        cfg.validate();
        if(descriptors.width() != model.width() || descriptors.height() != model.height())
            throw ArgumentError("descriptor grid dimensions do not match the background model");
        if(descriptors.length() != model.descriptors().length())
            throw ArgumentError("descriptor length does not match the background model");
        BinaryMask mask(model.width(), model.height());
        for(int y = 0; y < mask.height(); ++y)
            for(int x = 0; x < mask.width(); ++x)
                mask.set(x, y, descriptor_distance(descriptors.at(x, y), model.descriptors().at(x, y)) > cfg.detect_threshold);
        return mask;
    }

} // namespace lssbg
