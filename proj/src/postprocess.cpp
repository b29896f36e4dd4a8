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

#include "lssbg/postprocess.hpp"

#include "lssbg/error.hpp"

#include <cmath>

namespace lssbg {

    void PostprocessConfig::validate() const {
        if(close_radius < 0 || erode_radius < 0 || border_dilate_radius < 0 || final_erode_radius < 0 ||
           final_close_radius < 0)
            throw ArgumentError("post-processing radii must be >= 0");
        if(!(color_threshold >= 0.0))
            throw ArgumentError("color_threshold must be >= 0");
    }

    CoreBorder split_core_border(const BinaryMask& raw, const PostprocessConfig& cfg) {
        cfg.validate();
        const BinaryMask closed = close(raw, StructuringElement::square(cfg.close_radius));
        BinaryMask core = erode(closed, StructuringElement::disk(cfg.erode_radius));
        BinaryMask border = subtract(dilate(core, StructuringElement::disk(cfg.border_dilate_radius)), core);
        return {std::move(core), std::move(border)};
    }

    BinaryMask refine_border(const BinaryMask& border, const Frame& frame, const BackgroundModel& model,
                             const PostprocessConfig& cfg) {
        cfg.validate();
        if(border.width() != frame.width() || border.height() != frame.height() || frame.width() != model.width() ||
           frame.height() != model.height())
            throw ArgumentError("border mask, frame and background model dimensions must agree");
        const int channels = frame.channels();
        BinaryMask out(border.width(), border.height());
        for(int y = 0; y < out.height(); ++y) {
            for(int x = 0; x < out.width(); ++x) {
                if(!border.at(x, y))
                    continue;
                const auto bg = model.color(x, y);
                double acc = 0.0;
                for(int c = 0; c < channels; ++c) {
                    const double d = double(frame.at(x, y, c)) - double(bg[c]);
                    acc += d * d;
                }
                out.set(x, y, std::sqrt(acc) > cfg.color_threshold);
            }
        }
        return out;
    }

    BinaryMask postprocess(const BinaryMask& raw, const Frame& frame, const BackgroundModel& model,
                           const PostprocessConfig& cfg) {
        const auto [core, border] = split_core_border(raw, cfg);
        const BinaryMask combined = core | refine_border(border, frame, model, cfg);
        return close(erode(combined, StructuringElement::square(cfg.final_erode_radius)),
                     StructuringElement::square(cfg.final_close_radius));
    }

} // namespace lssbg
