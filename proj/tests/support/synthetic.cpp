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

#include "synthetic.hpp"

#include <algorithm>

namespace lssbg::testing {

    Frame blocky_texture(int width, int height, int cell, std::uint32_t seed, int channels) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> level(20, 235);
        const int bw = (width + cell - 1) / cell, bh = (height + cell - 1) / cell;
        std::vector<int> blocks(static_cast<std::size_t>(bw) * bh * channels);
        for(auto& b : blocks)
            b = level(rng);
        Frame f(width, height, channels);
        for(int y = 0; y < height; ++y)
            for(int x = 0; x < width; ++x)
                for(int c = 0; c < channels; ++c)
                    f.at(x, y, c) = static_cast<std::uint8_t>(
                            blocks[(static_cast<std::size_t>(y / cell) * bw + x / cell) * channels + c]);
        return f;
    }

    Frame add_noise(const Frame& f, int amplitude, std::mt19937& rng) {
        std::uniform_int_distribution<int> noise(-amplitude, amplitude);
        Frame out = f;
        for(auto& p : out.pixels())
            p = static_cast<std::uint8_t>(std::clamp(int(p) + noise(rng), 0, 255));
        return out;
    }

    Frame paste(const Frame& f, const Frame& patch, int x, int y) {
        Frame out = f;
        for(int j = 0; j < patch.height(); ++j)
            for(int i = 0; i < patch.width(); ++i) {
                const int xx = x + i, yy = y + j;
                if(xx < 0 || yy < 0 || xx >= f.width() || yy >= f.height())
                    continue;
                for(int c = 0; c < f.channels(); ++c)
                    out.at(xx, yy, c) = patch.at(i, j, patch.channels() == f.channels() ? c : 0);
            }
        return out;
    }

    BinaryMask rect_mask(int width, int height, int x, int y, int w, int h) {
        BinaryMask m(width, height);
        for(int j = std::max(y, 0); j < std::min(y + h, height); ++j)
            for(int i = std::max(x, 0); i < std::min(x + w, width); ++i)
                m.set(i, j, true);
        return m;
    }

    BinaryMask random_mask(int width, int height, double density, std::mt19937& rng) {
        std::bernoulli_distribution bit(density);
        BinaryMask m(width, height);
        for(auto& b : m.bits())
            b = bit(rng) ? 1 : 0;
        return m;
    }

    Frame random_gray(int width, int height, std::mt19937& rng, int lo, int hi) {
        std::uniform_int_distribution<int> v(lo, hi);
        Frame f(width, height, 1);
        for(auto& p : f.pixels())
            p = static_cast<std::uint8_t>(v(rng));
        return f;
    }

    MovingSquareScene moving_square_scene(std::uint32_t seed, int training_frames, int frames) {
        constexpr int size = 64, side = 16, step = 2;
        std::mt19937 rng(seed);
        const Frame background = blocky_texture(size, size, 4, seed * 7919u + 1u);
        const Frame square = blocky_texture(side, side, 2, seed * 104729u + 3u);
        MovingSquareScene scene;
        for(int i = 0; i < training_frames; ++i)
            scene.training.push_back(add_noise(background, 2, rng));
        const int y0 = (size - side) / 2;
        const int x0 = (size - side - step * (frames - 1)) / 2;
        for(int i = 0; i < frames; ++i) {
            const int x = x0 + step * i;
            scene.frames.push_back(add_noise(paste(background, square, x, y0), 2, rng));
            scene.truth.push_back(rect_mask(size, size, x, y0, side, side));
        }
        return scene;
    }

    double fmeasure(const BinaryMask& mask, const BinaryMask& truth) {
        double tp = 0, fp = 0, fn = 0;
        for(std::size_t i = 0; i < mask.bits().size(); ++i) {
            const bool m = mask.bits()[i] != 0, t = truth.bits()[i] != 0;
            tp += m && t;
            fp += m && !t;
            fn += !m && t;
        }
        if(tp == 0)
            return 0.0;
        const double precision = tp / (tp + fp), recall = tp / (tp + fn);
        return 2 * precision * recall / (precision + recall);
    }

} // namespace lssbg::testing
