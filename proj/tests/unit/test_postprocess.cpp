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
#include "lssbg/postprocess.hpp"

#include "oracle.hpp"
#include "synthetic.hpp"

#include <doctest.h>

using namespace lssbg;

namespace {

    BackgroundModel flat_model(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
        BackgroundModel m(w, h, LssParams{});
        for(int y = 0; y < h; ++y)
            for(int x = 0; x < w; ++x) {
                m.color(x, y)[0] = r;
                m.color(x, y)[1] = g;
                m.color(x, y)[2] = b;
            }
        return m;
    }

} // namespace

TEST_CASE("split_core_border") {
    const PostprocessConfig cfg;
    SUBCASE("empty raw mask") {
        const auto [core, border] = split_core_border(BinaryMask(32, 32), cfg);
        CHECK(core.none());
        CHECK(border.none());
    }
    SUBCASE("full mask") {
        const BinaryMask raw(64, 64, true);
        const auto [core, border] = split_core_border(raw, cfg);
        CHECK(core == erode(close(raw, StructuringElement::square(cfg.close_radius)), StructuringElement::disk(cfg.erode_radius)));
        CHECK(border == subtract(dilate(core, StructuringElement::disk(cfg.border_dilate_radius)), core));
        // out-of-frame pixels count as background, so the closing already trims 5 px at the frame edge
        const BinaryMask closed = close(raw, StructuringElement::square(cfg.close_radius));
        CHECK(closed == testing::rect_mask(64, 64, 5, 5, 54, 54));
        CHECK(core.at(25, 32));
        CHECK_FALSE(core.at(24, 32));
        CHECK(is_subset(core, testing::rect_mask(64, 64, 25, 25, 14, 14)));
        CHECK(is_subset(core | border, closed));
    }
    SUBCASE("block with a hole against the set-definition oracle") {
        PostprocessConfig small = cfg;
        small.erode_radius = 10;
        BinaryMask raw(64, 64);
        raw = testing::rect_mask(64, 64, 17, 17, 30, 30);
        for(int y = 30; y < 34; ++y)
            for(int x = 30; x < 34; ++x)
                raw.set(x, y, false);
        const auto [core, border] = split_core_border(raw, small);
        const BinaryMask closed = testing::oracle_erode(testing::oracle_dilate(raw, false, 5), false, 5);
        CHECK(closed == testing::rect_mask(64, 64, 17, 17, 30, 30));
        const BinaryMask want_core = testing::oracle_erode(closed, true, 10);
        const BinaryMask want_border = subtract(testing::oracle_dilate(want_core, true, 20), want_core);
        CHECK(core == want_core);
        CHECK(border == want_border);
        CHECK(core.count() == want_core.count());
        CHECK(border.count() == want_border.count());
    }
    SUBCASE("core and border properties on random masks") {
        std::mt19937 rng(6);
        PostprocessConfig c = cfg;
        c.close_radius = 2;
        c.erode_radius = 3;
        c.border_dilate_radius = 4;
        for(int trial = 0; trial < 30; ++trial) {
            const BinaryMask raw = testing::random_mask(40, 30, 0.5 + 0.01 * trial, rng);
            const auto [core, border] = split_core_border(raw, c);
            const BinaryMask closed = close(raw, StructuringElement::square(c.close_radius));
            CHECK(is_subset(core, closed));
            CHECK((core & border).none());
            CHECK(is_subset(border, dilate(core, StructuringElement::disk(c.border_dilate_radius))));
        }
    }
}

TEST_CASE("refine_border color test") {
    const PostprocessConfig cfg;
    const BinaryMask border(3, 1, true);
    const BackgroundModel model = flat_model(3, 1, 0, 0, 0);
    Frame f(3, 1, 3);
    for(int c = 0; c < 3; ++c) {
        f.at(0, 0, c) = 0;
        f.at(1, 0, c) = 255;
        f.at(2, 0, c) = 10;
    }
    const BinaryMask out = refine_border(border, f, model, cfg);
    CHECK_FALSE(out.at(0, 0));
    CHECK(out.at(1, 0));
    CHECK_FALSE(out.at(2, 0));

    SUBCASE("pixels outside the border are never kept") {
        BinaryMask b(3, 1);
        CHECK(refine_border(b, f, model, cfg).none());
    }
    SUBCASE("grayscale frames use the absolute difference") {
        Frame g(3, 1, 1, std::vector<std::uint8_t>{30, 31, 0});
        const BinaryMask o = refine_border(border, g, model, cfg);
        CHECK_FALSE(o.at(0, 0));
        CHECK(o.at(1, 0));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(refine_border(BinaryMask(2, 1), f, model, cfg), ArgumentError);
    }
}

TEST_CASE("postprocess") {
    const BackgroundModel model = flat_model(48, 48, 0, 0, 0);
    const Frame frame(48, 48, 3, 255);
    SUBCASE("empty raw mask") {
        CHECK(postprocess(BinaryMask(48, 48), frame, model, {}).none());
    }
    SUBCASE("color threshold above the largest distance keeps the core only") {
        PostprocessConfig cfg;
        cfg.erode_radius = 4;
        cfg.border_dilate_radius = 6;
        cfg.color_threshold = 500.0;
        const BinaryMask raw = testing::rect_mask(48, 48, 8, 8, 30, 26);
        const auto [core, border] = split_core_border(raw, cfg);
        const BinaryMask want = close(erode(core, StructuringElement::square(cfg.final_erode_radius)),
                                      StructuringElement::square(cfg.final_close_radius));
        CHECK(postprocess(raw, frame, model, cfg) == want);
    }
    SUBCASE("degenerate parameters reproduce the raw mask") {
        PostprocessConfig cfg;
        cfg.close_radius = cfg.erode_radius = cfg.border_dilate_radius = 0;
        cfg.final_erode_radius = cfg.final_close_radius = 0;
        cfg.color_threshold = 0.0;
        std::mt19937 rng(12);
        const BinaryMask raw = testing::random_mask(48, 48, 0.3, rng);
        CHECK(postprocess(raw, frame, model, cfg) == raw);
    }
    SUBCASE("final mask stays near raw detections") {
        std::mt19937 rng(13);
        PostprocessConfig cfg;
        cfg.erode_radius = 2;
        cfg.border_dilate_radius = 5;
        for(int trial = 0; trial < 10; ++trial) {
            const BinaryMask raw = testing::random_mask(48, 48, 0.6, rng);
            const BinaryMask out = postprocess(raw, frame, model, cfg);
            const BinaryMask bound = dilate(close(raw, StructuringElement::square(cfg.close_radius)),
                                            StructuringElement::disk(cfg.border_dilate_radius));
            CHECK(is_subset(out, bound));
        }
    }
}

TEST_CASE("moving square scene is recovered after post-processing") {
    const auto scene = testing::moving_square_scene(1);
    TrainingState s(64, 64, LssParams{});
    for(const auto& f : scene.training)
        s.update(f);
    const BackgroundModel model = finalize(s);
    double sum = 0.0;
    for(std::size_t i = 0; i < scene.frames.size(); ++i) {
        const BinaryMask raw = detect_raw(scene.frames[i], model, {});
        sum += testing::fmeasure(postprocess(raw, scene.frames[i], model, {}), scene.truth[i]);
    }
    CHECK(sum / double(scene.frames.size()) >= 0.80);
}
