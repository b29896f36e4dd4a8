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

#include "lssbg/imaging.hpp"

#include "lssbg/error.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <string>

namespace lssbg {

    namespace {

        void check_dims(int width, int height) {
            if(width < 1 || height < 1)
                throw ArgumentError("raster dimensions must be positive, got " + std::to_string(width) + "x" + std::to_string(height));
        }

        void check_same_dims(const BinaryMask& a, const BinaryMask& b) {
            if(a.width() != b.width() || a.height() != b.height())
                throw ArgumentError("mask dimensions differ");
        }

        // Per-row prefix counts of foreground pixels: counts[y*(W+1)+x] = #true in row y, columns [0, x).
        std::vector<int> row_prefix_counts(const BinaryMask& m) {
            const int w = m.width(), h = m.height();
            std::vector<int> counts(static_cast<std::size_t>(h) * (w + 1), 0);
            const auto& bits = m.bits();
            for(int y = 0; y < h; ++y) {
                int* row = counts.data() + static_cast<std::size_t>(y) * (w + 1);
                const std::uint8_t* src = bits.data() + static_cast<std::size_t>(y) * w;
                for(int x = 0; x < w; ++x)
                    row[x + 1] = row[x] + src[x];
            }
            return counts;
        }

        cv::Mat read_image(const std::filesystem::path& path) {
            std::error_code ec;
            if(!std::filesystem::is_regular_file(path, ec))
                throw IoError("cannot open '" + path.string() + "': no such file");
            if(!std::ifstream(path, std::ios::binary))
                throw IoError("cannot read '" + path.string() + "'");
            cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
            if(img.empty())
                throw FormatError("cannot decode image '" + path.string() + "'");
            if(img.depth() != CV_8U) {
                cv::Mat tmp;
                img.convertTo(tmp, CV_8U, img.depth() == CV_16U ? 1.0 / 257.0 : 1.0);
                img = tmp;
            }
            return img;
        }

        // Reverses the first three channels (BGR <-> RGB) and drops alpha.
        cv::Mat to_rgb(const cv::Mat& img) {
            cv::Mat out(img.rows, img.cols, CV_8UC3);
            const int from_to[] = {0, 2, 1, 1, 2, 0};
            cv::mixChannels(&img, 1, &out, 1, from_to, 3);
            return out;
        }

        void write_image(const cv::Mat& img, const std::filesystem::path& path) {
            bool ok = false;
            try {
                ok = cv::imwrite(path.string(), img);
            }
            catch(const cv::Exception& e) {
                throw IoError("cannot write '" + path.string() + "': " + e.what());
            }
            if(!ok)
                throw IoError("cannot write '" + path.string() + "'");
        }

    } // namespace

    Frame::Frame(int width, int height, int channels, std::uint8_t fill) :
            m_width(width), m_height(height), m_channels(channels) {
        check_dims(width, height);
        if(channels != 1 && channels != 3)
            throw ArgumentError("frames have 1 or 3 channels, got " + std::to_string(channels));
        m_pixels.assign(static_cast<std::size_t>(width) * height * channels, fill);
    }

    Frame::Frame(int width, int height, int channels, std::vector<std::uint8_t> pixels) :
            Frame(width, height, channels) {
        if(pixels.size() != m_pixels.size())
            throw ArgumentError("pixel buffer size does not match frame dimensions");
        m_pixels = std::move(pixels);
    }

    BinaryMask::BinaryMask(int width, int height, bool fill) :
            m_width(width), m_height(height) {
        check_dims(width, height);
        m_bits.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
    }

    std::size_t BinaryMask::count() const noexcept {
        return static_cast<std::size_t>(std::count(m_bits.begin(), m_bits.end(), std::uint8_t{1}));
    }

    BinaryMask operator|(const BinaryMask& a, const BinaryMask& b) {
        check_same_dims(a, b);
        BinaryMask out = a;
        for(std::size_t i = 0; i < out.bits().size(); ++i)
            out.bits()[i] |= b.bits()[i];
        return out;
    }

    BinaryMask operator&(const BinaryMask& a, const BinaryMask& b) {
        check_same_dims(a, b);
        BinaryMask out = a;
        for(std::size_t i = 0; i < out.bits().size(); ++i)
            out.bits()[i] &= b.bits()[i];
        return out;
    }

    BinaryMask operator~(const BinaryMask& m) {
        BinaryMask out = m;
        for(auto& b : out.bits())
            b ^= 1;
        return out;
    }

    BinaryMask subtract(const BinaryMask& a, const BinaryMask& b) {
        check_same_dims(a, b);
        BinaryMask out = a;
        for(std::size_t i = 0; i < out.bits().size(); ++i)
            out.bits()[i] &= static_cast<std::uint8_t>(b.bits()[i] ^ 1);
        return out;
    }

    bool is_subset(const BinaryMask& a, const BinaryMask& b) {
        check_same_dims(a, b);
        for(std::size_t i = 0; i < a.bits().size(); ++i)
            if(a.bits()[i] && !b.bits()[i])
                return false;
        return true;
    }

    StructuringElement::StructuringElement(StructuringShape shape, int radius) :
            m_shape(shape), m_radius(radius) {
        if(radius < 0)
            throw ArgumentError("structuring element radius must be >= 0");
        m_half_widths.resize(static_cast<std::size_t>(2 * radius + 1));
        for(int dy = -radius; dy <= radius; ++dy) {
            int hw = radius;
            if(shape == StructuringShape::disk) {
                // largest dx with dx^2 + dy^2 <= r^2, integer arithmetic only
                hw = 0;
                while((hw + 1) * (hw + 1) + dy * dy <= radius * radius)
                    ++hw;
            }
            m_half_widths[dy + radius] = hw;
        }
    }

    std::vector<std::pair<int, int>> StructuringElement::offsets() const {
        std::vector<std::pair<int, int>> out;
        for(int dy = -m_radius; dy <= m_radius; ++dy)
            for(int dx = -half_width(dy); dx <= half_width(dy); ++dx)
                out.emplace_back(dx, dy);
        return out;
    }

    // Both operators walk the element row by row: a horizontal run of half-width hw centered at x
    // is fully foreground (erosion) or touches foreground (dilation) iff the row's prefix count
    // over that run says so. Cost is O(W*H*(2r+1)) regardless of the element shape.

    BinaryMask erode(const BinaryMask& m, const StructuringElement& se, OutsideValue outside) {
        const int w = m.width(), h = m.height(), r = se.radius();
        const auto counts = row_prefix_counts(m);
        const bool outside_fg = outside == OutsideValue::foreground;
        BinaryMask out(w, h);
        for(int y = 0; y < h; ++y) {
            for(int x = 0; x < w; ++x) {
                bool keep = true;
                for(int dy = -r; dy <= r && keep; ++dy) {
                    const int yy = y + dy;
                    if(yy < 0 || yy >= h) {
                        keep = outside_fg;
                        continue;
                    }
                    const int hw = se.half_width(dy);
                    const int x0 = x - hw, x1 = x + hw;
                    if(!outside_fg && (x0 < 0 || x1 >= w)) {
                        keep = false;
                        continue;
                    }
                    const int cx0 = std::max(x0, 0), cx1 = std::min(x1, w - 1);
                    const int* row = counts.data() + static_cast<std::size_t>(yy) * (w + 1);
                    keep = (row[cx1 + 1] - row[cx0]) == (cx1 - cx0 + 1);
                }
                out.set(x, y, keep);
            }
        }
        return out;
    }

    BinaryMask dilate(const BinaryMask& m, const StructuringElement& se) {
        const int w = m.width(), h = m.height(), r = se.radius();
        const auto counts = row_prefix_counts(m);
        BinaryMask out(w, h);
        for(int y = 0; y < h; ++y) {
            for(int x = 0; x < w; ++x) {
                bool hit = false;
                for(int dy = -r; dy <= r && !hit; ++dy) {
                    const int yy = y + dy;
                    if(yy < 0 || yy >= h)
                        continue;
                    const int hw = se.half_width(dy);
                    const int cx0 = std::max(x - hw, 0), cx1 = std::min(x + hw, w - 1);
                    const int* row = counts.data() + static_cast<std::size_t>(yy) * (w + 1);
                    hit = row[cx1 + 1] > row[cx0];
                }
                out.set(x, y, hit);
            }
        }
        return out;
    }

    BinaryMask close(const BinaryMask& m, const StructuringElement& se) {
        return erode(dilate(m, se), se);
    }

    Frame load_frame(const std::filesystem::path& path) {
        cv::Mat img = read_image(path);
        cv::Mat conv;
        int channels = 0;
        switch(img.channels()) {
            case 1:
                conv = img;
                channels = 1;
                break;
            case 3:
            case 4:
                conv = to_rgb(img);
                channels = 3;
                break;
            default:
                throw FormatError("unsupported channel count in '" + path.string() + "'");
        }
        if(!conv.isContinuous())
            conv = conv.clone();
        std::vector<std::uint8_t> pixels(conv.datastart, conv.dataend);
        return Frame(conv.cols, conv.rows, channels, std::move(pixels));
    }

    void save_frame(const Frame& f, const std::filesystem::path& path) {
        if(f.empty())
            throw ArgumentError("cannot save an empty frame");
        cv::Mat view(f.height(), f.width(), f.channels() == 3 ? CV_8UC3 : CV_8UC1,
                     const_cast<std::uint8_t*>(f.pixels().data()));
        if(f.channels() == 3) {
            write_image(to_rgb(view), path);
        }
        else
            write_image(view, path);
    }

    BinaryMask load_mask(const std::filesystem::path& path) {
        const Frame f = to_grayscale(load_frame(path));
        BinaryMask m(f.width(), f.height());
        for(std::size_t i = 0; i < m.bits().size(); ++i)
            m.bits()[i] = f.pixels()[i] != 0 ? 1 : 0;
        return m;
    }

    void save_mask(const BinaryMask& m, const std::filesystem::path& path) {
        std::vector<std::uint8_t> px(m.bits().size());
        std::transform(m.bits().begin(), m.bits().end(), px.begin(),
                       [](std::uint8_t b) { return static_cast<std::uint8_t>(b ? 255 : 0); });
        save_frame(Frame(m.width(), m.height(), 1, std::move(px)), path);
    }

    Frame to_grayscale(const Frame& f) {
        if(f.channels() == 1)
            return f;
        if(f.channels() != 3)
            throw ArgumentError("grayscale conversion expects 1 or 3 channels");
        Frame out(f.width(), f.height(), 1);
        const auto& src = f.pixels();
        auto& dst = out.pixels();
        for(std::size_t i = 0; i < dst.size(); ++i) {
            const double luma = 0.299 * src[3 * i] + 0.587 * src[3 * i + 1] + 0.114 * src[3 * i + 2];
            dst[i] = static_cast<std::uint8_t>(std::lround(luma));
        }
        return out;
    }

    Frame pad_replicate(const Frame& f, int pad) {
        if(pad < 0)
            throw ArgumentError("padding must be >= 0");
        if(pad == 0)
            return f;
        const int w = f.width(), h = f.height(), c = f.channels();
        Frame out(w + 2 * pad, h + 2 * pad, c);
        for(int y = 0; y < out.height(); ++y) {
            const int sy = std::clamp(y - pad, 0, h - 1);
            for(int x = 0; x < out.width(); ++x) {
                const int sx = std::clamp(x - pad, 0, w - 1);
                for(int k = 0; k < c; ++k)
                    out.at(x, y, k) = f.at(sx, sy, k);
            }
        }
        return out;
    }

    Frame crop(const Frame& f, int x, int y, int width, int height) {
        if(x < 0 || y < 0 || width < 1 || height < 1 || x + width > f.width() || y + height > f.height())
            throw ArgumentError("crop rectangle outside frame");
        Frame out(width, height, f.channels());
        const std::size_t row_bytes = static_cast<std::size_t>(width) * f.channels();
        for(int yy = 0; yy < height; ++yy)
            std::copy_n(f.ptr(x, y + yy), row_bytes, out.ptr(0, yy));
        return out;
    }

} // namespace lssbg
