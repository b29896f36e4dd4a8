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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace lssbg {

    /// 8-bit raster with 1 (grayscale) or 3 (RGB) interleaved channels, row-major.
    class Frame {
    public:
        Frame() = default;
        Frame(int width, int height, int channels, std::uint8_t fill = 0);
        Frame(int width, int height, int channels, std::vector<std::uint8_t> pixels);

        int width() const noexcept { return m_width; }
        int height() const noexcept { return m_height; }
        int channels() const noexcept { return m_channels; }
        bool empty() const noexcept { return m_pixels.empty(); }

        std::uint8_t& at(int x, int y, int c = 0) noexcept {
            return m_pixels[index(x, y, c)];
        }
        std::uint8_t at(int x, int y, int c = 0) const noexcept {
            return m_pixels[index(x, y, c)];
        }

        /// Address of channel 0 of pixel (x, y); rows are contiguous.
        const std::uint8_t* ptr(int x, int y) const noexcept { return m_pixels.data() + index(x, y, 0); }
        std::uint8_t* ptr(int x, int y) noexcept { return m_pixels.data() + index(x, y, 0); }

        const std::vector<std::uint8_t>& pixels() const noexcept { return m_pixels; }
        std::vector<std::uint8_t>& pixels() noexcept { return m_pixels; }

        bool operator==(const Frame&) const = default;

    private:
        std::size_t index(int x, int y, int c) const noexcept {
            return (static_cast<std::size_t>(y) * m_width + x) * m_channels + c;
        }

        int m_width = 0;
        int m_height = 0;
        int m_channels = 0;
        std::vector<std::uint8_t> m_pixels;
    };

    /// Boolean raster, true = foreground. Stored one byte per pixel (0/1).
    class BinaryMask {
    public:
        BinaryMask() = default;
        BinaryMask(int width, int height, bool fill = false);

        int width() const noexcept { return m_width; }
        int height() const noexcept { return m_height; }

        bool at(int x, int y) const noexcept { return m_bits[index(x, y)] != 0; }
        void set(int x, int y, bool v) noexcept { m_bits[index(x, y)] = v ? 1 : 0; }

        const std::vector<std::uint8_t>& bits() const noexcept { return m_bits; }
        std::vector<std::uint8_t>& bits() noexcept { return m_bits; }

        std::size_t count() const noexcept;
        bool none() const noexcept { return count() == 0; }

        bool operator==(const BinaryMask&) const = default;

    private:
        std::size_t index(int x, int y) const noexcept {
            return static_cast<std::size_t>(y) * m_width + x;
        }

        int m_width = 0;
        int m_height = 0;
        std::vector<std::uint8_t> m_bits;
    };

    BinaryMask operator|(const BinaryMask& a, const BinaryMask& b);
    BinaryMask operator&(const BinaryMask& a, const BinaryMask& b);
    BinaryMask operator~(const BinaryMask& m);
    /// a AND NOT b
    BinaryMask subtract(const BinaryMask& a, const BinaryMask& b);
    /// true iff every foreground pixel of a is foreground in b
    bool is_subset(const BinaryMask& a, const BinaryMask& b);

    enum class StructuringShape { disk, square };

    /// Symmetric neighborhood used by the morphology operators.
    class StructuringElement {
    public:
        StructuringElement(StructuringShape shape, int radius);

        static StructuringElement disk(int radius) { return {StructuringShape::disk, radius}; }
        static StructuringElement square(int radius) { return {StructuringShape::square, radius}; }

        StructuringShape shape() const noexcept { return m_shape; }
        int radius() const noexcept { return m_radius; }

        /// Half-width of the horizontal run of the element at vertical offset dy, |dy| <= radius.
        int half_width(int dy) const noexcept { return m_half_widths[dy + m_radius]; }

        /// Every (dx, dy) in the element; always contains (0, 0).
        std::vector<std::pair<int, int>> offsets() const;

    private:
        StructuringShape m_shape;
        int m_radius;
        std::vector<int> m_half_widths;
    };

    /// Value assumed for pixels outside the mask during erosion.
    enum class OutsideValue { background, foreground };

    BinaryMask erode(const BinaryMask& m, const StructuringElement& se,
                     OutsideValue outside = OutsideValue::background);
    BinaryMask dilate(const BinaryMask& m, const StructuringElement& se);
    BinaryMask close(const BinaryMask& m, const StructuringElement& se);

    Frame load_frame(const std::filesystem::path& path);
    /// Encoding is picked from the extension (.png, .jpg, .jpeg).
    void save_frame(const Frame& f, const std::filesystem::path& path);

    /// Masks are stored as 8-bit grayscale PNG, foreground = 255. Any nonzero byte reads back as foreground.
    BinaryMask load_mask(const std::filesystem::path& path);
    void save_mask(const BinaryMask& m, const std::filesystem::path& path);

    /// BT.601 luma, rounded. Grayscale input is returned unchanged.
    Frame to_grayscale(const Frame& f);

    /// Grows the frame by `pad` pixels on each side, copying the nearest edge pixel outward.
    Frame pad_replicate(const Frame& f, int pad);

    Frame crop(const Frame& f, int x, int y, int width, int height);

} // namespace lssbg
