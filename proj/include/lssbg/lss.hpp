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

#include <span>
#include <vector>

namespace lssbg {

    /// Local self-similarity descriptor parameters.
    ///
    /// A patch of patch_size x patch_size pixels centered on each pixel is compared (SSD) to every
    /// patch whose center lies within region_radius (Chebyshev), giving a (2r+1)^2 correlation surface
    /// that is max-pooled into angle_bins x radial_bins log-polar cells.
    struct LssParams {
        int patch_size = 5;
        int region_radius = 20;
        int angle_bins = 20;
        int radial_bins = 4;
        /// Lower bound of the exponential normalization variance; 25 * patch_size^2 by default.
        double noise_variance = 625.0;
        /// Descriptors are stretched to [0, component_scale].
        double component_scale = 255.0;

        static double default_noise_variance(int patch_size) {
            return 25.0 * patch_size * patch_size;
        }

        int descriptor_length() const noexcept { return angle_bins * radial_bins; }
        int patch_half() const noexcept { return (patch_size - 1) / 2; }
        /// Throws ArgumentError when an invariant is violated.
        void validate() const;

        bool operator==(const LssParams&) const = default;
    };

    /// Border width added around frames before computing descriptors: b - b % 3 with b = r + p.
    int padding_size(int region_radius, int patch_size);

    /// Correlation surface of one pixel, side 2r+1, indexed by offset.
    class SimilaritySurface {
    public:
        explicit SimilaritySurface(int radius) :
                m_radius(radius), m_values(static_cast<std::size_t>(2 * radius + 1) * (2 * radius + 1), 0.0) {}

        int radius() const noexcept { return m_radius; }
        int side() const noexcept { return 2 * m_radius + 1; }
        double& at(int dx, int dy) noexcept { return m_values[index(dx, dy)]; }
        double at(int dx, int dy) const noexcept { return m_values[index(dx, dy)]; }

    private:
        std::size_t index(int dx, int dy) const noexcept {
            return static_cast<std::size_t>(dy + m_radius) * side() + (dx + m_radius);
        }

        int m_radius;
        std::vector<double> m_values;
    };

    /// Computes exp(-SSD / max(noise_variance, auto_variance)) for every offset around (cx, cy) of an
    /// already padded grayscale frame. auto_variance is the largest SSD among the 8 unit offsets.
    SimilaritySurface similarity_surface(const Frame& gray_padded, int cx, int cy, const LssParams& params);

    /// Cell-to-bin assignment of the log-polar grid. Pure geometry: depends on the parameters only.
    class LogPolarLayout {
    public:
        explicit LogPolarLayout(const LssParams& params);

        int radius() const noexcept { return m_radius; }
        int length() const noexcept { return static_cast<int>(m_nonempty.size()); }

        /// Bin of cell (dx, dy), or -1 for the center and for cells beyond the region radius.
        int bin(int dx, int dy) const noexcept {
            return m_cell_bins[static_cast<std::size_t>(dy + m_radius) * (2 * m_radius + 1) + (dx + m_radius)];
        }
        /// True for bins that receive at least one cell.
        bool nonempty(int bin) const noexcept { return m_nonempty[bin] != 0; }

        /// Radial bin edges R_0 = 0 < R_1 < ... < R_n = r, R_k = (r+1)^(k/n) - 1.
        const std::vector<double>& radial_edges() const noexcept { return m_edges; }

        /// Bin index = radial_bin * angle_bins + angle_bin.
        static int angle_bin(int dx, int dy, int angle_bins);

    private:
        int m_radius;
        std::vector<double> m_edges;
        std::vector<int> m_cell_bins;
        std::vector<unsigned char> m_nonempty;
    };

    /// Max-pools a surface into log-polar bins; structurally empty bins stay 0.
    std::vector<double> bin_log_polar(const SimilaritySurface& surface, const LssParams& params);
    std::vector<double> bin_log_polar(const SimilaritySurface& surface, const LogPolarLayout& layout);

    /// Linearly maps the non-empty bins from [min, max] onto [0, component_scale] (all zero if max == min).
    std::vector<double> stretch(std::span<const double> binned, const LssParams& params);
    std::vector<double> stretch(std::span<const double> binned, const LogPolarLayout& layout, double component_scale);

    /// Dense descriptors of an (unpadded) frame, row-major, one descriptor_length() slice per pixel.
    class DescriptorGrid {
    public:
        DescriptorGrid() = default;
        DescriptorGrid(int width, int height, int length);

        int width() const noexcept { return m_width; }
        int height() const noexcept { return m_height; }
        int length() const noexcept { return m_length; }

        std::span<const float> at(int x, int y) const noexcept {
            return {m_data.data() + offset(x, y), static_cast<std::size_t>(m_length)};
        }
        std::span<float> at(int x, int y) noexcept {
            return {m_data.data() + offset(x, y), static_cast<std::size_t>(m_length)};
        }

        const std::vector<float>& data() const noexcept { return m_data; }
        std::vector<float>& data() noexcept { return m_data; }

        bool operator==(const DescriptorGrid&) const = default;

    private:
        std::size_t offset(int x, int y) const noexcept {
            return (static_cast<std::size_t>(y) * m_width + x) * m_length;
        }

        int m_width = 0;
        int m_height = 0;
        int m_length = 0;
        std::vector<float> m_data;
    };

    /// Grayscale conversion, replicate padding and dense descriptor extraction for every pixel.
    ///
    /// Patch SSDs are evaluated one offset at a time over the whole frame with an integral image of
    /// squared differences, so the cost is O(W*H*r^2) instead of O(W*H*r^2*p^2).
    DescriptorGrid compute_descriptor_grid(const Frame& f, const LssParams& params);

    /// Euclidean distance; throws ArgumentError on length mismatch.
    double descriptor_distance(std::span<const float> a, std::span<const float> b);
    double descriptor_distance(std::span<const double> a, std::span<const double> b);

} // namespace lssbg
