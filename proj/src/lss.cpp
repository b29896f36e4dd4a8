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

#include "lssbg/lss.hpp"

#include "lssbg/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

namespace lssbg {

    namespace {

        // exp(-ssd / variance); a zero variance only happens on perfectly flat neighborhoods with
        // noise_variance = 0, where identical patches keep full similarity and everything else none.
        inline double normalized_similarity(double ssd, double variance) {
            if(variance <= 0.0)
                return ssd == 0.0 ? 1.0 : 0.0;
            return std::exp(-ssd / variance);
        }

        constexpr int unit_offsets[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

        // Patch SSD between (x, y) and (x+dx, y+dy) on a single-channel frame, no bounds checks.
        std::int64_t patch_ssd(const Frame& g, int x, int y, int dx, int dy, int half) {
            std::int64_t ssd = 0;
            for(int v = -half; v <= half; ++v) {
                for(int u = -half; u <= half; ++u) {
                    const int d = int(g.at(x + u, y + v)) - int(g.at(x + dx + u, y + dy + v));
                    ssd += d * d;
                }
            }
            return ssd;
        }

    } // namespace

    void LssParams::validate() const {
        if(patch_size < 3 || patch_size % 2 == 0)
            throw ArgumentError("patch_size must be odd and >= 3, got " + std::to_string(patch_size));
        if(region_radius < patch_half() + 1)
            throw ArgumentError("region_radius must be >= (patch_size-1)/2 + 1, got " + std::to_string(region_radius));
        if(angle_bins < 1 || radial_bins < 1)
            throw ArgumentError("angle_bins and radial_bins must be >= 1");
        if(!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
            throw ArgumentError("noise_variance must be finite and >= 0");
        if(!(component_scale > 0.0) || !std::isfinite(component_scale))
            throw ArgumentError("component_scale must be finite and > 0");
    }

    int padding_size(int region_radius, int patch_size) {
        if(region_radius < 0 || patch_size < 0)
            throw ArgumentError("padding_size expects non-negative sizes");
        const int b = region_radius + patch_size;
        return b - b % 3;
    }

    SimilaritySurface similarity_surface(const Frame& g, int cx, int cy, const LssParams& params) {
        params.validate();
        if(g.channels() != 1)
            throw ArgumentError("similarity_surface expects a grayscale frame");
        const int r = params.region_radius, half = params.patch_half();
        const int reach = r + half;
        if(cx - reach < 0 || cy - reach < 0 || cx + reach >= g.width() || cy + reach >= g.height())
            throw ArgumentError("neighborhood of (" + std::to_string(cx) + "," + std::to_string(cy) +
                                ") leaves the frame; pad the frame first");
        double auto_variance = 0.0;
        for(const auto& o : unit_offsets)
            auto_variance = std::max(auto_variance, double(patch_ssd(g, cx, cy, o[0], o[1], half)));
        const double variance = std::max(params.noise_variance, auto_variance);
        SimilaritySurface surface(r);
        for(int dy = -r; dy <= r; ++dy)
            for(int dx = -r; dx <= r; ++dx)
                surface.at(dx, dy) = normalized_similarity(double(patch_ssd(g, cx, cy, dx, dy, half)), variance);
        return surface;
    }

    int LogPolarLayout::angle_bin(int dx, int dy, int angle_bins) {
        double angle = std::atan2(double(dy), double(dx));
        if(angle < 0.0)
            angle += 2.0 * std::numbers::pi;
        const int a = static_cast<int>(std::floor(angle / (2.0 * std::numbers::pi / angle_bins)));
        return std::clamp(a, 0, angle_bins - 1);
    }

    LogPolarLayout::LogPolarLayout(const LssParams& params) :
            m_radius(params.region_radius) {
        params.validate();
        const int r = m_radius, n = params.radial_bins;
        m_edges.resize(static_cast<std::size_t>(n) + 1);
        for(int k = 0; k <= n; ++k)
            m_edges[k] = std::exp(k * std::log(r + 1.0) / n) - 1.0;
        m_edges.front() = 0.0;
        m_edges.back() = r;
        m_cell_bins.assign(static_cast<std::size_t>(2 * r + 1) * (2 * r + 1), -1);
        m_nonempty.assign(static_cast<std::size_t>(params.descriptor_length()), 0);
        for(int dy = -r; dy <= r; ++dy) {
            for(int dx = -r; dx <= r; ++dx) {
                if(dx == 0 && dy == 0)
                    continue;
                const int rho2 = dx * dx + dy * dy;
                if(rho2 > r * r)
                    continue;
                const double rho = std::sqrt(double(rho2));
                // radial bin k satisfies R_k < rho <= R_{k+1}; the outer edge is r itself
                int k = 0;
                while(k + 1 < n && m_edges[k + 1] < rho)
                    ++k;
                const int bin = k * params.angle_bins + angle_bin(dx, dy, params.angle_bins);
                m_cell_bins[static_cast<std::size_t>(dy + r) * (2 * r + 1) + (dx + r)] = bin;
                m_nonempty[bin] = 1;
            }
        }
    }

    std::vector<double> bin_log_polar(const SimilaritySurface& surface, const LogPolarLayout& layout) {
        if(surface.radius() != layout.radius())
            throw ArgumentError("surface radius does not match the log-polar layout");
        std::vector<double> bins(static_cast<std::size_t>(layout.length()), 0.0);
        const int r = layout.radius();
        for(int dy = -r; dy <= r; ++dy) {
            for(int dx = -r; dx <= r; ++dx) {
                const int b = layout.bin(dx, dy);
                if(b >= 0)
                    bins[b] = std::max(bins[b], surface.at(dx, dy));
            }
        }
        return bins;
    }

    std::vector<double> bin_log_polar(const SimilaritySurface& surface, const LssParams& params) {
        return bin_log_polar(surface, LogPolarLayout(params));
    }

    std::vector<double> stretch(std::span<const double> binned, const LogPolarLayout& layout, double component_scale) {
        if(static_cast<int>(binned.size()) != layout.length())
            throw ArgumentError("descriptor length does not match the log-polar layout");
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for(int b = 0; b < layout.length(); ++b) {
            if(!layout.nonempty(b))
                continue;
            if(first) {
                lo = hi = binned[b];
                first = false;
            }
            lo = std::min(lo, binned[b]);
            hi = std::max(hi, binned[b]);
        }
        std::vector<double> out(binned.size(), 0.0);
        if(first || hi <= lo)
            return out;
        const double scale = component_scale / (hi - lo);
        for(int b = 0; b < layout.length(); ++b)
            if(layout.nonempty(b))
                out[b] = (binned[b] - lo) * scale;
        return out;
    }

    std::vector<double> stretch(std::span<const double> binned, const LssParams& params) {
        return stretch(binned, LogPolarLayout(params), params.component_scale);
    }

    DescriptorGrid::DescriptorGrid(int width, int height, int length) :
            m_width(width), m_height(height), m_length(length) {
        if(width < 1 || height < 1 || length < 1)
            throw ArgumentError("descriptor grid dimensions must be positive");
        m_data.assign(static_cast<std::size_t>(width) * height * length, 0.0f);
    }

    DescriptorGrid compute_descriptor_grid(const Frame& f, const LssParams& params) {
        params.validate();
        if(f.empty())
            throw ArgumentError("cannot compute descriptors of an empty frame");
        const LogPolarLayout layout(params);
        const int w = f.width(), h = f.height();
        const int r = params.region_radius, half = params.patch_half(), p = params.patch_size;
        const int pad = padding_size(r, p);
        const Frame g = pad_replicate(to_grayscale(f), pad);
        const int len = params.descriptor_length();
        const std::size_t npix = static_cast<std::size_t>(w) * h;

        // Squared differences are accumulated over the band of patch pixels that the original
        // frame's patches touch: (w + 2*half) x (h + 2*half), starting at pad - half.
        const int bw = w + 2 * half, bh = h + 2 * half, origin = pad - half;
        std::vector<std::int64_t> integral(static_cast<std::size_t>(bw + 1) * (bh + 1), 0);
        std::vector<std::int64_t> ssd(npix);

        auto compute_ssd = [&](int dx, int dy) {
            for(int j = 0; j < bh; ++j) {
                const std::uint8_t* a = g.ptr(origin, origin + j);
                const std::uint8_t* b = g.ptr(origin + dx, origin + dy + j);
                std::int64_t* prev = integral.data() + static_cast<std::size_t>(j) * (bw + 1);
                std::int64_t* cur = prev + (bw + 1);
                std::int64_t row = 0;
                for(int i = 0; i < bw; ++i) {
                    const int d = int(a[i]) - int(b[i]);
                    row += d * d;
                    cur[i + 1] = prev[i + 1] + row;
                }
            }
            for(int y = 0; y < h; ++y) {
                const std::int64_t* top = integral.data() + static_cast<std::size_t>(y) * (bw + 1);
                const std::int64_t* bottom = top + static_cast<std::size_t>(p) * (bw + 1);
                std::int64_t* out = ssd.data() + static_cast<std::size_t>(y) * w;
                for(int x = 0; x < w; ++x)
                    out[x] = bottom[x + p] - bottom[x] - top[x + p] + top[x];
            }
        };

        std::vector<double> variance(npix, params.noise_variance);
        for(const auto& o : unit_offsets) {
            compute_ssd(o[0], o[1]);
            for(std::size_t i = 0; i < npix; ++i)
                variance[i] = std::max(variance[i], double(ssd[i]));
        }

        std::vector<double> binned(npix * len, 0.0);
        for(int dy = -r; dy <= r; ++dy) {
            for(int dx = -r; dx <= r; ++dx) {
                const int b = layout.bin(dx, dy);
                if(b < 0)
                    continue;
                compute_ssd(dx, dy);
                for(std::size_t i = 0; i < npix; ++i) {
                    double& slot = binned[i * len + b];
                    slot = std::max(slot, normalized_similarity(double(ssd[i]), variance[i]));
                }
            }
        }

        DescriptorGrid grid(w, h, len);
        for(int y = 0; y < h; ++y) {
            for(int x = 0; x < w; ++x) {
                const std::size_t i = static_cast<std::size_t>(y) * w + x;
                const auto stretched = stretch(std::span<const double>(binned.data() + i * len, len), layout,
                                               params.component_scale);
                std::transform(stretched.begin(), stretched.end(), grid.at(x, y).begin(),
                               [](double v) { return static_cast<float>(v); });
            }
        }
        return grid;
    }

    namespace {
        template<typename T>
        double euclidean(std::span<const T> a, std::span<const T> b) {
            if(a.size() != b.size())
                throw ArgumentError("descriptor lengths differ (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
            double acc = 0.0;
            for(std::size_t i = 0; i < a.size(); ++i) {
                const double d = double(a[i]) - double(b[i]);
                acc += d * d;
            }
            return std::sqrt(acc);
        }
    } // namespace

    double descriptor_distance(std::span<const float> a, std::span<const float> b) {
        return euclidean(a, b);
    }

    double descriptor_distance(std::span<const double> a, std::span<const double> b) {
        return euclidean(a, b);
    }

} // namespace lssbg
