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

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace lssbg {

    /// One descriptor mode observed at a pixel during training.
    struct ClusterEntry {
        std::vector<float> representative;
        int count = 1;
        std::array<double, 3> color_sum{};
        int color_n = 1;
        int created_at = 0;
    };

    /// Per-pixel descriptor clusters accumulated over the training frames.
    class TrainingState {
    public:
        TrainingState(int width, int height, LssParams params, double train_threshold = 1.0);

        int width() const noexcept { return m_width; }
        int height() const noexcept { return m_height; }
        int frames_seen() const noexcept { return m_frames_seen; }
        const LssParams& params() const noexcept { return m_params; }
        double train_threshold() const noexcept { return m_train_threshold; }

        const std::vector<ClusterEntry>& clusters(int x, int y) const noexcept {
            return m_clusters[static_cast<std::size_t>(y) * m_width + x];
        }
        double mean_cluster_count() const noexcept;

        /// Matches every pixel descriptor of `frame` against the nearest existing cluster.
        void update(const Frame& frame);
        /// Same as update() with precomputed descriptors of `frame`.
        void update(const Frame& frame, const DescriptorGrid& descriptors);

    private:
        int m_width;
        int m_height;
        LssParams m_params;
        double m_train_threshold;
        int m_frames_seen = 0;
        std::vector<std::vector<ClusterEntry>> m_clusters;
    };

    /// Winning descriptor and mean color of every pixel.
    class BackgroundModel {
    public:
        BackgroundModel(int width, int height, LssParams params);

        int width() const noexcept { return m_descriptors.width(); }
        int height() const noexcept { return m_descriptors.height(); }
        const LssParams& params() const noexcept { return m_params; }

        const DescriptorGrid& descriptors() const noexcept { return m_descriptors; }
        DescriptorGrid& descriptors() noexcept { return m_descriptors; }

        std::span<const std::uint8_t, 3> color(int x, int y) const noexcept {
            return std::span<const std::uint8_t, 3>(m_colors.data() + index(x, y) * 3, 3);
        }
        std::span<std::uint8_t, 3> color(int x, int y) noexcept {
            return std::span<std::uint8_t, 3>(m_colors.data() + index(x, y) * 3, 3);
        }
        const std::vector<std::uint8_t>& colors() const noexcept { return m_colors; }

        bool operator==(const BackgroundModel&) const = default;

    private:
        std::size_t index(int x, int y) const noexcept { return static_cast<std::size_t>(y) * width() + x; }

        LssParams m_params;
        DescriptorGrid m_descriptors;
        std::vector<std::uint8_t> m_colors;
    };

    TrainingState train_update(TrainingState state, const Frame& frame);

    /// Highest count wins, ties go to the earliest created cluster. Throws StateError before any frame.
    BackgroundModel finalize(const TrainingState& state);

    /// Binary model file, little-endian, see README for the layout.
    void save_model(const BackgroundModel& m, const std::filesystem::path& path);
    BackgroundModel load_model(const std::filesystem::path& path);

} // namespace lssbg
