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

#include "lssbg/model.hpp"

#include "lssbg/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>
#include <string_view>

namespace lssbg {

    namespace {

        constexpr std::string_view model_magic = "LSSBGM";
        constexpr std::uint8_t model_version = 1;

        class ByteWriter {
        public:
            void raw(std::string_view s) { m_buf.insert(m_buf.end(), s.begin(), s.end()); }
            void u8(std::uint8_t v) { m_buf.push_back(static_cast<char>(v)); }
            void u16(std::uint16_t v) { le(v, 2); }
            void u32(std::uint32_t v) { le(v, 4); }
            void f32(float v) { le(std::bit_cast<std::uint32_t>(v), 4); }
            void f64(double v) { le(std::bit_cast<std::uint64_t>(v), 8); }
            const std::string& bytes() const noexcept { return m_buf; }

        private:
            void le(std::uint64_t v, int n) {
                for(int i = 0; i < n; ++i)
                    m_buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
            }
            std::string m_buf;
        };

        class ByteReader {
        public:
            explicit ByteReader(std::string data) : m_buf(std::move(data)) {}

            std::string_view raw(std::size_t n) {
                need(n);
                std::string_view s(m_buf.data() + m_pos, n);
                m_pos += n;
                return s;
            }
            std::uint8_t u8() { return static_cast<std::uint8_t>(le(1)); }
            std::uint16_t u16() { return static_cast<std::uint16_t>(le(2)); }
            std::uint32_t u32() { return static_cast<std::uint32_t>(le(4)); }
            float f32() { return std::bit_cast<float>(static_cast<std::uint32_t>(le(4))); }
            double f64() { return std::bit_cast<double>(le(8)); }
            std::size_t remaining() const noexcept { return m_buf.size() - m_pos; }

        private:
            void need(std::size_t n) const {
                if(remaining() < n)
                    throw FormatError("model file is truncated");
            }
            std::uint64_t le(int n) {
                need(static_cast<std::size_t>(n));
                std::uint64_t v = 0;
                for(int i = 0; i < n; ++i)
                    v |= std::uint64_t(static_cast<unsigned char>(m_buf[m_pos + i])) << (8 * i);
                m_pos += static_cast<std::size_t>(n);
                return v;
            }
            std::string m_buf;
            std::size_t m_pos = 0;
        };

    } // namespace

    TrainingState::TrainingState(int width, int height, LssParams params, double train_threshold) :
            m_width(width), m_height(height), m_params(params), m_train_threshold(train_threshold) {
        if(width < 1 || height < 1)
            throw ArgumentError("training state dimensions must be positive");
        if(!(train_threshold >= 0.0))
            throw ArgumentError("train_threshold must be >= 0");
        m_params.validate();
        m_clusters.resize(static_cast<std::size_t>(width) * height);
    }

    double TrainingState::mean_cluster_count() const noexcept {
        if(m_clusters.empty())
            return 0.0;
        std::size_t total = 0;
        for(const auto& c : m_clusters)
            total += c.size();
        return double(total) / double(m_clusters.size());
    }

    void TrainingState::update(const Frame& frame) {
        if(frame.width() != m_width || frame.height() != m_height)
            throw ArgumentError("training frame is " + std::to_string(frame.width()) + "x" +
                                std::to_string(frame.height()) + ", expected " + std::to_string(m_width) + "x" +
                                std::to_string(m_height));
        update(frame, compute_descriptor_grid(frame, m_params));
    }

    void TrainingState::update(const Frame& frame, const DescriptorGrid& descriptors) {
        if(frame.width() != m_width || frame.height() != m_height || descriptors.width() != m_width ||
           descriptors.height() != m_height)
            throw ArgumentError("training frame dimensions do not match the training state");
        if(descriptors.length() != m_params.descriptor_length())
            throw ArgumentError("descriptor length does not match the training parameters");
        for(int y = 0; y < m_height; ++y) {
            for(int x = 0; x < m_width; ++x) {
                const auto desc = descriptors.at(x, y);
                std::array<double, 3> color{};
                for(int c = 0; c < 3; ++c)
                    color[c] = frame.at(x, y, frame.channels() == 3 ? c : 0);
                auto& list = m_clusters[static_cast<std::size_t>(y) * m_width + x];
                ClusterEntry* nearest = nullptr;
                double best = std::numeric_limits<double>::infinity();
                for(auto& entry : list) {
                    const double d = descriptor_distance(desc, entry.representative);
                    if(d < best) {
                        best = d;
                        nearest = &entry;
                    }
                }
                if(nearest != nullptr && best < m_train_threshold) {
                    ++nearest->count;
                    ++nearest->color_n;
                    for(int c = 0; c < 3; ++c)
                        nearest->color_sum[c] += color[c];
                }
                else {
                    ClusterEntry entry;
                    entry.representative.assign(desc.begin(), desc.end());
                    entry.color_sum = color;
                    entry.created_at = m_frames_seen;
                    list.push_back(std::move(entry));
                }
            }
        }
        ++m_frames_seen;
    }

    TrainingState train_update(TrainingState state, const Frame& frame) {
        state.update(frame);
        return state;
    }

    BackgroundModel::BackgroundModel(int width, int height, LssParams params) :
            m_params(params), m_descriptors(width, height, params.descriptor_length()),
            m_colors(static_cast<std::size_t>(width) * height * 3, 0) {
        m_params.validate();
    }

    BackgroundModel finalize(const TrainingState& state) {
        if(state.frames_seen() == 0)
            throw StateError("cannot finalize a background model before any training frame");
        BackgroundModel model(state.width(), state.height(), state.params());
        for(int y = 0; y < state.height(); ++y) {
            for(int x = 0; x < state.width(); ++x) {
                const auto& list = state.clusters(x, y);
                // clusters are appended in creation order, so the first maximum is the earliest
                const auto winner = std::max_element(list.begin(), list.end(), [](const auto& a, const auto& b) {
                    return a.count < b.count || (a.count == b.count && a.created_at > b.created_at);
                });
                std::copy(winner->representative.begin(), winner->representative.end(),
                          model.descriptors().at(x, y).begin());
                auto color = model.color(x, y);
                for(int c = 0; c < 3; ++c)
                    color[c] = static_cast<std::uint8_t>(
                            std::clamp(std::lround(winner->color_sum[c] / winner->color_n), 0L, 255L));
            }
        }
        return model;
    }

    void save_model(const BackgroundModel& m, const std::filesystem::path& path) {
        const auto& p = m.params();
        ByteWriter w;
        w.raw(model_magic);
        w.u8(model_version);
        w.u32(static_cast<std::uint32_t>(m.width()));
        w.u32(static_cast<std::uint32_t>(m.height()));
        w.u16(static_cast<std::uint16_t>(p.descriptor_length()));
        w.u16(static_cast<std::uint16_t>(p.patch_size));
        w.u16(static_cast<std::uint16_t>(p.region_radius));
        w.u16(static_cast<std::uint16_t>(p.angle_bins));
        w.u16(static_cast<std::uint16_t>(p.radial_bins));
        w.f64(p.noise_variance);
        w.f64(p.component_scale);
        for(float v : m.descriptors().data())
            w.f32(v);
        w.raw(std::string_view(reinterpret_cast<const char*>(m.colors().data()), m.colors().size()));

        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if(!out)
            throw IoError("cannot open '" + path.string() + "' for writing");
        out.write(w.bytes().data(), static_cast<std::streamsize>(w.bytes().size()));
        if(!out)
            throw IoError("failed writing '" + path.string() + "'");
    }

    BackgroundModel load_model(const std::filesystem::path& path) {
        std::ifstream in(path, std::ios::binary);
        if(!in)
            throw IoError("cannot open model file '" + path.string() + "'");
        ByteReader r(std::string(std::istreambuf_iterator<char>(in), {}));

        if(r.remaining() < model_magic.size() || r.raw(model_magic.size()) != model_magic)
            throw FormatError("'" + path.string() + "' is not a background model file (bad magic)");
        if(const auto version = r.u8(); version != model_version)
            throw FormatError("unsupported model file version " + std::to_string(version));
        const std::uint32_t width = r.u32(), height = r.u32();
        const std::uint16_t length = r.u16();
        LssParams p;
        p.patch_size = r.u16();
        p.region_radius = r.u16();
        p.angle_bins = r.u16();
        p.radial_bins = r.u16();
        p.noise_variance = r.f64();
        p.component_scale = r.f64();
        if(width == 0 || height == 0 || width > (1u << 20) || height > (1u << 20))
            throw FormatError("model file has invalid dimensions");
        if(length != p.descriptor_length())
            throw FormatError("model descriptor length does not match its parameters");
        try {
            p.validate();
        }
        catch(const ArgumentError& e) {
            throw FormatError(std::string("model file holds invalid parameters: ") + e.what());
        }
        const std::size_t npix = std::size_t(width) * height;
        if(r.remaining() != npix * length * 4 + npix * 3)
            throw FormatError("model file size does not match its header");

        BackgroundModel m(static_cast<int>(width), static_cast<int>(height), p);
        for(float& v : m.descriptors().data())
            v = r.f32();
        for(int y = 0; y < m.height(); ++y) {
            for(int x = 0; x < m.width(); ++x) {
                auto c = m.color(x, y);
                for(int k = 0; k < 3; ++k)
                    c[k] = r.u8();
            }
        }
        return m;
    }

} // namespace lssbg
