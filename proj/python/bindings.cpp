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
#include "lssbg/eval.hpp"
#include "lssbg/imaging.hpp"
#include "lssbg/lss.hpp"
#include "lssbg/model.hpp"
#include "lssbg/postprocess.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

namespace py = pybind11;
using namespace lssbg;

namespace {

    using u8_array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
    using bool_array = py::array_t<bool, py::array::c_style | py::array::forcecast>;

    // (H, W) or (H, W, 1|3) uint8 array to Frame.
    Frame to_frame(const u8_array& a) {
        if(a.ndim() != 2 && a.ndim() != 3)
            throw ArgumentError("frames must be (H, W) or (H, W, C) arrays");
        const int channels = a.ndim() == 2 ? 1 : int(a.shape(2));
        if(channels != 1 && channels != 3)
            throw ArgumentError("frames must have 1 or 3 channels");
        const int h = int(a.shape(0)), w = int(a.shape(1));
        return Frame(w, h, channels, std::vector<std::uint8_t>(a.data(), a.data() + a.size()));
    }

    py::array_t<std::uint8_t> from_frame(const Frame& f) {
        std::vector<py::ssize_t> shape = {f.height(), f.width()};
        if(f.channels() == 3)
            shape.push_back(3);
        py::array_t<std::uint8_t> out(shape);
        std::memcpy(out.mutable_data(), f.pixels().data(), f.pixels().size());
        return out;
    }

    BinaryMask to_mask(const bool_array& a) {
        if(a.ndim() != 2)
            throw ArgumentError("masks must be 2-D arrays");
        BinaryMask m(int(a.shape(1)), int(a.shape(0)));
        for(py::ssize_t i = 0; i < a.size(); ++i)
            m.bits()[std::size_t(i)] = a.data()[i] ? 1 : 0;
        return m;
    }

    py::array_t<bool> from_mask(const BinaryMask& m) {
        py::array_t<bool> out({py::ssize_t(m.height()), py::ssize_t(m.width())});
        bool* dst = out.mutable_data();
        for(std::size_t i = 0; i < m.bits().size(); ++i)
            dst[i] = m.bits()[i] != 0;
        return out;
    }

    py::array_t<float> from_grid(const DescriptorGrid& g) {
        py::array_t<float> out({py::ssize_t(g.height()), py::ssize_t(g.width()), py::ssize_t(g.length())});
        std::memcpy(out.mutable_data(), g.data().data(), g.data().size() * sizeof(float));
        return out;
    }

    StructuringElement element(const std::string& shape, int radius) {
        if(shape == "disk")
            return StructuringElement::disk(radius);
        if(shape == "square")
            return StructuringElement::square(radius);
        throw ArgumentError("shape must be 'disk' or 'square'");
    }

    py::dict metric_dict(const MetricSet& m) {
        py::dict d;
        for(Metric k : all_metrics)
            d[py::str(std::string(metric_name(k)))] = m.get(k);
        return d;
    }

} // namespace

PYBIND11_MODULE(_lssbg, m) {
    m.doc() = "Local self-similarity background subtraction";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<ArgumentError>(m, "ArgumentError", error.ptr());
    py::register_exception<StateError>(m, "StateError", error.ptr());

    py::class_<LssParams>(m, "LssParams")
            .def(py::init([](int patch_size, int region_radius, int angle_bins, int radial_bins,
                             std::optional<double> noise_variance, double component_scale) {
                     LssParams p{patch_size, region_radius, angle_bins, radial_bins,
                                 noise_variance.value_or(LssParams::default_noise_variance(patch_size)),
                                 component_scale};
                     p.validate();
                     return p;
                 }),
                 py::arg("patch_size") = 5, py::arg("region_radius") = 20, py::arg("angle_bins") = 20,
                 py::arg("radial_bins") = 4, py::arg("noise_variance") = py::none(),
                 py::arg("component_scale") = 255.0)
            .def_readwrite("patch_size", &LssParams::patch_size)
            .def_readwrite("region_radius", &LssParams::region_radius)
            .def_readwrite("angle_bins", &LssParams::angle_bins)
            .def_readwrite("radial_bins", &LssParams::radial_bins)
            .def_readwrite("noise_variance", &LssParams::noise_variance)
            .def_readwrite("component_scale", &LssParams::component_scale)
            .def_property_readonly("descriptor_length", &LssParams::descriptor_length)
            .def("__eq__", [](const LssParams& a, const LssParams& b) { return a == b; });

    py::class_<DetectorConfig>(m, "DetectorConfig")
            .def(py::init([](double t) { return DetectorConfig{t}; }), py::arg("detect_threshold") = 30.0)
            .def_readwrite("detect_threshold", &DetectorConfig::detect_threshold);

    py::class_<PostprocessConfig>(m, "PostprocessConfig")
            .def(py::init([](int close_radius, int erode_radius, int border_dilate_radius, double color_threshold,
                             int final_erode_radius, int final_close_radius) {
                     PostprocessConfig c{close_radius, erode_radius, border_dilate_radius, color_threshold,
                                         final_erode_radius, final_close_radius};
                     c.validate();
                     return c;
                 }),
                 py::arg("close_radius") = 5, py::arg("erode_radius") = 20, py::arg("border_dilate_radius") = 20,
                 py::arg("color_threshold") = 30.0, py::arg("final_erode_radius") = 1,
                 py::arg("final_close_radius") = 2)
            .def_readwrite("close_radius", &PostprocessConfig::close_radius)
            .def_readwrite("erode_radius", &PostprocessConfig::erode_radius)
            .def_readwrite("border_dilate_radius", &PostprocessConfig::border_dilate_radius)
            .def_readwrite("color_threshold", &PostprocessConfig::color_threshold)
            .def_readwrite("final_erode_radius", &PostprocessConfig::final_erode_radius)
            .def_readwrite("final_close_radius", &PostprocessConfig::final_close_radius);

    m.def("padding_size", &padding_size, py::arg("region_radius"), py::arg("patch_size"));
    m.def(
            "descriptors",
            [](const u8_array& frame, const LssParams& params) {
                const Frame f = to_frame(frame);
                DescriptorGrid g;
                {
                    py::gil_scoped_release release;
                    g = compute_descriptor_grid(f, params);
                }
                return from_grid(g);
            },
            py::arg("frame"), py::arg("params") = LssParams{},
            "Dense descriptors of a frame as a (H, W, length) float32 array.");
    m.def("to_grayscale", [](const u8_array& frame) { return from_frame(to_grayscale(to_frame(frame))); });

    py::class_<BackgroundModel>(m, "BackgroundModel")
            .def_property_readonly("width", &BackgroundModel::width)
            .def_property_readonly("height", &BackgroundModel::height)
            .def_property_readonly("params", &BackgroundModel::params)
            .def_property_readonly("descriptors", [](const BackgroundModel& bm) { return from_grid(bm.descriptors()); })
            .def_property_readonly("colors",
                                   [](const BackgroundModel& bm) {
                                       py::array_t<std::uint8_t> out({py::ssize_t(bm.height()), py::ssize_t(bm.width()),
                                                                      py::ssize_t(3)});
                                       std::memcpy(out.mutable_data(), bm.colors().data(), bm.colors().size());
                                       return out;
                                   })
            .def("__eq__", [](const BackgroundModel& a, const BackgroundModel& b) { return a == b; })
            .def("save", [](const BackgroundModel& bm, const std::filesystem::path& p) { save_model(bm, p); });

    py::class_<TrainingState>(m, "TrainingState")
            .def(py::init<int, int, LssParams, double>(), py::arg("width"), py::arg("height"),
                 py::arg("params") = LssParams{}, py::arg("train_threshold") = 1.0)
            .def_property_readonly("frames_seen", &TrainingState::frames_seen)
            .def_property_readonly("mean_cluster_count", &TrainingState::mean_cluster_count)
            .def("cluster_count", [](const TrainingState& s, int x, int y) { return s.clusters(x, y).size(); })
            .def("update", [](TrainingState& s, const u8_array& frame) {
                const Frame f = to_frame(frame);
                py::gil_scoped_release release;
                s.update(f);
            })
            .def("finalize", [](const TrainingState& s) { return finalize(s); });

    m.def("load_model", [](const std::filesystem::path& p) { return load_model(p); });

    m.def(
            "detect_raw",
            [](const u8_array& frame, const BackgroundModel& model, const DetectorConfig& cfg) {
                const Frame f = to_frame(frame);
                BinaryMask raw;
                {
                    py::gil_scoped_release release;
                    raw = detect_raw(f, model, cfg);
                }
                return from_mask(raw);
            },
            py::arg("frame"), py::arg("model"), py::arg("config") = DetectorConfig{});
    m.def(
            "postprocess",
            [](const bool_array& raw, const u8_array& frame, const BackgroundModel& model,
               const PostprocessConfig& cfg) { return from_mask(postprocess(to_mask(raw), to_frame(frame), model, cfg)); },
            py::arg("raw"), py::arg("frame"), py::arg("model"), py::arg("config") = PostprocessConfig{});

    m.def(
            "erode",
            [](const bool_array& mask, int radius, const std::string& shape) {
                return from_mask(erode(to_mask(mask), element(shape, radius)));
            },
            py::arg("mask"), py::arg("radius"), py::arg("shape") = "disk");
    m.def(
            "dilate",
            [](const bool_array& mask, int radius, const std::string& shape) {
                return from_mask(dilate(to_mask(mask), element(shape, radius)));
            },
            py::arg("mask"), py::arg("radius"), py::arg("shape") = "disk");
    m.def(
            "close",
            [](const bool_array& mask, int radius, const std::string& shape) {
                return from_mask(close(to_mask(mask), element(shape, radius)));
            },
            py::arg("mask"), py::arg("radius"), py::arg("shape") = "disk");

    m.def(
            "confusion",
            [](const bool_array& mask, const u8_array& groundtruth) {
                const ConfusionCounts c = confusion(to_mask(mask), decode_labels(to_frame(groundtruth)));
                py::dict d;
                d["tp"] = c.tp;
                d["fp"] = c.fp;
                d["fn"] = c.fn;
                d["tn"] = c.tn;
                return d;
            },
            py::arg("mask"), py::arg("groundtruth"),
            "Counts against a ground-truth image with gray levels 0, 50, 85, 170 and 255.");
    m.def(
            "metrics",
            [](std::uint64_t tp, std::uint64_t fp, std::uint64_t fn, std::uint64_t tn) {
                return metric_dict(metrics({tp, fp, fn, tn}));
            },
            py::arg("tp"), py::arg("fp"), py::arg("fn"), py::arg("tn"));
    m.def(
            "rank_methods",
            [](const std::map<std::string, std::map<std::string, double>>& table) {
                std::vector<MethodScores> scores;
                for(const auto& [name, values] : table)
                    scores.push_back({name, values});
                py::list out;
                for(const auto& e : rank_methods(scores).entries)
                    out.append(py::make_tuple(e.method, e.average_rank));
                return out;
            },
            py::arg("table"), "Maps method -> {metric: value}; returns [(method, average_rank)] best first.");
}
