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

#include "lssbg/eval.hpp"

#include "lssbg/error.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

namespace lssbg {

    LabelMap::LabelMap(int width, int height, GroundTruthLabel fill) :
            m_width(width), m_height(height) {
        if(width < 1 || height < 1)
            throw ArgumentError("label map dimensions must be positive");
        m_labels.assign(static_cast<std::size_t>(width) * height, fill);
    }

    LabelMap decode_labels(const Frame& gray) {
        if(gray.channels() != 1)
            throw FormatError("ground truth must be a single-channel image");
        LabelMap out(gray.width(), gray.height());
        for(int y = 0; y < gray.height(); ++y) {
            for(int x = 0; x < gray.width(); ++x) {
                const std::uint8_t v = gray.at(x, y);
                switch(v) {
                    case 0:
                    case 50:
                    case 85:
                    case 170:
                    case 255:
                        out.set(x, y, static_cast<GroundTruthLabel>(v));
                        break;
                    default:
                        throw FormatError("invalid ground-truth label " + std::to_string(v) + " at (" +
                                          std::to_string(x) + "," + std::to_string(y) + ")");
                }
            }
        }
        return out;
    }

    LabelMap load_ground_truth(const std::filesystem::path& path) {
        Frame f = load_frame(path);
        if(f.channels() == 3) {
            // some ground-truth files are saved as RGB with equal channels
            for(int y = 0; y < f.height(); ++y)
                for(int x = 0; x < f.width(); ++x)
                    if(f.at(x, y, 0) != f.at(x, y, 1) || f.at(x, y, 1) != f.at(x, y, 2))
                        throw FormatError("ground truth '" + path.string() + "' is not grayscale");
            f = to_grayscale(f);
        }
        try {
            return decode_labels(f);
        }
        catch(const FormatError& e) {
            throw FormatError(path.string() + ": " + e.what());
        }
    }

    ConfusionCounts confusion(const BinaryMask& mask, const LabelMap& gt, const BinaryMask* roi) {
        if(mask.width() != gt.width() || mask.height() != gt.height())
            throw ArgumentError("mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                                " but ground truth is " + std::to_string(gt.width()) + "x" + std::to_string(gt.height()));
        if(roi != nullptr && (roi->width() != gt.width() || roi->height() != gt.height()))
            throw ArgumentError("ROI mask dimensions do not match the ground truth");
        ConfusionCounts c;
        for(int y = 0; y < gt.height(); ++y) {
            for(int x = 0; x < gt.width(); ++x) {
                const GroundTruthLabel l = gt.at(x, y);
                if(l == GroundTruthLabel::OutsideRoi || l == GroundTruthLabel::Unknown)
                    continue;
                if(roi != nullptr && !roi->at(x, y))
                    continue;
                const bool positive = l == GroundTruthLabel::Motion;
                if(mask.at(x, y))
                    ++(positive ? c.tp : c.fp);
                else
                    ++(positive ? c.fn : c.tn);
            }
        }
        return c;
    }

    std::string_view metric_name(Metric m) noexcept {
        switch(m) {
            case Metric::recall: return "recall";
            case Metric::specificity: return "specificity";
            case Metric::fpr: return "fpr";
            case Metric::fnr: return "fnr";
            case Metric::pbc: return "pbc";
            case Metric::precision: return "precision";
            case Metric::fmeasure: return "fmeasure";
        }
        return "";
    }

    bool higher_is_better(Metric m) noexcept {
        return m == Metric::recall || m == Metric::specificity || m == Metric::precision || m == Metric::fmeasure;
    }

    double MetricSet::get(Metric m) const noexcept {
        return const_cast<MetricSet*>(this)->get(m);
    }

    double& MetricSet::get(Metric m) noexcept {
        switch(m) {
            case Metric::recall: return recall;
            case Metric::specificity: return specificity;
            case Metric::fpr: return fpr;
            case Metric::fnr: return fnr;
            case Metric::pbc: return pbc;
            case Metric::precision: return precision;
            case Metric::fmeasure: break;
        }
        return fmeasure;
    }

    namespace {
        double ratio(double num, double den) {
            return den == 0.0 ? 0.0 : num / den;
        }
    } // namespace

    MetricSet metrics(const ConfusionCounts& c) {
        const double tp = double(c.tp), fp = double(c.fp), fn = double(c.fn), tn = double(c.tn);
        MetricSet m;
        m.recall = ratio(tp, tp + fn);
        m.specificity = ratio(tn, tn + fp);
        m.fpr = ratio(fp, fp + tn);
        m.fnr = ratio(fn, tp + fn);
        m.pbc = 100.0 * ratio(fn + fp, tp + fn + fp + tn);
        m.precision = ratio(tp, tp + fp);
        m.fmeasure = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
        return m;
    }

    CategoryReport aggregate_category(std::span<const VideoReport> reports, std::string name) {
        if(reports.empty())
            throw ArgumentError("cannot aggregate an empty list of video reports");
        CategoryReport out;
        out.name = name.empty() ? reports.front().category : std::move(name);
        out.videos = static_cast<int>(reports.size());
        for(Metric m : all_metrics) {
            double sum = 0.0;
            for(const auto& r : reports)
                sum += r.metrics.get(m);
            out.metrics.get(m) = sum / double(reports.size());
        }
        return out;
    }

    MethodRanking rank_methods(std::span<const MethodScores> table) {
        if(table.empty())
            throw ArgumentError("ranking needs at least one method");
        const std::size_t n = table.size();
        std::vector<std::array<double, 7>> values(n);
        for(std::size_t i = 0; i < n; ++i) {
            for(std::size_t k = 0; k < all_metrics.size(); ++k) {
                const auto name = std::string(metric_name(all_metrics[k]));
                const auto it = table[i].metrics.find(name);
                if(it == table[i].metrics.end())
                    throw ArgumentError("method '" + table[i].method + "' has no '" + name + "' value");
                values[i][k] = it->second;
            }
        }

        MethodRanking ranking;
        ranking.entries.resize(n);
        for(std::size_t i = 0; i < n; ++i)
            ranking.entries[i].method = table[i].method;

        std::vector<std::size_t> order(n);
        for(std::size_t k = 0; k < all_metrics.size(); ++k) {
            const bool higher = higher_is_better(all_metrics[k]);
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return higher ? values[a][k] > values[b][k] : values[a][k] < values[b][k];
            });
            for(std::size_t pos = 0; pos < n;) {
                std::size_t end = pos + 1;
                while(end < n && values[order[end]][k] == values[order[pos]][k])
                    ++end;
                // positions pos+1 .. end share their mean
                const double shared = (double(pos + 1) + double(end)) / 2.0;
                for(std::size_t j = pos; j < end; ++j)
                    ranking.entries[order[j]].ranks[k] = shared;
                pos = end;
            }
        }
        for(auto& e : ranking.entries)
            e.average_rank = std::accumulate(e.ranks.begin(), e.ranks.end(), 0.0) / double(e.ranks.size());
        std::sort(ranking.entries.begin(), ranking.entries.end(), [](const MethodRank& a, const MethodRank& b) {
            return a.average_rank < b.average_rank || (a.average_rank == b.average_rank && a.method < b.method);
        });
        return ranking;
    }

} // namespace lssbg
