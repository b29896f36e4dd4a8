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

#include "lssbg/error.hpp"
#include "lssbg/eval.hpp"

#include <json.hpp>

#include <cstdio>
#include <map>
#include <sstream>

namespace lssbg {

    namespace {

        using nlohmann::json;

        json metrics_json(const MetricSet& m) {
            json j = json::object();
            for(Metric k : all_metrics)
                j[std::string(metric_name(k))] = m.get(k);
            return j;
        }

        MetricSet metrics_from_json(const json& j) {
            MetricSet m;
            for(Metric k : all_metrics)
                m.get(k) = j.at(std::string(metric_name(k))).get<double>();
            return m;
        }

        std::string num(double v) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.10g", v);
            return buf;
        }

        // Quotes a CSV field when it contains a separator, a quote or a line break.
        std::string csv_field(const std::string& s) {
            if(s.find_first_of(",\"\n\r") == std::string::npos)
                return s;
            std::string out = "\"";
            for(char c : s) {
                if(c == '"')
                    out += '"';
                out += c;
            }
            return out + "\"";
        }

    } // namespace

    EvaluationReport build_report(std::string method, std::vector<VideoReport> videos) {
        EvaluationReport r;
        r.method = std::move(method);
        r.videos = std::move(videos);
        std::map<std::string, std::vector<VideoReport>> by_category;
        for(const auto& v : r.videos)
            by_category[v.category].push_back(v);
        for(const auto& [name, members] : by_category)
            r.categories.push_back(aggregate_category(members, name));
        if(!r.categories.empty()) {
            for(Metric k : all_metrics) {
                double sum = 0.0;
                for(const auto& c : r.categories)
                    sum += c.metrics.get(k);
                r.overall.get(k) = sum / double(r.categories.size());
            }
        }
        return r;
    }

    std::string report_to_json(const EvaluationReport& r) {
        json j;
        j["method"] = r.method;
        j["videos"] = json::array();
        for(const auto& v : r.videos) {
            j["videos"].push_back({{"name", v.name},
                                   {"category", v.category},
                                   {"frames", v.frames},
                                   {"counts", {{"tp", v.counts.tp}, {"fp", v.counts.fp}, {"fn", v.counts.fn}, {"tn", v.counts.tn}}},
                                   {"metrics", metrics_json(v.metrics)}});
        }
        j["categories"] = json::array();
        for(const auto& c : r.categories)
            j["categories"].push_back({{"name", c.name}, {"videos", c.videos}, {"metrics", metrics_json(c.metrics)}});
        j["overall"] = metrics_json(r.overall);
        return j.dump(2) + "\n";
    }

    std::string report_to_csv(const EvaluationReport& r) {
        std::ostringstream out;
        out << "method,category,video,frames,tp,fp,fn,tn";
        for(Metric k : all_metrics)
            out << ',' << metric_name(k);
        out << '\n';
        for(const auto& v : r.videos) {
            out << csv_field(r.method) << ',' << csv_field(v.category) << ',' << csv_field(v.name) << ',' << v.frames
                << ',' << v.counts.tp << ',' << v.counts.fp << ',' << v.counts.fn << ',' << v.counts.tn;
            for(Metric k : all_metrics)
                out << ',' << num(v.metrics.get(k));
            out << '\n';
        }
        return out.str();
    }

    EvaluationReport report_from_json(std::string_view text) {
        try {
            const json j = json::parse(text);
            EvaluationReport r;
            r.method = j.at("method").get<std::string>();
            for(const auto& v : j.at("videos")) {
                VideoReport vr;
                vr.name = v.at("name").get<std::string>();
                vr.category = v.at("category").get<std::string>();
                vr.frames = v.at("frames").get<int>();
                const auto& c = v.at("counts");
                vr.counts = {c.at("tp").get<std::uint64_t>(), c.at("fp").get<std::uint64_t>(),
                             c.at("fn").get<std::uint64_t>(), c.at("tn").get<std::uint64_t>()};
                vr.metrics = metrics_from_json(v.at("metrics"));
                r.videos.push_back(std::move(vr));
            }
            for(const auto& c : j.at("categories"))
                r.categories.push_back({c.at("name").get<std::string>(), c.at("videos").get<int>(),
                                        metrics_from_json(c.at("metrics"))});
            r.overall = metrics_from_json(j.at("overall"));
            return r;
        }
        catch(const json::exception& e) {
            throw FormatError(std::string("malformed report: ") + e.what());
        }
    }

    MethodScores method_scores(const EvaluationReport& r, const std::string& category) {
        const MetricSet* source = &r.overall;
        if(!category.empty()) {
            source = nullptr;
            for(const auto& c : r.categories)
                if(c.name == category)
                    source = &c.metrics;
            if(source == nullptr)
                throw ArgumentError("report of '" + r.method + "' has no category '" + category + "'");
        }
        MethodScores s;
        s.method = r.method;
        for(Metric k : all_metrics)
            s.metrics[std::string(metric_name(k))] = source->get(k);
        return s;
    }

    std::string ranking_to_csv(const MethodRanking& ranking) {
        std::ostringstream out;
        out << "position,method";
        for(Metric k : all_metrics)
            out << ",rank_" << metric_name(k);
        out << ",average_rank\n";
        int position = 1;
        for(const auto& e : ranking.entries) {
            out << position++ << ',' << csv_field(e.method);
            for(double rank : e.ranks)
                out << ',' << num(rank);
            out << ',' << num(e.average_rank) << '\n';
        }
        return out.str();
    }

} // namespace lssbg
