#include "scripta/formats.hpp"
#include "scripta/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace scripta {

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

void dump_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << j.dump(2) << "\n";
}

// Shortest decimal round-trip formatting, stable across runs.
std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_coded_json(const CodedText& text, const std::string& path) {
    dump_json(json{{"doc_id", text.doc_id}, {"codes", text.codes}}, path);
}

CodedText read_coded_json(const std::string& path) {
    json j = load_json(path);
    CodedText text;
    try {
        text.doc_id = j.at("doc_id").get<std::string>();
        text.codes = j.at("codes").get<std::vector<int>>();
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    for (int c : text.codes)
        if (c < 0 || c > 3) throw FormatError(path + ": code outside {0..3}");
    return text;
}

void write_coded_digits(const CodedText& text, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    for (int c : text.codes) out << c;
    out << "\n";
}

void write_feature_csv(const std::vector<FeatureVector>& features, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    std::size_t dims = features.empty() ? 0 : features.front().values.size();
    out << "doc_id";
    for (std::size_t d = 1; d <= dims; ++d) out << ",f" << d;
    out << "\n";
    for (const auto& fv : features) {
        out << fv.doc_id;
        for (double v : fv.values) out << "," << fmt_double(v);
        out << "\n";
    }
}

std::vector<FeatureVector> read_feature_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty CSV");
    std::size_t dims = std::count(line.begin(), line.end(), ',');
    std::vector<FeatureVector> features;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        FeatureVector fv;
        if (!std::getline(ss, field, ',')) throw FormatError(path + ": bad CSV row");
        fv.doc_id = field;
        while (std::getline(ss, field, ',')) {
            try {
                fv.values.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw FormatError(path + ": non-numeric feature value '" + field + "'");
            }
        }
        if (fv.values.size() != dims)
            throw FormatError(path + ": row '" + fv.doc_id + "' has " +
                              std::to_string(fv.values.size()) + " values, header names " +
                              std::to_string(dims));
        features.push_back(std::move(fv));
    }
    return features;
}

void write_cluster_json(const std::vector<std::string>& doc_ids, const Partition& partition,
                        const ClusterRunMeta& meta, const std::string& path) {
    if (doc_ids.size() != partition.labels.size())
        throw DataError("write_cluster_json: doc_id/label count mismatch");
    json assignments = json::object();
    for (std::size_t i = 0; i < doc_ids.size(); ++i)
        assignments[doc_ids[i]] = partition.labels[i];
    json j{{"assignments", assignments},
           {"meta",
            {{"seed", meta.seed},
             {"k", meta.k},
             {"h", meta.h},
             {"alpha", meta.alpha},
             {"threshold", meta.threshold},
             {"fitness_trace", meta.fitness_trace}}}};
    dump_json(j, path);
}

std::map<std::string, int> read_cluster_json(const std::string& path) {
    json j = load_json(path);
    std::map<std::string, int> out;
    try {
        for (const auto& [id, label] : j.at("assignments").items())
            out[id] = label.get<int>();
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    return out;
}

void write_truth_csv(const GroundTruth& truth, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "doc_id,class\n";
    for (const auto& [id, cls] : truth) out << id << "," << cls << "\n";
}

GroundTruth read_truth_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty CSV");
    GroundTruth truth;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) throw FormatError(path + ": bad truth row '" + line + "'");
        truth[line.substr(0, comma)] = line.substr(comma + 1);
    }
    return truth;
}

namespace {

json report_to_json(const EvalReport& r) {
    json per_class = json::object();
    for (std::size_t c = 0; c < r.class_names.size(); ++c) {
        per_class[r.class_names[c]] = {
            {"precision", {{"mean", r.precision[c].mean}, {"std", r.precision[c].stddev}}},
            {"recall", {{"mean", r.recall[c].mean}, {"std", r.recall[c].stddev}}},
            {"f_measure", {{"mean", r.f_measure[c].mean}, {"std", r.f_measure[c].stddev}}},
        };
    }
    return json{{"method", r.method},
                {"runs", r.runs},
                {"nmi", {{"mean", r.nmi.mean}, {"std", r.nmi.stddev}}},
                {"per_class", per_class}};
}

} // namespace

void write_report_json(const std::vector<EvalReport>& reports, const std::string& path) {
    json j = json::array();
    for (const auto& r : reports) j.push_back(report_to_json(r));
    dump_json(j, path);
}

std::string format_report_table(const std::vector<EvalReport>& reports) {
    std::ostringstream out;
    char buf[128];
    for (const auto& r : reports) {
        out << "method: " << r.method << "  (runs: " << r.runs << ")\n";
        std::snprintf(buf, sizeof(buf), "  %-16s %8s %8s %8s %8s\n", "class", "P", "R", "F", "std(F)");
        out << buf;
        for (std::size_t c = 0; c < r.class_names.size(); ++c) {
            std::snprintf(buf, sizeof(buf), "  %-16s %8.4f %8.4f %8.4f %8.4f\n",
                          r.class_names[c].c_str(), r.precision[c].mean, r.recall[c].mean,
                          r.f_measure[c].mean, r.f_measure[c].stddev);
            out << buf;
        }
        std::snprintf(buf, sizeof(buf), "  NMI: %.4f (std %.4f)\n\n", r.nmi.mean, r.nmi.stddev);
        out << buf;
    }
    return out.str();
}

void write_report_metrics_csv(const std::vector<EvalReport>& reports, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    out << "method,metric,class,mean,std\n";
    for (const auto& r : reports) {
        out << r.method << ",nmi,," << fmt_double(r.nmi.mean) << "," << fmt_double(r.nmi.stddev)
            << "\n";
        for (std::size_t c = 0; c < r.class_names.size(); ++c) {
            out << r.method << ",precision," << r.class_names[c] << ","
                << fmt_double(r.precision[c].mean) << "," << fmt_double(r.precision[c].stddev)
                << "\n";
            out << r.method << ",recall," << r.class_names[c] << ","
                << fmt_double(r.recall[c].mean) << "," << fmt_double(r.recall[c].stddev) << "\n";
            out << r.method << ",f_measure," << r.class_names[c] << ","
                << fmt_double(r.f_measure[c].mean) << "," << fmt_double(r.f_measure[c].stddev)
                << "\n";
        }
    }
}

SynthSpec read_synth_spec(const std::string& path) {
    json j = load_json(path);
    SynthSpec spec;
    try {
        for (const auto& pj : j.at("profiles")) {
            ScriptProfile prof;
            prof.name = pj.at("name").get<std::string>();
            auto probs = pj.at("class_probs").get<std::vector<double>>();
            if (probs.size() != 4) throw FormatError(path + ": class_probs needs 4 entries");
            std::copy(probs.begin(), probs.end(), prof.class_probs.begin());
            if (pj.contains("transition")) {
                std::array<std::array<double, 4>, 4> t;
                auto rows = pj.at("transition").get<std::vector<std::vector<double>>>();
                if (rows.size() != 4) throw FormatError(path + ": transition needs 4 rows");
                for (int r = 0; r < 4; ++r) {
                    if (rows[r].size() != 4)
                        throw FormatError(path + ": transition rows need 4 entries");
                    std::copy(rows[r].begin(), rows[r].end(), t[r].begin());
                }
                prof.transition = t;
            }
            spec.profiles.push_back(std::move(prof));
        }
        spec.docs_per_profile = j.at("docs_per_profile").get<std::vector<int>>();
        if (j.contains("seq_len_min")) spec.seq_len_min = j.at("seq_len_min").get<int>();
        if (j.contains("seq_len_max")) spec.seq_len_max = j.at("seq_len_max").get<int>();
        if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("layout")) {
            const auto& lj = j.at("layout");
            PageLayout& l = spec.layout;
            if (lj.contains("glyph_width")) l.glyph_width = lj.at("glyph_width").get<int>();
            if (lj.contains("glyph_gap")) l.glyph_gap = lj.at("glyph_gap").get<int>();
            if (lj.contains("band_height")) l.band_height = lj.at("band_height").get<int>();
            if (lj.contains("ascender_extent"))
                l.ascender_extent = lj.at("ascender_extent").get<int>();
            if (lj.contains("descender_extent"))
                l.descender_extent = lj.at("descender_extent").get<int>();
            if (lj.contains("line_gap")) l.line_gap = lj.at("line_gap").get<int>();
            if (lj.contains("margin")) l.margin = lj.at("margin").get<int>();
            if (lj.contains("page_width")) l.page_width = lj.at("page_width").get<int>();
        }
    } catch (const json::exception& e) {
        throw FormatError(path + ": " + e.what());
    }
    validate_spec(spec);
    return spec;
}

} // namespace scripta
