#ifndef SCRIPTA_FORMATS_HPP
#define SCRIPTA_FORMATS_HPP

#include "scripta/cluster.hpp"
#include "scripta/eval.hpp"
#include "scripta/synth.hpp"
#include "scripta/texture.hpp"

#include <map>
#include <string>
#include <vector>

namespace scripta {

// Coded text: JSON {"doc_id":..., "codes":[...]} and plain digit string.
void write_coded_json(const CodedText& text, const std::string& path);
CodedText read_coded_json(const std::string& path);
void write_coded_digits(const CodedText& text, const std::string& path);

// Feature matrix CSV: header doc_id,f1..fK, one row per document.
void write_feature_csv(const std::vector<FeatureVector>& features, const std::string& path);
std::vector<FeatureVector> read_feature_csv(const std::string& path);

// Clustering output: {"assignments": {doc_id: cluster}, "meta": {...}}.
struct ClusterRunMeta {
    std::uint64_t seed = 0;
    int k = 0;
    int h = 0;
    double alpha = 1.0;
    int threshold = 0;
    std::vector<double> fitness_trace;
};
void write_cluster_json(const std::vector<std::string>& doc_ids, const Partition& partition,
                        const ClusterRunMeta& meta, const std::string& path);
std::map<std::string, int> read_cluster_json(const std::string& path);

// Ground truth CSV: doc_id,class with a header line.
void write_truth_csv(const GroundTruth& truth, const std::string& path);
GroundTruth read_truth_csv(const std::string& path);

// Evaluation reports.
void write_report_json(const std::vector<EvalReport>& reports, const std::string& path);
std::string format_report_table(const std::vector<EvalReport>& reports);
void write_report_metrics_csv(const std::vector<EvalReport>& reports, const std::string& path);

// Synthetic corpus spec from JSON.
SynthSpec read_synth_spec(const std::string& path);

} // namespace scripta

#endif
