#ifndef SCRIPTA_CONFIG_HPP
#define SCRIPTA_CONFIG_HPP

#include "scripta/cluster.hpp"
#include "scripta/coder.hpp"
#include "scripta/image.hpp"
#include "scripta/texture.hpp"

#include <cstdint>
#include <string>

namespace scripta {

/// All pipeline tunables. Sectioned key-value text format; every key is
/// optional and defaults apply.
struct PipelineConfig {
    BinarizeOptions binarize;
    CoderParams coder;
    FeatureMode feature_mode = FeatureMode::Concat;
    ClusterConfig cluster;
    int runs = 1;
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string out_dir = "out";
};

/// Parses the config text. Unknown keys and out-of-range values are
/// rejected with the offending key named. Empty input yields defaults.
PipelineConfig parse_config_text(const std::string& text);
PipelineConfig parse_config(const std::string& path);

/// Serialization; parse(serialize(c)) == c.
std::string serialize_config(const PipelineConfig& config);

void validate_config(const PipelineConfig& config);

} // namespace scripta

#endif
