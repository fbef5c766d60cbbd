#include "scripta/config.hpp"
#include "scripta/errors.hpp"

#include <fstream>
#include <sstream>

namespace scripta {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

int to_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw DataError("config: key '" + key + "' needs an integer, got '" + value + "'");
    }
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw DataError("config: key '" + key + "' needs a number, got '" + value + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t pos;
        std::uint64_t v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw DataError("config: key '" + key + "' needs an unsigned integer, got '" + value + "'");
    }
}

} // namespace

PipelineConfig parse_config_text(const std::string& text) {
    PipelineConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw DataError("config line " + std::to_string(lineno) + ": bad section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "binarize" && section != "coder" && section != "features" &&
                section != "cluster" && section != "run")
                throw DataError("config: unknown section '" + section + "'");
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw DataError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        std::string qual = section.empty() ? key : section + "." + key;

        if (qual == "binarize.method") {
            if (value == "otsu")
                cfg.binarize.method = BinarizeMethod::Otsu;
            else if (value == "fixed")
                cfg.binarize.method = BinarizeMethod::Fixed;
            else
                throw DataError("config: key 'binarize.method' must be otsu or fixed");
        } else if (qual == "binarize.threshold") {
            cfg.binarize.fixed_threshold = to_int(qual, value);
        } else if (qual == "coder.tau") {
            cfg.coder.tau = to_double(qual, value);
        } else if (qual == "coder.min_gap") {
            cfg.coder.min_gap = to_int(qual, value);
        } else if (qual == "coder.min_ink") {
            cfg.coder.min_ink = to_int(qual, value);
        } else if (qual == "coder.min_area") {
            cfg.coder.min_area = to_int(qual, value);
        } else if (qual == "features.mode") {
            cfg.feature_mode = parse_feature_mode(value);
        } else if (qual == "cluster.k") {
            cfg.cluster.k = to_int(qual, value);
        } else if (qual == "cluster.h") {
            cfg.cluster.h = to_int(qual, value);
        } else if (qual == "cluster.alpha") {
            cfg.cluster.alpha = to_double(qual, value);
        } else if (qual == "cluster.T") {
            cfg.cluster.threshold = to_int(qual, value);
        } else if (qual == "cluster.symmetrize") {
            if (value == "union")
                cfg.cluster.symmetrize_union = true;
            else if (value == "intersection")
                cfg.cluster.symmetrize_union = false;
            else
                throw DataError("config: key 'cluster.symmetrize' must be union or intersection");
        } else if (qual == "cluster.population") {
            cfg.cluster.ga.population_size = to_int(qual, value);
        } else if (qual == "cluster.generations") {
            cfg.cluster.ga.generations = to_int(qual, value);
        } else if (qual == "cluster.crossover") {
            cfg.cluster.ga.crossover_rate = to_double(qual, value);
        } else if (qual == "cluster.mutation") {
            cfg.cluster.ga.mutation_rate = to_double(qual, value);
        } else if (qual == "cluster.elite") {
            cfg.cluster.ga.elite_count = to_int(qual, value);
        } else if (qual == "run.seed") {
            cfg.seed = to_u64(qual, value);
        } else if (qual == "run.runs") {
            cfg.runs = to_int(qual, value);
        } else if (qual == "run.jobs") {
            cfg.jobs = to_int(qual, value);
        } else if (qual == "run.out") {
            cfg.out_dir = value;
        } else {
            throw DataError("config: unknown key '" + qual + "'");
        }
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void validate_config(const PipelineConfig& cfg) {
    auto range_error = [](const std::string& key, const std::string& constraint) {
        throw DataError("config: key '" + key + "' out of range (" + constraint + ")");
    };
    if (cfg.binarize.fixed_threshold < 0 || cfg.binarize.fixed_threshold > 256)
        range_error("binarize.threshold", "0..256");
    if (cfg.coder.tau <= 0.0 || cfg.coder.tau > 0.5) range_error("coder.tau", "(0, 0.5]");
    if (cfg.coder.min_gap < 1) range_error("coder.min_gap", ">= 1");
    if (cfg.coder.min_ink < 1) range_error("coder.min_ink", ">= 1");
    if (cfg.coder.min_area < 1) range_error("coder.min_area", ">= 1");
    if (cfg.cluster.k < 1) range_error("cluster.k", ">= 1");
    if (cfg.cluster.h < 1) range_error("cluster.h", ">= 1");
    if (cfg.cluster.alpha <= 0.0) range_error("cluster.alpha", "> 0");
    if (cfg.cluster.threshold < 0) range_error("cluster.T", ">= 0, 0 = auto");
    if (cfg.cluster.ga.population_size < 2) range_error("cluster.population", ">= 2");
    if (cfg.cluster.ga.generations < 1) range_error("cluster.generations", ">= 1");
    if (cfg.cluster.ga.crossover_rate < 0.0 || cfg.cluster.ga.crossover_rate > 1.0)
        range_error("cluster.crossover", "[0, 1]");
    if (cfg.cluster.ga.mutation_rate < 0.0 || cfg.cluster.ga.mutation_rate > 1.0)
        range_error("cluster.mutation", "[0, 1]");
    if (cfg.cluster.ga.elite_count < 0 ||
        cfg.cluster.ga.elite_count >= cfg.cluster.ga.population_size)
        range_error("cluster.elite", "0 <= elite < population");
    if (cfg.runs < 1) range_error("run.runs", ">= 1");
    if (cfg.jobs < 1) range_error("run.jobs", ">= 1");
}

std::string serialize_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "[binarize]\n";
    out << "method = " << (cfg.binarize.method == BinarizeMethod::Otsu ? "otsu" : "fixed") << "\n";
    out << "threshold = " << cfg.binarize.fixed_threshold << "\n";
    out << "\n[coder]\n";
    out << "tau = " << cfg.coder.tau << "\n";
    out << "min_gap = " << cfg.coder.min_gap << "\n";
    out << "min_ink = " << cfg.coder.min_ink << "\n";
    out << "min_area = " << cfg.coder.min_area << "\n";
    out << "\n[features]\n";
    out << "mode = " << feature_mode_name(cfg.feature_mode) << "\n";
    out << "\n[cluster]\n";
    out << "k = " << cfg.cluster.k << "\n";
    out << "h = " << cfg.cluster.h << "\n";
    out << "alpha = " << cfg.cluster.alpha << "\n";
    out << "T = " << cfg.cluster.threshold << "\n";
    out << "symmetrize = " << (cfg.cluster.symmetrize_union ? "union" : "intersection") << "\n";
    out << "population = " << cfg.cluster.ga.population_size << "\n";
    out << "generations = " << cfg.cluster.ga.generations << "\n";
    out << "crossover = " << cfg.cluster.ga.crossover_rate << "\n";
    out << "mutation = " << cfg.cluster.ga.mutation_rate << "\n";
    out << "elite = " << cfg.cluster.ga.elite_count << "\n";
    out << "\n[run]\n";
    out << "seed = " << cfg.seed << "\n";
    out << "runs = " << cfg.runs << "\n";
    out << "jobs = " << cfg.jobs << "\n";
    out << "out = " << cfg.out_dir << "\n";
    return out.str();
}

} // namespace scripta
