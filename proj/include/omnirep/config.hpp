#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "omnirep/fitness.hpp"
#include "omnirep/genome.hpp"

namespace omnirep {

/// How the per-representative pairing scores collapse into one fitness value.
enum class Aggregate { Mean, Best, Worst };

std::string_view to_string(Aggregate a);
Aggregate parse_aggregate(std::string_view name);

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    SetupKind setup = SetupKind::Circles;
    int generations = 50000;
    int rep_pop_size = 20;
    int interp_pop_size = 10;
    int tournament_size = 4;
    double p_mut_rep = 0.3;
    double p_mut_interp = 0.3;
    int n_representatives = 4;
    int n_elites = 2;
    int interp_evolve_every = 3;
    int palette_size = 4;
    GenomeLimits limits;
    std::uint64_t seed = 1;
    int snapshot_every = 250;
    Aggregate aggregate = Aggregate::Mean;
    ErrorSpace error_space = ErrorSpace::Rgb;
    /// Evaluation worker threads; 0 picks the hardware concurrency. Never affects results.
    int threads = 0;

    void validate() const;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// The published parameter set for a setup (only the generation count differs per setup).
RunConfig default_config(SetupKind setup);

/// Ordered key/value view of a config, also the on-disk format: one `key = value` per line,
/// `#` starts a comment. Canvas width/height are not part of it; they come from the target image.
std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& cfg);

/// Applies overrides on top of `cfg`. Unknown keys and malformed values throw ConfigError.
void apply_key_values(RunConfig& cfg, const std::map<std::string, std::string>& kv);

std::map<std::string, std::string> parse_key_values(std::string_view text);
std::string format_key_values(const RunConfig& cfg);

/// Reads a key/value config file; a `setup` entry selects that setup's defaults first.
RunConfig load_config_file(const std::filesystem::path& path, SetupKind fallback_setup);
void save_config_file(const RunConfig& cfg, const std::filesystem::path& path);

}  // namespace omnirep
