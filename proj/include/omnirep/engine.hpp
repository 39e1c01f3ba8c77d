#pragma once

#include <algorithm>
#include <filesystem>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "omnirep/config.hpp"
#include "omnirep/genome.hpp"
#include "omnirep/image.hpp"
#include "omnirep/random.hpp"

namespace omnirep {

class EngineError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Genomes plus the fitness of each, once evaluated (lower is better).
template <class Genome>
struct Population {
    std::vector<Genome> members;
    std::vector<double> fitness;

    std::size_t size() const { return members.size(); }
    bool evaluated() const { return !members.empty() && fitness.size() == members.size(); }

    friend bool operator==(const Population&, const Population&) = default;
};

/// The single best (representation, interpreter) pairing scored so far.
struct BestPair {
    Representation rep;
    Interpreter interp;
    double fitness = std::numeric_limits<double>::infinity();

    friend bool operator==(const BestPair&, const BestPair&) = default;
};

struct EvolutionState {
    int generation = 0;
    Population<Representation> reps;
    Population<Interpreter> interps;
    std::vector<Representation> rep_representatives;
    std::vector<Interpreter> interp_representatives;
    Rng rng;
    std::optional<BestPair> best;

    friend bool operator==(const EvolutionState&, const EvolutionState&) = default;
};

/// One row of the fitness log.
struct GenerationRecord {
    int generation = 0;
    double best_rep_fitness = 0;
    double mean_rep_fitness = 0;
    double best_interp_fitness = 0;
    double mean_interp_fitness = 0;
    double best_pair_fitness = 0;
    bool interpreters_bred = false;
};

struct Snapshot {
    int generation = 0;
    PalettedImage image;
};

struct RunResult {
    std::vector<GenerationRecord> log;
    std::vector<Snapshot> frames;
    EvolutionState final_state;
};

/// Result of scoring one individual against every representative of the other population.
struct Evaluation {
    double fitness = 0;
    std::vector<double> pairings;  ///< one MAE per representative, in order
};

double aggregate(std::span<const double> scores, Aggregate how);

Evaluation evaluate_individual(const Representation& g, std::span<const Interpreter> reps, const PalettedImage& target,
                               Aggregate how = Aggregate::Mean, ErrorSpace space = ErrorSpace::Rgb);
Evaluation evaluate_individual(const Interpreter& g, std::span<const Representation> reps, const PalettedImage& target,
                               Aggregate how = Aggregate::Mean, ErrorSpace space = ErrorSpace::Rgb);

/// Indices of the n fittest individuals, best first; ties go to the lower index.
template <class Genome>
std::vector<std::size_t> rank_fittest(const Population<Genome>& pop, std::size_t n) {
    if (!pop.evaluated()) throw EngineError("population has not been evaluated");
    if (n > pop.size()) throw EngineError("cannot pick more individuals than the population holds");
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop.fitness[a] < pop.fitness[b]; });
    order.resize(n);
    return order;
}

template <class Genome>
std::vector<Genome> select_representatives(const Population<Genome>& pop, std::size_t n) {
    std::vector<Genome> out;
    for (auto i : rank_fittest(pop, n)) out.push_back(pop.members[i]);
    return out;
}

/// k uniform draws with replacement; the lowest fitness wins, ties to the lowest index drawn.
template <class Genome>
std::size_t tournament_select_index(const Population<Genome>& pop, int k, Rng& rng) {
    if (!pop.evaluated()) throw EngineError("population has not been evaluated");
    if (k < 1) throw EngineError("tournament size must be >= 1");
    std::size_t winner = std::size_t(rng.below(pop.size()));
    for (int i = 1; i < k; ++i) {
        const auto c = std::size_t(rng.below(pop.size()));
        if (pop.fitness[c] < pop.fitness[winner] || (pop.fitness[c] == pop.fitness[winner] && c < winner)) winner = c;
    }
    return winner;
}

template <class Genome>
const Genome& tournament_select(const Population<Genome>& pop, int k, Rng& rng) {
    return pop.members[tournament_select_index(pop, k, rng)];
}

/// Parameters that differ between the two populations when breeding.
struct BreedParams {
    int n_elites = 2;
    int tournament_size = 4;
    double p_mut = 0.3;
    const GenomeLimits* limits = nullptr;
    int palette_size = 4;
};

/// Elites first (exact copies, best first), then children of tournament-selected
/// parent pairs: single-point crossover on every pair, then per-child mutation. The
/// second child of the last pair is dropped when the population size requires it.
template <class Genome>
Population<Genome> breed_population(const Population<Genome>& pop, const BreedParams& p, Rng& rng) {
    if (p.limits == nullptr) throw EngineError("breeding needs genome limits");
    Population<Genome> next;
    next.members.reserve(pop.size());
    for (auto i : rank_fittest(pop, std::size_t(p.n_elites))) next.members.push_back(pop.members[i]);
    while (next.members.size() < pop.size()) {
        const Genome& a = tournament_select(pop, p.tournament_size, rng);
        const Genome& b = tournament_select(pop, p.tournament_size, rng);
        auto [c1, c2] = crossover(a, b, rng);
        next.members.push_back(mutate(c1, *p.limits, p.palette_size, p.p_mut, rng));
        if (next.members.size() < pop.size())
            next.members.push_back(mutate(c2, *p.limits, p.palette_size, p.p_mut, rng));
    }
    return next;
}

/// Random populations; each side's generation-0 representatives are distinct
/// individuals sampled uniformly from the other population.
EvolutionState initialize(const RunConfig& cfg, const PalettedImage& target);

/// Runs one generation in place: evaluate both populations against the current
/// representatives, refresh the representatives, breed representations, breed
/// interpreters when (generation + 1) is a multiple of interp_evolve_every, advance
/// the counter and track the best pairing. Returns the log row of the generation.
GenerationRecord step_generation(EvolutionState& state, const RunConfig& cfg, const PalettedImage& target);

using GenerationCallback = std::function<void(const GenerationRecord&)>;

/// Fresh run for cfg.generations generations. A frame of the best pairing is taken
/// after every generation divisible by snapshot_every and after the last one.
RunResult run(const RunConfig& cfg, const PalettedImage& target, const GenerationCallback& on_generation = {});

/// Continues `state` until cfg.generations generations have completed.
RunResult resume(EvolutionState state, const RunConfig& cfg, const PalettedImage& target,
                 const GenerationCallback& on_generation = {});

/// Canvas dimensions always come from the target; this returns cfg with them filled in.
RunConfig bind_to_target(RunConfig cfg, const PalettedImage& target);

PalettedImage render_best(const EvolutionState& state, const PalettedImage& target);

// Checkpoints: plain-text snapshot of config, counter, populations, representatives,
// best pairing and RNG state. Loading and continuing reproduces an uninterrupted run.
void save_checkpoint(const EvolutionState& state, const RunConfig& cfg, const std::filesystem::path& path);
std::string format_checkpoint(const EvolutionState& state, const RunConfig& cfg);

struct Checkpoint {
    RunConfig config;
    EvolutionState state;
};
Checkpoint load_checkpoint(const std::filesystem::path& path);
Checkpoint parse_checkpoint(std::string_view text);

std::string fitness_log_csv(std::span<const GenerationRecord> log, bool header = true);

}  // namespace omnirep
