#include "omnirep/engine.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "omnirep/fitness.hpp"
#include "omnirep/render.hpp"

namespace omnirep {

namespace {

// Runs fn(task, worker) for every task in [0, n). Each task writes only its own output
// slot, so the result is independent of scheduling.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    const std::size_t workers = std::min<std::size_t>(n, std::size_t(std::max(1, threads)));
    if (workers <= 1) {
        for (std::size_t t = 0; t < n; ++t) fn(t, 0);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t t = next++; t < n; t = next++) fn(t, w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : int(hw);
}

template <class Genome>
std::vector<Genome> sample_distinct(const std::vector<Genome>& pop, std::size_t n, Rng& rng) {
    std::vector<std::size_t> idx(pop.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<Genome> out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + std::size_t(rng.below(idx.size() - i));
        std::swap(idx[i], idx[j]);
        out.push_back(pop[idx[i]]);
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
}

int effective_palette(const RunConfig& cfg, const PalettedImage& target) {
    const int k = int(target.palette.size());
    if (k > cfg.palette_size)
        throw ConfigError("target palette has " + std::to_string(k) + " colors but the configuration allows " +
                          std::to_string(cfg.palette_size));
    return k;
}

template <class Genome>
void check_population(const Population<Genome>& pop, std::size_t size, const char* what) {
    if (pop.members.size() != size)
        throw EngineError(std::string(what) + " population has " + std::to_string(pop.members.size()) +
                          " members, expected " + std::to_string(size));
}

}  // namespace

double aggregate(std::span<const double> scores, Aggregate how) {
    if (scores.empty()) throw EngineError("no pairing scores to aggregate");
    switch (how) {
        case Aggregate::Best: return *std::min_element(scores.begin(), scores.end());
        case Aggregate::Worst: return *std::max_element(scores.begin(), scores.end());
        case Aggregate::Mean: break;
    }
    // summed in sorted order so the result does not depend on representative order
    std::vector<double> sorted(scores.begin(), scores.end());
    std::sort(sorted.begin(), sorted.end());
    return std::accumulate(sorted.begin(), sorted.end(), 0.0) / double(sorted.size());
}

Evaluation evaluate_individual(const Representation& g, std::span<const Interpreter> reps, const PalettedImage& target,
                               Aggregate how, ErrorSpace space) {
    if (reps.empty()) throw EngineError("evaluation needs at least one representative");
    Evaluation ev;
    PalettedImage canvas;
    canvas.width = target.width;
    canvas.height = target.height;
    for (const auto& partner : reps) {
        render_into(g, partner, target.palette, canvas);
        ev.pairings.push_back(mae(canvas, target, space));
    }
    ev.fitness = aggregate(ev.pairings, how);
    return ev;
}

Evaluation evaluate_individual(const Interpreter& g, std::span<const Representation> reps, const PalettedImage& target,
                               Aggregate how, ErrorSpace space) {
    if (reps.empty()) throw EngineError("evaluation needs at least one representative");
    Evaluation ev;
    PalettedImage canvas;
    canvas.width = target.width;
    canvas.height = target.height;
    for (const auto& partner : reps) {
        render_into(partner, g, target.palette, canvas);
        ev.pairings.push_back(mae(canvas, target, space));
    }
    ev.fitness = aggregate(ev.pairings, how);
    return ev;
}

RunConfig bind_to_target(RunConfig cfg, const PalettedImage& target) {
    target.validate();
    cfg.limits.width = target.width;
    cfg.limits.height = target.height;
    cfg.validate();
    effective_palette(cfg, target);
    return cfg;
}

EvolutionState initialize(const RunConfig& raw_cfg, const PalettedImage& target) {
    const RunConfig cfg = bind_to_target(raw_cfg, target);
    const int colors = effective_palette(cfg, target);
    EvolutionState s;
    s.rng = Rng(cfg.seed);
    for (int i = 0; i < cfg.rep_pop_size; ++i)
        s.reps.members.push_back(random_representation(cfg.setup, cfg.limits, s.rng));
    for (int i = 0; i < cfg.interp_pop_size; ++i)
        s.interps.members.push_back(random_interpreter(cfg.setup, cfg.limits, colors, s.rng));
    s.interp_representatives = sample_distinct(s.interps.members, std::size_t(cfg.n_representatives), s.rng);
    s.rep_representatives = sample_distinct(s.reps.members, std::size_t(cfg.n_representatives), s.rng);
    return s;
}

GenerationRecord step_generation(EvolutionState& s, const RunConfig& raw_cfg, const PalettedImage& target) {
    const RunConfig cfg = bind_to_target(raw_cfg, target);
    const int colors = effective_palette(cfg, target);
    check_population(s.reps, std::size_t(cfg.rep_pop_size), "representation");
    check_population(s.interps, std::size_t(cfg.interp_pop_size), "interpreter");
    if (s.rep_representatives.empty() || s.interp_representatives.empty())
        throw EngineError("state has no representatives");

    // Every (individual, representative) pairing is an independent render + MAE.
    const std::size_t nr = s.reps.size(), ni = s.interps.size();
    const std::size_t kr = s.interp_representatives.size(), ki = s.rep_representatives.size();
    const std::size_t rep_tasks = nr * kr;
    std::vector<double> scores(rep_tasks + ni * ki);
    const int workers = resolve_threads(cfg.threads);
    std::vector<PalettedImage> canvases(std::size_t(std::max(1, workers)));
    for (auto& c : canvases) {
        c.width = target.width;
        c.height = target.height;
    }
    parallel_for(scores.size(), workers, [&](std::size_t t, std::size_t w) {
        auto& canvas = canvases[w];
        if (t < rep_tasks) {
            render_into(s.reps.members[t / kr], s.interp_representatives[t % kr], target.palette, canvas);
        } else {
            const std::size_t u = t - rep_tasks;
            render_into(s.rep_representatives[u % ki], s.interps.members[u / ki], target.palette, canvas);
        }
        scores[t] = mae(canvas, target, cfg.error_space);
    });

    s.reps.fitness.assign(nr, 0.0);
    s.interps.fitness.assign(ni, 0.0);
    std::optional<BestPair> best = std::move(s.best);
    auto consider = [&](double score, const Representation& r, const Interpreter& i) {
        if (!best || score < best->fitness) best = BestPair{r, i, score};
    };
    for (std::size_t i = 0; i < nr; ++i) {
        std::span<const double> row(scores.data() + i * kr, kr);
        s.reps.fitness[i] = aggregate(row, cfg.aggregate);
        for (std::size_t j = 0; j < kr; ++j) consider(row[j], s.reps.members[i], s.interp_representatives[j]);
    }
    for (std::size_t i = 0; i < ni; ++i) {
        std::span<const double> row(scores.data() + rep_tasks + i * ki, ki);
        s.interps.fitness[i] = aggregate(row, cfg.aggregate);
        for (std::size_t j = 0; j < ki; ++j) consider(row[j], s.rep_representatives[j], s.interps.members[i]);
    }
    s.best = std::move(best);

    GenerationRecord rec;
    rec.generation = s.generation;
    rec.best_rep_fitness = *std::min_element(s.reps.fitness.begin(), s.reps.fitness.end());
    rec.mean_rep_fitness = mean_of(s.reps.fitness);
    rec.best_interp_fitness = *std::min_element(s.interps.fitness.begin(), s.interps.fitness.end());
    rec.mean_interp_fitness = mean_of(s.interps.fitness);
    rec.best_pair_fitness = s.best->fitness;

    s.interp_representatives = select_representatives(s.interps, std::size_t(cfg.n_representatives));
    s.rep_representatives = select_representatives(s.reps, std::size_t(cfg.n_representatives));

    const BreedParams rep_params{cfg.n_elites, cfg.tournament_size, cfg.p_mut_rep, &cfg.limits, colors};
    s.reps = breed_population(s.reps, rep_params, s.rng);
    rec.interpreters_bred = (s.generation + 1) % cfg.interp_evolve_every == 0;
    if (rec.interpreters_bred) {
        const BreedParams interp_params{cfg.n_elites, cfg.tournament_size, cfg.p_mut_interp, &cfg.limits, colors};
        s.interps = breed_population(s.interps, interp_params, s.rng);
    } else {
        s.interps.fitness.clear();
    }
    ++s.generation;
    return rec;
}

PalettedImage render_best(const EvolutionState& state, const PalettedImage& target) {
    if (!state.best) throw EngineError("no pairing has been evaluated yet");
    return render(state.best->rep, state.best->interp, target.width, target.height, target.palette);
}

RunResult resume(EvolutionState state, const RunConfig& raw_cfg, const PalettedImage& target,
                 const GenerationCallback& on_generation) {
    const RunConfig cfg = bind_to_target(raw_cfg, target);
    RunResult result;
    while (state.generation < cfg.generations) {
        auto rec = step_generation(state, cfg, target);
        if (rec.generation % cfg.snapshot_every == 0 || rec.generation == cfg.generations - 1)
            result.frames.push_back({rec.generation, render_best(state, target)});
        result.log.push_back(rec);
        if (on_generation) on_generation(rec);
    }
    result.final_state = std::move(state);
    return result;
}

RunResult run(const RunConfig& cfg, const PalettedImage& target, const GenerationCallback& on_generation) {
    return resume(initialize(cfg, target), cfg, target, on_generation);
}

std::string fitness_log_csv(std::span<const GenerationRecord> log, bool header) {
    std::string out;
    if (header)
        out += "generation,best_rep_fitness,mean_rep_fitness,best_interp_fitness,mean_interp_fitness,best_pair_fitness\n";
    char line[256];
    for (const auto& r : log) {
        std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.generation, r.best_rep_fitness,
                      r.mean_rep_fitness, r.best_interp_fitness, r.mean_interp_fitness, r.best_pair_fitness);
        out += line;
    }
    return out;
}

}  // namespace omnirep
