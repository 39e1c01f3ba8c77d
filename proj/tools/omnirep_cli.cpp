// omnirep: coevolve a painting of an inspiration image from chunks, polygons or circles.
//
//   omnirep --image in.png --setup circles --generations 2000 --seed 7 --out-dir out
//
// Writes target.png, frame_NNNNNN.png snapshots, fitness_log.csv, trajectory.gif,
// run_config and checkpoint.txt into the output directory.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "omnirep/config.hpp"
#include "omnirep/engine.hpp"
#include "omnirep/imaging.hpp"

namespace fs = std::filesystem;
using namespace omnirep;

namespace {

struct Options {
    std::string image;
    std::string setup;
    std::string out_dir = "out";
    std::optional<int> generations;
    std::optional<std::uint64_t> seed;
    std::optional<int> snapshot_every;
    std::optional<int> colors;
    std::optional<int> threads;
    std::string config_path;
    std::string resume_path;
    int frame_delay = 50;
    bool quiet = false;
};

std::string frame_name(int generation) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%06d.png", generation);
    return buf;
}

void write_text(const fs::path& path, const std::string& text, bool append) {
    std::ofstream out(path, append ? std::ios::app | std::ios::binary : std::ios::binary);
    out << text;
    out.close();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

RunConfig resolve_config(const Options& opt) {
    const SetupKind setup = parse_setup(opt.setup);
    RunConfig cfg = opt.config_path.empty() ? default_config(setup) : load_config_file(opt.config_path, setup);
    cfg.setup = setup;
    if (opt.generations) cfg.generations = *opt.generations;
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.snapshot_every) cfg.snapshot_every = *opt.snapshot_every;
    if (opt.colors) cfg.palette_size = *opt.colors;
    if (opt.threads) cfg.threads = *opt.threads;
    return cfg;
}

std::vector<PalettedImage> frames_on_disk(const fs::path& dir) {
    std::vector<fs::path> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("frame_", 0) == 0 && entry.path().extension() == ".png") paths.push_back(entry.path());
    }
    std::sort(paths.begin(), paths.end());
    std::vector<PalettedImage> frames;
    for (const auto& p : paths) frames.push_back(load_paletted_png(p));
    return frames;
}

int run_cli(const Options& opt) {
    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    RunConfig cfg = resolve_config(opt);
    EvolutionState state;
    const bool resuming = !opt.resume_path.empty();
    if (resuming) {
        // the checkpoint's configuration wins, apart from run length and presentation knobs
        Checkpoint cp = load_checkpoint(opt.resume_path);
        if (cp.config.setup != cfg.setup) throw std::runtime_error("checkpoint setup differs from --setup");
        const RunConfig overrides = cfg;
        cfg = cp.config;
        if (opt.generations) cfg.generations = overrides.generations;
        if (opt.snapshot_every) cfg.snapshot_every = overrides.snapshot_every;
        if (opt.threads) cfg.threads = overrides.threads;
        state = std::move(cp.state);
    }
    const PalettedImage target = quantize(load_image(opt.image), cfg.palette_size);
    if (resuming && (cfg.limits.width != target.width || cfg.limits.height != target.height))
        throw std::runtime_error("checkpoint canvas differs from the image");
    save_png(target, out_dir / "target.png");

    cfg = bind_to_target(cfg, target);
    if (!resuming) state = initialize(cfg, target);
    save_config_file(cfg, out_dir / "run_config");

    const auto report = [&](const GenerationRecord& r) {
        if (opt.quiet) return;
        if (r.generation % cfg.snapshot_every == 0 || r.generation == cfg.generations - 1)
            std::cerr << "generation " << r.generation << "  best pair MAE " << r.best_pair_fitness << "\n";
    };
    const RunResult result = resume(std::move(state), cfg, target, report);

    for (const auto& f : result.frames) save_png(f.image, out_dir / frame_name(f.generation));
    const fs::path log_path = out_dir / "fitness_log.csv";
    const bool append = resuming && fs::exists(log_path);
    write_text(log_path, fitness_log_csv(result.log, !append), append);
    if (resuming) {
        const auto frames = frames_on_disk(out_dir);
        assemble_gif(frames, out_dir / "trajectory.gif", opt.frame_delay);
    } else {
        std::vector<PalettedImage> frames;
        for (const auto& f : result.frames) frames.push_back(f.image);
        if (!frames.empty()) assemble_gif(frames, out_dir / "trajectory.gif", opt.frame_delay);
    }
    save_checkpoint(result.final_state, cfg, out_dir / "checkpoint.txt");
    if (!opt.quiet && result.final_state.best)
        std::cerr << "done: best pair MAE " << result.final_state.best->fitness << " after "
                  << result.final_state.generation << " generations\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cooperative coevolution of representations and interpreters that paint an inspiration image"};
    app.failure_message(CLI::FailureMessage::help);
    Options opt;
    app.add_option("--image", opt.image, "Inspiration image (PNG)")->required()->check(CLI::ExistingFile);
    app.add_option("--setup", opt.setup, "Shape setup")->required()->check(CLI::IsMember({"chunks", "polygons", "circles"}));
    app.add_option("--out-dir", opt.out_dir, "Output directory")->capture_default_str();
    app.add_option("--generations", opt.generations, "Number of generations")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Random seed");
    app.add_option("--snapshot-every", opt.snapshot_every, "Frame cadence in generations")->check(CLI::PositiveNumber);
    app.add_option("--colors", opt.colors, "Palette size of the quantized target")->check(CLI::Range(1, 256));
    app.add_option("--threads", opt.threads, "Evaluation threads (0 = all cores)")->check(CLI::NonNegativeNumber);
    app.add_option("--config", opt.config_path, "key = value configuration file; flags override it")
        ->check(CLI::ExistingFile);
    app.add_option("--resume", opt.resume_path, "Continue from a checkpoint.txt")->check(CLI::ExistingFile);
    app.add_option("--frame-delay", opt.frame_delay, "GIF frame delay in centiseconds")
        ->capture_default_str()
        ->check(CLI::Range(0, 65535));
    app.add_flag("--quiet", opt.quiet, "Suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    try {
        return run_cli(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
