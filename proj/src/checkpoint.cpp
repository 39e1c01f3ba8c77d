// Checkpoint file layout (plain text, line oriented):
//
//   omnirep-checkpoint 1
//   [config]            key = value lines, same keys as a run_config file,
//                       plus width and height of the canvas
//   [state]
//   generation = <completed generations>
//   rng = <mt19937_64 state words>
//   best_fitness = <shortest round-trip decimal> | none
//   best_rep = <genome>        (only when best_fitness is not none)
//   best_interp = <genome>
//   [representations]   one "<i> = <genome>" line per member, then the same for
//   [interpreters]      interpreters and for the two representative sets
//   [rep_representatives]
//   [interp_representatives]
//   end
//
// A genome is "<role> <setup> <count> <gene> <gene> ...", role being rep or interp. A gene
// is a single integer (chunk start) or a comma pair: x,y for positions,
// length,color for chunks, sides,color for polygons, color,radius for circles.

#include <charconv>
#include <fstream>
#include <sstream>

#include "omnirep/engine.hpp"

namespace omnirep {

namespace {

constexpr std::string_view kMagic = "omnirep-checkpoint 1";

class CheckpointError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

void put_gene(std::string& out, std::int32_t v) { out += std::to_string(v); }
void put_gene(std::string& out, const Point& p) { out += std::to_string(p.x) + "," + std::to_string(p.y); }
void put_gene(std::string& out, const ChunkGene& g) { out += std::to_string(g.length) + "," + std::to_string(g.color); }
void put_gene(std::string& out, const PolygonGene& g) { out += std::to_string(g.sides) + "," + std::to_string(g.color); }
void put_gene(std::string& out, const CircleGene& g) { out += std::to_string(g.color) + "," + std::to_string(g.radius); }

template <class Variant>
std::string format_genome(const Variant& v, std::string_view role) {
    return std::visit(
        [&](const auto& g) {
            std::string out = std::string(role) + " " + std::string(to_string(g.kind)) + " " + std::to_string(g.genes.size());
            for (const auto& gene : g.genes) {
                out += ' ';
                put_gene(out, gene);
            }
            return out;
        },
        v);
}

std::int32_t to_int(std::string_view s) {
    std::int32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw CheckpointError("checkpoint: malformed integer '" + std::string(s) + "'");
    return v;
}

std::pair<std::int32_t, std::int32_t> to_pair(std::string_view s) {
    const auto comma = s.find(',');
    if (comma == std::string_view::npos) throw CheckpointError("checkpoint: expected a,b pair, got '" + std::string(s) + "'");
    return {to_int(s.substr(0, comma)), to_int(s.substr(comma + 1))};
}

void read_gene(std::string_view tok, std::int32_t& g) { g = to_int(tok); }
void read_gene(std::string_view tok, Point& g) { std::tie(g.x, g.y) = to_pair(tok); }
void read_gene(std::string_view tok, ChunkGene& g) { std::tie(g.length, g.color) = to_pair(tok); }
void read_gene(std::string_view tok, PolygonGene& g) { std::tie(g.sides, g.color) = to_pair(tok); }
void read_gene(std::string_view tok, CircleGene& g) { std::tie(g.color, g.radius) = to_pair(tok); }

template <class G>
G read_genes(std::istringstream& in, std::size_t count) {
    G g;
    g.genes.resize(count);
    std::string tok;
    for (auto& gene : g.genes) {
        if (!(in >> tok)) throw CheckpointError("checkpoint: genome shorter than its declared gene count");
        read_gene(tok, gene);
    }
    if (in >> tok) throw CheckpointError("checkpoint: genome longer than its declared gene count");
    return g;
}

template <class Variant>
Variant parse_genome(const std::string& text, std::string_view role) {
    std::istringstream in(text);
    std::string got_role, setup;
    std::size_t count = 0;
    if (!(in >> got_role >> setup >> count)) throw CheckpointError("checkpoint: malformed genome header");
    if (got_role != role) throw CheckpointError("checkpoint: expected a " + std::string(role) + " genome, got " + got_role);
    const SetupKind kind = parse_setup(setup);
    switch (kind) {
        case SetupKind::Chunks: return read_genes<std::variant_alternative_t<0, Variant>>(in, count);
        case SetupKind::Polygons: return read_genes<std::variant_alternative_t<1, Variant>>(in, count);
        case SetupKind::Circles: return read_genes<std::variant_alternative_t<2, Variant>>(in, count);
    }
    throw CheckpointError("checkpoint: unknown setup");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw CheckpointError("checkpoint: malformed number '" + s + "'");
    return v;
}

using Section = std::vector<std::pair<std::string, std::string>>;

std::pair<std::string, std::string> split_kv(const std::string& line) {
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw CheckpointError("checkpoint: expected 'key = value', got '" + line + "'");
    return {line.substr(0, eq), line.substr(eq + 3)};
}

}  // namespace

namespace {

// Genomes must match the setup, ranges and population sizes of the configuration.
void check_state_genomes(const EvolutionState& s, const RunConfig& cfg) {
    const int colors = cfg.palette_size;
    auto check_rep = [&](const Representation& g) {
        if (kind_of(g) != cfg.setup) throw CheckpointError("checkpoint: genome setup differs from config");
        validate(g, cfg.limits);
    };
    auto check_interp = [&](const Interpreter& g) {
        if (kind_of(g) != cfg.setup) throw CheckpointError("checkpoint: genome setup differs from config");
        validate(g, cfg.limits, colors);
    };
    for (const auto& g : s.reps.members) check_rep(g);
    for (const auto& g : s.rep_representatives) check_rep(g);
    for (const auto& g : s.interps.members) check_interp(g);
    for (const auto& g : s.interp_representatives) check_interp(g);
    if (s.best) {
        check_rep(s.best->rep);
        check_interp(s.best->interp);
    }
    if (s.reps.size() != std::size_t(cfg.rep_pop_size) || s.interps.size() != std::size_t(cfg.interp_pop_size))
        throw CheckpointError("checkpoint: population sizes differ from config");
}

void check_state(const EvolutionState& s, const RunConfig& cfg) {
    try {
        check_state_genomes(s, cfg);
    } catch (const GenomeError& e) {
        throw CheckpointError(std::string("checkpoint: state does not fit the configuration: ") + e.what());
    }
}

}  // namespace

std::string format_checkpoint(const EvolutionState& s, const RunConfig& cfg) {
    cfg.validate();
    check_state(s, cfg);
    std::string out(kMagic);
    out += "\n[config]\n" + format_key_values(cfg);
    out += "width = " + std::to_string(cfg.limits.width) + "\n";
    out += "height = " + std::to_string(cfg.limits.height) + "\n";
    out += "[state]\ngeneration = " + std::to_string(s.generation) + "\n";
    out += "rng = " + s.rng.serialize() + "\n";
    if (s.best) {
        out += "best_fitness = " + format_double(s.best->fitness) + "\n";
        out += "best_rep = " + format_genome(s.best->rep, "rep") + "\n";
        out += "best_interp = " + format_genome(s.best->interp, "interp") + "\n";
    } else {
        out += "best_fitness = none\n";
    }
    auto section = [&](std::string_view name, const auto& genomes, std::string_view role) {
        out += "[" + std::string(name) + "]\n";
        for (std::size_t i = 0; i < genomes.size(); ++i)
            out += std::to_string(i) + " = " + format_genome(genomes[i], role) + "\n";
    };
    section("representations", s.reps.members, "rep");
    section("interpreters", s.interps.members, "interp");
    section("rep_representatives", s.rep_representatives, "rep");
    section("interp_representatives", s.interp_representatives, "interp");
    out += "end\n";
    return out;
}

namespace {

Checkpoint parse_checkpoint_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kMagic) throw CheckpointError("not an omnirep checkpoint (bad header line)");

    std::map<std::string, Section> sections;
    std::string current;
    bool ended = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == "end") {
            ended = true;
            break;
        }
        if (line.front() == '[' && line.back() == ']') {
            current = line.substr(1, line.size() - 2);
            if (sections.count(current)) throw CheckpointError("checkpoint: duplicate section [" + current + "]");
            sections[current];
            continue;
        }
        if (current.empty()) throw CheckpointError("checkpoint: data outside any section");
        sections[current].push_back(split_kv(line));
    }
    if (!ended) throw CheckpointError("checkpoint: truncated (missing end marker)");
    for (const char* name : {"config", "state", "representations", "interpreters", "rep_representatives",
                             "interp_representatives"})
        if (!sections.count(name)) throw CheckpointError(std::string("checkpoint: missing section [") + name + "]");

    Checkpoint cp;
    std::map<std::string, std::string> config_kv(sections["config"].begin(), sections["config"].end());
    int width = 0, height = 0;
    if (config_kv.count("width") && config_kv.count("height")) {
        width = to_int(config_kv["width"]);
        height = to_int(config_kv["height"]);
        config_kv.erase("width");
        config_kv.erase("height");
    } else {
        throw CheckpointError("checkpoint: config lacks canvas width/height");
    }
    const auto setup_it = config_kv.find("setup");
    if (setup_it == config_kv.end()) throw CheckpointError("checkpoint: config lacks setup");
    cp.config = default_config(parse_setup(setup_it->second));
    apply_key_values(cp.config, config_kv);
    cp.config.limits.width = width;
    cp.config.limits.height = height;
    cp.config.validate();

    std::map<std::string, std::string> st(sections["state"].begin(), sections["state"].end());
    auto need = [&](const char* key) -> const std::string& {
        const auto it = st.find(key);
        if (it == st.end()) throw CheckpointError(std::string("checkpoint: state lacks ") + key);
        return it->second;
    };
    cp.state.generation = to_int(need("generation"));
    cp.state.rng = Rng::deserialize(need("rng"));
    if (need("best_fitness") != "none") {
        cp.state.best = BestPair{parse_genome<Representation>(need("best_rep"), "rep"),
                                 parse_genome<Interpreter>(need("best_interp"), "interp"),
                                 parse_double(need("best_fitness"))};
    }

    auto genomes = [&]<class Variant>(const char* name, std::string_view role, std::vector<Variant>& out) {
        const auto& sec = sections[name];
        for (std::size_t i = 0; i < sec.size(); ++i) {
            if (sec[i].first != std::to_string(i))
                throw CheckpointError(std::string("checkpoint: [") + name + "] entries out of order");
            out.push_back(parse_genome<Variant>(sec[i].second, role));
        }
    };
    genomes("representations", "rep", cp.state.reps.members);
    genomes("interpreters", "interp", cp.state.interps.members);
    genomes("rep_representatives", "rep", cp.state.rep_representatives);
    genomes("interp_representatives", "interp", cp.state.interp_representatives);

    check_state(cp.state, cp.config);
    return cp;
}

}  // namespace

Checkpoint parse_checkpoint(std::string_view text) {
    try {
        return parse_checkpoint_text(text);
    } catch (const CheckpointError&) {
        throw;
    } catch (const std::exception& e) {
        throw CheckpointError(std::string("checkpoint: ") + e.what());
    }
}

void save_checkpoint(const EvolutionState& state, const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CheckpointError("cannot open " + path.string() + " for writing");
    out << format_checkpoint(state, cfg);
    out.close();
    if (!out) throw CheckpointError("failed writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CheckpointError("cannot read checkpoint " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_checkpoint(ss.str());
}

}  // namespace omnirep
