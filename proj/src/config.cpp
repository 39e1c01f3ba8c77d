#include "omnirep/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

namespace omnirep {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    T out{};
    const auto* first = value.data();
    const auto* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || value.empty())
        throw ConfigError("malformed value for '" + key + "': '" + value + "'");
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class Parse>
auto wrap(const std::string& key, const std::string& value, Parse parse) {
    try {
        return parse(value);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bad value for '" + key + "': " + e.what());
    }
}

}  // namespace

std::string_view to_string(Aggregate a) {
    switch (a) {
        case Aggregate::Mean: return "mean";
        case Aggregate::Best: return "best";
        case Aggregate::Worst: return "worst";
    }
    return "unknown";
}

Aggregate parse_aggregate(std::string_view name) {
    if (name == "mean") return Aggregate::Mean;
    if (name == "best") return Aggregate::Best;
    if (name == "worst") return Aggregate::Worst;
    throw std::invalid_argument("unknown aggregate '" + std::string(name) + "' (expected mean, best or worst)");
}

RunConfig default_config(SetupKind setup) {
    RunConfig cfg;
    cfg.setup = setup;
    cfg.generations = setup == SetupKind::Chunks ? 20000 : 50000;
    return cfg;
}

void RunConfig::validate() const {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("invalid configuration: " + what);
    };
    require(generations >= 1, "generations must be >= 1");
    require(rep_pop_size >= 2 && interp_pop_size >= 2, "population sizes must be >= 2");
    require(tournament_size >= 1, "tournament_size must be >= 1");
    require(p_mut_rep >= 0.0 && p_mut_rep <= 1.0 && p_mut_interp >= 0.0 && p_mut_interp <= 1.0,
            "mutation probabilities must lie in [0, 1]");
    require(n_representatives >= 1 && n_representatives <= rep_pop_size && n_representatives <= interp_pop_size,
            "n_representatives must be >= 1 and <= both population sizes");
    require(n_elites >= 0 && n_elites < rep_pop_size && n_elites < interp_pop_size,
            "n_elites must be >= 0 and < both population sizes");
    require(interp_evolve_every >= 1, "interp_evolve_every must be >= 1");
    require(palette_size >= 1 && palette_size <= 256, "palette_size must lie in [1, 256]");
    require(snapshot_every >= 1, "snapshot_every must be >= 1");
    require(threads >= 0, "threads must be >= 0");
    try {
        limits.validate();
    } catch (const GenomeError& e) {
        throw ConfigError(e.what());
    }
    require(representation_length(setup, limits) >= 2 && interpreter_length(setup, limits) >= 2,
            "genomes need at least 2 genes for crossover");
}

std::vector<std::pair<std::string, std::string>> to_key_values(const RunConfig& c) {
    const auto& l = c.limits;
    return {
        {"setup", std::string(to_string(c.setup))},
        {"generations", std::to_string(c.generations)},
        {"seed", std::to_string(c.seed)},
        {"snapshot_every", std::to_string(c.snapshot_every)},
        {"colors", std::to_string(c.palette_size)},
        {"rep_pop_size", std::to_string(c.rep_pop_size)},
        {"interp_pop_size", std::to_string(c.interp_pop_size)},
        {"tournament_size", std::to_string(c.tournament_size)},
        {"p_mut_rep", format_double(c.p_mut_rep)},
        {"p_mut_interp", format_double(c.p_mut_interp)},
        {"n_representatives", std::to_string(c.n_representatives)},
        {"n_elites", std::to_string(c.n_elites)},
        {"interp_evolve_every", std::to_string(c.interp_evolve_every)},
        {"aggregate", std::string(to_string(c.aggregate))},
        {"error_space", std::string(to_string(c.error_space))},
        {"n_chunks", std::to_string(l.n_chunks)},
        {"chunk_len_min", std::to_string(l.chunk_len_min)},
        {"chunk_len_max", std::to_string(l.chunk_len_max)},
        {"n_polygons", std::to_string(l.n_polygons)},
        {"sides_min", std::to_string(l.sides_min)},
        {"sides_max", std::to_string(l.sides_max)},
        {"n_circles", std::to_string(l.n_circles)},
        {"radius_min", std::to_string(l.radius_min)},
        {"radius_max", std::to_string(l.radius_max)},
    };
}

void apply_key_values(RunConfig& c, const std::map<std::string, std::string>& kv) {
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto int_field = [](int& field) -> Setter {
        return [&field](const std::string& k, const std::string& v) { field = parse_number<int>(k, v); };
    };
    auto& l = c.limits;
    const std::map<std::string, Setter> setters = {
        {"setup", [&](const auto& k, const auto& v) { c.setup = wrap(k, v, parse_setup); }},
        {"generations", int_field(c.generations)},
        {"seed", [&](const auto& k, const auto& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
        {"snapshot_every", int_field(c.snapshot_every)},
        {"colors", int_field(c.palette_size)},
        {"rep_pop_size", int_field(c.rep_pop_size)},
        {"interp_pop_size", int_field(c.interp_pop_size)},
        {"tournament_size", int_field(c.tournament_size)},
        {"p_mut_rep", [&](const auto& k, const auto& v) { c.p_mut_rep = parse_number<double>(k, v); }},
        {"p_mut_interp", [&](const auto& k, const auto& v) { c.p_mut_interp = parse_number<double>(k, v); }},
        {"n_representatives", int_field(c.n_representatives)},
        {"n_elites", int_field(c.n_elites)},
        {"interp_evolve_every", int_field(c.interp_evolve_every)},
        {"aggregate", [&](const auto& k, const auto& v) { c.aggregate = wrap(k, v, parse_aggregate); }},
        {"error_space", [&](const auto& k, const auto& v) { c.error_space = wrap(k, v, parse_error_space); }},
        {"threads", int_field(c.threads)},
        {"n_chunks", int_field(l.n_chunks)},
        {"chunk_len_min", int_field(l.chunk_len_min)},
        {"chunk_len_max", int_field(l.chunk_len_max)},
        {"n_polygons", int_field(l.n_polygons)},
        {"sides_min", int_field(l.sides_min)},
        {"sides_max", int_field(l.sides_max)},
        {"n_circles", int_field(l.n_circles)},
        {"radius_min", int_field(l.radius_min)},
        {"radius_max", int_field(l.radius_max)},
    };
    for (const auto& [key, value] : kv) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown configuration key '" + key + "'");
        it->second(key, value);
    }
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, value).second)
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    return kv;
}

std::string format_key_values(const RunConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : to_key_values(cfg)) out += k + " = " + v + "\n";
    return out;
}

RunConfig load_config_file(const std::filesystem::path& path, SetupKind fallback_setup) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    const auto kv = parse_key_values(ss.str());
    SetupKind setup = fallback_setup;
    if (const auto it = kv.find("setup"); it != kv.end()) setup = wrap(it->first, it->second, parse_setup);
    RunConfig cfg = default_config(setup);
    apply_key_values(cfg, kv);
    return cfg;
}

void save_config_file(const RunConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path);
    out << "# resolved run configuration\n" << format_key_values(cfg);
    out.close();
    if (!out) throw ConfigError("failed writing config file " + path.string());
}

}  // namespace omnirep
