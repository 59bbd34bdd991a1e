#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "planarmaps/canonical_paths.hpp"
#include "planarmaps/checks.hpp"
#include "planarmaps/cvs.hpp"
#include "planarmaps/growth.hpp"
#include "planarmaps/spectra.hpp"
#include "planarmaps/tutte.hpp"

#ifndef PLANARMAPS_VERSION
#define PLANARMAPS_VERSION "0.0.0"
#endif

using json = nlohmann::ordered_json;
using namespace planarmaps;

namespace {

struct RunConfig {
    std::string command;
    int n = 3;
    std::uint64_t seed = 1;
    int limit = kDefaultLimit;
    std::string out;
    std::string format = "csv";
    std::string chain = "flip-noroot";
    std::size_t samples = 1000;
    std::string map_text;
    std::string in_path;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A list of records with named columns, written as CSV or JSON.
struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;
    std::vector<std::string> notes;

    void add(std::vector<json> cells) {
        json row = json::object();
        for (std::size_t i = 0; i < columns.size(); ++i) row[columns[i]] = i < cells.size() ? cells[i] : json();
        rows.push_back(std::move(row));
    }
};

std::string cell_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(15) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

std::vector<std::string> header_lines(const RunConfig& cfg) {
    std::ostringstream config;
    config << "command=" << cfg.command << " n=" << cfg.n << " chain=" << cfg.chain << " samples=" << cfg.samples
           << " limit=" << cfg.limit << " format=" << cfg.format;
    return {std::string("planarmaps ") + PLANARMAPS_VERSION, "config: " + config.str(),
            "seed: " + std::to_string(cfg.seed) + " rng: mt19937_64"};
}

void write_output(const RunConfig& cfg, const Table& t) {
    std::ostringstream os;
    if (cfg.format == "json") {
        json doc = json::object();
        json header = json::array();
        for (const auto& h : header_lines(cfg)) header.push_back(h);
        for (const auto& h : t.notes) header.push_back(h);
        doc["header"] = header;
        doc["records"] = t.rows;
        os << doc.dump(2) << "\n";
    } else {
        for (const auto& h : header_lines(cfg)) os << "# " << h << "\n";
        for (const auto& h : t.notes) os << "# " << h << "\n";
        for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
        os << "\n";
        for (const json& row : t.rows) {
            for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << cell_text(row[t.columns[i]]);
            os << "\n";
        }
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
        return;
    }
    std::filesystem::path tmp = cfg.out + ".tmp";
    {
        std::ofstream f(tmp);
        if (!f) throw ConfigError("cannot write " + tmp.string());
        f << os.str();
    }
    std::filesystem::rename(tmp, cfg.out);
}

std::string read_input(const RunConfig& cfg) {
    if (!cfg.map_text.empty()) return cfg.map_text;
    std::ifstream file;
    std::istream* in = &std::cin;
    if (!cfg.in_path.empty() && cfg.in_path != "-") {
        file.open(cfg.in_path);
        if (!file) throw ConfigError("cannot read " + cfg.in_path);
        in = &file;
    }
    std::string line;
    while (std::getline(*in, line))
        if (!line.empty() && line[0] != '#') return line;
    throw ConfigError("no input map");
}

RootedMap parse_map_record(const std::string& text) {
    std::size_t first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text);
        return build_map(j.at("alpha").get<std::vector<int>>(), j.at("sigma").get<std::vector<int>>(),
                         j.at("root").get<int>());
    }
    return decode_map(text);
}

// A map given as "rank:<i>" (in Q_n) or in the map text format.
RootedMap parse_quad_ref(const std::string& text, const RunConfig& cfg) {
    if (text.rfind("rank:", 0) == 0) return quad_space(cfg.n, cfg.limit).unrank(std::stoull(text.substr(5)));
    RootedMap q = parse_map_record(text);
    if (!is_quadrangulation(q)) throw ConfigError("not a quadrangulation: " + text);
    return q;
}

json map_json(const RootedMap& m) {
    return json{{"n", m.num_edges()}, {"alpha", m.alpha}, {"sigma", m.sigma}, {"root", m.root}};
}

Sign parse_sign(const std::string& s) {
    if (s == "+" || s == "plus") return Sign::Plus;
    if (s == "-" || s == "minus") return Sign::Minus;
    if (s == "=" || s == "eq") return Sign::Eq;
    throw ConfigError("sign must be +, - or =");
}

json map_cell(const RunConfig& cfg, const RootedMap& m) {
    return cfg.format == "json" ? map_json(m) : json(encode_map(m));
}

Table map_table(const RunConfig& cfg, const std::vector<RootedMap>& maps) {
    Table t;
    t.columns = {"map"};
    for (const auto& m : maps) t.add({map_cell(cfg, m)});
    return t;
}

std::string hex_hash(const RootedMap& m) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << MapCodeHash{}(canonical_code(m));
    return os.str();
}

int run_verify(const RunConfig& cfg, const std::string& level_name) {
    VerifyLevel level = parse_level(level_name);
    Table t;
    t.columns = {"criterion", "name", "result", "seconds", "detail"};
    t.notes.push_back("level: " + level_name);
    bool ok = true;
    for (const CheckResult& r : run_checks(level, cfg.seed)) {
        ok = ok && r.passed;
        t.add({r.id, r.name, r.passed ? "pass" : "fail", r.seconds, r.detail});
    }
    write_output(cfg, t);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Rooted planar maps, quadrangulations and their flip dynamics"};
    app.set_version_flag("--version", PLANARMAPS_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--n", cfg.n, "Size (edges of maps, faces of quadrangulations)")->check(CLI::Range(0, 64));
    app.add_option("--seed", cfg.seed, "Seed of the mt19937_64 generator");
    app.add_option("--out", cfg.out, "Output file (written atomically); stdout by default");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--limit", cfg.limit, "Largest size allowed for exhaustive enumeration");

    auto add_map_input = [&](CLI::App* sub) {
        sub->add_option("--map", cfg.map_text, "Map in text format (n=.. alpha=.. sigma=.. root=..) or JSON");
        sub->add_option("--in", cfg.in_path, "File holding the map; stdin by default");
    };

    std::string kind = "quads";
    auto* enumerate = app.add_subcommand("enumerate", "List M_n or Q_n sorted by canonical code");
    enumerate->add_option("--kind", kind, "maps or quads")->check(CLI::IsMember({"maps", "quads"}));

    int count_max = 5;
    auto* count = app.add_subcommand("count", "Sizes of M_k, Q_k and LT_k for k <= n");
    count->add_option("--max", count_max, "Largest size");

    bool forward = false, inverse = false;
    auto* tutte = app.add_subcommand("tutte", "Tutte bijection between maps and quadrangulations");
    tutte->add_flag("--forward", forward, "Map to quadrangulation");
    tutte->add_flag("--inverse", inverse, "Quadrangulation to map");
    add_map_input(tutte);

    std::string tree_text;
    int eps = 1, vertex = 0;
    auto* cvs = app.add_subcommand("cvs", "Labelled trees and pointed quadrangulations");
    cvs->add_flag("--forward", forward, "Tree and sign to pointed quadrangulation");
    cvs->add_flag("--inverse", inverse, "Pointed quadrangulation to tree and sign");
    cvs->add_option("--tree", tree_text, "Tree as \"(()()) / -+\"");
    cvs->add_option("--eps", eps, "Sign, 1 or -1")->check(CLI::IsMember({1, -1}));
    cvs->add_option("--vertex", vertex, "Pointed vertex (index in the topology of the map)");
    add_map_input(cvs);

    int corner = -1;
    std::string sign_text = "+";
    bool allow_root = false;
    auto* rotate_cmd = app.add_subcommand("rotate", "Apply an edge rotation to a map");
    rotate_cmd->add_option("--corner", corner, "Corner (dart)")->required();
    rotate_cmd->add_option("--sign", sign_text, "+, - or =");
    add_map_input(rotate_cmd);

    int edge = -1;
    auto* flip_cmd = app.add_subcommand("flip", "Apply an edge flip to a quadrangulation");
    flip_cmd->add_option("--edge", edge, "Dart of the edge")->required();
    flip_cmd->add_option("--sign", sign_text, "+ or -");
    flip_cmd->add_flag("--allow-root", allow_root, "Allow flipping the root edge");
    add_map_input(flip_cmd);

    std::size_t steps = 1000, every = 1;
    auto* walk = app.add_subcommand("walk", "Run a chain and report trajectory statistics");
    walk->add_option("--chain", cfg.chain, "rotation, flip-noroot or flip-root");
    walk->add_option("--steps", steps, "Number of steps");
    walk->add_option("--every", every, "Report every k-th step")->check(CLI::PositiveNumber);

    auto* grow = app.add_subcommand("grow", "Uniform quadrangulations by exact face growth");
    grow->add_option("--samples", cfg.samples, "Number of samples");

    auto* gtable = app.add_subcommand("gtable", "The g_n matrix as exact fractions");

    std::string from, to;
    auto* path = app.add_subcommand("path", "Sample a canonical flip path between two quadrangulations");
    path->add_option("--from", from, "Start: rank:<i> in Q_n or a map in text format")->required();
    path->add_option("--to", to, "End: rank:<i> in Q_n or a map in text format")->required();

    std::string mode = "exact";
    auto* congestion = app.add_subcommand("congestion", "Per-flip congestion of the canonical paths");
    congestion->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    congestion->add_option("--samples", cfg.samples, "Monte Carlo path samples");

    double eps_tv = 0.25;
    auto* gap = app.add_subcommand("gap", "Spectral gap of a chain");
    gap->add_option("--chain", cfg.chain, "rotation, flip-noroot or flip-root");
    auto* mix = app.add_subcommand("mix", "Total variation mixing time of a chain");
    mix->add_option("--chain", cfg.chain, "rotation, flip-noroot or flip-root");
    mix->add_option("--eps", eps_tv, "Total variation threshold")->check(CLI::Range(0.0, 1.0));

    int table_min = 1;
    auto* table = app.add_subcommand("table", "Headline table of sizes, gaps, mixing times and bounds");
    table->add_option("--min", table_min, "Smallest size");

    std::string level = "quick";
    auto* verify = app.add_subcommand("verify", "Run the verification suites");
    verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        Table t;
        if (*enumerate) {
            const StateSpace& s = kind == "maps" ? map_space(cfg.n, cfg.limit) : quad_space(cfg.n, cfg.limit);
            t = map_table(cfg, s.states());
        } else if (*count) {
            t.columns = {"n", "maps", "quads", "formula", "trees"};
            for (int k = 1; k <= count_max; ++k)
                t.add({k, map_space(k, cfg.limit).size(), quad_space(k, cfg.limit).size(), count_maps(k),
                       count_trees(k)});
        } else if (*tutte) {
            if (forward == inverse) throw ConfigError("give exactly one of --forward and --inverse");
            RootedMap m = parse_map_record(read_input(cfg));
            if (forward) {
                TutteImage img = tutte_forward(m);
                t.columns = {"edge_dart", "face_index"};
                t.notes.push_back("quad: " + encode_map(img.quad));
                for (int d : edge_representatives(m)) t.add({d, img.dart_to_face[d]});
            } else {
                if (!is_quadrangulation(m)) throw ConfigError("input is not a quadrangulation");
                t = map_table(cfg, {tutte_inverse(m)});
            }
        } else if (*cvs) {
            if (forward == inverse) throw ConfigError("give exactly one of --forward and --inverse");
            if (forward) {
                CvsImage img = cvs_forward(decode_tree(tree_text), eps);
                t.columns = {"map", "delta"};
                t.add({map_cell(cfg, img.pointed.quad), img.pointed.delta});
            } else {
                RootedMap q = parse_map_record(read_input(cfg));
                if (!is_quadrangulation(q)) throw ConfigError("input is not a quadrangulation");
                CvsPreimage pre = cvs_inverse(q, vertex);
                t.columns = {"tree", "eps"};
                t.add({encode_tree(pre.tree), pre.eps});
            }
        } else if (*rotate_cmd) {
            t = map_table(cfg, {rotate(parse_map_record(read_input(cfg)), corner, parse_sign(sign_text), true)});
        } else if (*flip_cmd) {
            RootedMap q = parse_map_record(read_input(cfg));
            if (!is_quadrangulation(q)) throw ConfigError("input is not a quadrangulation");
            t = map_table(cfg, {flip(q, edge, parse_sign(sign_text), allow_root)});
        } else if (*walk) {
            ChainKind k = parse_chain(cfg.chain);
            RootedMap x = k == ChainKind::Rotation ? m0(cfg.n) : tutte_forward(m0(cfg.n)).quad;
            Rng rng(cfg.seed);
            t.columns = {"step", "code_hash", "vertices", "max_face_degree"};
            for (std::size_t i = 0; i <= steps; ++i) {
                if (i % every == 0) {
                    Topology T = topology(x);
                    int maxdeg = 0;
                    for (int f = 0; f < T.num_faces(); ++f) maxdeg = std::max(maxdeg, T.face_degree(f));
                    t.add({i, hex_hash(x), T.num_vertices(), maxdeg});
                }
                if (i < steps) x = step(k, x, rng);
            }
        } else if (*grow) {
            Rng rng(cfg.seed);
            t.columns = {"sample", "rank", "map"};
            const StateSpace& qs = quad_space(cfg.n, cfg.limit);
            for (std::size_t i = 0; i < cfg.samples; ++i) {
                RootedMap q = grow_uniform(cfg.n, rng, cfg.limit);
                t.add({i, qs.rank(q), map_cell(cfg, q)});
            }
        } else if (*gtable) {
            if (cfg.n < 1) throw ConfigError("gtable needs n >= 1");
            const StateSpace& qs = quad_space(cfg.n, cfg.limit);
            const StateSpace& lower = quad_space(cfg.n - 1, cfg.limit);
            t.columns = {"q_rank", "qprime_rank", "g"};
            for (std::size_t i = 0; i < qs.size(); ++i) {
                auto row = g_row(qs.unrank(i), cfg.limit);
                for (std::size_t j = 0; j < lower.size(); ++j) {
                    auto it = row.find(j);
                    t.add({i, j, to_string(it == row.end() ? Rational(0) : it->second)});
                }
            }
        } else if (*path) {
            RootedMap a = parse_quad_ref(from, cfg), b = parse_quad_ref(to, cfg);
            Rng rng(cfg.seed);
            FlipPath p = sample_canonical_path(a, b, rng, cfg.limit);
            if (!is_valid_path(p)) throw std::logic_error("sampled path is invalid: " + path_error(p));
            t.columns = {"step", "state", "edge", "sign"};
            t.notes.push_back("from: " + encode_map(p.start));
            t.notes.push_back("to: " + encode_map(p.end));
            for (std::size_t i = 0; i < p.size(); ++i)
                t.add({i, map_cell(cfg, p.steps[i].state), p.steps[i].edge, std::string(1, sign_char(p.steps[i].sign))});
        } else if (*congestion) {
            t.columns = {"rank", "dart", "sign", "congestion", "std_error", "length_weighted"};
            if (mode == "exact") {
                for (const auto& [key, load] : exact_congestion(cfg.n, cfg.limit)) {
                    const auto& [rank, dart, sign] = key;
                    t.add({rank, dart, sign, to_string(load.probability), 0, to_string(load.length_weighted)});
                }
            } else {
                Rng rng(cfg.seed);
                for (const auto& [key, est] : monte_carlo_congestion(cfg.n, cfg.samples, rng, cfg.limit)) {
                    const auto& [rank, dart, sign] = key;
                    t.add({rank, dart, sign, est.value, est.std_error, est.length_weighted});
                }
            }
            std::ostringstream bound;
            bound << std::setprecision(17) << congestion_bound(cfg.n);
            t.notes.push_back("bound: " + bound.str());
        } else if (*gap || *mix) {
            ChainKind k = parse_chain(cfg.chain);
            SpectralReport r = spectral_report(k, cfg.n, eps_tv, cfg.limit);
            json dsc;
            std::string dsc_kind = "closed-form";
            if (k == ChainKind::FlipNoRoot && cfg.n <= 3) {
                dsc = dsc_lower_bound(cfg.n, exact_congestion(cfg.n, cfg.limit), cfg.limit).sharp;
                dsc_kind = "exact";
            } else if (k == ChainKind::FlipNoRoot || k == ChainKind::Rotation) {
                dsc = dsc_closed_form(cfg.n, cfg.limit);
            } else {
                dsc_kind = "none";
            }
            t.columns = {"n", "states", "gap", "mixing_time", "dsc_bound", "dsc_kind"};
            t.add({r.n, r.states, r.gap, r.mixing_time, dsc, dsc_kind});
        } else if (*table) {
            t.columns = {"n", "maps", "gap_rotation", "gap_flip", "mixing_time", "dsc_bound", "max_congestion"};
            for (int k = std::max(1, table_min); k <= cfg.n; ++k) {
                TransitionMatrix r = transition_matrix(ChainKind::Rotation, k, cfg.limit);
                TransitionMatrix f = transition_matrix(ChainKind::FlipNoRoot, k, cfg.limit);
                json dsc = dsc_closed_form(k, cfg.limit), worst;
                if (k <= 3) {
                    auto loads = exact_congestion(k, cfg.limit);
                    dsc = dsc_lower_bound(k, loads, cfg.limit).sharp;
                    Rational w = 0;
                    for (const auto& [key, load] : loads) w = std::max(w, load.probability);
                    worst = to_string(w);
                }
                t.add({k, r.size(), spectral_gap(r), spectral_gap(f), mixing_time(f), dsc, worst});
            }
            t.notes.push_back("dsc_bound is exact for n <= 3 and the closed form above");
        } else if (*verify) {
            return run_verify(cfg, level);
        }
        write_output(cfg, t);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const LimitExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
