#include "whitehouse/cli.hpp"

#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "whitehouse/complex.hpp"
#include "whitehouse/hilbert.hpp"
#include "whitehouse/homology.hpp"
#include "whitehouse/morse.hpp"
#include "whitehouse/partitions.hpp"
#include "whitehouse/whitehouse.hpp"

namespace whitehouse::cli {

namespace {

struct RunConfig {
    std::string command;
    int n = 0;
    std::string format;  // empty: command default
    std::string output;
    unsigned jobs = 1;
    std::int64_t max_faces = 2'000'000;
    std::optional<int> dim;
    std::size_t terms = 0;
    bool reciprocal = false;
    bool verify = false;
    bool export_matching = false;
    std::string ring = "field";
    std::string matrix_prefix;
    bool dedup = true;
    std::string face_json;
};

// Raised by command handlers; carries the exit code.
struct CommandError : std::runtime_error {
    CommandError(int code, const std::string& what) : std::runtime_error(what), code(code) {}
    int code;
};

struct VerificationFailure {
    nlohmann::json details;
};

void require_n(const RunConfig& cfg) {
    if (cfg.n < 3) throw CommandError(kInvalidN, "n must be at least 3, got " + std::to_string(cfg.n));
}

void require_size(const RunConfig& cfg) {
    require_n(cfg);
    if (cfg.n > kMaxBuildN) {
        throw CommandError(kResourceCap, "Delta_" + std::to_string(cfg.n) + " exceeds the build limit n <= " +
                                             std::to_string(kMaxBuildN));
    }
    const FVector predicted = f_recurrence(cfg.n);
    const std::int64_t total = std::accumulate(predicted.entries.begin(), predicted.entries.end(), std::int64_t{0});
    if (total > cfg.max_faces) {
        throw CommandError(kResourceCap, "Delta_" + std::to_string(cfg.n) + " has " + std::to_string(total) +
                                             " faces, above --max-faces " + std::to_string(cfg.max_faces));
    }
}

std::string fmt(const RunConfig& cfg, const std::string& fallback) {
    return cfg.format.empty() ? fallback : cfg.format;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
    for (const char* a : allowed) {
        if (format == a) return;
    }
    throw CommandError(kUsage, "format '" + format + "' is not available for this command");
}

template <class T>
std::string joined(const std::vector<T>& v, const std::string& sep) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? sep : "") << v[i];
    return out.str();
}

nlohmann::json coefficient_json(const Coefficient& c) {
    if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(c);
    }
    return c.str();
}

std::string census_plain(const std::map<int, std::size_t>& census) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (const auto& [d, c] : census) {
        out << (first ? "" : ", ") << d << ": " << c;
        first = false;
    }
    out << '}';
    return out.str();
}

// ---------------------------------------------------------------- commands

void cmd_faces(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "csv", "json", "dot"});
    const WhitehouseComplex w = build_direct(cfg.n);
    const auto& k = w.complex;
    const int lo = cfg.dim ? *cfg.dim : -1;
    const int hi = cfg.dim ? *cfg.dim : k.dimension();
    if (format == "json") {
        nlohmann::json j;
        j["n"] = cfg.n;
        auto verts = nlohmann::json::array();
        for (const auto& v : w.vertices) verts.push_back(v);
        j["vertices"] = std::move(verts);
        auto faces = nlohmann::json::array();
        for (int d = lo; d <= hi; ++d) {
            for (std::size_t id = 0; id < k.face_count(d); ++id) {
                auto f = k.face(d, id);
                faces.push_back(std::vector<Vertex>(f.begin(), f.end()));
            }
        }
        j["faces"] = std::move(faces);
        out << j.dump() << '\n';
    } else if (format == "dot") {
        const FacePoset p = face_poset(k, true);
        out << hasse_dot(k, p, [&](std::span<const Vertex> f) {
            std::vector<Mask> masks;
            for (Vertex v : f) masks.push_back(w.vertices[v].mask());
            return Face::make(w.n, masks).to_string();
        });
    } else {
        if (format == "csv") out << "dimension,face\n";
        for (int d = lo; d <= hi; ++d) {
            for (std::size_t id = 0; id < k.face_count(d); ++id) {
                const std::string s = w.face(d, id).to_string();
                if (format == "csv") out << d << ",\"" << s << "\"\n";
                else out << s << '\n';
            }
        }
    }
}

void cmd_fvector(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "csv", "json"});
    const FVector f = f_vector(build_direct(cfg.n).complex);
    const FVector rec = f_recurrence(cfg.n);
    if (format == "json") out << nlohmann::json{{"n", cfg.n}, {"f", f.entries}}.dump() << '\n';
    else if (format == "csv") out << joined(f.entries, ",") << '\n';
    else out << "f = (" << joined(f.entries, ", ") << ")\n";
    if (f != rec) {
        throw VerificationFailure{{{"check", "f-vector recurrence"}, {"enumerated", f.entries}, {"recurrence", rec.entries}}};
    }
}

void cmd_hvector(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "csv", "json"});
    const HVector h = h_vector_of(f_vector(build_direct(cfg.n).complex), cfg.n - 3);
    const HVector rec = h_recurrence(cfg.n);
    if (format == "json") out << nlohmann::json{{"n", cfg.n}, {"h", h.entries}}.dump() << '\n';
    else if (format == "csv") out << joined(h.entries, ",") << '\n';
    else out << "h = (" << joined(h.entries, ", ") << ")\n";
    if (h != rec) {
        throw VerificationFailure{{{"check", "h-vector recurrence"}, {"enumerated", h.entries}, {"recurrence", rec.entries}}};
    }
}

void cmd_hilbert(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "csv", "json"});
    const HilbertSeries s = hilbert_series(cfg.n);
    std::vector<Coefficient> coeffs;
    bool alternating = true;
    const std::size_t terms = cfg.terms ? cfg.terms : (cfg.reciprocal ? 20 : 0);
    if (cfg.reciprocal) {
        auto ev = koszul_evidence(s, terms);
        alternating = ev.alternating;
        coeffs = std::move(ev.coefficients);
    } else if (terms) {
        coeffs = expand(s, terms);
    }
    if (format == "json") {
        nlohmann::json j = series_to_json(s);
        j["n"] = cfg.n;
        if (!coeffs.empty()) {
            auto arr = nlohmann::json::array();
            for (const auto& c : coeffs) arr.push_back(coefficient_json(c));
            j[cfg.reciprocal ? "reciprocal" : "expansion"] = std::move(arr);
        }
        if (cfg.reciprocal) j["alternating"] = alternating;
        out << j.dump() << '\n';
    } else {
        if (format == "plain") out << series_plain(s) << '\n';
        if (cfg.reciprocal) out << "alternating: " << (alternating ? "true" : "false") << '\n';
        if (!coeffs.empty() || format == "csv") {
            out << "degree,coefficient\n";
            for (std::size_t k = 0; k < coeffs.size(); ++k) out << k << ',' << coeffs[k] << '\n';
        }
    }
    if (!alternating) {
        auto arr = nlohmann::json::array();
        for (const auto& c : coeffs) arr.push_back(coefficient_json(c));
        throw VerificationFailure{{{"check", "reciprocal series alternation"}, {"coefficients", arr}}};
    }
}

void cmd_morse(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, cfg.export_matching ? "json" : "plain");
    require_format(format, {"plain", "json", "dot"});
    const RecursiveBuild build = build_recursive(cfg.n);
    const auto& w = build.top().complex;
    const MorseMatching m = build_matching(build);
    const FacePoset p = face_poset(w.complex, true);
    check_matching(p, m);
    const auto census = critical_census(p, m);
    std::optional<AcyclicityReport> acyclic;
    if (cfg.verify) acyclic = verify_acyclic(p, m);

    if (format == "dot") {
        out << matching_dot(w, p, m);
    } else if (format == "json") {
        nlohmann::json j = cfg.export_matching ? matching_to_json(w, p, m) : nlohmann::json{{"n", cfg.n}};
        nlohmann::json c = nlohmann::json::object();
        for (const auto& [d, count] : census) c[std::to_string(d)] = count;
        j["census"] = std::move(c);
        if (acyclic) j["acyclic"] = acyclic->acyclic;
        out << j.dump() << '\n';
    } else {
        if (acyclic) out << "acyclic: " << (acyclic->acyclic ? "true" : "false") << ", ";
        out << "critical: " << census_plain(census) << '\n';
    }
    if (acyclic && !acyclic->acyclic) {
        auto cycle = nlohmann::json::array();
        for (std::size_t x : acyclic->cycle) cycle.push_back(w.face_at(x));
        throw VerificationFailure{{{"check", "morse acyclicity"}, {"cycle", cycle}}};
    }
}

void cmd_homology(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "json"});
    Ring ring;
    if (cfg.ring == "field") ring = Ring::Field;
    else if (cfg.ring == "integer") ring = Ring::Integer;
    else throw CommandError(kUsage, "--ring must be field or integer");
    if (ring == Ring::Integer && cfg.n > 7) {
        throw CommandError(kResourceCap, "integer homology is limited to n <= 7");
    }
    const WhitehouseComplex w = build_direct(cfg.n);
    if (!cfg.matrix_prefix.empty()) {
        const ChainBoundary c = boundary_matrices(w.complex);
        for (std::size_t k = 0; k < c.d.size(); ++k) {
            std::ofstream file(cfg.matrix_prefix + "_d" + std::to_string(k) + ".txt");
            if (!file) throw CommandError(kUsage, "cannot write matrix files with prefix " + cfg.matrix_prefix);
            write_triplets(file, c.d[k]);
        }
    }
    const BettiProfile b = reduced_betti(w.complex, ring);
    if (format == "json") {
        nlohmann::json j = betti_to_json(b);
        j["n"] = cfg.n;
        out << j.dump() << '\n';
    } else {
        out << betti_plain(b) << '\n';
    }
}

void cmd_reisner(const RunConfig& cfg, std::ostream& out) {
    require_size(cfg);
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "json"});
    const ReisnerReport r = reisner_check(build_direct(cfg.n), cfg.jobs, cfg.dedup);
    if (format == "json") {
        out << reisner_to_json(r).dump() << '\n';
    } else {
        out << "reisner: " << (r.passed() ? "passed" : "failed") << " (faces: " << r.faces_checked
            << ", signatures: " << r.distinct_signatures << ", links computed: " << r.links_computed << ")\n";
    }
    if (!r.passed()) throw VerificationFailure{reisner_to_json(r)};
}

void cmd_table1(const RunConfig& cfg, std::ostream& out) {
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "csv", "json"});
    const auto rows = verify_table1();
    bool ok = true;
    nlohmann::json j = nlohmann::json::array();
    if (format == "csv") out << "n,numerator,match\n";
    for (const auto& row : rows) {
        ok = ok && row.match();
        if (format == "json") {
            j.push_back({{"n", row.n}, {"expected", row.expected}, {"computed", row.computed}, {"match", row.match()}});
        } else if (format == "csv") {
            out << row.n << ",\"" << joined(row.computed, " ") << "\"," << (row.match() ? "true" : "false") << '\n';
        } else {
            out << "n=" << row.n << ": " << polynomial_plain(row.computed) << (row.match() ? "  [ok]" : "  [MISMATCH]")
                << '\n';
        }
    }
    if (format == "json") out << j.dump() << '\n';
    if (!ok) throw VerificationFailure{{{"check", "table 1"}}};
}

void cmd_forest(const RunConfig& cfg, std::ostream& out) {
    const std::string format = fmt(cfg, "dot");
    require_format(format, {"plain", "json", "dot"});
    Face face;
    try {
        std::string text = cfg.face_json;
        if (text == "-") {
            std::ostringstream buf;
            buf << std::cin.rdbuf();
            text = buf.str();
        }
        face = nlohmann::json::parse(text).get<Face>();
    } catch (const std::exception& e) {
        throw CommandError(kBadFaceJson, std::string("malformed face JSON: ") + e.what());
    }
    const Forest forest = forest_of(face);
    if (format == "dot") {
        out << forest_dot(forest);
        return;
    }
    const auto factors = link_decomposition(face);
    if (format == "json") {
        nlohmann::json children = nlohmann::json::array();
        for (const auto& node : forest.nodes) {
            children.push_back({{"block", BlockSet::from_mask(face.n(), node.block)}, {"children", node.child_count()}});
        }
        out << nlohmann::json{{"face", face}, {"components", forest.components()}, {"nodes", children},
                              {"link_factors", factors}}
                   .dump()
            << '\n';
    } else {
        out << "components: " << forest.components() << '\n';
        for (const auto& node : forest.nodes) {
            out << BlockSet::from_mask(face.n(), node.block).to_string() << ": " << node.child_count() << " children\n";
        }
        out << "link factors: " << joined(factors, ", ") << '\n';
    }
}

void cmd_generators(const RunConfig& cfg, std::ostream& out) {
    require_n(cfg);
    if (cfg.n > kMaxBuildN) throw CommandError(kResourceCap, "n too large");
    const std::string format = fmt(cfg, "plain");
    require_format(format, {"plain", "json"});
    const auto gens = ideal_generators(cfg.n);
    if (format == "json") {
        out << generators_to_json(gens).dump() << '\n';
    } else {
        for (const auto& [u, v] : gens) out << u.to_string() << ' ' << v.to_string() << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Whitehouse complex and pre-WDVV ring toolkit", "whitehouse"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format: plain, csv, json or dot")
        ->check(CLI::IsMember({"plain", "csv", "json", "dot"}));
    app.add_option("-o,--output", cfg.output, "Write output to a file instead of standard output");
    app.add_option("--jobs", cfg.jobs, "Worker threads for batch homology")->check(CLI::Range(1u, 256u));
    app.add_option("--max-faces", cfg.max_faces, "Refuse to build complexes with more faces")
        ->check(CLI::PositiveNumber);

    auto add_n = [&](CLI::App* sub) { sub->add_option("n", cfg.n, "Ambient size")->required(); };

    auto* faces = app.add_subcommand("faces", "List the faces of Delta_n");
    add_n(faces);
    faces->add_option("--dim", cfg.dim, "Only faces of this dimension");
    add_n(app.add_subcommand("fvector", "f-vector by enumeration, checked against the recurrence"));
    add_n(app.add_subcommand("hvector", "h-vector by enumeration, checked against the recurrence"));
    auto* hilbert = app.add_subcommand("hilbert", "Hilbert series of the pre-WDVV ring R_n");
    add_n(hilbert);
    hilbert->add_option("--terms", cfg.terms, "Number of series coefficients")->check(CLI::PositiveNumber);
    hilbert->add_flag("--reciprocal", cfg.reciprocal, "Expand 1/H(R_n) and test sign alternation");
    auto* morse = app.add_subcommand("morse", "Morse matching of the face poset");
    add_n(morse);
    morse->add_flag("--verify", cfg.verify, "Check acyclicity");
    morse->add_flag("--export", cfg.export_matching, "Emit the full matching as JSON");
    auto* homology = app.add_subcommand("homology", "Reduced homology of Delta_n");
    add_n(homology);
    homology->add_option("--ring", cfg.ring, "field or integer")->check(CLI::IsMember({"field", "integer"}));
    homology->add_option("--export-matrices", cfg.matrix_prefix, "Write boundary matrices as PREFIX_d<k>.txt");
    auto* reisner = app.add_subcommand("reisner", "Reisner's criterion on every face link");
    add_n(reisner);
    reisner->add_flag("!--no-dedup", cfg.dedup, "Compute every link instead of one per signature");
    app.add_subcommand("table1", "Compare Hilbert series numerators for n = 3..8 with the published table");
    auto* forest = app.add_subcommand("forest", "Forest representation of a face");
    forest->add_option("face", cfg.face_json, "Face JSON {\"n\": 8, \"blocks\": [[2,3,4], ...]} or - for stdin")
        ->required();
    add_n(app.add_subcommand("generators", "Quadratic generators of the Stanley-Reisner ideal"));

    std::vector<std::string> argv_storage{"whitehouse"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    std::ostringstream buffer;
    int code = kOk;
    try {
        if (cfg.command == "faces") cmd_faces(cfg, buffer);
        else if (cfg.command == "fvector") cmd_fvector(cfg, buffer);
        else if (cfg.command == "hvector") cmd_hvector(cfg, buffer);
        else if (cfg.command == "hilbert") cmd_hilbert(cfg, buffer);
        else if (cfg.command == "morse") cmd_morse(cfg, buffer);
        else if (cfg.command == "homology") cmd_homology(cfg, buffer);
        else if (cfg.command == "reisner") cmd_reisner(cfg, buffer);
        else if (cfg.command == "table1") cmd_table1(cfg, buffer);
        else if (cfg.command == "forest") cmd_forest(cfg, buffer);
        else if (cfg.command == "generators") cmd_generators(cfg, buffer);
    } catch (const CommandError& e) {
        err << "error: " << e.what() << '\n';
        return e.code;
    } catch (const VerificationFailure& f) {
        nlohmann::json report{{"status", "verification_failed"}, {"command", cfg.command}, {"details", f.details}};
        if (cfg.n) report["n"] = cfg.n;
        err << report.dump() << '\n';
        code = kVerification;
    }

    if (cfg.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(cfg.output);
        if (!file) {
            err << "error: cannot open " << cfg.output << " for writing\n";
            return kUsage;
        }
        file << buffer.str();
    }
    return code;
}

}  // namespace whitehouse::cli
