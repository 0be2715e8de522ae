// Command-line front end: graph generation, DtN spectra, Cheeger
// constants, and eigenvalue-bound verification with machine-readable
// JSON reports.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "steklov/bounds.hpp"
#include "steklov/cheeger.hpp"
#include "steklov/dtn.hpp"
#include "steklov/families.hpp"
#include "steklov/graph.hpp"
#include "steklov/harmonic.hpp"
#include "steklov/report.hpp"

namespace {

using steklov::BoundaryProblem;
using steklov::Error;
using steklov::Json;
using steklov::WeightedGraph;

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open `" + path + "`");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct LoadedProblem {
    BoundaryProblem bp;
    std::string input_bytes;  // hashed into the report header
};

std::string json_id(const nlohmann::json& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw Error("vertex id must be a string or integer");
}

LoadedProblem load_from_json_doc(const std::string& bytes)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw steklov::ParseError(std::string("bad JSON input: ") + e.what());
    }
    if (!doc.contains("edges") || !doc.contains("interior"))
        throw steklov::ParseError("JSON input needs `edges` and `interior`");
    std::vector<std::tuple<std::string, std::string, double>> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 3)
            throw steklov::ParseError("each edge must be [u, v, weight]");
        edges.emplace_back(json_id(e[0]), json_id(e[1]), e[2].get<double>());
    }
    std::vector<std::string> interior;
    for (const auto& v : doc["interior"]) interior.push_back(json_id(v));
    return {BoundaryProblem(WeightedGraph::from_edges(edges), interior), bytes};
}

std::vector<std::string> parse_interior_lines(const std::string& text)
{
    std::vector<std::string> interior;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string id;
        if (ls >> id) interior.push_back(id);
    }
    return interior;
}

struct InputOptions {
    std::string edges_path;
    std::string interior_path;
    std::string json_path;

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--edges", edges_path, "edge-list file (`u v w` per line)");
        cmd->add_option("--interior", interior_path, "interior-set file (one id per line)");
        cmd->add_option("--input", json_path,
                        "structured JSON input {\"edges\": [[u,v,w],...], \"interior\": [...]}");
    }

    LoadedProblem load() const
    {
        if (!json_path.empty()) return load_from_json_doc(read_file(json_path));
        if (edges_path.empty() || interior_path.empty())
            throw Error("need --edges and --interior (or --input)");
        std::string edge_bytes = read_file(edges_path);
        std::string interior_bytes = read_file(interior_path);
        WeightedGraph g = WeightedGraph::parse_edge_list(edge_bytes);
        return {BoundaryProblem(std::move(g), parse_interior_lines(interior_bytes)),
                edge_bytes + "\n" + interior_bytes};
    }
};

void emit(const Json& j, const std::string& out_path)
{
    std::string text = j.dump(2);
    text.push_back('\n');
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw Error("cannot write `" + out_path + "`");
        out << text;
    }
}

double slack_tolerance()
{
    if (const char* env = std::getenv("STEKLOV_SLACK_TOL")) return std::atof(env);
    return 1e-9;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Steklov (Dirichlet-to-Neumann) spectra, Cheeger constants and "
                 "eigenvalue bounds on finite weighted graphs with boundary"};
    app.require_subcommand(1);
    app.set_version_flag("--version", steklov::kToolVersion);

    std::string out_path;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    app.add_option("-o,--output", out_path, "write the JSON report here instead of stdout");
    app.add_option("--threads", threads, "worker count for subset enumeration");

    InputOptions spectrum_in, cheeger_in, bounds_in, verify_in;

    auto* cmd_spectrum = app.add_subcommand("spectrum", "DtN eigenvalues and eigenspaces");
    spectrum_in.attach(cmd_spectrum);
    bool with_eigenvectors = false;
    cmd_spectrum->add_flag("--eigenvectors", with_eigenvectors, "include eigenvectors");

    auto* cmd_cheeger = app.add_subcommand("cheeger", "isoperimetric constants");
    cheeger_in.attach(cmd_cheeger);
    std::string kind_name = "escobar";
    cmd_cheeger->add_option("--kind", kind_name, "escobar|jammes|classic")
        ->check(CLI::IsMember({"escobar", "jammes", "classic"}));
    bool exact_flag = false, sweep_flag = false;
    cmd_cheeger->add_flag("--exact", exact_flag, "exact subset enumeration (default)");
    cmd_cheeger->add_flag("--sweep", sweep_flag, "sweep-cut heuristic over the first eigenvector");

    auto* cmd_bounds = app.add_subcommand("bounds", "full bounds report");
    bounds_in.attach(cmd_bounds);

    auto* cmd_verify = app.add_subcommand("verify",
                                          "check every inequality; exit 1 on violation");
    verify_in.attach(cmd_verify);

    auto* cmd_generate = app.add_subcommand("generate", "emit a graph family fixture");
    std::string family = "path";
    int n = 6;
    steklov::RandomSpec rspec;
    std::string edges_out, interior_out;
    cmd_generate->add_option("--family", family, "path|hub_fan|star|random")
        ->check(CLI::IsMember({"path", "hub_fan", "star", "random"}));
    cmd_generate->add_option("--n", n, "family size parameter");
    cmd_generate->add_option("--seed", rspec.seed, "PRNG seed (random family)");
    cmd_generate->add_option("--boundary", rspec.n_boundary, "boundary target (random family)");
    cmd_generate->add_option("--edge-prob", rspec.edge_prob, "edge probability (random family)");
    cmd_generate->add_option("--weight-lo", rspec.weight_lo, "min edge weight (random family)");
    cmd_generate->add_option("--weight-hi", rspec.weight_hi, "max edge weight (random family)");
    cmd_generate->add_option("--edges-out", edges_out, "write edge-list file");
    cmd_generate->add_option("--interior-out", interior_out, "write interior-set file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_generate) {
            rspec.n_interior = n;
            std::optional<BoundaryProblem> bp;
            if (family == "path") bp = steklov::path_problem(n);
            else if (family == "hub_fan") bp = steklov::hub_fan_problem(n);
            else if (family == "star") bp = steklov::star_problem(n);
            else bp = steklov::random_problem(rspec);

            std::string edge_text = bp->graph().to_edge_list();
            std::string interior_text;
            for (steklov::Index v : bp->interior())
                interior_text += bp->graph().name(v) + "\n";
            if (!edges_out.empty() || !interior_out.empty()) {
                if (edges_out.empty() || interior_out.empty())
                    throw Error("--edges-out and --interior-out go together");
                std::ofstream(edges_out, std::ios::binary) << edge_text;
                std::ofstream(interior_out, std::ios::binary) << interior_text;
            } else {
                Json j;
                Json edges = Json::array();
                std::istringstream in(edge_text);
                std::string u, v;
                double w;
                while (in >> u >> v >> w) edges.push_back(Json::array({u, v, w}));
                j["edges"] = std::move(edges);
                Json interior = Json::array();
                for (steklov::Index x : bp->interior())
                    interior.push_back(bp->graph().name(x));
                j["interior"] = std::move(interior);
                emit(j, out_path);
            }
            return 0;
        }

        if (*cmd_spectrum) {
            LoadedProblem p = spectrum_in.load();
            steklov::DtnOperator op = steklov::assemble_dtn(p.bp);
            steklov::SpectrumReport rep = steklov::spectrum(op);
            Json j = steklov::report_header(p.input_bytes);
            j.update(steklov::spectrum_report_json(p.bp, op, rep, with_eigenvectors));
            emit(j, out_path);
            return 0;
        }

        if (*cmd_cheeger) {
            LoadedProblem p = cheeger_in.load();
            steklov::CheegerKind kind =
                kind_name == "escobar" ? steklov::CheegerKind::escobar
                : kind_name == "jammes" ? steklov::CheegerKind::jammes
                                        : steklov::CheegerKind::classic;
            steklov::CheegerResult res;
            if (sweep_flag && !exact_flag) {
                steklov::SpectrumReport rep =
                    steklov::spectrum(steklov::assemble_dtn(p.bp));
                steklov::VectorXd guide = steklov::harmonic_extension(
                    p.bp, rep.eigenvectors.col(rep.eigenvalues.size() > 1 ? 1 : 0));
                res = steklov::cheeger_sweep(p.bp, guide, kind);
            } else {
                res = steklov::cheeger_exact(p.bp, kind, threads);
            }
            Json j = steklov::report_header(p.input_bytes);
            j.update(steklov::cheeger_result_json(p.bp, res));
            emit(j, out_path);
            return 0;
        }

        if (*cmd_bounds || *cmd_verify) {
            LoadedProblem p = (*cmd_bounds ? bounds_in : verify_in).load();
            steklov::VerifyOptions opts;
            opts.threads = threads;
            steklov::BoundsReport rep = steklov::verify_all(p.bp, opts);
            double tol = slack_tolerance();
            Json j = steklov::report_header(p.input_bytes);
            j["slack_tolerance"] = tol;
            j.update(steklov::bounds_report_json(p.bp, rep));
            j["passed"] = rep.passed(tol);
            emit(j, out_path);
            if (*cmd_verify) return rep.passed(tol) ? 0 : 1;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
