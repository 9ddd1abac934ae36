#include "sepcoset/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepcoset/boundary.hpp"
#include "sepcoset/cber.hpp"
#include "sepcoset/constants.hpp"
#include "sepcoset/errors.hpp"
#include "sepcoset/rays.hpp"
#include "sepcoset/relgraph.hpp"
#include "sepcoset/report.hpp"
#include "sepcoset/separating.hpp"
#include "sepcoset/ygraph.hpp"

namespace sepcoset {

namespace {

using json = nlohmann::ordered_json;

json extnat_json(const ExtNat& e) {
    if (e.is_finite()) return json(e.value);
    return json(e.str());
}

json record_json(const Model& m, const SepCosetRecord& r) {
    json j;
    j["position"] = r.position;
    j["family"] = r.coset.lam;
    j["coset"] = m.word_str(r.coset.rep);
    j["entrance"] = m.word_str(r.entry);
    j["exit"] = m.word_str(r.exit);
    j["gap"] = extnat_json(r.gap);
    j["dist_from_f"] = r.dist_from_f;
    return j;
}

GroupModelSpec resolve_model(const std::string& name) {
    if (name == "free_cyclic") return GroupModelSpec::builtin_free_cyclic();
    if (name == "free_product") return GroupModelSpec::builtin_free_product();
    return GroupModelSpec::parse_file(name);
}

ExplorationBudget parse_budget(const std::string& text) {
    ExplorationBudget b;
    if (text.empty()) return b;
    int r, l, cap;
    if (std::sscanf(text.c_str(), "%d,%d,%d", &r, &l, &cap) == 3) {
        b.x_radius = r;
        b.h_budget = l;
        b.geodesic_cap = cap;
        return b;
    }
    if (std::sscanf(text.c_str(), "%d,%d", &r, &l) == 2) {
        b.x_radius = r;
        b.h_budget = l;
        return b;
    }
    throw input_error("bad --budget, expected R,L[,cap]: " + text);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"separating-coset calculus for hyperbolically embedded subgroups"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may appear after the subcommand

    std::string model_name = "free_cyclic";
    std::string budget_text;
    std::string format = "json";
    std::string cache_dir;
    int D = 5;
    std::uint64_t seed = 7;
    int verify_radius = 5;
    app.add_option("--model", model_name, "builtin model (free_cyclic|free_product) or model file path");
    app.add_option("--D", D, "separation threshold D (> 0)");
    app.add_option("--budget", budget_text, "exploration budget R,L[,cap]");
    app.add_option("--seed", seed, "RNG seed for sampled checks");
    app.add_option("--format", format, "output format: json|text|csv");
    app.add_option("--cache", cache_dir, "cache directory (also SEPCOSET_CACHE_DIR)");
    app.add_option("--radius", verify_radius, "radius for exhaustive verification sweeps");

    // dist
    auto* c_dist = app.add_subcommand("dist", "relative and Y-graph distance between two elements");
    std::string arg_f = "1", arg_g = "1";
    c_dist->add_option("f", arg_f)->required();
    c_dist->add_option("g", arg_g)->required();

    auto* c_geo = app.add_subcommand("geodesics", "all geodesic label sequences between two elements");
    c_geo->add_option("f", arg_f)->required();
    c_geo->add_option("g", arg_g)->required();

    auto* c_sep = app.add_subcommand("sepcosets", "the ordered separating cosets S(f,g;D)");
    c_sep->add_option("f", arg_f)->required();
    c_sep->add_option("g", arg_g)->required();

    auto* c_yball = app.add_subcommand("yball", "members of Y within the budget ball");

    auto* c_verify = app.add_subcommand("verify", "run the property suites");
    std::string suite = "all";
    c_verify->add_option("suite", suite, "suite name or 'all'");

    auto* c_est = app.add_subcommand("estimate", "estimate the geometric constants");

    auto* c_phi = app.add_subcommand("phi", "lexicographically minimal geodesic labels");
    std::string phi_target, phi_scheme;
    int phi_depth = 12;
    c_phi->add_option("--target", phi_target, "group element target");
    c_phi->add_option("--scheme", phi_scheme, "ray scheme target (base=..;prefix=[..];period=[..])");
    c_phi->add_option("--depth", phi_depth, "truncation depth for scheme targets");

    auto* c_tail = app.add_subcommand("tailcheck", "tail equivalence of eventually periodic sequences");
    std::string w0_text, w1_text;
    c_tail->add_option("--w0", w0_text)->required();
    c_tail->add_option("--w1", w1_text)->required();

    auto* c_f4 = app.add_subcommand("f4", "three-direction window decomposition S' | S'' | F");
    std::string xi_text, eta_text, zeta_text;
    int f4_n = 6;
    c_f4->add_option("--xi", xi_text)->required();
    c_f4->add_option("--eta", eta_text)->required();
    c_f4->add_option("--zeta", zeta_text)->required();
    c_f4->add_option("--n", f4_n, "window radius");

    auto* c_probe = app.add_subcommand("probe", "acylindricity overlap counts (an estimate)");
    int probe_eps = 1, probe_r = 3, probe_samples = 20;
    c_probe->add_option("--eps", probe_eps);
    c_probe->add_option("--R", probe_r, "minimum separation of sampled pairs");
    c_probe->add_option("--samples", probe_samples);

    for (CLI::App* sc : {c_dist, c_geo, c_sep, c_yball, c_verify, c_est, c_phi, c_tail, c_f4, c_probe})
        sc->fallthrough();

    std::vector<std::string> argv_copy = args;
    std::vector<char*> argv;
    argv.reserve(argv_copy.size());
    std::string prog = "sepcoset-lab";
    argv.push_back(prog.data());
    for (auto& a : argv_copy) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    }

    try {
        if (D <= 0) throw input_error("D must be positive");
        RunConfig cfg;
        cfg.model_name = model_name;
        cfg.spec = resolve_model(model_name);
        cfg.D = D;
        cfg.budget = parse_budget(budget_text);
        cfg.seed = seed;
        cfg.format = format;
        cfg.verify_radius = verify_radius;
        if (cache_dir.empty())
            if (const char* env = std::getenv("SEPCOSET_CACHE_DIR")) cache_dir = env;

        Workspace ws(cfg.spec, cfg.budget, cfg.seed);
        const Model& m = ws.model();
        std::string cache_file;
        if (!cache_dir.empty()) {
            cache_file = cache_dir + "/dhat-" + std::to_string(cfg.budget.h_budget) + ".cache";
            ws.load_dhat_cache(cache_file);
        }
        auto save_cache = [&] {
            if (!cache_file.empty()) ws.save_dhat_cache(cache_file);
        };

        if (c_dist->parsed()) {
            Word f = m.parse_word(arg_f), g = m.parse_word(arg_g);
            DistValue dx = rel_distance(ws, f, g);
            DistValue dy = y_distance(ws, f, g, D);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["f"] = m.word_str(f);
            j["g"] = m.word_str(g);
            j["d_rel"] = extnat_json(dx.d);
            j["d_rel_stable"] = dx.stable;
            j["d_y"] = extnat_json(dy.d);
            j["d_y_stable"] = dy.stable;
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        if (c_geo->parsed()) {
            Word f = m.parse_word(arg_f), g = m.parse_word(arg_g);
            GeodesicsResult gr = all_geodesics(ws, f, g);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["count"] = gr.paths.size();
            j["overflow"] = gr.overflow;
            j["geodesics"] = json::array();
            for (const PathRec& p : gr.paths) {
                json labs = json::array();
                for (const Letter& l : p.labels) labs.push_back(m.letter_str(l));
                j["geodesics"].push_back(labs);
            }
            out << j.dump(2) << "\n";
            save_cache();
            return gr.overflow ? static_cast<int>(ExitCode::inconclusive) : 0;
        }
        if (c_sep->parsed()) {
            Word f = m.parse_word(arg_f), g = m.parse_word(arg_g);
            std::vector<SepCosetRecord> recs = sep_cosets(ws, f, g, D);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["D"] = D;
            j["f"] = m.word_str(f);
            j["g"] = m.word_str(g);
            j["records"] = json::array();
            for (const auto& r : recs) j["records"].push_back(record_json(m, r));
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        if (c_yball->parsed()) {
            const YBallInfo& yb = yball(ws, D);
            out << "word,x_length\n";
            for (const Word& w : yb.members) out << m.word_str(w) << "," << m.x_length(w) << "\n";
            save_cache();
            return yb.unstable.empty() ? 0 : static_cast<int>(ExitCode::inconclusive);
        }
        if (c_verify->parsed()) {
            VerifyReport rep = run_verify(ws, cfg, suite);
            if (format == "text")
                out << rep.to_text();
            else if (format == "csv")
                out << rep.to_csv();
            else
                out << rep.to_json().dump(2) << "\n";
            save_cache();
            if (!rep.all_pass()) return static_cast<int>(ExitCode::violation);
            if (rep.any_inconclusive()) return static_cast<int>(ExitCode::inconclusive);
            return 0;
        }
        if (c_est->parsed()) {
            ConstantsReport rep = estimate_constants(ws, D);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["kind"] = "ESTIMATE";
            j["D"] = rep.D;
            j["D_auto"] = rep.D_auto;
            j["C_hat"] = {{"num", rep.c_hat.num}, {"den", rep.c_hat.den}, {"value", rep.c_hat.value()}};
            j["delta_x"] = rep.delta_x.value();
            j["delta_y"] = rep.delta_y.value();
            j["M_x"] = rep.m_x;
            j["M_x_window_limited"] = rep.m_x_window_limited;
            j["K"] = rep.K;
            j["K_threshold"] = rep.K_threshold;
            j["budget"] = rep.budget.str();
            j["seed"] = rep.seed;
            j["polygons_sampled"] = rep.c_detail.polygons;
            j["isolated_components"] = rep.c_detail.isolated_components;
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        if (c_phi->parsed()) {
            PhiPrefix phi;
            if (!phi_target.empty())
                phi = phi_prefix(ws, m.parse_word(phi_target));
            else if (!phi_scheme.empty())
                phi = phi_prefix_ray(ws, RayScheme::parse(m, phi_scheme), phi_depth, D);
            else
                throw input_error("phi: need --target or --scheme");
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["target"] = phi.target;
            j["labels"] = json::array();
            for (const Letter& l : phi.labels) j["labels"].push_back(m.letter_str(l));
            j["certified_len"] = phi.certified_len;
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        if (c_tail->parsed()) {
            EvPeriodicSeq w0 = EvPeriodicSeq::parse(w0_text);
            EvPeriodicSeq w1 = EvPeriodicSeq::parse(w1_text);
            auto [eq, wit] = tail_equivalent(w0, w1);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["w0"] = w0.str();
            j["w1"] = w1.str();
            j["equivalent"] = eq;
            if (wit) j["witness"] = {{"n", wit->n}, {"m", wit->m}};
            out << j.dump(2) << "\n";
            return 0;
        }
        if (c_f4->parsed()) {
            RayScheme xi = RayScheme::parse(m, xi_text);
            RayScheme eta = RayScheme::parse(m, eta_text);
            RayScheme zeta = RayScheme::parse(m, zeta_text);
            NGonSpec cs;
            cs.seed = seed;
            cs.samples = 3000;
            Ratio c_hat = estimate_C(ws, cs).c_hat;
            TripleSplit split = f4_split(ws, xi, eta, zeta, f4_n, D, c_hat);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["D"] = D;
            j["n"] = f4_n;
            auto emit = [&](const std::vector<SepCosetRecord>& v) {
                json a = json::array();
                for (const auto& r : v) a.push_back(record_json(m, r));
                return a;
            };
            j["S_xi_zeta"] = emit(split.s_fz);
            j["S_zeta_eta"] = emit(split.s_zg);
            j["F"] = emit(split.window);
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        if (c_probe->parsed()) {
            AcylProbe p = acylindricity_probe(ws, probe_eps, probe_r, D, probe_samples, seed);
            json j;
            j["schema"] = "sepcoset-lab/1";
            j["kind"] = "ESTIMATE";
            j["eps"] = p.eps;
            j["min_separation"] = p.min_separation;
            j["pairs_sampled"] = p.pairs_sampled;
            j["max_overlap"] = p.max_overlap;
            out << j.dump(2) << "\n";
            save_cache();
            return 0;
        }
        err << "no subcommand\n";
        return static_cast<int>(ExitCode::usage);
    } catch (const theorem_violation& e) {
        err << "THEOREM VIOLATION: " << e.what() << "\n";
        return static_cast<int>(ExitCode::violation);
    } catch (const widen_window_error& e) {
        err << "inconclusive (widen window): " << e.what() << "\n";
        return static_cast<int>(ExitCode::inconclusive);
    } catch (const partiality_error& e) {
        err << "inconclusive at budget: " << e.what() << "\n";
        return static_cast<int>(ExitCode::inconclusive);
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return static_cast<int>(ExitCode::usage);
    }
}

} // namespace sepcoset
