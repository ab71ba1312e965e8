// dimlab: exact combinatorial dimensions, derived classes, widths, bounds,
// and minimax online-learning games for finite hypothesis classes.
//
// Exit codes: 0 success, 1 failed verification, 2 invalid input,
// 3 resource cap exceeded.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dimlab/bounds.hpp"
#include "dimlab/class_core.hpp"
#include "dimlab/dimensions.hpp"
#include "dimlab/games.hpp"
#include "dimlab/generators.hpp"
#include "dimlab/io.hpp"
#include "dimlab/pacsim.hpp"
#include "dimlab/trees_ops.hpp"
#include "dimlab/width.hpp"

namespace {

using namespace dimlab;

constexpr const char* kVersion = "dimlab 0.1.0";

struct Output {
    std::optional<std::string> out_path;
    std::string format = "json";  // json|csv
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::uint64_t>> input_digests;
    std::string command_line;

    void note_input(const std::string& name, const std::string& bytes) {
        input_digests.emplace_back(name, fnv1a64(bytes));
    }

    void emit(const std::string& body) const {
        Json manifest;
        manifest["command"] = command_line;
        manifest["seed"] = seed;
        manifest["version"] = kVersion;
        Json digests = Json::object();
        for (const auto& [name, d] : input_digests) {
            std::ostringstream hex;
            hex << std::hex << d;
            digests[name] = hex.str();
        }
        manifest["inputs"] = digests;
        manifest["outputs"] = out_path ? Json::array({*out_path}) : Json::array();
        if (out_path) {
            write_file(*out_path, body + "\n");
            write_file(*out_path + ".manifest.json", manifest.dump(2) + "\n");
        } else {
            std::cout << body << "\n";
        }
        std::cerr << manifest.dump() << "\n";
    }
};

std::string read_input(const std::string& path, Output& out, const std::string& tag) {
    std::string bytes;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        bytes = ss.str();
    } else {
        bytes = read_file(path);
    }
    out.note_input(tag + ":" + path, bytes);
    return bytes;
}

HypothesisClass load_class(const std::string& path, Output& out) {
    return class_from_json(Json::parse(read_input(path, out, "class")));
}

std::vector<Rat> parse_rat_list(const std::string& csv) {
    std::vector<Rat> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) vals.push_back(Rat::parse(item));
    }
    require(!vals.empty(), "BadRange", "expected a comma-separated rational list");
    return vals;
}

std::vector<std::size_t> parse_index_list(const std::string& csv) {
    std::vector<std::size_t> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) vals.push_back(static_cast<std::size_t>(std::stoull(item)));
    }
    return vals;
}

Json game_value_json(const GameValue& gv) {
    Json j;
    j["value"] = gv.value.str();
    j["value_float"] = gv.value.to_double();
    j["exact"] = gv.exact;
    j["T"] = gv.horizon;
    j["best_first_x"] = gv.best_first_x;
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact dimensions, widths, bounds and games for finite hypothesis classes"};
    app.require_subcommand(1);
    app.fallthrough();

    Output out;
    {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        out.command_line = cmd.str();
    }
    app.add_option("--out", out.out_path, "write the result here instead of stdout");
    app.add_option("--seed", out.seed, "seed for all randomized operations");
    app.add_option("--format", out.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    std::size_t jobs = 1;
    app.add_option("--jobs", jobs, "parallelism across independent grid points");
    std::size_t max_states = 1000000;
    app.add_option("--max-states", max_states, "state cap for game solvers");

    // ------------------------------------------------------------------ gen
    auto* gen = app.add_subcommand("gen", "construct a named class");
    gen->fallthrough();
    std::string gen_name;
    std::vector<std::string> gen_params;
    std::string gen_coeffs, gen_xs;
    std::size_t gen_deg_p = 0, gen_deg_q = 0;
    gen->add_option("name", gen_name)->required();
    gen->add_option("params", gen_params, "numeric parameters");
    gen->add_option("--coeffs", gen_coeffs, "rational_fn coefficient grid");
    gen->add_option("--xs", gen_xs, "rational_fn x grid");
    gen->add_option("--deg-p", gen_deg_p);
    gen->add_option("--deg-q", gen_deg_q);

    // ------------------------------------------------------------------ dim
    auto* dim = app.add_subcommand("dim", "compute a dimension with a witness");
    dim->fallthrough();
    std::string dim_kind, dim_class, dim_witness_out;
    std::string dim_gamma = "1/2", dim_r = "0", dim_s = "1", dim_loss = "id";
    dim->add_option("kind", dim_kind)->required()->check(CLI::IsMember(
        {"vc", "littlestone", "fat", "seqfat", "threshold-gamma", "threshold-rs", "graph",
         "online"}));
    dim->add_option("class", dim_class)->required();
    dim->add_option("--gamma", dim_gamma);
    dim->add_option("--r", dim_r);
    dim->add_option("--s", dim_s);
    dim->add_option("--loss", dim_loss);
    dim->add_option("--witness", dim_witness_out, "also write the witness to this file");

    // --------------------------------------------------------------- derive
    auto* derive = app.add_subcommand("derive", "build a derived class");
    derive->fallthrough();
    std::string derive_op, derive_class, derive_map, derive_family, derive_tuples, derive_mix;
    std::vector<std::string> derive_dists;
    derive->add_option("op", derive_op)->required()->check(CLI::IsMember(
        {"dual", "monotone", "dist", "dualdist", "expect", "avg", "twochoice"}));
    derive->add_option("class", derive_class);
    derive->add_option("--map", derive_map, "monotone map json");
    derive->add_option("--dist", derive_dists, "distribution json file(s)");
    derive->add_option("--family", derive_family, "measurable family json");
    derive->add_option("--tuples", derive_tuples, "semicolon-separated index tuples: 0,1;2,2");
    derive->add_option("--mix", derive_mix, "semicolon-separated lambda:y:y' entries");

    // ---------------------------------------------------------------- width
    auto* wd = app.add_subcommand("width", "widths, mean widths, covering numbers");
    wd->fallthrough();
    std::string wd_op, wd_cloud, wd_class, wd_b, wd_gamma = "1/10", wd_norm = "linf";
    std::size_t wd_n = 1, wd_trials = 1000;
    bool wd_sampled = false;
    wd->add_option("op", wd_op)->required()->check(CLI::IsMember(
        {"dir", "rademacher", "class-rademacher", "seq-class-rademacher", "gaussian",
         "covering"}));
    wd->add_option("--cloud", wd_cloud, "point cloud json");
    wd->add_option("--class", wd_class, "class json (tuple-based ops)");
    wd->add_option("--b", wd_b, "direction vector, comma-separated rationals");
    wd->add_option("--n", wd_n);
    wd->add_option("--gamma", wd_gamma);
    wd->add_option("--norm", wd_norm)->check(CLI::IsMember({"l2", "linf"}));
    wd->add_option("--trials", wd_trials);
    wd->add_flag("--sampled", wd_sampled, "sampled mode (certified lower bound)");

    // ---------------------------------------------------------------- bounds
    auto* bd = app.add_subcommand("bounds", "closed-form bound evaluators");
    bd->fallthrough();
    std::string bd_name;
    double bd_d = 1, bd_dstar = 1, bd_eps = 0.1, bd_delta = 0.1, bd_C = 1, bd_gamma = 0.5;
    double bd_n = 1, bd_T = 1, bd_lambda = 1, bd_N = 0, bd_R = 0, bd_m = 1, bd_L = 1;
    bool bd_quadratic = false, bd_concept = false;
    std::string bd_table, bd_grid, bd_sweep;
    double bd_from = 0.1, bd_to = 0.9;
    std::size_t bd_steps = 9;
    bd->add_option("name", bd_name)->required()->check(CLI::IsMember(
        {"fat-pac", "expectation-pac", "gc-rademacher", "gc-expectation", "vc-rademacher",
         "covering-fat", "regret", "expectation-regret", "littlestone-regret", "aggregation-j",
         "dual-dist-chain", "sigmod-baseline"}));
    bd->add_option("--d", bd_d);
    bd->add_option("--d-star", bd_dstar);
    bd->add_option("--eps", bd_eps);
    bd->add_option("--delta", bd_delta);
    bd->add_option("--C", bd_C);
    bd->add_option("--gamma-f", bd_gamma);
    bd->add_option("--n", bd_n);
    bd->add_option("--T", bd_T);
    bd->add_option("--lambda", bd_lambda);
    bd->add_option("--N", bd_N);
    bd->add_option("--R", bd_R);
    bd->add_option("--m", bd_m);
    bd->add_option("--L-prime", bd_L);
    bd->add_flag("--quadratic", bd_quadratic);
    bd->add_flag("--concept", bd_concept);
    bd->add_option("--table", bd_table, "gamma:d entries, e.g. 0.5:1,0.25:2");
    bd->add_option("--grid", bd_grid, "gamma grid for regret upper bound");
    bd->add_option("--sweep", bd_sweep, "sweep this parameter (csv output)");
    bd->add_option("--from", bd_from);
    bd->add_option("--to", bd_to);
    bd->add_option("--steps", bd_steps);

    // ----------------------------------------------------------------- game
    auto* gm = app.add_subcommand("game", "realizable/agnostic values, simulation");
    gm->fallthrough();
    std::string gm_mode, gm_class, gm_loss = "id", gm_pred, gm_label, gm_learner = "minimax";
    std::string gm_adversary = "worst", gm_script;
    std::size_t gm_T = 1;
    gm->add_option("mode", gm_mode)->required()->check(CLI::IsMember(
        {"realizable", "agnostic", "simulate"}));
    gm->add_option("class", gm_class)->required();
    gm->add_option("--loss", gm_loss, "id | l:<eps> | L:<eps>");
    gm->add_option("--T", gm_T);
    gm->add_option("--pred-grid", gm_pred, "comma rationals or 'exact'");
    gm->add_option("--label-grid", gm_label, "comma rationals");
    gm->add_option("--learner", gm_learner)->check(CLI::IsMember({"ftl", "minimax"}));
    gm->add_option("--adversary", gm_adversary, "consistent:<h0> | worst | script");
    gm->add_option("--script", gm_script, "scripted rounds file: json [[x,\"y\"],...]");

    // ------------------------------------------------------------------ pac
    auto* pc = app.add_subcommand("pac", "Monte-Carlo PAC machinery");
    pc->fallthrough();
    std::string pc_mode, pc_class, pc_dist, pc_pop, pc_hidden, pc_csv;
    std::vector<std::string> pc_candidates;
    std::size_t pc_m = 10, pc_n = 10, pc_trials = 1000;
    std::string pc_eps = "1/10";
    pc->add_option("mode", pc_mode)->required()->check(CLI::IsMember({"gc", "trial", "selectivity"}));
    pc->add_option("class", pc_class)->required();
    pc->add_option("--dist", pc_dist, "distribution over x (gc)");
    pc->add_option("--pop", pc_pop, "population atoms json (trial)");
    pc->add_option("--hidden", pc_hidden, "hidden distribution json (selectivity)");
    pc->add_option("--candidate", pc_candidates, "candidate distribution json(s)");
    pc->add_option("--m", pc_m);
    pc->add_option("--n", pc_n);
    pc->add_option("--trials", pc_trials);
    pc->add_option("--eps", pc_eps);
    pc->add_option("--csv", pc_csv, "write per-trial rows to this csv");

    // -------------------------------------------------------------- convert
    auto* cv = app.add_subcommand("convert", "witness/tree conversions");
    cv->fallthrough();
    std::string cv_dir, cv_class, cv_witness, cv_tree, cv_depths;
    std::string cv_gamma = "1/2", cv_delta = "1/8";
    std::size_t cv_k = 5, cv_d = 1, cv_D = 1;
    cv->add_option("direction", cv_dir)->required()->check(CLI::IsMember(
        {"rs2tree", "tree2gamma", "ones", "mono"}));
    cv->add_option("--class", cv_class);
    cv->add_option("--witness", cv_witness);
    cv->add_option("--tree", cv_tree, "json {depth, labels(level order)}");
    cv->add_option("--depths", cv_depths, "mono color target depths, comma list");
    cv->add_option("--gamma", cv_gamma);
    cv->add_option("--delta", cv_delta);
    cv->add_option("--k", cv_k);
    cv->add_option("--d", cv_d);
    cv->add_option("--D", cv_D);

    // --------------------------------------------------------------- verify
    auto* vf = app.add_subcommand("verify", "check a witness against a class");
    vf->fallthrough();
    std::string vf_class, vf_witness, vf_gamma, vf_loss = "id", vf_D = "0";
    vf->add_option("class", vf_class)->required();
    vf->add_option("--witness", vf_witness)->required();
    vf->add_option("--gamma", vf_gamma, "override the witness scale");
    vf->add_option("--loss", vf_loss);
    vf->add_option("--D", vf_D, "online witness claim");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            HypothesisClass h;
            auto num = [&](std::size_t i) -> std::size_t {
                require(i < gen_params.size(), "BadRange", "missing generator parameter");
                return static_cast<std::size_t>(std::stoull(gen_params[i]));
            };
            if (gen_name == "powerset") h = powerset_class(num(0));
            else if (gen_name == "threshold") h = threshold_class(num(0));
            else if (gen_name == "interval") h = interval_class(num(0));
            else if (gen_name == "rectangle") h = rectangle_class(num(0), num(1));
            else if (gen_name == "even_interval") h = even_interval_class(num(0));
            else if (gen_name == "h0") h = h0_class(num(0));
            else if (gen_name == "tree") {
                require(!gen_params.empty(), "BadRange", "tree needs gammas and depth");
                GammaSequence gs{parse_rat_list(gen_params[0])};
                h = tree_class(gs, num(1));
            } else if (gen_name == "rational_fn") {
                h = rational_fn_class(parse_rat_list(gen_coeffs), parse_rat_list(gen_xs),
                                      gen_deg_p, gen_deg_q);
            } else {
                fail("BadRange", "unknown generator '" + gen_name + "'");
            }
            out.emit(class_to_json(h).dump(2));
        } else if (*dim) {
            HypothesisClass h = load_class(dim_class, out);
            Json res;
            Json witness;
            if (dim_kind == "vc") {
                auto [d, w] = vc_dim(h);
                res["dim"] = d;
                witness = set_shatter_to_json(w);
            } else if (dim_kind == "littlestone") {
                auto [d, w] = littlestone_dim(h);
                res["dim"] = d;
                witness = seq_shatter_to_json(w);
            } else if (dim_kind == "fat") {
                auto [d, w] = fat_dim(h, Rat::parse(dim_gamma));
                res["dim"] = d;
                res["gamma"] = dim_gamma;
                witness = set_shatter_to_json(w);
            } else if (dim_kind == "seqfat") {
                auto [d, w] = seq_fat_dim(h, Rat::parse(dim_gamma));
                res["dim"] = d;
                res["gamma"] = dim_gamma;
                witness = seq_shatter_to_json(w);
            } else if (dim_kind == "threshold-gamma") {
                auto [d, w] = threshold_dim_gamma(h, Rat::parse(dim_gamma));
                res["dim"] = d;
                res["gamma"] = dim_gamma;
                witness = threshold_witness_to_json(w);
            } else if (dim_kind == "threshold-rs") {
                auto [d, w] = threshold_dim_rs(h, Rat::parse(dim_r), Rat::parse(dim_s));
                res["dim"] = d;
                res["r"] = dim_r;
                res["s"] = dim_s;
                witness = threshold_witness_to_json(w);
            } else if (dim_kind == "graph") {
                auto [d, w] = graph_dim(h, Rat::parse(dim_gamma));
                res["dim"] = d;
                res["gamma"] = dim_gamma;
                witness = graph_witness_to_json(w);
            } else {  // online
                auto [v, w] = online_dim(h, loss_from_string(dim_loss));
                res["value"] = v.str();
                res["value_float"] = v.to_double();
                witness = online_witness_to_json(w);
            }
            if (!dim_witness_out.empty()) write_file(dim_witness_out, witness.dump(2) + "\n");
            else res["witness"] = witness;
            out.emit(res.dump(2));
        } else if (*derive) {
            HypothesisClass result;
            if (derive_op == "expect") {
                require(!derive_family.empty(), "BadRange", "expect needs --family");
                result = expectation_class(
                    family_from_json(Json::parse(read_input(derive_family, out, "family"))));
            } else {
                require(!derive_class.empty(), "BadRange", "derive needs a class argument");
                HypothesisClass h = load_class(derive_class, out);
                if (derive_op == "dual") {
                    result = dual(h);
                } else if (derive_op == "monotone") {
                    result = compose_monotone(
                        h, monotone_map_from_json(Json::parse(read_input(derive_map, out, "map"))));
                } else if (derive_op == "dist" || derive_op == "dualdist") {
                    std::vector<Distribution> ds;
                    for (const auto& f : derive_dists) {
                        auto td = distribution_from_json(Json::parse(read_input(f, out, "dist")));
                        require(td.over == (derive_op == "dist" ? "y" : "x"), "SupportOutOfRange",
                                "distribution 'over' tag does not match the operation");
                        ds.push_back(td.dist);
                    }
                    result = derive_op == "dist" ? distribution_class(h, ds)
                                                 : dual_distribution_class(h, ds);
                } else if (derive_op == "avg") {
                    std::vector<std::vector<std::size_t>> tuples;
                    std::stringstream ss(derive_tuples);
                    std::string item;
                    while (std::getline(ss, item, ';'))
                        if (!item.empty()) tuples.push_back(parse_index_list(item));
                    result = avg_class(h, tuples);
                } else {  // twochoice
                    std::vector<Rat> lambdas;
                    std::vector<std::pair<std::size_t, std::size_t>> pairs;
                    std::stringstream ss(derive_mix);
                    std::string item;
                    while (std::getline(ss, item, ';')) {
                        if (item.empty()) continue;
                        auto c1 = item.find(':'), c2 = item.find(':', item.find(':') + 1);
                        require(c1 != std::string::npos && c2 != std::string::npos, "BadRange",
                                "mix entries look like lambda:y:y'");
                        lambdas.push_back(Rat::parse(item.substr(0, c1)));
                        pairs.emplace_back(std::stoull(item.substr(c1 + 1, c2 - c1 - 1)),
                                           std::stoull(item.substr(c2 + 1)));
                    }
                    result = two_choice_class(h, lambdas, pairs);
                }
            }
            out.emit(class_to_json(result).dump(2));
        } else if (*wd) {
            Json res;
            if (wd_op == "dir") {
                PointCloud a = cloud_from_json(Json::parse(read_input(wd_cloud, out, "cloud")));
                res["width"] = width(a, parse_rat_list(wd_b)).str();
            } else if (wd_op == "rademacher") {
                PointCloud a = cloud_from_json(Json::parse(read_input(wd_cloud, out, "cloud")));
                res["value"] = rademacher_mean_width(a).str();
            } else if (wd_op == "class-rademacher" || wd_op == "seq-class-rademacher") {
                HypothesisClass h = load_class(wd_class, out);
                ClassWidthResult r =
                    wd_op == "class-rademacher"
                        ? class_rademacher(h, wd_n, !wd_sampled, wd_trials, out.seed)
                        : seq_class_rademacher(h, wd_n, !wd_sampled, wd_trials, out.seed);
                res["value"] = r.value.str();
                res["value_float"] = r.value.to_double();
                res["exact"] = r.exact;
                res["xbar"] = r.xbar;
            } else if (wd_op == "gaussian") {
                PointCloud a = cloud_from_json(Json::parse(read_input(wd_cloud, out, "cloud")));
                auto r = gaussian_mean_width(a, wd_trials, out.seed);
                res["estimate"] = r.estimate;
                res["std_error"] = r.std_error;
                res["trials"] = r.trials;
                res["seed"] = r.seed;
            } else {  // covering
                PointCloud a = cloud_from_json(Json::parse(read_input(wd_cloud, out, "cloud")));
                auto r = covering_number(a, Rat::parse(wd_gamma),
                                         wd_norm == "l2" ? Norm::L2 : Norm::Linf);
                res["count"] = r.count;
                res["exact"] = r.exact;
                res["centers"] = r.centers;
            }
            out.emit(res.dump(2));
        } else if (*bd) {
            auto eval_bound = [&](const std::string& name) -> double {
                if (name == "fat-pac") return fat_pac_bound(bd_d, bd_eps, bd_delta, bd_C);
                if (name == "expectation-pac")
                    return expectation_pac_bound(bd_d, bd_eps, bd_delta, bd_concept, bd_C);
                if (name == "gc-rademacher") return gc_rademacher_bound(bd_n, bd_R, bd_delta).first;
                if (name == "gc-expectation") return gc_expectation_bound(bd_N, bd_eps, bd_delta);
                if (name == "vc-rademacher") return vc_rademacher(bd_d, bd_n);
                if (name == "covering-fat") return covering_fat_bound(bd_d, bd_gamma, bd_n);
                if (name == "expectation-regret")
                    return expectation_regret_bound(bd_d, bd_gamma, bd_n);
                if (name == "littlestone-regret") return littlestone_regret(bd_d, bd_T, bd_C);
                if (name == "aggregation-j") return aggregation_J(bd_m, bd_dstar, bd_quadratic);
                if (name == "sigmod-baseline") return sigmod_baseline(bd_lambda, bd_eps);
                fail("BadRange", "bound '" + name + "' has no scalar form");
            };
            if (!bd_sweep.empty()) {
                // evaluate with explicit parameter values so sweep workers share nothing
                auto eval_at = [&](const std::string& param, double v) {
                    double d = bd_d, eps = bd_eps, delta = bd_delta, gamma = bd_gamma;
                    double n = bd_n, T = bd_T, lambda = bd_lambda, m = bd_m, dstar = bd_dstar;
                    if (param == "d") d = v;
                    else if (param == "eps") eps = v;
                    else if (param == "delta") delta = v;
                    else if (param == "gamma") gamma = v;
                    else if (param == "n") n = v;
                    else if (param == "T") T = v;
                    else if (param == "lambda") lambda = v;
                    else if (param == "m") m = v;
                    else if (param == "d-star") dstar = v;
                    else fail("BadRange", "cannot sweep '" + param + "'");
                    if (bd_name == "fat-pac") return fat_pac_bound(d, eps, delta, bd_C);
                    if (bd_name == "expectation-pac")
                        return expectation_pac_bound(d, eps, delta, bd_concept, bd_C);
                    if (bd_name == "gc-rademacher")
                        return gc_rademacher_bound(n, bd_R, delta).first;
                    if (bd_name == "gc-expectation") return gc_expectation_bound(bd_N, eps, delta);
                    if (bd_name == "vc-rademacher") return vc_rademacher(d, n);
                    if (bd_name == "covering-fat") return covering_fat_bound(d, gamma, n);
                    if (bd_name == "expectation-regret")
                        return expectation_regret_bound(d, gamma, n);
                    if (bd_name == "littlestone-regret") return littlestone_regret(d, T, bd_C);
                    if (bd_name == "aggregation-j") return aggregation_J(m, dstar, bd_quadratic);
                    if (bd_name == "dual-dist-chain")
                        return dual_dist_chain(d, dstar, gamma, bd_L, delta).value;
                    if (bd_name == "sigmod-baseline") return sigmod_baseline(lambda, eps);
                    fail("BadRange", "bound '" + bd_name + "' has no scalar form");
                };
                require(bd_steps >= 1, "BadRange", "need steps >= 1");
                std::vector<double> xs(bd_steps), ys(bd_steps);
                for (std::size_t i = 0; i < bd_steps; ++i)
                    xs[i] = bd_from + (bd_to - bd_from) * static_cast<double>(i) /
                                          static_cast<double>(std::max<std::size_t>(1, bd_steps - 1));
                std::size_t nthreads = std::max<std::size_t>(1, std::min(jobs, bd_steps));
                std::vector<std::thread> pool;
                std::vector<std::string> errors(nthreads);
                for (std::size_t w = 0; w < nthreads; ++w)
                    pool.emplace_back([&, w]() {
                        for (std::size_t i = w; i < bd_steps; i += nthreads) {
                            try {
                                ys[i] = eval_at(bd_sweep, xs[i]);
                            } catch (const Error& e) {
                                errors[w] = e.what();
                            }
                        }
                    });
                for (auto& t : pool) t.join();
                for (const auto& e : errors) require(e.empty(), "BadRange", e);
                std::ostringstream csv;
                csv << bd_sweep << ",value\n";
                for (std::size_t i = 0; i < bd_steps; ++i) csv << xs[i] << "," << ys[i] << "\n";
                out.emit(csv.str());
            } else if (bd_name == "regret") {
                std::vector<std::pair<double, double>> table;
                std::stringstream ss(bd_table);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    auto colon = item.find(':');
                    require(colon != std::string::npos, "BadTable", "table entries are gamma:d");
                    table.emplace_back(std::stod(item.substr(0, colon)),
                                       std::stod(item.substr(colon + 1)));
                }
                std::vector<double> grid;
                if (!bd_grid.empty()) {
                    std::stringstream gs(bd_grid);
                    while (std::getline(gs, item, ',')) grid.push_back(std::stod(item));
                } else {
                    for (const auto& [g, d] : table) grid.push_back(g);
                }
                auto [lo, hi] = regret_bounds(table, bd_T, grid);
                Json res{{"lower", lo}, {"upper", hi}, {"T", bd_T}};
                out.emit(res.dump(2));
            } else if (bd_name == "gc-rademacher") {
                auto [e, c] = gc_rademacher_bound(bd_n, bd_R, bd_delta);
                Json res{{"eps_out", e}, {"conf_out", c}};
                out.emit(res.dump(2));
            } else if (bd_name == "dual-dist-chain") {
                BoundReport rep = dual_dist_chain(bd_d, bd_dstar, bd_gamma, bd_L, bd_delta);
                Json res{{"name", rep.name}, {"value", rep.value}, {"formula", rep.formula}};
                res["inputs"] = rep.inputs;
                res["note"] = "up to the undetermined constant";
                out.emit(res.dump(2));
            } else {
                Json res{{"name", bd_name}, {"value", eval_bound(bd_name)},
                         {"note", "up to the undetermined constant"}};
                out.emit(res.dump(2));
            }
        } else if (*gm) {
            HypothesisClass h = load_class(gm_class, out);
            LossFunction loss = loss_from_string(gm_loss);
            if (gm_mode == "realizable") {
                GameValue gv;
                if (gm_pred == "exact")
                    gv = realizable_value(h, loss, gm_T, std::nullopt, true);
                else if (!gm_pred.empty())
                    gv = realizable_value(h, loss, gm_T, parse_rat_list(gm_pred));
                else
                    gv = realizable_value(h, loss, gm_T);
                out.emit(game_value_json(gv).dump(2));
            } else if (gm_mode == "agnostic") {
                std::vector<Rat> pred =
                    gm_pred.empty() ? default_prediction_grid(h) : parse_rat_list(gm_pred);
                std::vector<Rat> label =
                    gm_label.empty() ? default_prediction_grid(h) : parse_rat_list(gm_label);
                GameValue gv = agnostic_minimax(h, loss, gm_T, pred, label, max_states);
                Json j = game_value_json(gv);
                Json mix = Json::array();
                for (const Rat& p : gv.first_move_mixture) mix.push_back(p.str());
                j["first_move_mixture"] = mix;
                out.emit(j.dump(2));
            } else {  // simulate
                LearnerPolicy lp = gm_learner == "ftl" ? LearnerPolicy::FollowTheLeader
                                                       : LearnerPolicy::MinimaxExtract;
                AdversaryPolicy ap;
                if (gm_adversary.rfind("consistent:", 0) == 0) {
                    ap.kind = AdversaryPolicy::Kind::Consistent;
                    ap.h0 = std::stoull(gm_adversary.substr(11));
                } else if (gm_adversary == "worst") {
                    ap.kind = AdversaryPolicy::Kind::WorstCaseExtract;
                } else if (gm_adversary == "script") {
                    ap.kind = AdversaryPolicy::Kind::Scripted;
                    Json sj = Json::parse(read_input(gm_script, out, "script"));
                    for (const auto& row : sj)
                        ap.script.emplace_back(row.at(0).get<std::size_t>(),
                                               rat_from_json(row.at(1)));
                } else {
                    fail("PolicyError", "adversary must be consistent:<h0>, worst, or script");
                }
                Transcript tr = run_game(h, loss, lp, ap, gm_T, out.seed);
                Json rounds = Json::array();
                Rat total(0);
                for (const auto& [x, y, yp] : tr.rounds) {
                    rounds.push_back(Json::array({x, y.str(), yp.str()}));
                    total += loss.eval((yp - y).abs());
                }
                Json res{{"rounds", rounds},
                         {"total_loss", total.str()},
                         {"regret", regret(tr, h, loss).str()}};
                out.emit(res.dump(2));
            }
        } else if (*pc) {
            HypothesisClass h = load_class(pc_class, out);
            Json res;
            std::ostringstream csv;
            if (pc_mode == "gc") {
                auto td = distribution_from_json(Json::parse(read_input(pc_dist, out, "dist")));
                require(td.over == "x", "SupportOutOfRange", "gc needs a distribution over x");
                double frac =
                    gc_estimate(h, td.dist, pc_m, pc_trials, Rat::parse(pc_eps), out.seed);
                res = {{"fraction", frac}, {"m", pc_m}, {"trials", pc_trials},
                       {"eps", pc_eps},    {"seed", out.seed}};
                double sigma = std::sqrt(std::max(0.0, frac * (1 - frac)) /
                                         static_cast<double>(pc_trials));
                res["three_sigma"] = 3 * sigma;
            } else if (pc_mode == "trial") {
                Json pj = Json::parse(read_input(pc_pop, out, "pop"));
                FiniteDistributionP p;
                for (const auto& row : pj.at("atoms"))
                    p.atoms.push_back({SamplePoint{row.at(0).get<std::size_t>(),
                                                   rat_from_json(row.at(1))},
                                       rat_from_json(row.at(2))});
                double frac = pac_trial(h, p, pc_n, pc_trials, Rat::parse(pc_eps), out.seed);
                res = {{"fraction", frac}, {"n", pc_n}, {"trials", pc_trials},
                       {"eps", pc_eps},    {"seed", out.seed}};
                double sigma = std::sqrt(std::max(0.0, frac * (1 - frac)) /
                                         static_cast<double>(pc_trials));
                res["three_sigma"] = 3 * sigma;
            } else {  // selectivity
                auto hidden =
                    distribution_from_json(Json::parse(read_input(pc_hidden, out, "hidden")));
                require(hidden.over == "x", "SupportOutOfRange",
                        "hidden distribution must be over x");
                std::vector<Distribution> cands;
                for (const auto& f : pc_candidates) {
                    auto td = distribution_from_json(Json::parse(read_input(f, out, "candidate")));
                    require(td.over == "x", "SupportOutOfRange", "candidates must be over x");
                    cands.push_back(td.dist);
                }
                auto rep = selectivity_demo(h, hidden.dist, cands, pc_n, pc_trials, out.seed);
                res = {{"mean_excess", rep.mean_excess}, {"n", rep.n},
                       {"trials", rep.trials},           {"seed", rep.seed}};
                csv << "trial,excess\n";
                for (std::size_t t = 0; t < rep.excesses.size(); ++t)
                    csv << t << "," << rep.excesses[t].to_double() << "\n";
            }
            if (!pc_csv.empty() && csv.tellp() > 0) write_file(pc_csv, csv.str());
            out.emit(res.dump(2));
        } else if (*cv) {
            if (cv_dir == "rs2tree") {
                HypothesisClass h = load_class(cv_class, out);
                auto w = threshold_witness_from_json(
                    Json::parse(read_input(cv_witness, out, "witness")));
                out.emit(seq_shatter_to_json(tree_from_rs_threshold(h, w)).dump(2));
            } else if (cv_dir == "tree2gamma") {
                HypothesisClass h = load_class(cv_class, out);
                auto w =
                    seq_shatter_from_json(Json::parse(read_input(cv_witness, out, "witness")));
                auto res = gamma_threshold_from_tree(h, w, Rat::parse(cv_gamma),
                                                     Rat::parse(cv_delta), cv_k, cv_d);
                out.emit(threshold_witness_to_json(res).dump(2));
            } else if (cv_dir == "ones") {
                Json tj = Json::parse(read_input(cv_tree, out, "tree"));
                BinaryTree<std::size_t> t;
                t.depth = tj.at("depth").get<std::size_t>();
                t.nodes = tj.at("labels").get<std::vector<std::size_t>>();
                SubtreeEmbedding e = ones_subtree(t, cv_D);
                Json res{{"depth", e.depth}, {"host", e.host}};
                out.emit(res.dump(2));
            } else {  // mono
                Json tj = Json::parse(read_input(cv_tree, out, "tree"));
                BinaryTree<std::size_t> t;
                t.depth = tj.at("depth").get<std::size_t>();
                t.nodes = tj.at("labels").get<std::vector<std::size_t>>();
                auto [color, e] = monochromatic_subtree(t, parse_index_list(cv_depths));
                Json res{{"color", color}, {"depth", e.depth}, {"host", e.host}};
                out.emit(res.dump(2));
            }
        } else if (*vf) {
            HypothesisClass h = load_class(vf_class, out);
            Json wj = Json::parse(read_input(vf_witness, out, "witness"));
            std::string type = wj.at("type").get<std::string>();
            bool ok = false;
            if (type == "set_shatter") {
                auto w = set_shatter_from_json(wj);
                ok = verify_set_shatter(h, w, vf_gamma.empty() ? w.gamma : Rat::parse(vf_gamma));
            } else if (type == "seq_shatter") {
                auto w = seq_shatter_from_json(wj);
                ok = verify_seq_shatter(h, w, vf_gamma.empty() ? w.gamma : Rat::parse(vf_gamma));
            } else if (type == "threshold") {
                ok = verify_threshold(h, threshold_witness_from_json(wj));
            } else if (type == "graph") {
                ok = verify_graph_dim(h, graph_witness_from_json(wj));
            } else if (type == "online") {
                auto w = online_witness_from_json(wj);
                ok = verify_online_witness(h, w, loss_from_string(vf_loss), Rat::parse(vf_D));
            } else {
                fail("ShapeMismatch", "unknown witness type '" + type + "'");
            }
            Json res{{"ok", ok}};
            out.emit(res.dump(2));
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        Json diag{{"error", e.code()}, {"message", e.what()}};
        std::cerr << diag.dump() << "\n";
        return Error::is_resource_cap(e.code()) ? 3 : 2;
    } catch (const std::exception& e) {
        Json diag{{"error", "Invalid"}, {"message", e.what()}};
        std::cerr << diag.dump() << "\n";
        return 2;
    }
    return 0;
}
