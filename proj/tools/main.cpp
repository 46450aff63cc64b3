// Command-line front end: every analysis is a subcommand writing CSV/JSON
// artifacts plus a run manifest into --out. Exit codes: 0 success, 2 for
// flag or precondition errors (diagnostic names the violated condition),
// 1 for internal failures.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stosep/bounds.hpp"
#include "stosep/clustering.hpp"
#include "stosep/corrector.hpp"
#include "stosep/dimension.hpp"
#include "stosep/io.hpp"
#include "stosep/preprocess.hpp"
#include "stosep/sampling.hpp"
#include "stosep/separability.hpp"
#include "stosep/types.hpp"

namespace {

using nlohmann::ordered_json;
using namespace stosep;

using FlagList = std::vector<std::pair<std::string, std::string>>;

std::string fmt(double v) { return io::format_double(v); }

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

void write_json(const std::string& path, const ordered_json& j) {
    io::write_text(path, j.dump(2) + "\n");
}

void emit_manifest(const std::string& out, const std::string& subcommand, const FlagList& flags,
                   std::uint64_t seed, const std::vector<std::string>& inputs) {
    io::RunManifest m;
    m.subcommand = subcommand;
    m.flags = flags;
    m.seed = seed;
    for (const std::string& p : inputs)
        m.inputs.emplace_back(p, io::file_digest(p));
    write_json(out_path(out, "manifest.json"), io::manifest_to_json(m));
}

// "a:b:step" (inclusive range) or comma list or single value.
std::vector<double> parse_double_list(const std::string& s, const char* flag) {
    std::vector<double> out;
    auto parse_one = [&](const std::string& tok) {
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (used != tok.size())
                throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw DegenerateInput(std::string(flag) + ": cannot parse '" + tok + "' as a number");
        }
    };
    if (s.find(':') != std::string::npos) {
        const std::size_t c1 = s.find(':');
        const std::size_t c2 = s.find(':', c1 + 1);
        if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
            throw DegenerateInput(std::string(flag) + ": range must be start:stop:step");
        const double a = parse_one(s.substr(0, c1));
        const double b = parse_one(s.substr(c1 + 1, c2 - c1 - 1));
        const double step = parse_one(s.substr(c2 + 1));
        if (!(step > 0.0) || b < a)
            throw DegenerateInput(std::string(flag) + ": need stop >= start and step > 0");
        for (int i = 0;; ++i) {
            const double v = a + step * i;
            if (v > b + 1e-12 * std::max(1.0, std::abs(b)))
                break;
            out.push_back(v);
        }
    } else {
        std::size_t start = 0;
        while (start <= s.size()) {
            const std::size_t comma = s.find(',', start);
            const std::string tok =
                comma == std::string::npos ? s.substr(start) : s.substr(start, comma - start);
            out.push_back(parse_one(tok));
            if (comma == std::string::npos)
                break;
            start = comma + 1;
        }
    }
    if (out.empty())
        throw DegenerateInput(std::string(flag) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_dim_list(const std::string& s, const char* flag) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(s, flag)) {
        if (!(v >= 1.0) || v != std::floor(v))
            throw DegenerateInput(std::string(flag) + ": dimensions must be positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

RetentionRule parse_retention(const std::string& rule, double param, bool param_given) {
    if (rule == "kaiser")
        return RetentionRule::kaiser(param_given ? param : 1.0);
    if (rule == "varfrac")
        return RetentionRule::variance_fraction(param_given ? param : 0.95);
    if (rule == "cond")
        return RetentionRule::condition_number(param_given ? param : 10.0);
    throw DegenerateInput("--rule: expected one of kaiser, varfrac, cond");
}

bounds::AsymptoticVariant parse_variant(const std::string& v) {
    if (v == "n")
        return bounds::AsymptoticVariant::n;
    if (v == "n-1")
        return bounds::AsymptoticVariant::n_minus_1;
    throw DegenerateInput("--variant: expected n or n-1");
}

// ---- subcommand bodies ----

struct BoundsTableArgs {
    double alpha = 0.8, psi = 0.01;
    std::string dims = "10:80:10";
    std::string out = "out";
};

void run_bounds_table(const BoundsTableArgs& a) {
    const std::vector<std::size_t> ns = parse_dim_list(a.dims, "--dims");
    const auto rows = bounds::separation_table(ns, a.alpha, a.psi);

    std::string csv = "n,M1,M2\n";
    ordered_json jrows = ordered_json::array();
    for (const auto& r : rows) {
        csv += std::to_string(r.n) + "," + fmt(r.M1) + "," + fmt(r.M2) + "\n";
        jrows.push_back({{"n", r.n}, {"M1", r.M1}, {"M2", r.M2}});
    }
    io::write_text(out_path(a.out, "table.csv"), csv);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = a.alpha;
    j["psi"] = a.psi;
    j["rows"] = std::move(jrows);
    write_json(out_path(a.out, "table.json"), j);
    emit_manifest(a.out, "bounds-table",
                  {{"alpha", fmt(a.alpha)}, {"psi", fmt(a.psi)}, {"dims", a.dims}}, 0, {});
}

struct CheckSepArgs {
    double alpha = 0.8;
    std::size_t max_pairs = 1000;
    std::string input, out = "out";
};

void run_check_separability(const CheckSepArgs& a) {
    const DataMatrix X = io::read_csv(a.input);
    const SeparabilityReport rep = dataset_separability(X, a.alpha, a.max_pairs);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["alpha"] = rep.alpha;
    j["points"] = rep.points;
    j["dimension"] = X.cols;
    j["fully_separable"] = rep.fully_separable;
    j["total_violations"] = rep.total_violations;
    ordered_json pairs = ordered_json::array();
    for (const auto& [x, y] : rep.violating_pairs)
        pairs.push_back({x, y});
    j["violating_pairs"] = std::move(pairs);
    write_json(out_path(a.out, "report.json"), j);

    std::string csv = "index,violations,frequency\n";
    for (std::size_t i = 0; i < rep.points; ++i)
        csv += std::to_string(i) + "," + std::to_string(rep.violation_counts[i]) + "," +
               fmt(rep.violation_frequencies[i]) + "\n";
    io::write_text(out_path(a.out, "violations.csv"), csv);
    emit_manifest(a.out, "check-separability",
                  {{"alpha", fmt(a.alpha)}, {"max-pairs", std::to_string(a.max_pairs)}}, 0,
                  {a.input});
}

struct EstimateDimArgs {
    double alpha = 0.8;
    std::string alphas;  // optional grid; overrides --alpha
    std::string variant = "n";
    bool dump_py = false;
    std::string input, out = "out";
};

ordered_json estimate_to_json(const dimension::DimensionEstimate& e) {
    ordered_json j;
    j["alpha"] = e.alpha;
    j["n_eff"] = e.n_eff;
    j["p_bar"] = e.p_bar;
    j["saturated_zero"] = e.saturated_zero;
    j["saturated_one"] = e.saturated_one;
    return j;
}

void run_estimate_dim(const EstimateDimArgs& a) {
    const DataMatrix X = io::read_csv(a.input);
    const bounds::AsymptoticVariant variant = parse_variant(a.variant);

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["variant"] = a.variant;
    const dimension::DimensionEstimate* dump_source = nullptr;
    dimension::DimensionEstimate single;
    dimension::GridEstimate grid;
    if (a.alphas.empty()) {
        single = dimension::estimate_dimension(X, a.alpha, variant);
        j.update(estimate_to_json(single));
        dump_source = &single;
    } else {
        grid = dimension::estimate_dimension_grid(X, parse_double_list(a.alphas, "--alphas"),
                                                  variant);
        ordered_json per = ordered_json::array();
        for (const auto& e : grid.per_alpha)
            per.push_back(estimate_to_json(e));
        j["per_alpha"] = std::move(per);
        j["n_eff_mean"] = grid.n_eff_mean;
        dump_source = &grid.per_alpha.front();
    }
    write_json(out_path(a.out, "estimate.json"), j);

    if (a.dump_py) {
        std::string csv = "index,py\n";
        for (std::size_t i = 0; i < dump_source->per_point.size(); ++i)
            csv += std::to_string(i) + "," + fmt(dump_source->per_point[i]) + "\n";
        io::write_text(out_path(a.out, "py.csv"), csv);
    }
    emit_manifest(a.out, "estimate-dim",
                  {{"alpha", fmt(a.alpha)},
                   {"alphas", a.alphas},
                   {"variant", a.variant},
                   {"dump-py", a.dump_py ? "true" : "false"}},
                  0, {a.input});
}

struct ClusterQualityArgs {
    std::size_t k = 2;
    std::uint64_t seed = 0;
    double kappa = 10.0;  // 0 disables whitening
    std::size_t dim = 0;  // gamma dimension override; 0 = dimension of the clustered space
    std::string input, out = "out";
};

void run_cluster_quality(const ClusterQualityArgs& a) {
    const DataMatrix X = io::read_csv(a.input);
    DataMatrix points;
    if (a.kappa > 0.0)
        points = whiten_auto(X, RetentionRule::condition_number(a.kappa)).first;
    else
        points = X;

    const clustering::Clustering cl = clustering::cluster_points(points, a.k, a.seed);
    const clustering::PairwiseGoodness pg = clustering::pairwise_goodness(points, cl.assignments,
                                                                          a.dim);

    std::vector<std::size_t> sizes(a.k, 0);
    for (std::size_t c : cl.assignments)
        ++sizes[c];

    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["k"] = a.k;
    j["dimension_used"] = pg.stats.empty() ? points.cols : pg.stats.front().n;
    j["whitened"] = a.kappa > 0.0;
    ordered_json clusters = ordered_json::array();
    for (std::size_t c = 0; c < a.k; ++c)
        clusters.push_back({{"size", sizes[c]}, {"radius", cl.radii[c]}});
    j["clusters"] = std::move(clusters);
    ordered_json cells = ordered_json::array();
    for (std::size_t i = 0; i < pg.k; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < pg.k; ++c) {
            const clustering::GoodnessResult& g = pg.at(i, c);
            ordered_json cell;
            cell["outcome"] = clustering::outcome_name(g.outcome);
            cell["rho"] = pg.stats[i * pg.k + c].rho;
            if (g.outcome == clustering::OverlapOutcome::overlapping) {
                cell["R"] = g.R;
                cell["gamma"] = g.gamma;
            } else if (g.outcome == clustering::OverlapOutcome::disjoint) {
                cell["gamma"] = 0.0;
            }
            row.push_back(std::move(cell));
        }
        cells.push_back(std::move(row));
    }
    j["pairs"] = std::move(cells);
    write_json(out_path(a.out, "quality.json"), j);

    std::string csv = "index,cluster\n";
    for (std::size_t i = 0; i < cl.assignments.size(); ++i)
        csv += std::to_string(i) + "," + std::to_string(cl.assignments[i]) + "\n";
    io::write_text(out_path(a.out, "assignments.csv"), csv);
    emit_manifest(a.out, "cluster-quality",
                  {{"k", std::to_string(a.k)},
                   {"seed", std::to_string(a.seed)},
                   {"kappa", fmt(a.kappa)},
                   {"dim", std::to_string(a.dim)}},
                  a.seed, {a.input});
}

struct TrainArgs {
    std::string mode = "single";
    double alpha = 0.8;
    double quantile = -1.0;  // < 0 means midpoint rule
    std::size_t k = 1;
    std::uint64_t seed = 0;
    std::string rule = "cond";
    double rule_param = 0.0;
    bool rule_param_given = false;
    std::string errors, normals, out = "out";
};

void run_train_corrector(const TrainArgs& a) {
    corrector::TrainOptions opt;
    opt.mode = corrector::kind_from_name(a.mode);
    opt.alpha = a.alpha;
    opt.rule = a.quantile < 0.0 ? corrector::FisherThreshold::midpoint()
                                : corrector::FisherThreshold::quantile(a.quantile);
    opt.k = a.k;
    opt.seed = a.seed;
    opt.retention = parse_retention(a.rule, a.rule_param, a.rule_param_given);

    const DataMatrix err = io::read_csv(a.errors);
    const DataMatrix norm = io::read_csv(a.normals);
    const corrector::CorrectorEnsemble ens = corrector::train_pipeline(err, norm, opt);
    write_json(out_path(a.out, "corrector.json"), io::ensemble_to_json(ens));

    const corrector::EvaluationReport rep = corrector::evaluate(ens, err, norm);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["members"] = ens.members.size();
    j["retained_dimension"] = ens.preprocessing.retained;
    j["training_errors_corrected"] = rep.errors_corrected;
    j["training_damage"] = rep.damage;
    j["training_overlap_count"] = rep.overlap_count;
    write_json(out_path(a.out, "training.json"), j);
    emit_manifest(a.out, "train-corrector",
                  {{"mode", a.mode},
                   {"alpha", fmt(a.alpha)},
                   {"quantile", fmt(a.quantile)},
                   {"k", std::to_string(a.k)},
                   {"seed", std::to_string(a.seed)},
                   {"rule", a.rule},
                   {"rule-param", a.rule_param_given ? fmt(a.rule_param) : "default"}},
                  a.seed, {a.errors, a.normals});
}

struct ApplyArgs {
    std::string model;
    std::string input;    // plain batch mode
    std::string errors, normals;  // evaluation mode
    std::string out = "out";
};

void run_apply_corrector(const ApplyArgs& a) {
    const corrector::CorrectorEnsemble ens =
        io::ensemble_from_json(nlohmann::json::parse(io::read_text(a.model)));

    const bool eval_mode = !a.errors.empty() || !a.normals.empty();
    if (eval_mode) {
        if (a.errors.empty() || a.normals.empty())
            throw DegenerateInput("apply-corrector: evaluation needs both --errors and --normals");
        if (!a.input.empty())
            throw DegenerateInput("apply-corrector: pass either a data file or --errors/--normals, not both");
        const DataMatrix err = io::read_csv(a.errors);
        const DataMatrix norm = io::read_csv(a.normals);
        const corrector::EvaluationReport rep = corrector::evaluate(ens, err, norm);
        ordered_json j;
        j["schema_version"] = kSchemaVersion;
        j["errors_total"] = rep.errors_total;
        j["errors_flagged"] = rep.errors_flagged;
        j["errors_corrected"] = rep.errors_corrected;
        j["normals_total"] = rep.normals_total;
        j["normals_flagged"] = rep.normals_flagged;
        j["damage"] = rep.damage;
        j["overlap_count"] = rep.overlap_count;
        write_json(out_path(a.out, "evaluation.json"), j);
        emit_manifest(a.out, "apply-corrector", {{"model", a.model}}, 0,
                      {a.model, a.errors, a.normals});
        return;
    }

    if (a.input.empty())
        throw DegenerateInput("apply-corrector: need a data file or --errors/--normals");
    const DataMatrix X = io::read_csv(a.input);
    const std::vector<corrector::Decision> decisions = corrector::apply_batch(ens, X);
    std::string csv = "index,high_risk,firing\n";
    std::size_t flagged = 0;
    for (std::size_t i = 0; i < decisions.size(); ++i) {
        const corrector::Decision& d = decisions[i];
        flagged += d.high_risk ? 1 : 0;
        std::string firing;
        for (std::size_t f : d.firing) {
            if (!firing.empty())
                firing += ';';
            firing += std::to_string(f);
        }
        csv += std::to_string(i) + "," + (d.high_risk ? "1" : "0") + "," + firing + "\n";
    }
    io::write_text(out_path(a.out, "decisions.csv"), csv);
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["total"] = decisions.size();
    j["flagged"] = flagged;
    j["fraction"] = static_cast<double>(flagged) / static_cast<double>(decisions.size());
    write_json(out_path(a.out, "summary.json"), j);
    emit_manifest(a.out, "apply-corrector", {{"model", a.model}}, 0, {a.model, a.input});
}

struct SampleArgs {
    std::string kind = "sphere";
    std::size_t n = 2, m = 1;
    std::uint64_t seed = 0;
    std::string out = "out";
};

void run_sample(const SampleArgs& a) {
    SampleSpec spec;
    spec.kind = sample_kind_from_name(a.kind);
    spec.n = a.n;
    spec.m = a.m;
    spec.seed = a.seed;
    const DataMatrix X = sample(spec);
    io::write_csv(out_path(a.out, "sample.csv"), X);
    emit_manifest(a.out, "sample",
                  {{"kind", a.kind},
                   {"n", std::to_string(a.n)},
                   {"m", std::to_string(a.m)},
                   {"seed", std::to_string(a.seed)}},
                  a.seed, {});
}

struct ProfileArgs {
    std::string alphas = "0:0.95:0.05";
    std::string input, out = "out";
};

void run_profile(const ProfileArgs& a) {
    const DataMatrix X = io::read_csv(a.input);
    const std::vector<double> alphas = parse_double_list(a.alphas, "--alphas");
    const std::vector<ProfilePoint> curve = separability_profile(X, alphas);
    std::string csv = "alpha,separable_fraction\n";
    for (const ProfilePoint& p : curve)
        csv += fmt(p.alpha) + "," + fmt(p.separable_fraction) + "\n";
    io::write_text(out_path(a.out, "profile.csv"), csv);
    emit_manifest(a.out, "profile", {{"alphas", a.alphas}}, 0, {a.input});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic separation analysis toolkit"};
    app.require_subcommand(1);

    BoundsTableArgs bt;
    CLI::App* c_bt = app.add_subcommand("bounds-table",
                                        "certified sample-size table from the cap bounds");
    c_bt->add_option("--alpha", bt.alpha, "separability threshold");
    c_bt->add_option("--psi", bt.psi, "failure budget");
    c_bt->add_option("--dims", bt.dims, "dimensions, start:stop:step or comma list");
    c_bt->add_option("--out", bt.out, "output directory");
    c_bt->callback([&] { run_bounds_table(bt); });

    CheckSepArgs cs;
    CLI::App* c_cs = app.add_subcommand("check-separability",
                                        "audit a dataset for threshold separability");
    c_cs->add_option("input", cs.input, "CSV of points")->required();
    c_cs->add_option("--alpha", cs.alpha, "separability threshold");
    c_cs->add_option("--max-pairs", cs.max_pairs, "cap on listed violating pairs");
    c_cs->add_option("--out", cs.out, "output directory");
    c_cs->callback([&] { run_check_separability(cs); });

    EstimateDimArgs ed;
    CLI::App* c_ed = app.add_subcommand("estimate-dim", "effective dimension from inseparability");
    c_ed->add_option("input", ed.input, "CSV of points")->required();
    c_ed->add_option("--alpha", ed.alpha, "separability threshold");
    c_ed->add_option("--alphas", ed.alphas, "threshold grid (overrides --alpha)");
    c_ed->add_option("--variant", ed.variant, "sphere formula denominator: n or n-1");
    c_ed->add_flag("--dump-py", ed.dump_py, "write per-point frequencies to py.csv");
    c_ed->add_option("--out", ed.out, "output directory");
    c_ed->callback([&] { run_estimate_dim(ed); });

    ClusterQualityArgs cq;
    CLI::App* c_cq = app.add_subcommand("cluster-quality", "cluster overlap goodness matrix");
    c_cq->add_option("input", cq.input, "CSV of points")->required();
    c_cq->add_option("--k", cq.k, "number of clusters");
    c_cq->add_option("--seed", cq.seed, "clustering seed");
    c_cq->add_option("--kappa", cq.kappa, "whitening condition number; 0 = no whitening");
    c_cq->add_option("--dim", cq.dim, "dimension override for gamma");
    c_cq->add_option("--out", cq.out, "output directory");
    c_cq->callback([&] { run_cluster_quality(cq); });

    TrainArgs tr;
    CLI::App* c_tr = app.add_subcommand("train-corrector", "train a corrector ensemble");
    c_tr->add_option("--errors", tr.errors, "CSV of error situations")->required();
    c_tr->add_option("--normals", tr.normals, "CSV of normal situations")->required();
    c_tr->add_option("--mode", tr.mode, "single, fisher, or clustered");
    c_tr->add_option("--alpha", tr.alpha, "threshold for single-point correctors");
    c_tr->add_option("--quantile", tr.quantile, "damage-cap quantile for discriminant thresholds");
    c_tr->add_option("--k", tr.k, "clusters for clustered mode");
    c_tr->add_option("--seed", tr.seed, "clustering seed");
    c_tr->add_option("--rule", tr.rule, "whitening retention rule: kaiser, varfrac, cond");
    CLI::Option* rp = c_tr->add_option("--rule-param", tr.rule_param, "retention rule parameter");
    c_tr->add_option("--out", tr.out, "output directory");
    c_tr->callback([&] {
        tr.rule_param_given = rp->count() > 0;
        run_train_corrector(tr);
    });

    ApplyArgs ap;
    CLI::App* c_ap = app.add_subcommand("apply-corrector", "apply or evaluate a trained ensemble");
    c_ap->add_option("--model", ap.model, "corrector.json from train-corrector")->required();
    c_ap->add_option("input", ap.input, "CSV of points to score");
    c_ap->add_option("--errors", ap.errors, "CSV of error situations (evaluation mode)");
    c_ap->add_option("--normals", ap.normals, "CSV of normal situations (evaluation mode)");
    c_ap->add_option("--out", ap.out, "output directory");
    c_ap->callback([&] { run_apply_corrector(ap); });

    SampleArgs sa;
    CLI::App* c_sa = app.add_subcommand("sample", "draw a seeded sample");
    c_sa->add_option("--kind", sa.kind, "ball, sphere, gaussian, or cube");
    c_sa->add_option("--n", sa.n, "dimension")->required();
    c_sa->add_option("--m", sa.m, "number of points")->required();
    c_sa->add_option("--seed", sa.seed, "sampling seed");
    c_sa->add_option("--out", sa.out, "output directory");
    c_sa->callback([&] { run_sample(sa); });

    ProfileArgs pr;
    CLI::App* c_pr = app.add_subcommand("profile", "separable fraction across thresholds");
    c_pr->add_option("input", pr.input, "CSV of points")->required();
    c_pr->add_option("--alphas", pr.alphas, "threshold grid, start:stop:step or comma list");
    c_pr->add_option("--out", pr.out, "output directory");
    c_pr->callback([&] { run_profile(pr); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
