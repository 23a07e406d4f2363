// Command line front end: generators, schemes, and audits wired into
// reproducible runs. Exit codes: 0 pass, 2 audit violations, 3 input error.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "metrembed/beta.hpp"
#include "metrembed/embed_general.hpp"
#include "metrembed/embed_tree.hpp"
#include "metrembed/graph.hpp"
#include "metrembed/instances.hpp"
#include "metrembed/io.hpp"
#include "metrembed/jl.hpp"
#include "metrembed/labeling.hpp"

namespace me = metrembed;
using me::Json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolations = 2;
constexpr int kExitInputError = 3;

struct CommonOpts {
    std::string in, out, report_out, order_path, kernel;
    std::string scheme, beta_kind = "exp";
    int t = 1;
    double eps = 0.5, p = 2.0, tol = 1e-9;
    double c_jl = 8.0;
    std::uint64_t seed = 0;
    bool p_explicit = false;
};

Json run_config(const std::string& command, const CommonOpts& o) {
    Json j;
    j["command"] = command;
    if (!o.scheme.empty()) j["scheme"] = o.scheme;
    if (!o.in.empty()) j["in"] = o.in;
    j["seed"] = o.seed;
    j["tol"] = o.tol;
    if (!o.kernel.empty()) j["kernel"] = o.kernel;
    j["rng"] = me::kRngVersion;
    return j;
}

// Loads the input; an explicit --kernel overrides the file's own tag.
me::MetricInput load_input(const CommonOpts& o) {
    if (o.kernel.empty() || (o.in.size() > 4 && o.in.substr(o.in.size() - 4) == ".csv"))
        return me::load_metric_file(o.in);
    Json j = me::read_json_file(o.in);
    j["kernel"] = o.kernel;
    return me::load_metric_input(j);
}

me::PriorityOrdering resolve_order(const me::MetricInput& in, const std::string& order_path) {
    if (!order_path.empty()) {
        Json j = me::read_json_file(order_path);
        const Json& arr = j.is_array() ? j : j.at("order");
        std::vector<int> order;
        for (const auto& v : arr) order.push_back(v.get<int>());
        return me::PriorityOrdering::from_order(order);
    }
    if (in.priority) return *in.priority;
    return me::PriorityOrdering::identity(in.n());
}

void write_json(const std::string& path, const Json& j) {
    if (path.empty()) return;
    me::write_file(path, j.dump(1) + "\n");
}

bool wants_csv(const std::string& path) {
    return path.size() > 4 && path.substr(path.size() - 4) == ".csv";
}

template <class T>
void write_embedding(const CommonOpts& o, const me::EmbeddingMatrix<T>& F,
                     const std::vector<me::ColumnInfo>* cols, const Json& run,
                     const me::AuditReport& rep) {
    if (wants_csv(o.out)) {
        me::write_file(o.out, me::embedding_to_csv(F));
    } else {
        Json out = me::embedding_to_json(F, cols);
        out["run"] = run;
        out["audit"] = me::report_to_json(rep);
        write_json(o.out, out);
    }
    write_json(o.report_out, me::report_to_json(rep));
}

// ---- label -----------------------------------------------------------------

template <class T>
int label_exact_run(const me::MetricSpace<T>& M, const me::PriorityOrdering& pi,
                    const CommonOpts& o, Json run) {
    auto L = me::exact_labels(M, pi);
    std::vector<int> words;
    for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
    auto rep = me::audit_labels(
        M, pi,
        [&](int a, int b) { return me::to_double(me::exact_query(L.labels[a], L.labels[b])); }, 1.0,
        [](int j) { return static_cast<std::int64_t>(j); }, words,
        me::is_exact_v<T> ? 0.0 : o.tol);
    rep.scheme_id = L.scheme_id;
    Json out = me::labelset_to_json(L);
    out["run"] = run;
    out["audit"] = me::report_to_json(rep);
    write_json(o.out, out);
    write_json(o.report_out, me::report_to_json(rep));
    return rep.pass() ? kExitPass : kExitViolations;
}

int cmd_label(const CommonOpts& o) {
    me::MetricInput in = load_input(o);
    me::PriorityOrdering pi = resolve_order(in, o.order_path);
    Json run = run_config("label", o);

    if (o.scheme == "exact") {
        if (in.exact) return label_exact_run(*in.exact, pi, o, run);
        return label_exact_run(*in.approx, pi, o, run);
    }
    if (o.scheme == "jl") {
        if (!in.points) throw me::input_error("jl labels need a points input");
        if (o.p_explicit && o.p != in.p)
            throw me::input_error("--p disagrees with the input file's norm");
        auto L = me::jl_layered_labels(*in.points, pi, o.eps, o.seed, o.c_jl);
        // Self-audit: band rate is informational for the randomized scheme,
        // word bounds are a hard guarantee.
        me::MetricSpace<double> M = in.approx ? *in.approx : me::MetricSpace<double>();
        if (!in.approx && in.exact) {
            M = me::MetricSpace<double>(in.exact->n);
            for (size_t i = 0; i < in.exact->dist.size(); ++i) M.dist[i] = me::to_double(in.exact->dist[i]);
        }
        double t = L.p_source == 1 ? (1 + o.eps) * (1 + o.eps) : 1 + o.eps;
        std::vector<int> words;
        for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
        auto rep = me::audit_labels(
            M, pi, [&](int a, int b) { return me::jl_query(L, a, b); }, t,
            [&](int j) { return me::jl_word_bound(o.c_jl, o.eps, L.layer_dims, j); }, words, o.tol);
        rep.scheme_id = L.scheme_id;
        rep.add_stat("word_bound", "3*c_jl*eps^-2*log2(j+1) + d0 + d1 + 8");
        rep.add_stat("note", "band rate is empirical; per-layer maps are standard JL, not terminal JL");
        Json out = me::labelset_to_json(L);
        out["run"] = run;
        out["audit"] = me::report_to_json(rep);
        write_json(o.out, out);
        write_json(o.report_out, me::report_to_json(rep));
        // only the word-bound check gates the exit code
        for (const auto& c : rep.checks)
            if (c.name == "word-bounds" && !c.pass) return kExitViolations;
        return kExitPass;
    }
    throw me::bad_parameter("unknown label scheme '" + o.scheme + "'");
}

// ---- embed -----------------------------------------------------------------

template <class T>
int embed_meta_run(const me::MetricSpace<T>& M, const me::PriorityOrdering& pi, const CommonOpts& o,
                   Json run) {
    me::BetaSchedule beta = me::preset_beta(o.beta_kind, o.t);
    auto F = me::meta_embedding(M, pi, beta);
    auto dist = me::audit_distortion(M, F, o.tol);
    auto pri = me::audit_prioritized_contractive(M, pi, F,
                                                 [&](int j) { return 2ll * me::chi(beta, j); }, o.tol);
    auto dim = me::audit_prioritized_dimension(F, pi, [&](int j) {
        return static_cast<std::int64_t>(
            std::min<std::uint64_t>(beta.eval(me::chi(beta, j)), static_cast<std::uint64_t>(M.n)));
    });
    dist.scheme_id = "meta:" + beta.describe();
    bool expansion_ok = dist.expansion <= 1.0 + o.tol;
    dist.checks.push_back({"non-expansive", expansion_ok, "", {}});
    for (auto& c : pri.checks) dist.checks.push_back(c);
    for (auto& c : dim.checks) dist.checks.push_back(c);
    for (auto& s : pri.stats) dist.stats.push_back(s);
    for (auto& s : dim.stats) dist.stats.push_back(s);

    write_embedding(o, F, nullptr, run, dist);
    return dist.pass() ? kExitPass : kExitViolations;
}

int cmd_embed(const CommonOpts& o) {
    me::MetricInput in = load_input(o);
    me::PriorityOrdering pi = resolve_order(in, o.order_path);
    Json run = run_config("embed", o);
    run["beta"] = o.beta_kind;
    run["t"] = o.t;

    if (o.scheme == "meta") {
        if (in.exact) return embed_meta_run(*in.exact, pi, o, run);
        return embed_meta_run(*in.approx, pi, o, run);
    }
    if (o.scheme == "tree-prioritized" || o.scheme == "llr") {
        if (!in.tree) throw me::Error("SchemeRequiresTree", "'" + o.scheme + "' needs a tree input");
        const me::WeightedTree& T = *in.tree;
        me::EmbeddingMatrix<me::Rat> F;
        std::vector<me::ColumnInfo> cols;
        if (o.scheme == "tree-prioritized") {
            auto pe = me::prioritized_tree_embedding(T, pi);
            F = std::move(pe.F);
            cols = std::move(pe.columns);
        } else {
            F = me::llr_tree_embedding(T);
        }
        auto M = me::metric_from_tree(T);
        auto rep = me::audit_distortion(M, F, 0.0);
        rep.scheme_id = o.scheme;
        bool isometric = rep.expansion == 1.0 && rep.contraction == 1.0;
        if (M.n < 2) isometric = true;
        rep.checks.push_back({"exact-isometry", isometric, "rational kernel, zero tolerance", {}});
        double c_tree = 0;
        for (int j = 1; j <= M.n; ++j) {
            int s = F.support_len(pi.order[j - 1]);
            c_tree = std::max(c_tree, s / std::log2(static_cast<double>(j) + 1));
        }
        rep.add_stat("max_dimension", std::to_string(F.d));
        rep.add_stat("support_constant_C_tree", std::to_string(c_tree));

        write_embedding(o, F, cols.empty() ? nullptr : &cols, run, rep);
        return rep.pass() ? kExitPass : kExitViolations;
    }
    throw me::bad_parameter("unknown embed scheme '" + o.scheme + "'");
}

// ---- generate ----------------------------------------------------------------

int cmd_generate(const std::string& family, int n, const CommonOpts& o, const std::string& eps_str) {
    Json run = run_config("generate " + family, o);
    Json out;
    bool verified = false;
    if (family == "cycle") {
        auto inst = me::cycle_instance(n);
        out = me::cycle_to_json(inst);
        verified = inst.report.pass();
    } else if (family == "bipartite") {
        auto inst = me::random_bipartite_hard(n, o.seed);
        out = me::bipartite_to_json(inst);
        verified = inst.report.pass();
    } else if (family == "hypercube-code") {
        auto inst = me::hypercube_code(n, me::parse_exact(Json(eps_str)));
        out = me::hypercube_to_json(inst);
        verified = inst.report.pass();
    } else if (family == "antipodal-basis") {
        auto inst = me::antipodal_basis(n, o.p);
        out = me::antipodal_to_json(inst);
        verified = inst.report.pass();
    } else if (family == "padded-prefix") {
        auto inst = me::padded_prefix_set(n, me::parse_exact(Json(eps_str)));
        out = me::prefix_to_json(inst);
        verified = inst.report.pass();
    } else {
        throw me::bad_parameter("unknown family '" + family + "'");
    }
    out["run"] = run;
    write_json(o.out, out);
    return verified ? kExitPass : kExitViolations;
}

// ---- audit ---------------------------------------------------------------------

int cmd_audit(const CommonOpts& o, const std::string& metric_path, const std::string& embedding_path,
              const std::string& labels_path, bool with_beta, double label_t) {
    me::MetricInput in = me::load_metric_file(metric_path);
    me::PriorityOrdering pi = resolve_order(in, o.order_path);
    Json run = run_config("audit", o);
    me::AuditReport rep;

    if (!embedding_path.empty()) {
        Json ej = me::read_json_file(embedding_path);
        const Json& payload = ej.contains("rows") ? ej : ej.at("embedding");
        if (in.exact && payload.at("kernel") == "rational") {
            auto F = me::embedding_rat_from_json(payload);
            rep = me::audit_distortion(*in.exact, F, o.tol);
            rep.checks.push_back({"non-expansive", rep.expansion <= 1.0 + o.tol,
                                  "contractive convention: expansion must not exceed 1", {}});
            if (with_beta) {
                me::BetaSchedule beta = me::preset_beta(o.beta_kind, o.t);
                auto pri = me::audit_prioritized_contractive(
                    *in.exact, pi, F, [&](int j) { return 2ll * me::chi(beta, j); }, o.tol);
                auto dim = me::audit_prioritized_dimension(F, pi, [&](int j) {
                    return static_cast<std::int64_t>(std::min<std::uint64_t>(
                        beta.eval(me::chi(beta, j)), static_cast<std::uint64_t>(in.n())));
                });
                for (auto& c : pri.checks) rep.checks.push_back(c);
                for (auto& c : dim.checks) rep.checks.push_back(c);
            }
        } else {
            me::MetricSpace<double> M;
            if (in.approx) {
                M = *in.approx;
            } else {
                M = me::MetricSpace<double>(in.exact->n);
                for (size_t i = 0; i < in.exact->dist.size(); ++i)
                    M.dist[i] = me::to_double(in.exact->dist[i]);
            }
            auto F = me::embedding_float_from_json(payload);
            rep = me::audit_distortion(M, F, o.tol);
            rep.checks.push_back({"non-expansive", rep.expansion <= 1.0 + o.tol,
                                  "contractive convention: expansion must not exceed 1", {}});
            if (with_beta) {
                me::BetaSchedule beta = me::preset_beta(o.beta_kind, o.t);
                auto pri = me::audit_prioritized_contractive(
                    M, pi, F, [&](int j) { return 2ll * me::chi(beta, j); }, o.tol);
                auto dim = me::audit_prioritized_dimension(F, pi, [&](int j) {
                    return static_cast<std::int64_t>(std::min<std::uint64_t>(
                        beta.eval(me::chi(beta, j)), static_cast<std::uint64_t>(in.n())));
                });
                for (auto& c : pri.checks) rep.checks.push_back(c);
                for (auto& c : dim.checks) rep.checks.push_back(c);
            }
        }
    } else if (!labels_path.empty()) {
        Json lj = me::read_json_file(labels_path);
        std::string scheme = lj.at("scheme").get<std::string>();
        if (scheme == me::kExactSchemeId) {
            if (in.exact && lj.at("kernel") == "rational") {
                auto L = me::labelset_rat_from_json(lj);
                std::vector<int> words;
                for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
                rep = me::audit_labels(
                    *in.exact, pi,
                    [&](int a, int b) { return me::to_double(me::exact_query(L.labels[a], L.labels[b])); },
                    label_t, [](int j) { return static_cast<std::int64_t>(j); }, words, 0.0);
            } else {
                auto L = me::labelset_float_from_json(lj);
                me::MetricSpace<double> M;
                if (in.approx) {
                    M = *in.approx;
                } else {
                    M = me::MetricSpace<double>(in.exact->n);
                    for (size_t i = 0; i < in.exact->dist.size(); ++i)
                        M.dist[i] = me::to_double(in.exact->dist[i]);
                }
                std::vector<int> words;
                for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
                rep = me::audit_labels(
                    M, pi,
                    [&](int a, int b) { return me::to_double(me::exact_query(L.labels[a], L.labels[b])); },
                    label_t, [](int j) { return static_cast<std::int64_t>(j); }, words, o.tol);
            }
        } else if (scheme == me::kJlSchemeId) {
            auto L = me::labelset_float_from_json(lj);
            me::MetricSpace<double> M;
            if (in.approx) {
                M = *in.approx;
            } else {
                M = me::MetricSpace<double>(in.exact->n);
                for (size_t i = 0; i < in.exact->dist.size(); ++i)
                    M.dist[i] = me::to_double(in.exact->dist[i]);
            }
            std::vector<int> words;
            for (const auto& lab : L.labels) words.push_back(lab.size_in_words());
            rep = me::audit_labels(
                M, pi, [&](int a, int b) { return me::jl_query(L, a, b); }, label_t,
                [&](int j) { return me::jl_word_bound(L.c_jl, L.eps, L.layer_dims, j); }, words, o.tol);
        } else {
            throw me::scheme_mismatch("unknown label scheme '" + scheme + "'");
        }
    } else {
        // metric alone: triangle/symmetry validation
        me::ValidationReport vrep = in.exact ? me::validate_metric(*in.exact, o.tol)
                                             : me::validate_metric(*in.approx, o.tol);
        rep.kernel = in.kernel;
        rep.tol = o.tol;
        rep.scheme_id = "metric-validation";
        me::AuditCheck chk;
        chk.name = "metric-axioms";
        chk.pass = vrep.ok();
        chk.details = std::to_string(vrep.violations.size()) + " violations";
        for (size_t i = 0; i < vrep.violations.size() && i < 16; ++i) {
            const auto& v = vrep.violations[i];
            me::Witness w;
            w.what = v.kind;
            w.i = v.i;
            w.j = v.j;
            w.col = v.k;
            w.achieved = v.magnitude;
            chk.witnesses.push_back(std::move(w));
        }
        rep.checks.push_back(std::move(chk));
        rep.add_stat("zero_offdiag_pairs", std::to_string(vrep.zero_offdiag_pairs));
    }

    Json out = me::report_to_json(rep);
    out["run"] = run;
    write_json(o.out, out);
    std::cout << (rep.pass() ? "PASS" : "FAIL") << "\n";
    return rep.pass() ? kExitPass : kExitViolations;
}

// ---- bench -----------------------------------------------------------------------

me::MetricSpace<double> random_float_metric(int n, me::Rng& rng) {
    std::vector<me::WeightedEdge<double>> edges;
    for (int v = 1; v < n; ++v)
        edges.push_back({static_cast<int>(rng.next_below(v)), v, 0.25 + rng.next_unit()});
    for (int e = 0; e < n; ++e) {
        int u = static_cast<int>(rng.next_below(n)), v = static_cast<int>(rng.next_below(n));
        if (u != v) edges.push_back({u, v, 0.25 + 2 * rng.next_unit()});
    }
    return me::metric_from_graph(n, edges);
}

int cmd_bench(const std::string& suite, const CommonOpts& o) {
    std::ostringstream csv;
    csv << "# run: command=bench suite=" << suite << " seed=" << o.seed << " rng=" << me::kRngVersion
        << "\n";
    csv << "family,scheme,n,distortion,max_dim_or_words,profile\n";
    auto profile_ranks = [](int n) {
        std::vector<int> js;
        for (int j = 1; j <= n; j *= 2) js.push_back(j);
        if (js.back() != n) js.push_back(n);
        return js;
    };
    if (suite == "table2-desk") {
        for (int n : {32, 64, 128, 256}) {
            me::Rng rng = me::Rng::substream(o.seed, n);
            auto M = random_float_metric(n, rng);
            auto pi = me::PriorityOrdering::identity(n);
            for (const auto& kind : {std::make_pair("exp", 1), std::make_pair("doubly-exp", 1)}) {
                me::BetaSchedule beta = me::preset_beta(kind.first, kind.second);
                auto F = me::meta_embedding(M, pi, beta);
                auto rep = me::audit_distortion(M, F, o.tol);
                int maxdim = 0;
                for (int r = 0; r < n; ++r) maxdim = std::max(maxdim, F.support_len(r));
                std::ostringstream prof;
                for (int j : profile_ranks(n))
                    prof << "j" << j << ":" << F.support_len(pi.order[j - 1]) << ";";
                csv << "random-graph,meta:" << beta.describe() << "," << n << "," << rep.distortion
                    << "," << maxdim << "," << prof.str() << "\n";
            }
        }
    } else if (suite == "trees") {
        for (int n : {32, 64, 128, 256, 512}) {
            me::Rng rng = me::Rng::substream(o.seed, 1000 + n);
            me::WeightedTree T = me::random_tree(n, rng);
            auto pi = me::PriorityOrdering::random(n, rng);
            auto pe = me::prioritized_tree_embedding(T, pi);
            std::ostringstream prof;
            for (int j : profile_ranks(n))
                prof << "j" << j << ":" << pe.F.support_len(pi.order[j - 1]) << ";";
            csv << "tree,tree-prioritized," << n << ",1," << pe.F.d << "," << prof.str() << "\n";
            auto F = me::llr_tree_embedding(T);
            csv << "tree,llr," << n << ",1," << F.d << ",\n";
        }
    } else {
        throw me::bad_parameter(suite.empty() ? "bench needs a suite name" : "unknown suite '" + suite + "'");
    }
    if (o.out.empty())
        std::cout << csv.str();
    else
        me::write_file(o.out, csv.str());
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prioritized distance labelings and l_inf embeddings"};
    app.require_subcommand(1);
    CommonOpts o;

    auto* label = app.add_subcommand("label", "build distance labels and a self-audit");
    label->add_option("--in", o.in)->required();
    label->add_option("--scheme", o.scheme)->required();
    label->add_option("--eps", o.eps);
    label->add_option("--p", o.p);
    label->add_option("--seed", o.seed);
    label->add_option("--c-jl", o.c_jl);
    label->add_option("--order", o.order_path);
    label->add_option("--kernel", o.kernel);
    label->add_option("--tol", o.tol);
    label->add_option("--out", o.out);
    label->add_option("--report", o.report_out);

    auto* embed = app.add_subcommand("embed", "build an l_inf embedding and audit it");
    embed->add_option("--in", o.in)->required();
    embed->add_option("--scheme", o.scheme)->required();
    embed->add_option("--beta", o.beta_kind);
    embed->add_option("--t", o.t);
    embed->add_option("--order", o.order_path);
    embed->add_option("--kernel", o.kernel);
    embed->add_option("--tol", o.tol);
    embed->add_option("--out", o.out);
    embed->add_option("--report", o.report_out);

    auto* gen = app.add_subcommand("generate", "generate a verified hard instance");
    std::string family;
    int gen_n = 8;
    std::string eps_str = "1/9";
    gen->add_option("family", family)->required();
    gen->add_option("--n", gen_n);
    gen->add_option("--eps", eps_str);
    gen->add_option("--eps-prime", eps_str);
    gen->add_option("--p", o.p);
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out);

    auto* audit = app.add_subcommand("audit", "audit an embedding or label set against a metric");
    std::string metric_path, embedding_path, labels_path;
    bool with_beta = false;
    double label_t = 1.0;
    audit->add_option("--metric", metric_path)->required();
    audit->add_option("--embedding", embedding_path);
    audit->add_option("--labels", labels_path);
    audit->add_option("--order", o.order_path);
    audit->add_option("--beta", o.beta_kind);
    audit->add_flag("--prioritized", with_beta, "also audit 2*chi contraction and beta(chi) dimension");
    audit->add_option("--t", label_t, "distortion band for label audits");
    audit->add_option("--tol", o.tol);
    audit->add_option("--out", o.out);

    auto* bench = app.add_subcommand("bench", "desk-scale profile tables (CSV)");
    std::string suite;
    bench->add_option("--suite", suite)->required();
    bench->add_option("--seed", o.seed);
    bench->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
        o.p_explicit = label->count("--p") > 0;
        if (label->parsed()) return cmd_label(o);
        if (embed->parsed()) return cmd_embed(o);
        if (gen->parsed()) return cmd_generate(family, gen_n, o, eps_str);
        if (audit->parsed()) return cmd_audit(o, metric_path, embedding_path, labels_path, with_beta, label_t);
        if (bench->parsed()) return cmd_bench(suite, o);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? kExitInputError : kExitPass;
    } catch (const metrembed::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
