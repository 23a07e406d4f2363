#include "metrembed/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "metrembed/graph.hpp"

namespace metrembed {

bool is_exact_value(const Json& v) {
    return v.is_number_integer() || v.is_number_unsigned() || v.is_string();
}

Rat parse_exact(const Json& v) {
    if (v.is_number_integer()) return Rat(static_cast<long>(v.get<std::int64_t>()));
    if (v.is_number_unsigned()) return Rat(static_cast<long>(v.get<std::uint64_t>()));
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        auto dot = s.find('.');
        if (dot == std::string::npos) return rat_from_string(s);
        // Exact decimal: digits after the dot become a power-of-ten denominator.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        int frac = static_cast<int>(s.size() - dot - 1);
        Rat num = rat_from_string(digits);
        mpz_class den(10);
        mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), frac);
        Rat q = num / Rat(den);
        q.canonicalize();
        return q;
    }
    throw input_error("value is not exactly representable: " + v.dump());
}

Json rat_json(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    if (c.get_den() == 1) {
        if (mpz_fits_slong_p(c.get_num().get_mpz_t()))
            return Json(static_cast<std::int64_t>(c.get_num().get_si()));
    }
    return Json(rat_to_string(c));
}

double number_from(const Json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return to_double(parse_exact(v));
    throw input_error("expected a number, got " + v.dump());
}

// --- input loading ------------------------------------------------------------

namespace {

bool all_exact(const Json& arr) {
    for (const auto& row : arr)
        if (row.is_array()) {
            for (const auto& v : row)
                if (!is_exact_value(v)) return false;
        } else if (!is_exact_value(row)) {
            return false;
        }
    return true;
}

PriorityOrdering ordering_from_json(const Json& j) {
    std::vector<int> order;
    for (const auto& v : j) order.push_back(v.get<int>());
    return PriorityOrdering::from_order(order);
}

}  // namespace

MetricInput load_metric_input(const Json& j) {
    // Generated instance files nest their metric under "metric" and may carry
    // a priority ordering in the structure annex.
    if (!j.contains("kind") && j.contains("metric")) {
        MetricInput in = load_metric_input(j.at("metric"));
        if (j.contains("structure") && j.at("structure").contains("priority"))
            in.priority = ordering_from_json(j.at("structure").at("priority"));
        return in;
    }
    MetricInput in;
    if (!j.contains("kind")) throw input_error("metric input needs a \"kind\" field");
    in.kind = j.at("kind").get<std::string>();
    std::string forced = j.value("kernel", std::string());

    if (in.kind == "tree") {
        int n = j.at("n").get<int>();
        std::vector<std::tuple<int, int, Rat>> edges;
        for (const auto& e : j.at("edges"))
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>(), parse_exact(e.at(2)));
        in.tree = WeightedTree::from_edges(n, edges);
        in.exact = metric_from_tree(*in.tree);
        in.kernel = "rational";
    } else if (in.kind == "graph") {
        int n = j.at("n").get<int>();
        bool allow_zero = j.value("allow_zero", false);
        bool exact = forced.empty() ? all_exact(j.at("edges")) : forced == "rational";
        if (exact) {
            std::vector<WeightedEdge<Rat>> edges;
            for (const auto& e : j.at("edges"))
                edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), parse_exact(e.at(2))});
            in.exact = metric_from_graph(n, edges, allow_zero);
            in.kernel = "rational";
        } else {
            std::vector<WeightedEdge<double>> edges;
            for (const auto& e : j.at("edges"))
                edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), number_from(e.at(2))});
            in.approx = metric_from_graph(n, edges, allow_zero);
            in.kernel = "float";
        }
    } else if (in.kind == "points") {
        const Json& pj = j.at("p");
        in.p = pj.is_string() ? (pj.get<std::string>() == "inf"
                                     ? std::numeric_limits<double>::infinity()
                                     : number_from(pj))
                              : pj.get<double>();
        std::vector<std::vector<double>> rows;
        for (const auto& r : j.at("points")) {
            std::vector<double> row;
            for (const auto& v : r) row.push_back(number_from(v));
            rows.push_back(std::move(row));
        }
        in.points = PointSet<double>::from_rows(rows, in.p);
        bool exact_ok = (in.p == 1.0 || std::isinf(in.p)) && all_exact(j.at("points"));
        bool exact = forced.empty() ? exact_ok : forced == "rational";
        if (exact && !exact_ok) throw input_error("rational kernel needs p in {1, inf} and exact coordinates");
        if (exact) {
            PointSet<Rat> pq;
            pq.n = in.points->n;
            pq.m = in.points->m;
            pq.p = in.p;
            for (const auto& r : j.at("points"))
                for (const auto& v : r) pq.coords.push_back(parse_exact(v));
            in.exact = metric_from_points(pq);
            in.kernel = "rational";
        } else {
            in.approx = metric_from_points(*in.points);
            in.kernel = "float";
        }
    } else if (in.kind == "matrix") {
        const Json& rows = j.at("dist");
        bool exact = forced.empty() ? all_exact(rows) : forced == "rational";
        int n = static_cast<int>(rows.size());
        if (exact) {
            MetricSpace<Rat> M(n);
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(rows[i].size()) != n) throw input_error("distance matrix is not square");
                for (int k = 0; k < n; ++k) M.at(i, k) = parse_exact(rows[i][k]);
            }
            in.exact = std::move(M);
            in.kernel = "rational";
        } else {
            MetricSpace<double> M(n);
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(rows[i].size()) != n) throw input_error("distance matrix is not square");
                for (int k = 0; k < n; ++k) M.at(i, k) = number_from(rows[i][k]);
            }
            in.approx = std::move(M);
            in.kernel = "float";
        }
    } else {
        throw input_error("unknown metric kind '" + in.kind + "'");
    }

    if (j.contains("priority")) in.priority = ordering_from_json(j.at("priority"));
    if (j.contains("pseudometric")) {
        if (in.exact) in.exact->pseudometric = j.at("pseudometric").get<bool>();
        if (in.approx) in.approx->pseudometric = j.at("pseudometric").get<bool>();
    }
    return in;
}

MetricInput load_metric_file(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream f(path);
        if (!f) throw input_error("cannot open " + path);
        std::stringstream ss;
        ss << f.rdbuf();
        return load_metric_csv(ss.str());
    }
    return load_metric_input(read_json_file(path));
}

// --- serialization -------------------------------------------------------------

namespace {

template <class T>
Json metric_json_impl(const MetricSpace<T>& M, const char* kernel) {
    Json j;
    j["kind"] = "matrix";
    j["kernel"] = kernel;
    j["n"] = M.n;
    if (M.pseudometric) j["pseudometric"] = true;
    Json rows = Json::array();
    for (int i = 0; i < M.n; ++i) {
        Json row = Json::array();
        for (int k = 0; k < M.n; ++k) {
            if constexpr (is_exact_v<T>)
                row.push_back(rat_json(M.at(i, k)));
            else
                row.push_back(M.at(i, k));
        }
        rows.push_back(std::move(row));
    }
    j["dist"] = std::move(rows);
    return j;
}

template <class T>
Json embedding_json_impl(const EmbeddingMatrix<T>& F, const std::vector<ColumnInfo>* cols,
                         const char* kernel) {
    Json j;
    j["kernel"] = kernel;
    j["n"] = F.n;
    // Trailing all-zero columns are trimmed here; per-row support is declared
    // so dimension audits do not depend on the serialization.
    int width = 0;
    Json support = Json::array();
    for (int r = 0; r < F.n; ++r) {
        int s = F.support_len(r);
        width = std::max(width, s);
        support.push_back(s);
    }
    j["d"] = width;
    j["support"] = std::move(support);
    Json rows = Json::array();
    for (int r = 0; r < F.n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < width; ++c) {
            if constexpr (is_exact_v<T>)
                row.push_back(rat_json(F.at(r, c)));
            else
                row.push_back(F.at(r, c));
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    if (cols) {
        Json cj = Json::array();
        for (int c = 0; c < width && c < static_cast<int>(cols->size()); ++c)
            cj.push_back(Json{{"block", (*cols)[c].block}, {"tag", (*cols)[c].tag}});
        j["columns"] = std::move(cj);
    }
    return j;
}

template <class T>
Json labelset_json_impl(const LabelSet<T>& L, const char* kernel) {
    Json j;
    j["scheme"] = L.scheme_id;
    j["kernel"] = kernel;
    j["n"] = L.n;
    Json labels = Json::array();
    for (const auto& lab : L.labels) {
        Json lj;
        lj["rank"] = lab.rank;
        lj["words"] = lab.size_in_words();
        Json payload = Json::array();
        for (const auto& v : lab.payload) {
            if constexpr (is_exact_v<T>)
                payload.push_back(rat_json(v));
            else
                payload.push_back(v);
        }
        lj["payload"] = std::move(payload);
        labels.push_back(std::move(lj));
    }
    j["labels"] = std::move(labels);
    Json meta;
    meta["rng"] = kRngVersion;
    if (L.scheme_id == kJlSchemeId) {
        meta["eps"] = L.eps;
        meta["c_jl"] = L.c_jl;
        meta["seed"] = L.seed;
        meta["p_source"] = L.p_source;
        meta["layer_dims"] = L.layer_dims;
        // recorded word bound: C * eps^-2 * log2(j+1) + (d0 + d1 + 8), C = 3 c_jl
        meta["word_bound_constant"] = 3.0 * L.c_jl;
    }
    j["meta"] = std::move(meta);
    return j;
}

template <class T>
LabelSet<T> labelset_from_json_impl(const Json& j) {
    LabelSet<T> L;
    L.scheme_id = j.at("scheme").get<std::string>();
    L.n = j.at("n").get<int>();
    for (const auto& lj : j.at("labels")) {
        Label<T> lab;
        lab.scheme_id = L.scheme_id;
        lab.rank = lj.at("rank").get<int>();
        for (const auto& v : lj.at("payload")) {
            if constexpr (is_exact_v<T>)
                lab.payload.push_back(parse_exact(v));
            else
                lab.payload.push_back(number_from(v));
        }
        L.labels.push_back(std::move(lab));
    }
    const Json& meta = j.at("meta");
    if (L.scheme_id == kJlSchemeId) {
        L.eps = meta.at("eps").get<double>();
        L.c_jl = meta.at("c_jl").get<double>();
        L.seed = meta.at("seed").get<std::uint64_t>();
        L.p_source = meta.at("p_source").get<int>();
        L.layer_dims = meta.at("layer_dims").get<std::vector<int>>();
    }
    return L;
}

template <class T>
EmbeddingMatrix<T> embedding_from_json_impl(const Json& j) {
    EmbeddingMatrix<T> F(j.at("n").get<int>(), j.at("d").get<int>());
    const Json& rows = j.at("rows");
    for (int r = 0; r < F.n; ++r)
        for (int c = 0; c < F.d; ++c) {
            if constexpr (is_exact_v<T>)
                F.at(r, c) = parse_exact(rows[r][c]);
            else
                F.at(r, c) = number_from(rows[r][c]);
        }
    return F;
}

Json checks_to_json(const std::vector<AuditCheck>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        if (!c.details.empty()) cj["details"] = c.details;
        Json ws = Json::array();
        for (const auto& w : c.witnesses) {
            Json wj;
            wj["what"] = w.what;
            if (w.i >= 0) wj["i"] = w.i;
            if (w.j >= 0) wj["j"] = w.j;
            if (w.col >= 0) wj["col"] = w.col;
            wj["achieved"] = w.achieved;
            if (w.bound != 0) wj["bound"] = w.bound;
            if (!w.exact.empty()) wj["exact"] = w.exact;
            ws.push_back(std::move(wj));
        }
        if (!ws.empty()) cj["witnesses"] = std::move(ws);
        arr.push_back(std::move(cj));
    }
    return arr;
}

Json stats_to_json(const std::vector<std::pair<std::string, std::string>>& stats) {
    Json s;
    for (const auto& [k, v] : stats) s[k] = v;
    return s;
}

Json pairs_to_json(const std::vector<std::pair<int, int>>& pairs) {
    Json arr = Json::array();
    for (const auto& [a, b] : pairs) arr.push_back(Json::array({a, b}));
    return arr;
}

}  // namespace

Json metric_to_json(const MetricSpace<Rat>& M) { return metric_json_impl(M, "rational"); }
Json metric_to_json(const MetricSpace<double>& M) { return metric_json_impl(M, "float"); }

Json tree_to_json(const WeightedTree& T) {
    Json j;
    j["kind"] = "tree";
    j["n"] = T.n();
    Json edges = Json::array();
    for (const auto& [u, v, w] : T.edge_list()) edges.push_back(Json::array({u, v, rat_json(w)}));
    j["edges"] = std::move(edges);
    return j;
}

Json embedding_to_json(const EmbeddingMatrix<Rat>& F, const std::vector<ColumnInfo>* cols) {
    return embedding_json_impl(F, cols, "rational");
}
Json embedding_to_json(const EmbeddingMatrix<double>& F, const std::vector<ColumnInfo>* cols) {
    return embedding_json_impl(F, cols, "float");
}
EmbeddingMatrix<Rat> embedding_rat_from_json(const Json& j) { return embedding_from_json_impl<Rat>(j); }
EmbeddingMatrix<double> embedding_float_from_json(const Json& j) {
    return embedding_from_json_impl<double>(j);
}

Json labelset_to_json(const LabelSet<Rat>& L) { return labelset_json_impl(L, "rational"); }
Json labelset_to_json(const LabelSet<double>& L) { return labelset_json_impl(L, "float"); }
LabelSet<Rat> labelset_rat_from_json(const Json& j) { return labelset_from_json_impl<Rat>(j); }
LabelSet<double> labelset_float_from_json(const Json& j) { return labelset_from_json_impl<double>(j); }

Json report_to_json(const AuditReport& r) {
    Json j;
    j["scheme"] = r.scheme_id;
    j["kernel"] = r.kernel;
    j["tol"] = r.tol;
    j["pass"] = r.pass();
    if (!std::isnan(r.expansion)) j["expansion"] = r.expansion;
    if (!std::isnan(r.contraction)) j["contraction"] = r.contraction;
    if (!std::isnan(r.distortion)) j["distortion"] = r.distortion;
    j["zero_distance_pairs"] = r.zero_distance_pairs;
    j["checks"] = checks_to_json(r.checks);
    j["stats"] = stats_to_json(r.stats);
    return j;
}

Json instance_report_to_json(const InstanceReport& r) {
    Json j;
    j["pass"] = r.pass();
    j["checks"] = checks_to_json(r.checks);
    j["stats"] = stats_to_json(r.stats);
    return j;
}

Json cycle_to_json(const CycleInstance& inst) {
    Json j;
    j["family"] = "cycle";
    j["metric"] = metric_to_json(inst.metric);
    Json st;
    st["half_n"] = inst.half_n;
    st["antipodal_pairs"] = pairs_to_json(inst.antipodal_pairs);
    st["priority"] = inst.priority.order;
    j["structure"] = std::move(st);
    j["report"] = instance_report_to_json(inst.report);
    return j;
}

Json antipodal_to_json(const AntipodalBasisInstance& inst) {
    Json j;
    j["family"] = "antipodal-basis";
    j["metric"] = metric_to_json(inst.metric);
    Json st;
    st["n"] = inst.n;
    st["p"] = std::isinf(inst.p) ? Json("inf") : Json(inst.p);
    st["antipodal_pairs"] = pairs_to_json(inst.antipodal_pairs);
    st["cross_distance"] = inst.cross_distance;
    j["structure"] = std::move(st);
    j["report"] = instance_report_to_json(inst.report);
    return j;
}

Json hypercube_to_json(const HypercubeCodeInstance& inst) {
    Json j;
    j["family"] = "hypercube-code";
    Json st;
    st["n"] = inst.n;
    st["eps"] = rat_to_string(inst.eps);
    st["eps_prime"] = rat_to_string(inst.eps_prime);
    st["radius"] = inst.radius;
    st["code"] = inst.code;
    j["structure"] = std::move(st);
    j["report"] = instance_report_to_json(inst.report);
    return j;
}

Json prefix_to_json(const PaddedPrefixSet& y) {
    Json j;
    j["family"] = "padded-prefix";
    Json st;
    st["n"] = y.n;
    st["prefix"] = y.prefix;
    st["size"] = y.points.n;
    j["structure"] = std::move(st);
    j["report"] = instance_report_to_json(y.report);
    return j;
}

Json bipartite_to_json(const BipartiteInstance& inst) {
    Json j;
    j["family"] = "bipartite";
    j["metric"] = metric_to_json(inst.metric);
    Json st;
    st["n"] = inst.n;
    st["seed"] = inst.seed;
    st["l"] = inst.l;
    st["r"] = inst.r;
    st["adjacency"] = inst.adj;
    st["A1"] = pairs_to_json(inst.A1);
    st["A2"] = pairs_to_json(inst.A2);
    st["A3"] = pairs_to_json(inst.A3);
    st["priority"] = inst.priority.order;
    j["structure"] = std::move(st);
    j["report"] = instance_report_to_json(inst.report);
    return j;
}

// --- CSV -------------------------------------------------------------------------

namespace {

template <class T>
std::string metric_csv_impl(const MetricSpace<T>& M) {
    std::ostringstream out;
    out.precision(17);
    for (int i = 0; i < M.n; ++i) {
        for (int k = 0; k < M.n; ++k) {
            if (k) out << ',';
            if constexpr (is_exact_v<T>)
                out << rat_to_string(M.at(i, k));
            else
                out << M.at(i, k);
        }
        out << '\n';
    }
    return out.str();
}

template <class T>
std::string embedding_csv_impl(const EmbeddingMatrix<T>& F) {
    std::ostringstream out;
    out.precision(17);
    for (int r = 0; r < F.n; ++r) {
        out << F.support_len(r);
        for (int c = 0; c < F.d; ++c) {
            out << ',';
            if constexpr (is_exact_v<T>)
                out << rat_to_string(F.at(r, c));
            else
                out << F.at(r, c);
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace

std::string metric_to_csv(const MetricSpace<Rat>& M) { return metric_csv_impl(M); }
std::string metric_to_csv(const MetricSpace<double>& M) { return metric_csv_impl(M); }

MetricInput load_metric_csv(const std::string& text) {
    std::vector<std::vector<std::string>> cells;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<std::string> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        cells.push_back(std::move(row));
    }
    int n = static_cast<int>(cells.size());
    bool exact = true;
    for (const auto& row : cells) {
        if (static_cast<int>(row.size()) != n) throw input_error("CSV distance matrix is not square");
        for (const auto& c : row)
            if (c.find('.') != std::string::npos || c.find('e') != std::string::npos ||
                c.find('E') != std::string::npos)
                exact = false;
    }
    MetricInput in;
    in.kind = "matrix";
    if (exact) {
        MetricSpace<Rat> M(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) M.at(i, k) = rat_from_string(cells[i][k]);
        in.exact = std::move(M);
        in.kernel = "rational";
    } else {
        MetricSpace<double> M(n);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) M.at(i, k) = std::stod(cells[i][k]);
        in.approx = std::move(M);
        in.kernel = "float";
    }
    return in;
}

std::string embedding_to_csv(const EmbeddingMatrix<Rat>& F) { return embedding_csv_impl(F); }
std::string embedding_to_csv(const EmbeddingMatrix<double>& F) { return embedding_csv_impl(F); }

Json read_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open " + path);
    Json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw input_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_file(const std::string& path, const std::string& contents) {
    // Atomic enough for our purposes: write then rename.
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw input_error("cannot write " + tmp);
        f << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) throw input_error("cannot move into " + path);
}

}  // namespace metrembed
