#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "metrembed/auditor.hpp"
#include "metrembed/embedding.hpp"
#include "metrembed/instances.hpp"
#include "metrembed/labeling.hpp"
#include "metrembed/metric.hpp"
#include "metrembed/tree.hpp"

namespace metrembed {

using Json = nlohmann::ordered_json;

// Accepts "p/q", plain integers, and decimal strings ("0.125" -> 1/8 exactly).
Rat parse_exact(const Json& v);
// A JSON value that is an integer or a string parses exactly; any other
// number is float-only.
bool is_exact_value(const Json& v);

Json rat_json(const Rat& q);          // "p/q" or integer string
double number_from(const Json& v);    // numeric or string-rational to double

// --- parsed input file -------------------------------------------------------

// Any metric input: {"kind": "graph"|"points"|"tree"|"matrix", ...}. The
// kernel is the "kernel" field when present, otherwise rational iff every
// value parses exactly. Trees always load exactly.
struct MetricInput {
    std::string kind;
    std::string kernel;  // "rational" | "float"
    std::optional<MetricSpace<Rat>> exact;
    std::optional<MetricSpace<double>> approx;
    std::optional<WeightedTree> tree;
    std::optional<PointSet<double>> points;  // float view, for JL
    double p = 2.0;                          // points only
    std::optional<PriorityOrdering> priority;

    int n() const { return exact ? exact->n : approx->n; }
};

MetricInput load_metric_input(const Json& j);
MetricInput load_metric_file(const std::string& path);

// --- serialization -----------------------------------------------------------

Json metric_to_json(const MetricSpace<Rat>& M);
Json metric_to_json(const MetricSpace<double>& M);
Json tree_to_json(const WeightedTree& T);

Json embedding_to_json(const EmbeddingMatrix<Rat>& F, const std::vector<ColumnInfo>* cols = nullptr);
Json embedding_to_json(const EmbeddingMatrix<double>& F, const std::vector<ColumnInfo>* cols = nullptr);
EmbeddingMatrix<Rat> embedding_rat_from_json(const Json& j);
EmbeddingMatrix<double> embedding_float_from_json(const Json& j);

Json labelset_to_json(const LabelSet<Rat>& L);
Json labelset_to_json(const LabelSet<double>& L);
LabelSet<Rat> labelset_rat_from_json(const Json& j);
LabelSet<double> labelset_float_from_json(const Json& j);

Json report_to_json(const AuditReport& r);
Json instance_report_to_json(const InstanceReport& r);

Json cycle_to_json(const CycleInstance& inst);
Json antipodal_to_json(const AntipodalBasisInstance& inst);
Json hypercube_to_json(const HypercubeCodeInstance& inst);
Json prefix_to_json(const PaddedPrefixSet& y);
Json bipartite_to_json(const BipartiteInstance& inst);

// --- CSV ----------------------------------------------------------------------

// Distance matrix: one row per line, comma separated; rationals as "p/q".
std::string metric_to_csv(const MetricSpace<Rat>& M);
std::string metric_to_csv(const MetricSpace<double>& M);
MetricInput load_metric_csv(const std::string& text);

// Embedding: per row, the declared support length then the d entries.
std::string embedding_to_csv(const EmbeddingMatrix<Rat>& F);
std::string embedding_to_csv(const EmbeddingMatrix<double>& F);

// --- files ---------------------------------------------------------------------

Json read_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace metrembed
