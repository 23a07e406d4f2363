#pragma once

#include <stdexcept>
#include <string>

namespace metrembed {

// All recoverable failures carry a stable kind string (used by the CLI to
// pick exit codes and by tests to assert on the failure class).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

inline Error disconnected_graph(const std::string& what) { return {"DisconnectedGraph", what}; }
inline Error negative_weight(const std::string& what) { return {"NegativeWeight", what}; }
inline Error dimension_mismatch(const std::string& what) { return {"DimensionMismatch", what}; }
inline Error scheme_mismatch(const std::string& what) { return {"SchemeMismatch", what}; }
inline Error bad_epsilon(const std::string& what) { return {"BadEpsilon", what}; }
inline Error unsupported_norm(const std::string& what) { return {"UnsupportedNorm", what}; }
inline Error schedule_exhausted(const std::string& what) { return {"ScheduleExhausted", what}; }
inline Error bad_parameter(const std::string& what) { return {"BadParameter", what}; }
inline Error size_mismatch(const std::string& what) { return {"SizeMismatch", what}; }
inline Error same_vertex(const std::string& what) { return {"SameVertex", what}; }
inline Error empty_terminals(const std::string& what) { return {"EmptyTerminals", what}; }
inline Error no_separator(const std::string& what) { return {"NoSeparator", what}; }
inline Error expansion_violation(const std::string& what) { return {"ExpansionViolation", what}; }
inline Error retries_exhausted(const std::string& what) { return {"RetriesExhausted", what}; }
inline Error not_gprime_embedding(const std::string& what) { return {"NotAnEmbeddingOfGPrime", what}; }
inline Error input_error(const std::string& what) { return {"InputError", what}; }

}  // namespace metrembed
