#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "skewrank/poly.hpp"

namespace skewrank {

inline constexpr const char* kSchemaVersion = "skewrank/1";

/// A validated problem instance: a subspace of skew forms plus free-form
/// metadata carried through to reports untouched.
struct InputDocument {
  MatrixSubspace space;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Options shared by every command. Seeds are always explicit; nothing in a
/// report depends on ambient state except the timing field.
struct CommandOptions {
  std::string field = "q";
  std::uint64_t seed = 0;
  std::string type;  // for `gen`: pi_g, pi_t, pi_p, pi_5, ell_g, ell_s
};

/// A finished report plus the process exit code it implies. Definitive
/// verdicts (including mathematical "false") carry code 0.
struct ReportDocument {
  nlohmann::json body;
  int exit_code = 0;
};

/// Field descriptors: "q", "fp:<p>", "qsqrt[:<radicand>[;<radicand>...]]"
/// (each radicand is a scalar expression over the tower built so far;
/// a bare "qsqrt" means Q(sqrt(2))).
FieldPtr parse_field_descriptor(const std::string& text);
std::string field_descriptor(const FieldPtr& f);

InputDocument parse_input(const std::string& bytes);
InputDocument parse_input(const nlohmann::json& doc);
nlohmann::json emit_input(const InputDocument& doc);

/// FNV-1a 64-bit hash of the canonical serialization, as "fnv1a64:<hex>".
std::string input_hash(const nlohmann::json& canonical);

/// Dispatches one command against one (optional) parsed document. `gen`
/// ignores the document; `verify-witness` takes a previously emitted report
/// as its raw input instead of an InputDocument.
ReportDocument run_command(const std::string& command,
                           const nlohmann::json& input,
                           const CommandOptions& options);

/// Flat human-readable rendering of a report (or input document).
std::string render_text(const nlohmann::json& doc);

// Serialization helpers shared by the commands and the tests.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, const FieldPtr& f,
                        const std::string& path);
nlohmann::json poly_to_json(const HomogPoly& p);
nlohmann::json subspace_to_json(const Subspace& s);

}  // namespace skewrank
