/**
 * @file commands.hpp
 * @brief The analyze / forms / verify / equiv / catalog commands behind the CLI.
 *
 * Each command returns a JSON report; the text rendering is derived from it. Reports are
 * deterministic: same input bytes, options, seed and version give byte-identical JSON.
 */
#pragma once

#include "ncg/io.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace ncg {

inline constexpr const char* kToolName = "ncg";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitVerification = 3, kExitIo = 4 };

enum class AlphaChoice { automatic, embedded, default_choice };

struct Options {
    double tol = kDefaultTol;
    std::uint64_t seed = 42;
    int trials = 20;
    int max_degree = 3;
    AlphaChoice alpha = AlphaChoice::default_choice;
};

struct CommandResult {
    Json report;
    int exit_code = kExitOk;
};

/// Default tolerance: NCG_TOL when set and parseable, kDefaultTol otherwise.
double default_tolerance();

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

CommandResult cmd_analyze(const std::string& algebra_json, const Options& opt);
CommandResult cmd_forms(const std::string& algebra_json, const Options& opt);
CommandResult cmd_verify(const std::string& algebra_json, const Options& opt);
CommandResult cmd_equiv(const std::string& algebra_json, const std::string& transform_json, const Options& opt);
/// `algebra_out` receives the algebra JSON of the entry (for --emit).
CommandResult cmd_catalog(const std::string& name, int m, const Options& opt, std::string* algebra_out = nullptr);

/// Report for an ncg::Error (or any exception) with the matching exit code.
CommandResult error_result(const std::string& command, const std::exception& e);

std::string render_text(const Json& report);

}  // namespace ncg
