#pragma once

// CSV and JSON plumbing shared by the CLI and tests: matrix round-trips
// with cell-level diagnostics, model serialization, input digests, and the
// run manifest that makes reruns reproducible.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "stosep/corrector.hpp"
#include "stosep/preprocess.hpp"
#include "stosep/types.hpp"

namespace stosep::io {

// One point per row, numeric cells, optional single header line (detected:
// any cell of the first line that does not parse as a number). Rejects
// ragged rows and non-numeric cells with diagnostics naming the 1-based row
// and column. Empty files and header-only files are DegenerateInput.
DataMatrix read_csv(const std::string& path);

// header may be empty (no header line); otherwise one name per column.
void write_csv(const std::string& path, const DataMatrix& X,
               const std::vector<std::string>& header = {});

// Shortest round-trip decimal representation (%.17g).
std::string format_double(double v);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::string& path);

nlohmann::ordered_json whitening_to_json(const WhiteningModel& model);
WhiteningModel whitening_from_json(const nlohmann::json& j);

nlohmann::ordered_json ensemble_to_json(const corrector::CorrectorEnsemble& ens);
corrector::CorrectorEnsemble ensemble_from_json(const nlohmann::json& j);

// Every run emits one of these next to its outputs. flags holds the full
// parsed flag set (name -> rendered value); inputs maps input path (as
// given) -> digest.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> flags;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;
};
nlohmann::ordered_json manifest_to_json(const RunManifest& m);

// Write text to path, creating parent directories; steady contents produce
// byte-identical files.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace stosep::io
