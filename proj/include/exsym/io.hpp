#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "exsym/kraus.hpp"
#include "exsym/linalg.hpp"
#include "exsym/spinbath.hpp"
#include "exsym/symmetry.hpp"

namespace exsym {

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json complex_to_json(Complex z);
Complex complex_from_json(const nlohmann::json& j);

/// Row-major list of 16 [re, im] pairs.
nlohmann::json matrix_to_json(const Matrix4& m);
Matrix4 matrix_from_json(const nlohmann::json& j);

/// {"label": str, "gamma": num|null, "operators": [[[re,im] x16] x n]}
nlohmann::json kraus_to_json(const KrausSet& set);
KrausSet kraus_from_json(const nlohmann::json& j);

/// {"label": str, "spins": [{"alpha": [re,im], "beta": [re,im], "omega": num}]}
nlohmann::json bath_to_json(const BathSpec& bath);
BathSpec bath_from_json(const nlohmann::json& j);

/// Reads and validates a bath file. Parse failures are reported as InputError
/// carrying the file name and the line/column of the problem.
BathSpec load_bath_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::json& doc);

nlohmann::json histogram_to_json(const std::vector<HistogramBin>& histogram);
nlohmann::json pattern_to_json(const ConstraintPattern& pattern);

}  // namespace exsym
