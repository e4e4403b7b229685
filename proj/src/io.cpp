#include "exsym/io.hpp"

#include <fstream>
#include <sstream>

namespace exsym {

using nlohmann::json;

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw std::invalid_argument("complex number must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix4& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out.push_back(complex_to_json(m(i, k)));
  return out;
}

Matrix4 matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 16) {
    throw std::invalid_argument("4x4 matrix must be a list of 16 [re, im] entries");
  }
  Matrix4 m;
  for (int e = 0; e < 16; ++e) m(e / 4, e % 4) = complex_from_json(j[e]);
  return m;
}

json kraus_to_json(const KrausSet& set) {
  json ops = json::array();
  for (const auto& k : set.operators) ops.push_back(matrix_to_json(k));
  return {{"label", set.label},
          {"gamma", set.gamma ? json(*set.gamma) : json(nullptr)},
          {"operators", ops}};
}

KrausSet kraus_from_json(const json& j) {
  KrausSet set;
  set.label = j.at("label").get<std::string>();
  if (j.contains("gamma") && !j.at("gamma").is_null()) set.gamma = j.at("gamma").get<double>();
  for (const auto& op : j.at("operators")) set.operators.push_back(matrix_from_json(op));
  return set;
}

json bath_to_json(const BathSpec& bath) {
  json spins = json::array();
  for (const auto& s : bath.spins) {
    spins.push_back({{"alpha", complex_to_json(s.alpha)},
                     {"beta", complex_to_json(s.beta)},
                     {"omega", s.omega}});
  }
  return {{"label", bath.label}, {"spins", spins}};
}

BathSpec bath_from_json(const json& j) {
  BathSpec bath;
  bath.label = j.at("label").get<std::string>();
  for (const auto& s : j.at("spins")) {
    bath.spins.push_back({complex_from_json(s.at("alpha")), complex_from_json(s.at("beta")),
                          s.at("omega").get<double>()});
  }
  return bath;
}

BathSpec load_bath_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open bath file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    // nlohmann reports "at line L, column C" in the message.
    throw InputError(path.string() + ": " + e.what());
  }
  try {
    BathSpec bath = bath_from_json(doc);
    bath.validate();
    return bath;
  } catch (const json::exception& e) {
    throw InputError(path.string() + ": bath schema error: " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void save_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

json histogram_to_json(const std::vector<HistogramBin>& histogram) {
  json out = json::array();
  for (const auto& b : histogram) out.push_back({{"bin", b.bin}, {"count", b.count}});
  return out;
}

json pattern_to_json(const ConstraintPattern& pattern) { return json(pattern.zeroed_rows); }

}  // namespace exsym
