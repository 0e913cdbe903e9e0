#include <cmath>
#include <limits>
#include <set>

#include "isoconst/error.hpp"
#include "isoconst/serialize.hpp"
#include "isoconst/spaces.hpp"

namespace isoconst {

using nlohmann::json;

namespace {

const std::set<std::string>& allowed_keys(Family f) {
  static const std::set<std::string> lp{"family", "dim", "p", "name"};
  static const std::set<std::string> wlp{"family", "dim", "p", "weights", "name"};
  static const std::set<std::string> poly{"family", "dim", "functionals", "name"};
  static const std::set<std::string> csup{"family", "dim", "grid", "alpha", "beta", "name"};
  switch (f) {
    case Family::Lp: return lp;
    case Family::WeightedLp: return wlp;
    case Family::Polyhedral: return poly;
    case Family::DiscretizedSup: return csup;
  }
  return lp;
}

double number_field(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

std::size_t count_field(const json& doc, const char* key) {
  const json& v = doc.at(key);
  if (!v.is_number_integer()) throw ValidationError(std::string("'") + key + "' must be an integer");
  const auto n = v.get<long long>();
  if (n < 1) throw ValidationError(std::string(key) + " must be ≥ 1");
  return static_cast<std::size_t>(n);
}

Exponent exponent_field(const json& doc) {
  if (!doc.contains("p")) throw ValidationError("'p' is required for this family");
  const json& v = doc.at("p");
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") return Exponent::inf();
    throw ValidationError("'p' must be a number or \"inf\"");
  }
  if (!v.is_number()) throw ValidationError("'p' must be a number or \"inf\"");
  const double p = v.get<double>();
  if (!(p >= 1.0)) throw ValidationError("p must be ≥ 1");
  return Exponent::finite(p);
}

Vector vector_field(const json& v, std::size_t dim) {
  if (!v.is_array()) throw ValidationError("functional must be an array of numbers");
  std::vector<double> c;
  for (const json& e : v) {
    if (!e.is_number()) throw ValidationError("functional must be an array of numbers");
    c.push_back(e.get<double>());
  }
  if (c.size() != dim) throw ValidationError("functional dimension must equal dim");
  return Vector(std::move(c));
}

}  // namespace

json vector_to_json(const Vector& v) { return json(v.data()); }

json space_to_json(const SpaceSpec& s) {
  json doc;
  doc["family"] = std::string(family_name(s.family));
  doc["dim"] = s.dim;
  switch (s.family) {
    case Family::Lp:
    case Family::WeightedLp:
      if (s.p.infinite) {
        doc["p"] = "inf";
      } else {
        doc["p"] = s.p.value;
      }
      if (s.family == Family::WeightedLp) doc["weights"] = s.weights;
      break;
    case Family::Polyhedral: {
      json fs = json::array();
      for (const Vector& a : s.functionals) fs.push_back(vector_to_json(a));
      doc["functionals"] = std::move(fs);
      break;
    }
    case Family::DiscretizedSup:
      doc["grid"] = s.grid;
      doc["alpha"] = s.alpha;
      doc["beta"] = s.beta;
      break;
  }
  if (!s.name.empty()) doc["name"] = s.name;
  return doc;
}

SpaceSpec space_from_json(const json& doc) {
  if (!doc.is_object()) throw ValidationError("space spec must be a JSON object");
  if (!doc.contains("family") || !doc.at("family").is_string()) {
    throw ValidationError("'family' is required and must be a string");
  }
  const std::string fam = doc.at("family").get<std::string>();
  Family family;
  if (fam == "lp") {
    family = Family::Lp;
  } else if (fam == "weighted-lp") {
    family = Family::WeightedLp;
  } else if (fam == "polyhedral") {
    family = Family::Polyhedral;
  } else if (fam == "discretized-sup") {
    family = Family::DiscretizedSup;
  } else {
    throw ValidationError("unknown family '" + fam + "'");
  }
  const auto& allowed = allowed_keys(family);
  for (const auto& item : doc.items()) {
    if (!allowed.count(item.key())) {
      throw ValidationError("unknown key '" + item.key() + "' for family " + fam);
    }
  }

  SpaceSpec s;
  switch (family) {
    case Family::Lp: {
      if (!doc.contains("dim")) throw ValidationError("'dim' is required");
      const Exponent p = exponent_field(doc);
      s = make_lp(p.infinite ? std::numeric_limits<double>::infinity() : p.value, count_field(doc, "dim"));
      break;
    }
    case Family::WeightedLp: {
      const Exponent p = exponent_field(doc);
      if (!doc.contains("weights") || !doc.at("weights").is_array()) {
        throw ValidationError("'weights' array is required");
      }
      std::vector<double> w;
      for (const json& e : doc.at("weights")) {
        if (!e.is_number()) throw ValidationError("weights must be numbers");
        w.push_back(e.get<double>());
      }
      if (doc.contains("dim") && count_field(doc, "dim") != w.size()) {
        throw ValidationError("weights count must equal dim");
      }
      s = make_weighted_lp(p, std::move(w));
      break;
    }
    case Family::Polyhedral: {
      if (!doc.contains("dim")) throw ValidationError("'dim' is required");
      const std::size_t dim = count_field(doc, "dim");
      if (!doc.contains("functionals") || !doc.at("functionals").is_array()) {
        throw ValidationError("'functionals' array is required");
      }
      std::vector<Vector> fs;
      for (const json& f : doc.at("functionals")) fs.push_back(vector_field(f, dim));
      s = make_polyhedral(dim, std::move(fs));
      break;
    }
    case Family::DiscretizedSup: {
      if (!doc.contains("grid")) throw ValidationError("'grid' is required");
      const std::size_t grid = count_field(doc, "grid");
      if (grid < 2) throw ValidationError("grid must be ≥ 2");
      if (doc.contains("dim") && count_field(doc, "dim") != grid) {
        throw ValidationError("discretized-sup dim must equal grid");
      }
      const double a = doc.contains("alpha") ? number_field(doc, "alpha") : 0.0;
      const double b = doc.contains("beta") ? number_field(doc, "beta") : 1.0;
      s = make_discretized_sup(grid, a, b);
      break;
    }
  }
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ValidationError("'name' must be a string");
    s.name = doc.at("name").get<std::string>();
  }
  return s;
}

SpaceSpec parse_space_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed space spec: ") + e.what(), e.byte);
  }
  return space_from_json(doc);
}

std::string to_json_text(const SpaceSpec& space) { return space_to_json(space).dump(); }

}  // namespace isoconst
