#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtorus/report.hpp"
#include "qtorus/series.hpp"

namespace qtorus {

using Json = nlohmann::json;

namespace detail {

inline i64 require_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<i64>();
}

inline IntMat matrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of integer rows");
  std::vector<std::vector<i64>> rows;
  for (size_t i = 0; i < j.size(); ++i) {
    const Json& row = j[i];
    if (!row.is_array()) throw ConfigError(where + "[" + std::to_string(i) + "]: expected an array");
    std::vector<i64> r;
    for (size_t k = 0; k < row.size(); ++k)
      r.push_back(require_int(row[k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]"));
    rows.push_back(std::move(r));
  }
  return IntMat::from_rows(rows);
}

inline Json matrix_to_json(const IntMat& m) { return Json(m.to_rows()); }

inline ExponentVector vector_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an integer array");
  ExponentVector v;
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(require_int(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

}  // namespace detail

inline FieldSpec field_spec_from_json(const Json& j) {
  FieldSpec spec;
  if (!j.is_object()) throw ConfigError("coeff_field: expected an object");
  std::string kind = j.value("kind", std::string("cyclotomic"));
  if (kind == "cyclotomic") {
    spec.kind = FieldKind::cyclotomic;
  } else if (kind == "prime") {
    spec.kind = FieldKind::prime;
    if (!j.contains("p")) throw ConfigError("coeff_field: prime mode needs \"p\"");
    spec.p = detail::require_int(j.at("p"), "coeff_field.p");
  } else {
    throw ConfigError("coeff_field.kind must be \"cyclotomic\" or \"prime\"");
  }
  return spec;
}

inline Json field_spec_to_json(const FieldSpec& spec) {
  Json j;
  j["kind"] = spec.kind == FieldKind::prime ? "prime" : "cyclotomic";
  if (spec.kind == FieldKind::prime) j["p"] = spec.p;
  return j;
}

inline AnalysisConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  AnalysisConfig cfg;
  if (!j.contains("n")) throw ConfigError("config: missing \"n\"");
  cfg.n = detail::require_int(j.at("n"), "config.n");
  if (!j.contains("ell")) throw ConfigError("config: missing \"ell\"");
  cfg.ell = detail::require_int(j.at("ell"), "config.ell");
  if (!j.contains("h")) throw ConfigError("config: missing \"h\"");
  cfg.h = detail::matrix_from_json(j.at("h"), "config.h");
  if (j.contains("coeff_field")) cfg.field = field_spec_from_json(j.at("coeff_field"));
  cfg.field.ell = cfg.ell;
  if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
  if (j.contains("notes"))
    for (const auto& note : j.at("notes")) cfg.notes.push_back(note.get<std::string>());
  return cfg;
}

inline Json config_to_json(const AnalysisConfig& cfg) {
  Json j;
  j["n"] = cfg.n;
  j["ell"] = cfg.ell;
  j["h"] = detail::matrix_to_json(cfg.h);
  j["coeff_field"] = field_spec_to_json(cfg.field);
  if (!cfg.name.empty()) j["name"] = cfg.name;
  if (!cfg.notes.empty()) j["notes"] = cfg.notes;
  return j;
}

inline AnalysisConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

inline std::string center_kind_name(CenterKind k) {
  switch (k) {
    case CenterKind::laurent_series: return "laurent_series";
    case CenterKind::power_series: return "power_series";
    default: return "unknown_form";
  }
}

inline CenterKind center_kind_from_name(const std::string& s) {
  if (s == "laurent_series") return CenterKind::laurent_series;
  if (s == "power_series") return CenterKind::power_series;
  if (s == "unknown_form") return CenterKind::unknown_form;
  throw ConfigError("unknown center kind: " + s);
}

inline Json center_to_json(const CenterDescription& c) {
  Json j;
  j["kind"] = center_kind_name(c.kind);
  Json gens = Json::array();
  for (const auto& g : c.generators) gens.push_back(g);
  j["generators"] = gens;
  return j;
}

inline CenterDescription center_from_json(const Json& j) {
  CenterDescription c;
  c.kind = center_kind_from_name(j.at("kind").get<std::string>());
  for (const auto& g : j.at("generators"))
    c.generators.push_back(detail::vector_from_json(g, "center generators"));
  return c;
}

inline Json report_to_json(const StructureReport& rep) {
  Json j;
  j["input"] = {{"n", rep.n}, {"ell", rep.ell}, {"h", detail::matrix_to_json(rep.h)}};
  j["pi_degree"] = rep.pi_degree;
  j["image_cardinality"] = rep.image_cardinality;
  j["s_basis"] = detail::matrix_to_json(rep.s_basis);
  j["lambdas"] = rep.lambdas;
  j["positive_diagonal"] = rep.positive_diagonal;
  j["center_of_L"] = center_to_json(rep.center_of_l);
  j["center_of_R"] = center_to_json(rep.center_of_r);
  j["azumaya"] = {{"degree", rep.azumaya_degree}, {"status", "theorem-derived, not verified"}};
  j["ufr_L"] = rep.ufr_l;
  j["ufr_R"] = rep.ufr_r;
  j["warnings"] = rep.warnings;
  return j;
}

inline StructureReport report_from_json(const Json& j) {
  StructureReport rep;
  const Json& in = j.at("input");
  rep.n = detail::require_int(in.at("n"), "input.n");
  rep.ell = detail::require_int(in.at("ell"), "input.ell");
  rep.h = detail::matrix_from_json(in.at("h"), "input.h");
  rep.pi_degree = detail::require_int(j.at("pi_degree"), "pi_degree");
  rep.image_cardinality = detail::require_int(j.at("image_cardinality"), "image_cardinality");
  rep.s_basis = detail::matrix_from_json(j.at("s_basis"), "s_basis");
  for (const auto& l : j.at("lambdas")) rep.lambdas.push_back(detail::require_int(l, "lambdas"));
  rep.positive_diagonal = j.at("positive_diagonal").get<bool>();
  rep.center_of_l = center_from_json(j.at("center_of_L"));
  rep.center_of_r = center_from_json(j.at("center_of_R"));
  rep.azumaya_degree = detail::require_int(j.at("azumaya").at("degree"), "azumaya.degree");
  rep.ufr_l = j.at("ufr_L").get<bool>();
  rep.ufr_r = j.at("ufr_R").get<bool>();
  for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
  return rep;
}

inline Json scalar_to_json(const CoeffField& field, const Scalar& s) {
  auto parts = field.serialize(s);
  if (field.spec().kind == FieldKind::prime) return Json(parts[0]);
  return Json(parts);
}

inline Scalar scalar_from_json(const CoeffField& field, const Json& j) {
  if (field.spec().kind == FieldKind::prime) {
    if (!j.is_string()) throw ConfigError("prime scalar: expected a residue string");
    return field.deserialize({j.get<std::string>()});
  }
  if (!j.is_array()) throw ConfigError("cyclotomic scalar: expected an array of rational strings");
  std::vector<std::string> parts;
  for (const auto& p : j) {
    if (!p.is_string()) throw ConfigError("cyclotomic scalar: coordinates must be strings");
    parts.push_back(p.get<std::string>());
  }
  return field.deserialize(parts);
}

inline Json series_to_json(const SkewSeries& f) {
  const auto& field = f.context()->field;
  Json j;
  j["shift"] = f.shift();
  j["precision"] = f.precision() ? Json(*f.precision()) : Json("inf");
  Json terms = Json::array();
  for (const auto& [s, c] : f.terms())
    terms.push_back({{"exp", s}, {"coeff", scalar_to_json(field, c)}});
  j["terms"] = std::move(terms);
  return j;
}

inline SkewSeries series_from_json(SeriesContextPtr ctx, const Json& j) {
  if (!j.is_object()) throw ConfigError("series: expected a JSON object");
  ExponentVector shift = detail::vector_from_json(j.at("shift"), "series.shift");
  Precision prec;
  const Json& pj = j.at("precision");
  if (pj.is_string()) {
    if (pj.get<std::string>() != "inf")
      throw ConfigError("series.precision must be a positive integer or \"inf\"");
  } else {
    prec = detail::require_int(pj, "series.precision");
  }
  TermMap terms;
  const auto& field = ctx->field;
  for (const auto& t : j.at("terms")) {
    ExponentVector e = detail::vector_from_json(t.at("exp"), "series term exp");
    Scalar c = scalar_from_json(field, t.at("coeff"));
    if (terms.count(e)) throw ConfigError("series: duplicate term exponent");
    terms.emplace(std::move(e), std::move(c));
  }
  return SkewSeries::from_parts(std::move(ctx), std::move(shift), std::move(terms), prec);
}

inline SkewSeries load_series_file(SeriesContextPtr ctx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open series file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("series file " + path + " is not valid JSON: " + e.what());
  }
  return series_from_json(std::move(ctx), j);
}

}  // namespace qtorus
