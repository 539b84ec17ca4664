#include "cuspcalc/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "cuspcalc/errors.hpp"

namespace cuspcalc {

namespace {

const ordered_json& field(const ordered_json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(where + ": missing \"" + key + "\"");
  return j.at(key);
}

int int_field(const ordered_json& j, const char* key, const std::string& where) {
  const ordered_json& v = field(j, key, where);
  if (!v.is_number_integer()) throw SchemaError(where + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

GaussRat scalar_from_json(const ordered_json& j) {
  if (j.is_number_integer()) return GaussRat(j.get<long>());
  if (!j.is_string()) throw SchemaError("coefficient must be a string or an integer");
  try {
    return parse_gauss(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError("bad coefficient \"" + j.get<std::string>() + "\": " + e.what());
  }
}

const char* end_key(End e) { return e == End::Plus ? "plus" : "minus"; }

}  // namespace

ordered_json to_json(const RatFunc& r) {
  ordered_json num = ordered_json::array();
  for (const auto& c : r.num().coeffs()) num.push_back(c.str());
  ordered_json out = {{"num", num}};
  if (r.den().empty()) return out;
  ordered_json den = ordered_json::array();
  for (const auto& p : r.den()) den.push_back({{"at", p.at.str()}, {"mult", p.mult}});
  out["den"] = den;
  return out;
}

ordered_json to_json(const SFunc& f) {
  if (f.is_rational() && f.r0().is_constant()) return f.r0().constant_value().str();
  if (f.is_rational()) return to_json(f.r0());
  ordered_json out;
  if (!f.r0().is_zero()) out["r0"] = to_json(f.r0());
  out["r1"] = to_json(f.r1());
  return out;
}

ordered_json to_json(const SMat& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < m.dim(); ++r) {
    ordered_json row = ordered_json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

ordered_json to_json(const CuspElement& a) {
  ordered_json j;
  j["dim"] = a.dim();
  j["trunc"] = {{"jmin", a.trunc().jmin}, {"K", a.trunc().K}};
  j["valid"] = {{"jlo", a.jlo()}, {"khi", a.khi()}};
  ordered_json sigma = ordered_json::array();
  for (const auto& [deg, c] : a.sigma()) sigma.push_back({{"j", deg}, {"plus", to_json(c.plus)}, {"minus", to_json(c.minus)}});
  j["sigma"] = sigma;
  ordered_json ends = ordered_json::object();
  for (End e : {End::Plus, End::Minus}) {
    ordered_json list = ordered_json::array();
    for (const auto& [k, f] : a.ends(e)) list.push_back({{"k", k}, {"family", to_json(f.matrix())}});
    ends[end_key(e)] = list;
  }
  j["ends"] = ends;
  return j;
}

RatFunc ratfunc_from_json(const ordered_json& j) {
  if (j.is_string() || j.is_number_integer()) return RatFunc(scalar_from_json(j));
  const ordered_json& num = field(j, "num", "rational function");
  if (!num.is_array()) throw SchemaError("rational function: \"num\" must be an array");
  std::vector<GaussRat> coeffs;
  for (const auto& c : num) coeffs.push_back(scalar_from_json(c));
  while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
  std::vector<Pole> den;
  if (j.contains("den")) {
    if (!j.at("den").is_array()) throw SchemaError("rational function: \"den\" must be an array");
    for (const auto& p : j.at("den")) {
      const int mult = int_field(p, "mult", "pole");
      if (mult < 1) throw SchemaError("pole: \"mult\" must be positive");
      den.push_back({scalar_from_json(field(p, "at", "pole")), mult});
    }
  }
  RatFunc r{Poly(coeffs)};
  for (const auto& p : den) r *= RatFunc::pole_term(p.at, p.mult);
  return r;
}

SFunc sfunc_from_json(const ordered_json& j) {
  if (j.is_object() && (j.contains("r0") || j.contains("r1"))) {
    RatFunc r0 = j.contains("r0") ? ratfunc_from_json(j.at("r0")) : RatFunc();
    RatFunc r1 = j.contains("r1") ? ratfunc_from_json(j.at("r1")) : RatFunc();
    return SFunc(r0, r1);
  }
  return SFunc(ratfunc_from_json(j));
}

SMat smat_from_json(const ordered_json& j, int n) {
  SMat m(n);
  if (!j.is_array()) {
    if (n != 1) throw SchemaError("matrix of dimension " + std::to_string(n) + " must be an array of rows");
    m(0, 0) = sfunc_from_json(j);
    return m;
  }
  if (static_cast<int>(j.size()) != n) throw SchemaError("matrix must have " + std::to_string(n) + " rows");
  for (int r = 0; r < n; ++r) {
    const ordered_json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw SchemaError("matrix row " + std::to_string(r) + " must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = sfunc_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

CuspElement element_from_json(const ordered_json& j) {
  if (!j.is_object()) throw SchemaError("element must be an object");
  const int n = int_field(j, "dim", "element");
  if (n < 1) throw SchemaError("element: \"dim\" must be positive");
  const ordered_json& tj = field(j, "trunc", "element");
  const Trunc t{int_field(tj, "jmin", "trunc"), int_field(tj, "K", "trunc")};
  CuspElement a(n, t);
  if (j.contains("sigma")) {
    if (!j.at("sigma").is_array()) throw SchemaError("element: \"sigma\" must be an array");
    for (const auto& c : j.at("sigma")) {
      const int deg = int_field(c, "j", "sigma entry");
      a.set_sigma(deg, BranchPair{smat_from_json(field(c, "plus", "sigma entry"), n),
                                  smat_from_json(field(c, "minus", "sigma entry"), n)});
    }
  }
  if (j.contains("ends")) {
    const ordered_json& ends = j.at("ends");
    if (!ends.is_object()) throw SchemaError("element: \"ends\" must be an object");
    for (End e : {End::Plus, End::Minus}) {
      if (!ends.contains(end_key(e))) continue;
      if (!ends.at(end_key(e)).is_array()) throw SchemaError(std::string("ends.") + end_key(e) + " must be an array");
      for (const auto& f : ends.at(end_key(e))) {
        const int k = int_field(f, "k", "end entry");
        a.set_end(e, k, SuspendedFamily(smat_from_json(field(f, "family", "end entry"), n)));
      }
    }
  }
  if (j.contains("valid")) a.set_validity(int_field(j.at("valid"), "jlo", "valid"), int_field(j.at("valid"), "khi", "valid"));
  return a;
}

CuspElement parse_element(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const ordered_json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  CuspElement a = element_from_json(j);
  check_compatibility(a);
  return a;
}

std::string emit_element(const CuspElement& a) { return to_json(a).dump(2); }

long Report::failures() const {
  long f = 0;
  for (const auto& r : results) f += r.failures;
  return f;
}

ordered_json to_json(const Report& r) {
  ordered_json list = ordered_json::array();
  for (const auto& x : r.results) {
    ordered_json e;
    e["name"] = x.name;
    e["anchor"] = x.anchor;
    e["samples"] = x.samples;
    e["failures"] = x.failures;
    e["counterexample"] = x.counterexample ? ordered_json(*x.counterexample) : ordered_json(nullptr);
    list.push_back(e);
  }
  ordered_json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["failures"] = r.failures();
  j["results"] = list;
  return j;
}

std::string emit_report_json(const Report& r) { return to_json(r).dump(2) + "\n"; }

std::string emit_report_csv(const Report& r) {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
  };
  std::ostringstream out;
  out << "name,anchor,samples,failures\n";
  for (const auto& x : r.results) out << quote(x.name) << ',' << quote(x.anchor) << ',' << x.samples << ',' << x.failures << '\n';
  return out.str();
}

void emit_report(const Report& r, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "json") text = emit_report_json(r);
  else if (format == "csv") text = emit_report_csv(r);
  else throw std::invalid_argument("unknown report format " + format);
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

const ordered_json& element_schema() {
  static const ordered_json schema = ordered_json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "cusp element",
  "type": "object",
  "required": ["dim", "trunc"],
  "definitions": {
    "scalar": {"type": ["string", "integer"]},
    "ratfunc": {
      "anyOf": [
        {"$ref": "#/definitions/scalar"},
        {"type": "object", "required": ["num"], "properties": {
          "num": {"type": "array", "items": {"$ref": "#/definitions/scalar"}},
          "den": {"type": "array", "items": {"type": "object", "required": ["at", "mult"], "properties": {
            "at": {"$ref": "#/definitions/scalar"}, "mult": {"type": "integer", "minimum": 1}}}}}}
      ]
    },
    "entry": {
      "anyOf": [
        {"$ref": "#/definitions/ratfunc"},
        {"type": "object", "properties": {"r0": {"$ref": "#/definitions/ratfunc"}, "r1": {"$ref": "#/definitions/ratfunc"}}}
      ]
    },
    "matrix": {
      "anyOf": [
        {"$ref": "#/definitions/entry"},
        {"type": "array", "items": {"type": "array", "items": {"$ref": "#/definitions/entry"}}}
      ]
    },
    "end": {"type": "array", "items": {"type": "object", "required": ["k", "family"], "properties": {
      "k": {"type": "integer"}, "family": {"$ref": "#/definitions/matrix"}}}}
  },
  "properties": {
    "dim": {"type": "integer", "minimum": 1},
    "trunc": {"type": "object", "required": ["jmin", "K"], "properties": {
      "jmin": {"type": "integer"}, "K": {"type": "integer"}}},
    "valid": {"type": "object", "required": ["jlo", "khi"], "properties": {
      "jlo": {"type": "integer"}, "khi": {"type": "integer"}}},
    "sigma": {"type": "array", "items": {"type": "object", "required": ["j", "plus", "minus"], "properties": {
      "j": {"type": "integer"}, "plus": {"$ref": "#/definitions/matrix"}, "minus": {"$ref": "#/definitions/matrix"}}}},
    "ends": {"type": "object", "properties": {"plus": {"$ref": "#/definitions/end"}, "minus": {"$ref": "#/definitions/end"}}}
  }
})");
  return schema;
}

const ordered_json& report_schema() {
  static const ordered_json schema = ordered_json::parse(R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "verification report",
  "type": "object",
  "required": ["suite", "seed", "failures", "results"],
  "properties": {
    "suite": {"type": "string"},
    "seed": {"type": "integer", "minimum": 0},
    "failures": {"type": "integer", "minimum": 0},
    "results": {"type": "array", "items": {"type": "object",
      "required": ["name", "anchor", "samples", "failures", "counterexample"],
      "properties": {
        "name": {"type": "string"},
        "anchor": {"type": "string"},
        "samples": {"type": "integer", "minimum": 0},
        "failures": {"type": "integer", "minimum": 0},
        "counterexample": {"type": ["string", "null"]}}}}
  }
})");
  return schema;
}

}  // namespace cuspcalc
