#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "cuspcalc/errors.hpp"
#include "cuspcalc/io.hpp"
#include "cuspcalc/random.hpp"

using namespace cuspcalc;

namespace {

const Trunc kT{-6, 6};

// Enough of JSON Schema for the shipped schemas: type, required, properties, items, anyOf,
// local $ref, minimum.
bool has_type(const ordered_json& v, const std::string& t) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "null") return v.is_null();
  if (t == "boolean") return v.is_boolean();
  return false;
}

bool validate(const ordered_json& v, const ordered_json& s, const ordered_json& root) {
  if (s.contains("$ref")) {
    const std::string ref = s["$ref"];
    return validate(v, root.at(ordered_json::json_pointer(ref.substr(1))), root);
  }
  if (s.contains("type")) {
    bool ok = false;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) ok = ok || has_type(v, t);
    } else {
      ok = has_type(v, s["type"]);
    }
    if (!ok) return false;
  }
  if (s.contains("anyOf")) {
    bool ok = false;
    for (const auto& alt : s["anyOf"]) ok = ok || validate(v, alt, root);
    if (!ok) return false;
  }
  if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) return false;
  if (v.is_object()) {
    if (s.contains("required"))
      for (const auto& k : s["required"])
        if (!v.contains(k.get<std::string>())) return false;
    if (s.contains("properties"))
      for (const auto& [k, sub] : s["properties"].items())
        if (v.contains(k) && !validate(v[k], sub, root)) return false;
  }
  if (v.is_array() && s.contains("items"))
    for (const auto& x : v)
      if (!validate(x, s["items"], root)) return false;
  return true;
}

bool same_layers(const CuspElement& a, const CuspElement& b) {
  return a.dim() == b.dim() && a.trunc() == b.trunc() && a.jlo() == b.jlo() && a.khi() == b.khi() &&
         a.sigma() == b.sigma() && a.ends(End::Plus) == b.ends(End::Plus) && a.ends(End::Minus) == b.ends(End::Minus);
}

std::string write_temp(const std::string& text) {
  char name[] = "/tmp/cuspcalc_io_XXXXXX";
  const int fd = mkstemp(name);
  REQUIRE(fd >= 0);
  std::ofstream(name) << text;
  return name;
}

}  // namespace

TEST_CASE("element round trip") {
  Rng g(81);
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + i % 2;
    const CuspElement a = random_element(g, n, kT, 2, -3, 2, -3, 2);
    const ordered_json j = ordered_json::parse(emit_element(a));
    CHECK(validate(j, element_schema(), element_schema()));
    if (same_layers(element_from_json(j), a)) ++ok;
  }
  CHECK(ok == 50);
}

TEST_CASE("shipped example file") {
  const CuspElement a = parse_element(CUSPCALC_DATA_DIR "/annihilation.json");
  const CuspElement expected = CuspElement::zeta(1, kT) - CuspElement::scalar_z(SFunc::var(), 1, kT) * GaussRat::i();
  CHECK(same_layers(a, expected));
  std::ifstream in(CUSPCALC_DATA_DIR "/annihilation.json");
  CHECK(validate(ordered_json::parse(in), element_schema(), element_schema()));
}

TEST_CASE("mismatched layers name the entry") {
  ordered_json j = ordered_json::parse(emit_element(CuspElement::zeta(1, kT) -
                                                   CuspElement::scalar_z(SFunc::var(), 1, kT) * GaussRat::i()));
  // x^0 coefficient at the plus end: xi -> 2 xi
  for (auto& f : j["ends"]["plus"])
    if (f["k"] == 0) f["family"] = ordered_json{{"num", {"0", "2"}}};
  const std::string path = write_temp(j.dump());
  try {
    parse_element(path);
    FAIL("no CompatibilityError");
  } catch (const CompatibilityError& e) {
    CHECK(e.j == 1);
    CHECK(e.k == 0);
    CHECK(e.end == 1);
  }
  std::remove(path.c_str());
}

TEST_CASE("schema errors") {
  CHECK_THROWS_AS(element_from_json(ordered_json::parse(R"({"trunc": {"jmin": -4, "K": 4}})")), SchemaError);
  CHECK_THROWS_AS(element_from_json(ordered_json::parse(R"({"dim": 2, "trunc": {"jmin": -4, "K": 4},
      "sigma": [{"j": 0, "plus": "1", "minus": "1"}]})")), SchemaError);
  CHECK_THROWS_AS(element_from_json(ordered_json::parse(R"({"dim": 1, "trunc": {"jmin": -4, "K": 4},
      "sigma": [{"j": 0, "plus": "x", "minus": "1"}]})")), SchemaError);
  const std::string path = write_temp("{ not json");
  CHECK_THROWS_AS(parse_element(path), SchemaError);
  std::remove(path.c_str());
}

TEST_CASE("reports") {
  Report empty;
  empty.suite = "none";
  const ordered_json e = ordered_json::parse(emit_report_json(empty));
  CHECK(validate(e, report_schema(), report_schema()));
  CHECK(e["results"].empty());
  CHECK(emit_report_csv(empty) == "name,anchor,samples,failures\n");

  Report r;
  r.suite = "traces";
  r.seed = 7;
  r.results.push_back({"rtr_commutator", "rTr vanishes on commutators", 100, 0, std::nullopt});
  r.results.push_back({"btr_commutator", "bTr vanishes on commutators", 100, 2, std::string("sample 4")});
  CHECK(r.failures() == 2);
  const ordered_json j = ordered_json::parse(emit_report_json(r));
  CHECK(validate(j, report_schema(), report_schema()));
  CHECK(j["results"][1]["counterexample"] == "sample 4");
  CHECK(emit_report_csv(r) ==
        "name,anchor,samples,failures\n"
        "\"rtr_commutator\",\"rTr vanishes on commutators\",100,0\n"
        "\"btr_commutator\",\"bTr vanishes on commutators\",100,2\n");
  CHECK_FALSE(validate(ordered_json::parse(R"({"suite": "x"})"), report_schema(), report_schema()));
}
