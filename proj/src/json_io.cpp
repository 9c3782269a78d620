#include "grpcoh/json_io.hpp"

#include <cmath>
#include <sstream>

namespace grpcoh {

namespace {

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

Rational rational(const json& num, const json& den) {
  if (!num.is_string() || !den.is_string()) bad("exact coefficients are decimal strings");
  try {
    Rational r(num.get<std::string>() + "/" + den.get<std::string>(), 10);
    if (sgn(r.get_den()) == 0) bad("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    bad("malformed exact coefficient");
  }
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json entry_to_json(const CertificateEntry& e) {
  json j = {{"k", e.k},
            {"vector", e.vector},
            {"vector_norm", e.vector_norm},
            {"displacement", finite_or_null(e.displacement)},
            {"bound", e.bound},
            {"pass", e.pass}};
  for (const auto& [key, v] : e.extra) j[key] = finite_or_null(v);
  return j;
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

GroupSpec parse_family(const std::string& family, int rank) {
  if (family == "zn") return GroupSpec::free_abelian(rank);
  if (family == "fk") return GroupSpec::free_group(rank);
  fail(ErrorCode::InvalidArgument, "unknown group family '" + family + "' (expected zn or fk)");
}

json group_to_json(const GroupSpec& spec) {
  return {{"family", spec.family == Family::FreeAbelian ? "zn" : "fk"}, {"rank", spec.rank}};
}

GroupSpec group_from_json(const json& j) {
  const json& fam = field(j, "family");
  if (!fam.is_string()) bad("group family must be a string");
  return parse_family(fam.get<std::string>(), integer(field(j, "rank"), "rank"));
}

json sum_to_json(const FormalSum& a) {
  json out = json::array();
  for (const auto& [g, c] : a) {
    out.push_back({{"elem", format_element(a.spec(), g)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return out;
}

json sum_to_json(const ExactSum& a) {
  json out = json::array();
  for (const auto& [g, c] : a) {
    out.push_back({{"elem", format_element(a.spec(), g)},
                   {"re_num", c.re.get_num().get_str()},
                   {"re_den", c.re.get_den().get_str()},
                   {"im_num", c.im.get_num().get_str()},
                   {"im_den", c.im.get_den().get_str()}});
  }
  return out;
}

FormalSum sum_from_json(const GroupSpec& spec, const json& j) {
  return to_float(exact_sum_from_json(spec, j));
}

ExactSum exact_sum_from_json(const GroupSpec& spec, const json& j) {
  if (!j.is_array()) bad("a formal sum is a JSON array of terms");
  std::vector<ExactSum::Term> terms;
  for (const auto& t : j) {
    const json& e = field(t, "elem");
    if (!e.is_string()) bad("\"elem\" must be a string");
    Element g = parse_element(spec, e.get<std::string>());
    GaussianRational c;
    if (t.contains("re_num")) {
      c = GaussianRational(rational(field(t, "re_num"), field(t, "re_den")),
                           t.contains("im_num") ? rational(t.at("im_num"), field(t, "im_den")) : Rational(0));
    } else {
      const double re = number(field(t, "re"), "re");
      const double im = t.contains("im") ? number(t.at("im"), "im") : 0.0;
      c = exact_from_complex({re, im});
    }
    terms.emplace_back(std::move(g), std::move(c));
  }
  return ExactSum(spec, std::move(terms));
}

json sampled_to_json(const SampledTorusFunction& f) {
  json values = json::array();
  for (const auto& v : f.values) values.push_back({v.real(), v.imag()});
  json out = {{"n", f.n}, {"m", f.m}, {"values", std::move(values)}};
  out["lipschitz"] = f.lipschitz ? json(*f.lipschitz) : json(nullptr);
  if (f.sup_bound) out["sup_bound"] = *f.sup_bound;
  return out;
}

SampledTorusFunction sampled_from_json(const json& j) {
  SampledTorusFunction f;
  f.n = integer(field(j, "n"), "n");
  f.m = integer(field(j, "m"), "m");
  const json& vals = field(j, "values");
  if (!vals.is_array()) bad("\"values\" must be an array");
  for (const auto& v : vals) {
    if (!v.is_array() || v.size() != 2) bad("each value is a [re, im] pair");
    f.values.emplace_back(number(v[0], "re"), number(v[1], "im"));
  }
  if (j.contains("lipschitz") && !j.at("lipschitz").is_null()) f.lipschitz = number(j.at("lipschitz"), "lipschitz");
  if (j.contains("sup_bound") && !j.at("sup_bound").is_null()) f.sup_bound = number(j.at("sup_bound"), "sup_bound");
  f.check();
  return f;
}

json certified_to_json(const CertifiedValue& v) {
  return {{"estimate", v.estimate},
          {"lower", v.lower},
          {"upper", finite_or_null(v.upper)},
          {"certified", v.certified},
          {"evaluations", v.evaluations}};
}

json certificate_to_json(const AlmostInvarianceCertificate& c) {
  json entries = json::array();
  for (const auto& e : c.entries) entries.push_back(entry_to_json(e));
  json stages = json::array();
  for (const auto& e : c.stages) stages.push_back(entry_to_json(e));
  return {{"norm", c.norm},
          {"entries", std::move(entries)},
          {"stages", std::move(stages)},
          {"decay_ok", c.decay_ok},
          {"slope", c.slope ? json(*c.slope) : json(nullptr)},
          {"notes", c.notes},
          {"verdict", c.pass() ? "pass" : "fail"}};
}

std::string certificate_to_csv(const AlmostInvarianceCertificate& c) {
  std::ostringstream os;
  os.precision(17);
  os << "kind,k,displacement,bound\n";
  for (const auto& e : c.entries) os << "entry," << e.k << ',' << e.displacement << ',' << e.bound << '\n';
  for (const auto& e : c.stages) os << "stage," << e.k << ',' << e.displacement << ',' << e.bound << '\n';
  return os.str();
}

json ends_to_json(const EndsEstimate& e) {
  json removed = json::array();
  for (const auto& x : e.removed) removed.push_back(format_element(e.spec, x));
  json records = json::array();
  for (const auto& r : e.records) records.push_back({{"radius", r.radius}, {"components", r.components}});
  const H1Dimension h = h1_cg_dimension(e);
  json dim = {{"value", h.to_string()}};
  if (!h.note.empty()) dim["note"] = h.note;
  return {{"group", group_to_json(e.spec)},
          {"removed", std::move(removed)},
          {"records", std::move(records)},
          {"verdict", verdict_name(e.verdict)},
          {"h1_dimension", std::move(dim)}};
}

json cohomology_report_to_json(const CohomologyReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures) failures.push_back({{"cocycle", f.cocycle}, {"reason", f.reason}});
  json out = {{"n", r.n},   {"k", r.k}, {"window", r.window}, {"pad", r.pad}, {"checked", r.checked},
              {"failures", std::move(failures)}};
  if (r.k < r.n) {
    out["cocycle_dimension"] = r.cocycle_dimension;
  } else {
    out["cokernel_rank"] = r.cokernel_rank;
  }
  return out;
}

json cocycle_to_json(const GroupSpec& spec, const std::vector<Element>& generators, const CocycleValues& values) {
  json gens = json::array();
  for (const auto& g : generators) gens.push_back(format_element(spec, g));
  json vals = json::object();
  for (const auto& [s, v] : values) vals[format_element(spec, s)] = sum_to_json(v);
  return {{"group", group_to_json(spec)}, {"generators", std::move(gens)}, {"values", std::move(vals)}};
}

CocycleInput cocycle_from_json(const json& j) {
  CocycleInput in;
  in.spec = group_from_json(field(j, "group"));
  const json& gens = field(j, "generators");
  if (!gens.is_array()) bad("\"generators\" must be an array");
  for (const auto& g : gens) {
    if (!g.is_string()) bad("generators are element strings");
    in.generators.push_back(parse_element(in.spec, g.get<std::string>()));
  }
  const json& vals = field(j, "values");
  if (!vals.is_object()) bad("\"values\" must be an object keyed by generator");
  for (const auto& [key, v] : vals.items()) {
    in.values.emplace(parse_element(in.spec, key), exact_sum_from_json(in.spec, v));
  }
  return in;
}

}  // namespace grpcoh
