#include "grpcoh/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace grpcoh {

namespace {

json load_file(const std::string& path) {
  if (path.empty()) fail(ErrorCode::InvalidArgument, "this command needs --input");
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot open input file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

NormFunctional make_norm(const RunConfig& cfg, double eps) {
  if (cfg.norm == "l1") return NormFunctional::lp(1.0);
  if (cfg.norm == "l2") return NormFunctional::lp(2.0);
  if (cfg.norm == "lp") return NormFunctional::lp(cfg.p);
  if (cfg.norm == "op") return NormFunctional::op(eps);
  fail(ErrorCode::InvalidArgument, "unknown norm '" + cfg.norm + "' (expected l1, l2, lp or op)");
}

int positive(int v, const char* what) {
  if (v < 1) fail(ErrorCode::InvalidArgument, std::string(what) + " must be >= 1");
  return v;
}

// All exponent vectors in [-w, w]^n.
std::vector<Element> cube(int n, int w) {
  std::vector<Element> out;
  Element::Storage cur(n, -w);
  while (true) {
    out.emplace_back(cur);
    int d = n - 1;
    for (; d >= 0; --d) {
      if (++cur[d] <= w) break;
      cur[d] = -w;
    }
    if (d < 0) break;
  }
  return out;
}

FormalSum random_sum(const GroupSpec& spec, int w, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FormalSum::Term> terms;
  for (auto& m : cube(spec.rank, w)) {
    const double re = u(rng);
    const double im = u(rng);
    terms.emplace_back(std::move(m), Complex(re, im));
  }
  return FormalSum(spec, std::move(terms));
}

ExactSum random_exact_sum(const GroupSpec& spec, int w, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 6);
  std::bernoulli_distribution keep(0.5);
  std::vector<ExactSum::Term> terms;
  for (auto& m : cube(spec.rank, w)) {
    if (!keep(rng)) continue;
    const int a = num(rng);
    const int b = den(rng);
    const int c = num(rng);
    const int d = den(rng);
    terms.emplace_back(std::move(m), GaussianRational(Rational(a, b), Rational(c, d)));
  }
  return ExactSum(spec, std::move(terms));
}

GroupSpec zn(const RunConfig& cfg, int default_rank = 1) {
  if (cfg.group != "zn") fail(ErrorCode::InvalidArgument, cfg.command + " runs on free abelian groups (--group zn)");
  return GroupSpec::free_abelian(cfg.rank.value_or(default_rank));
}

json exact_scalar(const GaussianRational& c) {
  return {{"exact", c.to_string()}, {"re", c.re.get_d()}, {"im", c.im.get_d()}};
}

struct Outcome {
  json results;
  std::vector<json> certificates;
  bool pass = true;
  std::string csv;
};

// ---------------------------------------------------------------------------

Outcome run_norms(const RunConfig& cfg) {
  const GroupSpec spec = parse_family(cfg.group, cfg.rank.value_or(cfg.group == "fk" ? 2 : 1));
  const double eps = cfg.eps.value_or(1e-6);
  std::vector<FormalSum> items;
  if (!cfg.input.empty()) {
    items.push_back(sum_from_json(spec, load_file(cfg.input)));
  } else {
    if (spec.family != Family::FreeAbelian) fail(ErrorCode::InvalidArgument, "random samples need --group zn");
    std::mt19937_64 rng(cfg.seed);
    const int count = positive(cfg.samples.value_or(200), "samples");
    for (int s = 0; s < count; ++s) items.push_back(random_sum(spec, cfg.support, rng));
  }
  Outcome out;
  json rows = json::array();
  for (const auto& a : items) {
    const double l1 = lp_norm(a, 1.0);
    const double l2 = lp_norm(a, 2.0);
    json row = {{"terms", a.size()}, {"l1", l1}, {"l2", l2}, {"linf", lp_norm(a, kInfNorm)}};
    if (spec.family == Family::FreeAbelian) {
      const CertifiedValue op = certified_sup(a, eps);
      const bool ok = op.certified && l1 + 1e-9 >= op.upper && op.upper >= l2 - eps - 1e-9;
      row["op"] = certified_to_json(op);
      row["pass"] = ok;
      out.pass = out.pass && ok;
    }
    rows.push_back(std::move(row));
  }
  out.results = {{"samples", std::move(rows)}};
  return out;
}

Outcome run_opnorm(const RunConfig& cfg) {
  const GroupSpec spec = zn(cfg);
  const double eps = cfg.eps.value_or(1e-6);
  std::vector<FormalSum> items;
  if (!cfg.input.empty()) {
    items.push_back(sum_from_json(spec, load_file(cfg.input)));
  } else {
    std::mt19937_64 rng(cfg.seed);
    const int count = positive(cfg.samples.value_or(50), "samples");
    for (int s = 0; s < count; ++s) items.push_back(random_sum(spec, cfg.support, rng));
  }
  Outcome out;
  json rows = json::array();
  for (const auto& a : items) {
    const CertifiedValue cert = certified_sup(a, eps);
    const OracleResult oracle = op_norm_oracle(a, positive(cfg.truncation, "truncation"));
    const double diff = std::abs(cert.estimate - oracle.value);
    const double tol = 1e-3 * std::max(1.0, cert.estimate);
    const bool ok = cert.certified && diff <= tol;
    rows.push_back({{"terms", a.size()},
                    {"certified", certified_to_json(cert)},
                    {"oracle", {{"value", oracle.value}, {"converged", oracle.converged}, {"iterations", oracle.iterations}}},
                    {"difference", diff},
                    {"tolerance", tol},
                    {"pass", ok}});
    out.pass = out.pass && ok;
  }
  out.results = {{"samples", std::move(rows)}};
  return out;
}

Outcome run_folner(const RunConfig& cfg) {
  const GroupSpec spec = zn(cfg);
  const NormFunctional norm = make_norm(cfg, cfg.eps.value_or(1e-6));
  LpCertificateOptions opts;
  opts.stages = std::max(0, cfg.stages);
  opts.seed = cfg.seed;
  const auto cert = lp_certificate(standard_generators(spec), norm, cfg.p, positive(cfg.kmax, "kmax"), opts);
  Outcome out;
  out.results = {{"entries", cert.entries.size()}, {"stages", cert.stages.size()}};
  out.certificates.push_back(certificate_to_json(cert));
  out.pass = cert.pass();
  out.csv = certificate_to_csv(cert);
  return out;
}

Outcome run_bumpcert(const RunConfig& cfg) {
  const GroupSpec spec = zn(cfg);
  std::vector<Element> monomials;
  for (const auto& m : cfg.monomials) monomials.push_back(parse_element(spec, m));
  if (monomials.empty()) {
    Element::Storage m(spec.rank, 1);
    if (spec.rank == 2) m = {2, 3};
    monomials.emplace_back(std::move(m));
  }
  BumpCertificateOptions opts;
  opts.eps = cfg.eps.value_or(1e-5);
  const auto cert = bump_certificate(spec.rank, positive(cfg.imax, "imax"), monomials, opts);
  Outcome out;
  json mons = json::array();
  for (const auto& m : monomials) mons.push_back(format_element(spec, m));
  out.results = {{"monomials", std::move(mons)}, {"entries", cert.entries.size()}};
  out.certificates.push_back(certificate_to_json(cert));
  out.pass = cert.pass();
  out.csv = certificate_to_csv(cert);
  return out;
}

Outcome run_ends(const RunConfig& cfg) {
  const GroupSpec spec = parse_family(cfg.group, cfg.rank.value_or(cfg.group == "fk" ? 2 : 1));
  const auto S = standard_generators(spec);
  const int R = cfg.radius.value_or(8);
  if (cfg.remove < 0) fail(ErrorCode::InvalidArgument, "remove must be >= 0");
  const int first = std::max(cfg.remove + 1, R - 6);
  if (first > R) fail(ErrorCode::InvalidArgument, "radius must exceed the removed ball");
  std::vector<int> radii;
  for (int r = first; r <= R; ++r) radii.push_back(r);
  const auto e = ends_estimate(S, radii, ball(S, cfg.remove));
  Outcome out;
  out.results = ends_to_json(e);
  out.pass = e.verdict != EndsVerdict::Undetermined;
  return out;
}

json decide(const GeneratingSet& S, const CocycleValues& b, int radius, bool& pass) {
  const PotentialFunction p = integrate_coboundary(S, b, radius, false);
  json row = {{"radius", p.radius}, {"consistent", p.consistent}};
  if (!p.consistent) {
    row["violation"] = {{"vertex", format_element(S.spec(), p.violation->vertex)},
                        {"generator", format_element(S.spec(), p.violation->generator)}};
    pass = false;
    return row;
  }
  const auto F = p.support_union();
  try {
    const auto e = ends_estimate(S, {p.radius}, F);
    const auto d = finite_support_decision(p, e);
    row["finite"] = d.finite;
    row["constant"] = exact_scalar(d.constant);
    if (d.reconstructed) row["reconstructed"] = sum_to_json(*d.reconstructed);
    pass = pass && d.finite;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::AmbiguousNormalization) throw;
    row["finite"] = false;
    row["ambiguous"] = err.what();
    pass = false;
  }
  return row;
}

int radius_for(const GroupSpec& spec, const CocycleValues& b, int requested) {
  long reach = 0;
  for (const auto& [s, v] : b) {
    for (const auto& t : v) reach = std::max(reach, word_length(spec, t.first));
  }
  return std::max<int>(requested, static_cast<int>(reach) + 2);
}

Outcome run_integrate(const RunConfig& cfg) {
  Outcome out;
  if (!cfg.input.empty()) {
    const CocycleInput in = cocycle_from_json(load_file(cfg.input));
    const GeneratingSet S = in.generators.empty() ? standard_generators(in.spec) : GeneratingSet(in.spec, in.generators);
    const int R = radius_for(in.spec, in.values, cfg.radius.value_or(0));
    out.results = decide(S, in.values, R, out.pass);
    return out;
  }
  const GroupSpec spec = zn(cfg, 2);
  const auto S = standard_generators(spec);
  std::mt19937_64 rng(cfg.seed);
  const int count = positive(cfg.samples.value_or(100), "samples");
  const int w = std::min(cfg.support, 2);
  std::size_t recovered = 0;
  for (int s = 0; s < count; ++s) {
    const ExactSum f = random_exact_sum(spec, w, rng);
    CocycleValues b;
    for (int i = 0; i < spec.rank; ++i) {
      const Element g = generator(spec, i);
      b.emplace(g, left_translate(g, f) - f);
    }
    const PotentialFunction p = integrate_coboundary(S, b, radius_for(spec, b, cfg.radius.value_or(0)));
    const auto e = ends_estimate(S, {p.radius}, p.support_union());
    const auto d = finite_support_decision(p, e);
    if (d.finite && d.reconstructed && *d.reconstructed == f) ++recovered;
  }
  out.results = {{"samples", count}, {"recovered", recovered}, {"support_half_width", w}};
  out.pass = recovered == static_cast<std::size_t>(count);
  return out;
}

Outcome run_koszul(const RunConfig& cfg) {
  const GroupSpec spec = zn(cfg);
  const int n = spec.rank;
  const KoszulComplex K(n);
  Outcome out;
  const bool dd = K.verify_dd_zero();
  json reports = json::array();
  std::vector<int> degrees;
  if (cfg.degree == 0) {
    for (int k = 1; k <= n; ++k) degrees.push_back(k);
  } else {
    degrees.push_back(cfg.degree);
  }
  bool ok = dd;
  for (int k : degrees) {
    const auto rep = truncated_cohomology_check(n, k, cfg.window, cfg.pad);
    ok = ok && rep.pass() && (k < n || rep.cokernel_rank == 1);
    reports.push_back(cohomology_report_to_json(rep));
  }
  out.results = {{"n", n}, {"dd_zero", dd}, {"top_basis_change", K.top_basis_change()}, {"reports", std::move(reports)}};
  out.pass = ok;
  return out;
}

Outcome run_reduce(const RunConfig& cfg) {
  const GroupSpec spec = zn(cfg);
  Outcome out;
  if (!cfg.input.empty()) {
    const ExactSum f = exact_sum_from_json(spec, load_file(cfg.input));
    const auto r = reduce_mod_augmentation_ideal(f);
    const bool recombines = recombine(r, spec.rank) == f;
    const bool stable = reduce_mod_augmentation_ideal(stabilize_embed(f)).remainder == r.remainder;
    json witnesses = json::array();
    for (const auto& g : r.witnesses) witnesses.push_back(sum_to_json(g));
    out.results = {{"remainder", exact_scalar(r.remainder)},
                   {"in_augmentation_ideal", r.remainder.is_zero()},
                   {"witnesses", std::move(witnesses)},
                   {"recombines", recombines},
                   {"stabilization_preserves_remainder", stable}};
    out.pass = recombines && stable;
    return out;
  }
  std::mt19937_64 rng(cfg.seed);
  const int count = positive(cfg.samples.value_or(100), "samples");
  std::size_t agree = 0;
  std::size_t stable = 0;
  std::size_t recombined = 0;
  const std::vector<double> origin(spec.rank, 0.0);
  for (int s = 0; s < count; ++s) {
    const ExactSum f = random_exact_sum(spec, cfg.support, rng);
    const auto r = reduce_mod_augmentation_ideal(f);
    if (std::abs(r.remainder.to_complex() - evaluate(to_float(f), origin)) <= 1e-10) ++agree;
    if (reduce_mod_augmentation_ideal(stabilize_embed(f)).remainder == r.remainder) ++stable;
    if (recombine(r, spec.rank) == f) ++recombined;
  }
  out.results = {{"samples", count}, {"remainder_matches_evaluation", agree},
                 {"stabilization_preserves_remainder", stable}, {"recombines", recombined}};
  const auto n = static_cast<std::size_t>(count);
  out.pass = agree == n && stable == n && recombined == n;
  return out;
}

Outcome run_probe(const RunConfig& cfg) {
  if (cfg.group != "fk") fail(ErrorCode::InvalidArgument, "probe-f2 runs on free groups (--group fk)");
  const GroupSpec spec = GroupSpec::free_group(cfg.rank.value_or(2));
  const auto records = nonamenability_probe(spec, cfg.radius.value_or(7));
  constexpr double floor = 1.0 / 3.0;
  Outcome out;
  json rows = json::array();
  double worst = 1.0;
  for (const auto& r : records) {
    rows.push_back({{"radius", r.radius}, {"size", r.size}, {"boundary", r.boundary}, {"ratio", r.ratio}});
    if (r.radius >= 1) worst = std::min(worst, r.ratio);
  }
  out.results = {{"records", std::move(rows)}, {"min_ratio", worst}, {"floor", floor}};
  out.pass = worst > floor;
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"norms", "opnorm", "folner", "bumpcert", "ends",
                                              "integrate", "koszul", "reduce", "probe-f2"};
  return names;
}

RunConfig RunConfig::from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::ParseError, "run configuration must be a JSON object");
  static const std::set<std::string> known{"command", "group", "rank",     "p",     "norm",      "kmax",
                                           "imax",    "radius", "window",  "pad",   "eps",       "seed",
                                           "format",  "input",  "samples", "support", "truncation", "stages",
                                           "remove",  "degree", "monomials", "timing"};
  for (const auto& [key, v] : j.items()) {
    if (!known.count(key)) fail(ErrorCode::InvalidArgument, "unknown configuration key '" + key + "'");
  }
  RunConfig c;
  try {
    c.command = j.at("command").get<std::string>();
    if (j.contains("group")) c.group = j["group"].get<std::string>();
    if (j.contains("rank")) c.rank = j["rank"].get<int>();
    if (j.contains("p")) c.p = j["p"].get<double>();
    if (j.contains("norm")) c.norm = j["norm"].get<std::string>();
    if (j.contains("kmax")) c.kmax = j["kmax"].get<int>();
    if (j.contains("imax")) c.imax = j["imax"].get<int>();
    if (j.contains("radius")) c.radius = j["radius"].get<int>();
    if (j.contains("window")) c.window = j["window"].get<int>();
    if (j.contains("pad")) c.pad = j["pad"].get<int>();
    if (j.contains("eps")) c.eps = j["eps"].get<double>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("input")) c.input = j["input"].get<std::string>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("support")) c.support = j["support"].get<int>();
    if (j.contains("truncation")) c.truncation = j["truncation"].get<int>();
    if (j.contains("stages")) c.stages = j["stages"].get<int>();
    if (j.contains("remove")) c.remove = j["remove"].get<int>();
    if (j.contains("degree")) c.degree = j["degree"].get<int>();
    if (j.contains("monomials")) c.monomials = j["monomials"].get<std::vector<std::string>>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad run configuration: ") + e.what());
  }
  if (c.format != "json" && c.format != "csv") fail(ErrorCode::InvalidArgument, "format must be json or csv");
  if (c.rank && *c.rank < 1) fail(ErrorCode::InvalidArgument, "rank must be >= 1");
  if (c.support < 0) fail(ErrorCode::InvalidArgument, "support must be >= 0");
  return c;
}

std::string Report::to_json() const { return body.dump(2) + "\n"; }

std::string Report::to_csv() const {
  if (csv.empty()) fail(ErrorCode::InvalidArgument, "csv output is only available for folner and bumpcert");
  return csv;
}

Report run_experiment(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  if (cfg.command == "norms") out = run_norms(cfg);
  else if (cfg.command == "opnorm") out = run_opnorm(cfg);
  else if (cfg.command == "folner") out = run_folner(cfg);
  else if (cfg.command == "bumpcert") out = run_bumpcert(cfg);
  else if (cfg.command == "ends") out = run_ends(cfg);
  else if (cfg.command == "integrate") out = run_integrate(cfg);
  else if (cfg.command == "koszul") out = run_koszul(cfg);
  else if (cfg.command == "reduce") out = run_reduce(cfg);
  else if (cfg.command == "probe-f2") out = run_probe(cfg);
  else fail(ErrorCode::InvalidArgument, "unknown command '" + cfg.command + "'");

  json params = {{"group", cfg.group}, {"p", cfg.p},         {"norm", cfg.norm},     {"kmax", cfg.kmax},
                 {"imax", cfg.imax},   {"window", cfg.window}, {"pad", cfg.pad},     {"seed", cfg.seed},
                 {"support", cfg.support}, {"truncation", cfg.truncation}, {"stages", cfg.stages},
                 {"remove", cfg.remove}, {"degree", cfg.degree}, {"monomials", cfg.monomials}};
  params["rank"] = cfg.rank ? json(*cfg.rank) : json(nullptr);
  params["radius"] = cfg.radius ? json(*cfg.radius) : json(nullptr);
  params["eps"] = cfg.eps ? json(*cfg.eps) : json(nullptr);
  params["samples"] = cfg.samples ? json(*cfg.samples) : json(nullptr);
  params["input"] = cfg.input.empty() ? json(nullptr) : json(cfg.input);

  Report rep;
  rep.pass = out.pass;
  for (const auto& c : out.certificates) rep.pass = rep.pass && c.at("verdict") == "pass";
  rep.csv = std::move(out.csv);
  rep.body = {{"command", cfg.command},
              {"parameters", std::move(params)},
              {"results", std::move(out.results)},
              {"certificates", std::move(out.certificates)},
              {"summary", {{"pass", rep.pass}, {"exit_code", rep.exit_code()}}}};
  if (cfg.timing) {
    rep.body["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

}  // namespace grpcoh
