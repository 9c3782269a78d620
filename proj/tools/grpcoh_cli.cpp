// Command-line front end. Builds a run configuration from flags and hands it
// to the C API; exit 0 on pass, 2 on certificate failure, 1 on usage errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "grpcoh/grpcoh.h"

namespace {

struct Flags {
  std::string group, norm, format, input, out;
  int rank = 0, kmax = 0, imax = 0, radius = 0, window = 0, pad = 0;
  int samples = 0, support = 0, truncation = 0, stages = 0, remove = 0, degree = 0;
  double p = 0, eps = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> monomials;
  bool timing = false;
};

struct Owned {
  void operator()(char* s) const { grpcoh_string_free(s); }
  void operator()(grpcoh_report* r) const { grpcoh_report_destroy(r); }
};

int fail_with(grpcoh_status s) {
  std::cerr << "error: " << grpcoh_status_name(s) << ": " << grpcoh_last_error() << "\n";
  return s == GRPCOH_ERR_HYPOTHESIS_VIOLATED || s == GRPCOH_ERR_SOLVE_FAILED ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cohomology, Folner and operator-norm certificates for Z^n and free groups"};
  app.require_subcommand(1);
  Flags f;
  nlohmann::json cfg;

  std::vector<CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"norms", "l1, l2 and certified operator norms of random or given sums"},
      {"opnorm", "certified sup against the finite-section power-iteration oracle"},
      {"folner", "box Folner almost-invariance certificate"},
      {"bumpcert", "torus bump certificate in operator norm"},
      {"ends", "ends of the Cayley graph and dim H^1(G, CG)"},
      {"integrate", "recover a finitely supported potential from coboundary data"},
      {"koszul", "Koszul complex checks and windowed exactness"},
      {"reduce", "reduction modulo the augmentation ideal"},
      {"probe-f2", "boundary ratios of balls in a free group"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--group", f.group, "zn | fk")->check(CLI::IsMember({"zn", "fk"}));
    sub->add_option("--rank", f.rank, "number of generators");
    sub->add_option("--p", f.p, "exponent of the l^p side of the norm sandwich");
    sub->add_option("--norm", f.norm, "l1 | l2 | lp | op")->check(CLI::IsMember({"l1", "l2", "lp", "op"}));
    sub->add_option("--kmax", f.kmax, "largest box side");
    sub->add_option("--imax", f.imax, "largest bump index");
    sub->add_option("--radius", f.radius, "ball radius");
    sub->add_option("--window", f.window, "Laurent window half-width");
    sub->add_option("--pad", f.pad, "window padding");
    sub->add_option("--eps", f.eps, "certification tolerance");
    sub->add_option("--seed", f.seed, "random seed");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--format", f.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--input", f.input, "formal sum or cocycle JSON file");
    sub->add_option("--samples", f.samples, "number of random samples");
    sub->add_option("--support", f.support, "half-width of random supports");
    sub->add_option("--truncation", f.truncation, "finite-section size for the oracle");
    sub->add_option("--stages", f.stages, "number of strong Folner stages to attempt");
    sub->add_option("--remove", f.remove, "radius of the removed ball for ends");
    sub->add_option("--degree", f.degree, "Koszul degree (0 = all)");
    sub->add_option("--monomial", f.monomials, "shift monomial for bumpcert, e.g. 2,3")->take_all();
    sub->add_flag("--timing", f.timing, "include wall-clock time in the report");
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Error& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  cfg["command"] = sub->get_name();
  auto given = [&](const char* flag) { return sub->count(flag) > 0; };
  if (given("--group")) cfg["group"] = f.group;
  if (given("--rank")) cfg["rank"] = f.rank;
  if (given("--p")) cfg["p"] = f.p;
  if (given("--norm")) cfg["norm"] = f.norm;
  if (given("--kmax")) cfg["kmax"] = f.kmax;
  if (given("--imax")) cfg["imax"] = f.imax;
  if (given("--radius")) cfg["radius"] = f.radius;
  if (given("--window")) cfg["window"] = f.window;
  if (given("--pad")) cfg["pad"] = f.pad;
  if (given("--eps")) cfg["eps"] = f.eps;
  if (given("--seed")) cfg["seed"] = f.seed;
  if (given("--format")) cfg["format"] = f.format;
  if (given("--input")) cfg["input"] = f.input;
  if (given("--samples")) cfg["samples"] = f.samples;
  if (given("--support")) cfg["support"] = f.support;
  if (given("--truncation")) cfg["truncation"] = f.truncation;
  if (given("--stages")) cfg["stages"] = f.stages;
  if (given("--remove")) cfg["remove"] = f.remove;
  if (given("--degree")) cfg["degree"] = f.degree;
  if (given("--monomial")) cfg["monomials"] = f.monomials;
  if (f.timing) cfg["timing"] = true;

  grpcoh_report* raw = nullptr;
  if (grpcoh_status s = grpcoh_run(cfg.dump().c_str(), &raw); s != GRPCOH_OK) return fail_with(s);
  std::unique_ptr<grpcoh_report, Owned> report(raw);

  char* text = nullptr;
  const bool csv = f.format == "csv";
  if (grpcoh_status s = csv ? grpcoh_report_csv(raw, &text) : grpcoh_report_json(raw, &text); s != GRPCOH_OK) {
    return fail_with(s);
  }
  std::unique_ptr<char, Owned> body(text);

  if (f.out.empty()) {
    std::fputs(text, stdout);
  } else {
    std::ofstream out(f.out, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "error: cannot write " << f.out << "\n";
      return 1;
    }
  }
  return grpcoh_report_exit_code(raw);
}
