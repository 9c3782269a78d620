#include "grpcoh/grpcoh.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "grpcoh/experiments.hpp"

struct grpcoh_group {
  grpcoh::GroupSpec spec;
};

struct grpcoh_sum {
  grpcoh::FormalSum value;
};

struct grpcoh_report {
  grpcoh::Report value;
};

namespace {

thread_local std::string last_error;

grpcoh_status set_error(grpcoh_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class F>
grpcoh_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return GRPCOH_OK;
  } catch (const grpcoh::Error& e) {
    return set_error(static_cast<grpcoh_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(GRPCOH_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(GRPCOH_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(GRPCOH_ERR_INTERNAL, "unknown failure");
  }
}

#define GRPCOH_REQUIRE(cond, what)                                      \
  do {                                                                  \
    if (!(cond)) return set_error(GRPCOH_ERR_INVALID_ARGUMENT, (what)); \
  } while (0)

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* grpcoh_version(void) { return "1.0.0"; }

const char* grpcoh_last_error(void) { return last_error.c_str(); }

const char* grpcoh_status_name(grpcoh_status status) {
  if (status == GRPCOH_OK) return "Ok";
  if (status == GRPCOH_ERR_INTERNAL) return "Internal";
  if (status >= GRPCOH_ERR_INVALID_ARGUMENT && status <= GRPCOH_ERR_PARSE) {
    return grpcoh::error_code_name(static_cast<grpcoh::ErrorCode>(static_cast<int>(status)));
  }
  return "Unknown";
}

void grpcoh_string_free(char* s) { std::free(s); }

grpcoh_status grpcoh_group_create(grpcoh_family family, int rank, grpcoh_group** out) {
  GRPCOH_REQUIRE(out, "null output pointer");
  *out = nullptr;
  return guarded([&] {
    const auto spec = family == GRPCOH_FREE ? grpcoh::GroupSpec::free_group(rank)
                                            : grpcoh::GroupSpec::free_abelian(rank);
    *out = new grpcoh_group{spec};
  });
}

void grpcoh_group_destroy(grpcoh_group* g) { delete g; }

grpcoh_status grpcoh_sum_from_json(const grpcoh_group* g, const char* text, grpcoh_sum** out) {
  GRPCOH_REQUIRE(g && text && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new grpcoh_sum{grpcoh::sum_from_json(g->spec, grpcoh::parse_json(text))}; });
}

grpcoh_status grpcoh_sum_to_json(const grpcoh_sum* a, char** out) {
  GRPCOH_REQUIRE(a && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(grpcoh::sum_to_json(a->value).dump()); });
}

grpcoh_status grpcoh_sum_size(const grpcoh_sum* a, size_t* out) {
  GRPCOH_REQUIRE(a && out, "null argument");
  *out = a->value.size();
  return GRPCOH_OK;
}

grpcoh_status grpcoh_sum_convolve(const grpcoh_sum* a, const grpcoh_sum* b, grpcoh_sum** out) {
  GRPCOH_REQUIRE(a && b && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = new grpcoh_sum{grpcoh::convolve(a->value, b->value)}; });
}

grpcoh_status grpcoh_sum_lp_norm(const grpcoh_sum* a, double p, double* out) {
  GRPCOH_REQUIRE(a && out, "null argument");
  return guarded([&] { *out = grpcoh::lp_norm(a->value, p); });
}

grpcoh_status grpcoh_sum_evaluate(const grpcoh_sum* a, const double* theta, size_t n, double* re, double* im) {
  GRPCOH_REQUIRE(a && (theta || n == 0) && re && im, "null argument");
  return guarded([&] {
    const auto z = grpcoh::evaluate(a->value, std::span<const double>(theta, n));
    *re = z.real();
    *im = z.imag();
  });
}

grpcoh_status grpcoh_sum_certified_sup(const grpcoh_sum* a, double eps, double* lower, double* upper) {
  GRPCOH_REQUIRE(a && lower && upper, "null argument");
  return guarded([&] {
    const auto v = grpcoh::certified_sup(a->value, eps);
    if (!v.certified) grpcoh::fail(grpcoh::ErrorCode::BudgetExceeded, "certification did not reach the tolerance");
    *lower = v.lower;
    *upper = v.upper;
  });
}

grpcoh_status grpcoh_sum_op_norm_oracle(const grpcoh_sum* a, int truncation, double* out) {
  GRPCOH_REQUIRE(a && out, "null argument");
  return guarded([&] { *out = grpcoh::op_norm_oracle(a->value, truncation).value; });
}

void grpcoh_sum_destroy(grpcoh_sum* a) { delete a; }

grpcoh_status grpcoh_run(const char* config_json, grpcoh_report** out) {
  GRPCOH_REQUIRE(config_json && out, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto cfg = grpcoh::RunConfig::from_json(grpcoh::parse_json(config_json));
    *out = new grpcoh_report{grpcoh::run_experiment(cfg)};
  });
}

grpcoh_status grpcoh_report_json(const grpcoh_report* r, char** out) {
  GRPCOH_REQUIRE(r && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(r->value.to_json()); });
}

grpcoh_status grpcoh_report_csv(const grpcoh_report* r, char** out) {
  GRPCOH_REQUIRE(r && out, "null argument");
  *out = nullptr;
  return guarded([&] { *out = copy_string(r->value.to_csv()); });
}

int grpcoh_report_passed(const grpcoh_report* r) { return r && r->value.pass ? 1 : 0; }

int grpcoh_report_exit_code(const grpcoh_report* r) { return r ? r->value.exit_code() : 1; }

void grpcoh_report_destroy(grpcoh_report* r) { delete r; }

}  // extern "C"
