#include "grpcoh/algebra.hpp"

#include <sstream>

namespace grpcoh {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::BallTooLarge: return "BallTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::AliasingRisk: return "AliasingRisk";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::InconsistentData: return "InconsistentData";
    case ErrorCode::AmbiguousNormalization: return "AmbiguousNormalization";
    case ErrorCode::SolveFailed: return "SolveFailed";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string GaussianRational::to_string() const {
  std::ostringstream os;
  os << re;
  if (sgn(im) != 0) os << (sgn(im) > 0 ? "+" : "-") << abs(im) << "i";
  return os.str();
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "non-finite coefficient");
  Rational r(v);  // mpq_set_d is exact
  r.canonicalize();
  return r;
}

GaussianRational exact_from_complex(const Complex& z) {
  return GaussianRational(rational_from_double(z.real()), rational_from_double(z.imag()));
}

FormalSum to_float(const ExactSum& a) {
  std::vector<FormalSum::Term> terms;
  terms.reserve(a.size());
  for (const auto& [g, c] : a) terms.emplace_back(g, c.to_complex());
  return FormalSum::from_trusted(a.spec(), std::move(terms));
}

ExactSum to_exact(const FormalSum& a) {
  std::vector<ExactSum::Term> terms;
  terms.reserve(a.size());
  for (const auto& [g, c] : a) terms.emplace_back(g, exact_from_complex(c));
  return ExactSum::from_trusted(a.spec(), std::move(terms));
}

NormFunctional NormFunctional::lp(double p) {
  if (!(p >= 1.0)) fail(ErrorCode::InvalidArgument, "l^p norm requires p >= 1");
  return {NormKind::Lp, p, 0.0};
}

NormFunctional NormFunctional::op(double eps) {
  if (!(eps > 0.0)) fail(ErrorCode::InvalidArgument, "operator-norm tolerance must be positive");
  return {NormKind::Operator, 2.0, eps};
}

std::string NormFunctional::name() const {
  if (kind == NormKind::Operator) return "op";
  if (p == 1.0) return "l1";
  if (p == 2.0) return "l2";
  std::ostringstream os;
  os << "l" << p;
  return os.str();
}

}  // namespace grpcoh
