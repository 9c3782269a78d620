#include "grpcoh/ends.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

namespace grpcoh {

std::vector<Component> complement_components(const GeneratingSet& S, int R, const std::vector<Element>& F,
                                             std::size_t budget) {
  const auto& spec = S.spec();
  const auto verts = ball(S, R, budget);
  const auto shell = sphere(S, R, budget);
  std::unordered_map<Element, std::size_t, ElementHash> index;
  index.reserve(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) index.emplace(verts[i], i);

  std::vector<char> removed(verts.size(), 0);
  for (const auto& f : F) {
    validate(spec, f);
    auto it = index.find(f);
    if (it == index.end()) fail(ErrorCode::InvalidArgument, "removed set must lie inside the ball");
    removed[it->second] = 1;
  }
  std::vector<char> on_sphere(verts.size(), 0);
  for (const auto& x : shell) on_sphere[index.at(x)] = 1;

  std::vector<Component> out;
  std::vector<char> seen(verts.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < verts.size(); ++start) {
    if (removed[start] || seen[start]) continue;
    Component c;
    seen[start] = 1;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      c.vertices.push_back(verts[v]);
      c.meets_sphere = c.meets_sphere || on_sphere[v];
      for (const auto& s : S) {
        auto it = index.find(detail::multiply_unchecked(spec, s, verts[v]));
        if (it == index.end() || removed[it->second] || seen[it->second]) continue;
        seen[it->second] = 1;
        queue.push_back(it->second);
      }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    out.push_back(std::move(c));
  }
  return out;  // starts are visited in sorted order, so components are ordered by smallest vertex
}

const char* verdict_name(EndsVerdict v) {
  switch (v) {
    case EndsVerdict::One: return "one";
    case EndsVerdict::Two: return "two";
    case EndsVerdict::Growing: return "growing";
    case EndsVerdict::Undetermined: return "undetermined";
  }
  return "undetermined";
}

EndsEstimate ends_estimate(const GeneratingSet& S, const std::vector<int>& radii, const std::vector<Element>& F,
                           std::size_t budget) {
  if (radii.empty()) fail(ErrorCode::InvalidArgument, "ends estimate needs at least one radius");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) fail(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  }
  EndsEstimate e;
  e.spec = S.spec();
  e.removed = F;
  std::sort(e.removed.begin(), e.removed.end());
  e.removed.erase(std::unique(e.removed.begin(), e.removed.end()), e.removed.end());
  for (int R : radii) {
    const auto comps = complement_components(S, R, e.removed, budget);
    const auto count = static_cast<std::size_t>(
        std::count_if(comps.begin(), comps.end(), [](const Component& c) { return c.meets_sphere; }));
    e.records.push_back({R, count});
  }

  const auto& rec = e.records;
  std::size_t run = 1;
  while (run < rec.size() && rec[rec.size() - 1 - run].components == rec.back().components) ++run;
  if (run >= static_cast<std::size_t>(kStableRadii)) {
    const auto c = rec.back().components;
    if (c == 1) e.verdict = EndsVerdict::One;
    else if (c == 2) e.verdict = EndsVerdict::Two;
    else if (c >= 3) e.verdict = EndsVerdict::Growing;
    return e;
  }
  std::size_t rising = 1;
  while (rising < rec.size() && rec[rec.size() - 1 - rising].components < rec[rec.size() - rising].components) {
    ++rising;
  }
  if (rising >= static_cast<std::size_t>(kStableRadii)) e.verdict = EndsVerdict::Growing;
  return e;
}

std::string H1Dimension::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::Infinite: return "infinite";
    case Kind::Unknown: return "unknown";
  }
  return "unknown";
}

H1Dimension h1_cg_dimension(const EndsEstimate& e) {
  H1Dimension d;
  switch (e.verdict) {
    case EndsVerdict::One:
      d.kind = H1Dimension::Kind::Finite;
      d.value = 0;
      d.note = "H^1(G, CG) = 0: the group has exactly one end";
      break;
    case EndsVerdict::Two:
      d.kind = H1Dimension::Kind::Finite;
      d.value = 1;
      break;
    case EndsVerdict::Growing:
      d.kind = H1Dimension::Kind::Infinite;
      break;
    case EndsVerdict::Undetermined:
      d.kind = H1Dimension::Kind::Unknown;
      break;
  }
  return d;
}

std::vector<Element> PotentialFunction::support_union() const {
  std::vector<Element> out;
  for (const auto& [s, v] : values) {
    for (const auto& t : v) out.push_back(t.first);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PotentialFunction integrate_coboundary(const GeneratingSet& S, const CocycleValues& b, int R, bool strict,
                                       std::size_t budget) {
  const auto& spec = S.spec();
  PotentialFunction p;
  p.spec = spec;
  p.generators = S.elements();
  p.radius = R;
  for (const auto& [s, v] : b) {
    validate(spec, s);
    if (std::find(S.begin(), S.end(), s) == S.end()) {
      fail(ErrorCode::InvalidArgument, "cocycle value given on " + format_element(spec, s) +
                                           ", which is not in the generating set");
    }
    require_same_spec(spec, v.spec());
    p.values.emplace(s, v);
  }
  for (const auto& s : S) {
    if (p.values.count(s)) continue;
    const Element sinv = inverse(spec, s);
    auto it = b.find(sinv);
    if (it == b.end()) fail(ErrorCode::InvalidArgument, "no cocycle value for " + format_element(spec, s));
    // b(s) = -s b(s^-1) from the cocycle identity at s s^-1 = e
    p.values.emplace(s, scale(GaussianRational(-1), left_translate(s, it->second)));
  }

  const auto verts = ball(S, R, budget);
  std::unordered_set<Element, ElementHash> inside(verts.begin(), verts.end());
  std::unordered_map<Element, GaussianRational, ElementHash> a;
  a.reserve(verts.size());
  std::deque<Element> queue;
  const Element e = identity(spec);
  a.emplace(e, GaussianRational());
  queue.push_back(e);
  std::vector<std::pair<Element, Element>> sinv;
  for (const auto& s : S) sinv.emplace_back(s, inverse(spec, s));
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    const GaussianRational ax = a.at(x);
    for (const auto& [s, si] : sinv) {
      Element y = detail::multiply_unchecked(spec, si, x);
      if (!inside.count(y)) continue;
      GaussianRational ay = ax + p.values.at(s).coefficient(x);
      auto it = a.find(y);
      if (it == a.end()) {
        a.emplace(y, std::move(ay));
        queue.push_back(std::move(y));
      } else if (it->second != ay) {
        if (!p.violation) p.violation = LoopViolation{x, s, ay, it->second};
        p.consistent = false;
      }
    }
  }
  if (!p.consistent && strict) {
    fail(ErrorCode::InconsistentData,
         "coboundary data is contradictory around " + format_element(spec, p.violation->vertex) +
             " along generator " + format_element(spec, p.violation->generator) + ": not a coboundary on this ball");
  }
  for (auto& [x, v] : a) p.coefficients.emplace(x, std::move(v));
  return p;
}

FiniteSupportDecision finite_support_decision(const PotentialFunction& p, const EndsEstimate& e) {
  if (!p.consistent) fail(ErrorCode::InconsistentData, "potential failed its loop checks");
  require_same_spec(p.spec, e.spec);
  const auto supports = p.support_union();
  if (!std::includes(e.removed.begin(), e.removed.end(), supports.begin(), supports.end())) {
    fail(ErrorCode::InvalidArgument, "removed set must contain the supports of the coboundary data");
  }
  const GeneratingSet S(p.spec, p.generators);
  const auto comps = complement_components(S, p.radius, e.removed);

  FiniteSupportDecision out;
  std::optional<GaussianRational> constant;
  bool ambiguous = false;
  for (const auto& c : comps) {
    if (!c.meets_sphere) continue;
    ++out.sphere_components;
    const GaussianRational& v0 = p.coefficients.at(c.vertices.front());
    for (const auto& x : c.vertices) {
      if (p.coefficients.at(x) != v0) {
        fail(ErrorCode::InconsistentData, "potential is not constant on a component off the supports");
      }
    }
    if (!constant) {
      constant = v0;
    } else if (*constant != v0) {
      ambiguous = true;
    }
  }
  if (ambiguous) {
    fail(ErrorCode::AmbiguousNormalization,
         "unbounded components force different constants; no finitely supported potential exists");
  }
  if (!constant) fail(ErrorCode::DegenerateInput, "no component reaches the sphere; increase the radius");
  out.constant = *constant;

  std::vector<ExactSum::Term> terms;
  for (const auto& [x, v] : p.coefficients) terms.emplace_back(x, v - *constant);
  ExactSum f = ExactSum::from_trusted(p.spec, std::move(terms));
  out.finite = true;
  for (const auto& [s, bs] : p.values) {
    if (left_translate(s, f) - f != bs) {
      out.finite = false;
      break;
    }
  }
  if (out.finite) out.reconstructed = std::move(f);
  return out;
}

}  // namespace grpcoh
