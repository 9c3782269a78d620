#pragma once

// JSON encodings for formal sums, sampled torus functions, certificates and
// reports. Float sums are arrays of {"elem", "re", "im"}; exact sums use
// decimal strings {"elem", "re_num", "re_den", "im_num", "im_den"}.

#include <string>

#include <json.hpp>

#include "grpcoh/cohomology.hpp"
#include "grpcoh/ends.hpp"
#include "grpcoh/folner.hpp"
#include "grpcoh/torus.hpp"

namespace grpcoh {

using json = nlohmann::json;

/// {"family": "zn"|"fk", "rank": n}
json group_to_json(const GroupSpec& spec);
GroupSpec group_from_json(const json& j);
GroupSpec parse_family(const std::string& family, int rank);

json sum_to_json(const FormalSum& a);
json sum_to_json(const ExactSum& a);
FormalSum sum_from_json(const GroupSpec& spec, const json& j);
/// Accepts exact or float records; floats convert exactly.
ExactSum exact_sum_from_json(const GroupSpec& spec, const json& j);

json sampled_to_json(const SampledTorusFunction& f);
SampledTorusFunction sampled_from_json(const json& j);

json certified_to_json(const CertifiedValue& v);
json certificate_to_json(const AlmostInvarianceCertificate& c);
/// k,displacement,bound rows for entries, then stage rows tagged "stage".
std::string certificate_to_csv(const AlmostInvarianceCertificate& c);

json ends_to_json(const EndsEstimate& e);
json cohomology_report_to_json(const CohomologyReport& r);

struct CocycleInput {
  GroupSpec spec;
  std::vector<Element> generators;
  CocycleValues values;
};

/// {"group": ..., "generators": [...], "values": {"<gen>": <sum>}}
json cocycle_to_json(const GroupSpec& spec, const std::vector<Element>& generators, const CocycleValues& values);
CocycleInput cocycle_from_json(const json& j);

/// Parses text, mapping syntax errors to ParseError.
json parse_json(const std::string& text);

}  // namespace grpcoh
