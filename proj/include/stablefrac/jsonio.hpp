#ifndef STABLEFRAC_JSONIO_HPP
#define STABLEFRAC_JSONIO_HPP

#include <json.hpp>

#include "stablefrac/branches.hpp"
#include "stablefrac/integrability.hpp"
#include "stablefrac/localmodel.hpp"
#include "stablefrac/numverify.hpp"
#include "stablefrac/quotient.hpp"

namespace stablefrac {

// Insertion-ordered JSON keeps output byte-stable across runs.
using Json = nlohmann::ordered_json;

// {"branches":[{"L":1,"q":["1"]}]}; q lists coefficients from degree 1 up.
Json model_to_json(const LocalModel& m);
LocalModel model_from_json(const Json& j);
LocalModel model_from_string_or_file(const std::string& arg);

Json membership_to_json(const MembershipReport& rep,
                        const std::optional<ExponentRange>& range);

Json certificate_to_json(const ProperTCertificate& cert);

Json basis_to_json(const IntegrabilityBasis& ib);

Json scaling_to_json(const numverify::ScalingReport& rep);

std::string verdict_name(numverify::Verdict v);

} // namespace stablefrac

#endif
