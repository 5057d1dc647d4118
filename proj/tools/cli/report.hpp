#pragma once

#include <json.hpp>

#include "uareg/ahlfors.hpp"
#include "uareg/class_calculus.hpp"
#include "uareg/kernels.hpp"
#include "uareg/modulus.hpp"
#include "uareg/nystrom.hpp"
#include "uareg/regularity.hpp"

namespace uareg::cli {

using Json = nlohmann::ordered_json;

Json to_json(const AhlforsReport& r);
Json to_json(const RieszBoundReport& r);
Json to_json(const KernelClass& k);
Json to_json(const GeneralComposition& g);
Json to_json(const SolveReport& r, bool include_mu);
Json to_json(const BootstrapCheck& b);
Json to_json(const HolderEstimate& h);
Json to_json(const RestrictedBoundCheck& c);
Json to_json(const ModulusCheck& c);
Json to_json(const SeminormReport& r);
Json to_json(const ContinuityReport& r);
Json to_json(const RegularityExperimentReport& r);

/// Non-finite values serialize as the strings "inf", "-inf" and "nan".
Json number(double v);

}  // namespace uareg::cli
