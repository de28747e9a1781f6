#pragma once

#include <json.hpp>

#include "gdof/channel.hpp"
#include "gdof/polytope.hpp"
#include "gdof/regions.hpp"
#include "gdof/sls.hpp"

namespace gdof {

// Keys come out in insertion order so repeated runs emit byte-identical
// documents.
using Json = nlohmann::ordered_json;

Json polytope_to_json(const Polytope& p, bool with_vrep = false);
Polytope polytope_from_json(const Json& j);

Json channel_to_json(const ChannelMatrix& ch);
ChannelMatrix channel_from_json(const Json& j);

Json params_to_json(const SlsParams& p);
SlsParams params_from_json(const Json& j);

Json split_to_json(const RateSplit& s);
RateSplit split_from_json(const Json& j);

Json scheme_to_json(const SlsScheme& s);
// `fallback_channel` fills in the channel when the document omits it.
SlsScheme scheme_from_json(const Json& j, const ChannelMatrix* fallback_channel = nullptr);

Json condition_report_to_json(const ConditionReport& rep);
Json verdict_to_json(const RegionVerdict& v, bool with_vrep = false);
Json sinr_report_to_json(const SinrReport& rep);

}  // namespace gdof
