#pragma once

#include <json.hpp>

#include "kre/analytics.hpp"
#include "kre/timeline.hpp"

namespace kre::detail {

using ojson = nlohmann::ordered_json;

ojson window_json(const TimeWindow& w);
ojson view_to_json(const RelationMatrix& view);
ojson bucket_to_json(const TimeBucket& bucket);
ojson timeline_to_json(std::span<const TimelineView> views);

}  // namespace kre::detail
