#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace concretix::encode {

inline constexpr std::int64_t built_bucket_offset = 200;
inline constexpr std::int64_t build_count_level = 100;

/// One optimization criterion, written as the pieces of a `#minimize` element.
/// `bucket` names the variable whose build status selects the bucket.
struct Criterion {
    int rank = 0;
    std::string name;
    std::string weight;
    std::string tuple;
    std::string body;
    std::string bucket;
};

/// Criteria ordered by rank, 1 being the most important. Rank r of n criteria
/// sits at base level n + 1 - r; built nodes add `built_bucket_offset` and the
/// build count sits at `build_count_level` in between.
struct ObjectiveLevelPlan {
    std::vector<Criterion> criteria;

    /// The fifteen standard criteria.
    static ObjectiveLevelPlan standard();

    std::int64_t base_level(const Criterion& c) const;
    /// All levels in use, descending.
    std::vector<std::int64_t> levels(bool reuse) const;
};

/// `#minimize` statements for the plan. Without reuse every criterion sits at
/// its base level and there is no build-count level.
std::string build_objectives(const ObjectiveLevelPlan& plan, bool reuse);

}  // namespace concretix::encode
