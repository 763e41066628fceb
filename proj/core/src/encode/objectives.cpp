#include "concretix/encode/objectives.hpp"

#include <algorithm>
#include <stdexcept>

namespace concretix::encode {

ObjectiveLevelPlan ObjectiveLevelPlan::standard() {
    ObjectiveLevelPlan p;
    p.criteria = {
        {1, "deprecated versions used", "1", "P", "deprecated_used(P)", "P"},
        {2, "version oldness of roots", "W", "P", "version_weight(P,W), root(P)", "P"},
        {3, "non-default variant values of roots", "1", "P,V", "variant_not_default(P,V,X), root(P)", "P"},
        {4, "non-preferred providers for roots", "W", "P,V", "provider_used(P,V,Q,W), root(P)", "Q"},
        {5, "unused default variant values of roots", "1", "P,V", "variant_default_unused(P,V,X), root(P)", "P"},
        {6, "non-default variant values of non-roots", "1", "P,V", "variant_not_default(P,V,X), non_root(P)", "P"},
        {7, "non-preferred providers for non-roots", "W", "P,V", "provider_used(P,V,Q,W), non_root(P)", "Q"},
        {8, "compiler mismatches", "1", "P,D", "compiler_mismatch(P,D)", "D"},
        {9, "operating system mismatches", "1", "P,D", "os_mismatch(P,D)", "D"},
        {10, "non-preferred operating systems", "W", "P", "os_weight_used(P,W)", "P"},
        {11, "version oldness of non-roots", "W", "P", "version_weight(P,W), non_root(P)", "P"},
        {12, "unused default variant values of non-roots", "1", "P,V", "variant_default_unused(P,V,X), non_root(P)",
         "P"},
        {13, "non-preferred compilers", "W", "P", "compiler_weight_used(P,W)", "P"},
        {14, "target mismatches", "1", "P,D", "target_mismatch(P,D)", "D"},
        {15, "non-preferred targets", "W", "P", "target_weight_used(P,W)", "P"},
    };
    return p;
}

std::int64_t ObjectiveLevelPlan::base_level(const Criterion& c) const {
    auto n = static_cast<std::int64_t>(criteria.size());
    if (c.rank < 1 || c.rank > n) throw std::invalid_argument("criterion rank out of range: " + std::to_string(c.rank));
    if (n >= build_count_level) throw std::invalid_argument("too many criteria for the bucket layout");
    return n + 1 - c.rank;
}

std::vector<std::int64_t> ObjectiveLevelPlan::levels(bool reuse) const {
    std::vector<std::int64_t> out;
    for (const auto& c : criteria) {
        out.push_back(base_level(c));
        if (reuse) out.push_back(base_level(c) + built_bucket_offset);
    }
    if (reuse) out.push_back(build_count_level);
    std::sort(out.rbegin(), out.rend());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string build_objectives(const ObjectiveLevelPlan& plan, bool reuse) {
    std::string out;
    for (const auto& c : plan.criteria) {
        std::string level = std::to_string(plan.base_level(c));
        out += "% " + std::to_string(c.rank) + ": " + c.name + "\n";
        if (reuse)
            out += "#minimize { " + c.weight + "@" + level + "+Pr," + c.tuple + " : " + c.body + ", build_priority(" +
                   c.bucket + ",Pr) }.\n";
        else
            out += "#minimize { " + c.weight + "@" + level + "," + c.tuple + " : " + c.body + " }.\n";
    }
    if (reuse) {
        out += "% number of packages to build\n";
        out += "#minimize { 1@" + std::to_string(build_count_level) + ",P : build(P) }.\n";
    }
    return out;
}

}  // namespace concretix::encode
