#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace concretix::spec {

class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class VersionError : public SpecError {
public:
    using SpecError::SpecError;
};

/// A dotted version such as `1.10.2` or `2.0rc1`. Segments split on `.`, `-`,
/// `_` and at digit/letter boundaries.
class Version {
public:
    struct Segment {
        bool numeric = true;
        std::string text;  // digits without leading zeros, or letters
    };

    Version() = default;
    explicit Version(std::string_view text);

    const std::string& str() const noexcept { return text_; }
    const std::vector<Segment>& segments() const noexcept { return segments_; }

    /// Textual equality; use version_compare for ordering.
    friend bool operator==(const Version& a, const Version& b) { return a.text_ == b.text_; }

private:
    std::string text_;
    std::vector<Segment> segments_;
};

/// Segment-wise order: numbers compare numerically, missing segments are 0 and
/// a numeric segment sorts before an alphabetic one.
std::strong_ordering version_compare(const Version& a, const Version& b);

/// True if the first segments of `v` equal those of `prefix`.
bool version_has_prefix(const Version& v, const Version& prefix);

/// An inclusive range. A missing endpoint is unbounded. The upper endpoint also
/// admits versions that extend it (`:1.10` contains 1.10.4), so a point range
/// `1.10` contains 1.10 and every 1.10.x.
struct VersionRange {
    std::optional<Version> low;
    std::optional<Version> high;

    bool is_point() const { return low && high && *low == *high; }
    bool contains(const Version& v) const;
    std::string to_string() const;

    friend bool operator==(const VersionRange&, const VersionRange&) = default;
};

/// A union of ranges. No ranges means "any version".
class VersionConstraint {
public:
    VersionConstraint() = default;
    explicit VersionConstraint(std::vector<VersionRange> ranges);

    /// Parses `1.2`, `1.2:`, `:1.4`, `1.2:1.4` and comma-separated lists.
    static VersionConstraint parse(std::string_view text);
    static VersionConstraint point(const Version& v);

    bool any() const noexcept { return ranges_.empty(); }
    const std::vector<VersionRange>& ranges() const noexcept { return ranges_; }
    std::string to_string() const;

    /// Ranges of both constraints that overlap; nullopt when disjoint.
    std::optional<VersionConstraint> intersect(const VersionConstraint& other) const;

    friend bool operator==(const VersionConstraint&, const VersionConstraint&) = default;

private:
    void normalize();

    std::vector<VersionRange> ranges_;
};

bool version_satisfies(const Version& v, const VersionConstraint& c);

}  // namespace concretix::spec
