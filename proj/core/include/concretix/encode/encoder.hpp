#pragma once

#include "concretix/encode/objectives.hpp"
#include "concretix/logic/ground.hpp"
#include "concretix/repo/repo.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace concretix::encode {

using ConditionId = int;

/// The request cannot be met for a reason found before solving.
class UnsatisfiableInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Provenance {
    std::string package;
    std::string directive;
    std::string message;
};

struct EncodeOptions {
    bool reuse = false;
    ObjectiveLevelPlan plan = ObjectiveLevelPlan::standard();
};

struct EncodedProblem {
    std::string facts;
    std::string logic_program;
    std::string objectives;
    /// `error(msg)` atoms; solving asserts all of them.
    std::vector<logic::GroundAtom> assumptions;
    ObjectiveLevelPlan plan;
    bool reuse = false;
    std::map<ConditionId, Provenance> provenance;

    std::vector<spec::AbstractSpec> roots;
    std::set<std::string> possible;
    std::set<std::string> virtuals;
    /// Declared variants of every possible package, with their defaults.
    std::map<std::string, std::map<std::string, spec::VariantValue>> variant_defaults;

    /// Fixed program, objectives and facts, ready for the parser.
    std::string text() const;
};

/// Messages of the error-bearing integrity constraints in the fixed program,
/// in program order.
const std::vector<std::string>& fixed_error_messages();

/// The concretizer rules. Every integrity constraint carries an `error(msg)`
/// literal; the conflict constraint takes its message from the facts.
const std::string& fixed_logic_program();

logic::GroundAtom error_atom(const std::string& message);

/// Throws repo::UnknownPackage and UnsatisfiableInput.
EncodedProblem encode_problem(const repo::Repo& repo, const std::vector<spec::AbstractSpec>& roots,
                              const repo::InstalledDatabase* installed = nullptr, const EncodeOptions& options = {});

/// Facts for one conflict directive of `recipe`, using condition `id`.
std::string encode_conflict(const repo::PackageRecipe& recipe, const repo::ConflictDecl& conflict, ConditionId id,
                            const repo::Repo* repo = nullptr);

}  // namespace concretix::encode
