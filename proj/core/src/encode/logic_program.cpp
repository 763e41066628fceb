#include "concretix/encode/encoder.hpp"

namespace concretix::encode {

namespace {

const char* const program_text = R"lp(% ---- generalized conditions --------------------------------------------
condition_holds(ID) :- condition(ID);
    attr(N,A1) : condition_requirement(ID,N,A1);
    attr(N,A1,A2) : condition_requirement(ID,N,A1,A2);
    attr(N,A1,A2,A3) : condition_requirement(ID,N,A1,A2,A3).

attr(N,A1) :- impose(ID), imposed_constraint(ID,N,A1).
attr(N,A1,A2) :- impose(ID), imposed_constraint(ID,N,A1,A2).
attr(N,A1,A2,A3) :- impose(ID), imposed_constraint(ID,N,A1,A2,A3).

attr("node",P) :- node(P).
attr("version_satisfies",P,C) :- version_satisfies(P,C).

% every integrity constraint below is switched on by its error atom
{ error(M) } :- error_message(M).

% ---- dependencies -------------------------------------------------------
dependency_holds(P,D) :- dependency_condition(ID,P,D), condition_holds(ID), build(P).
impose(ID) :- dependency_condition(ID,P,D), condition_holds(ID), build(P).
attr("depends_on",P,D) :- dependency_holds(P,D), not virtual(D).
attr("node",D) :- attr("depends_on",P,D).

path(A,B) :- attr("depends_on",A,B).
path(A,C) :- path(A,B), attr("depends_on",B,C).
:- path(A,B), path(B,A), error("cyclic dependency").

% ---- virtuals -----------------------------------------------------------
attr("virtual_on_edge",P,V) :- dependency_holds(P,V), virtual(V).
attr("virtual_node",V) :- attr("virtual_on_edge",P,V).
attr("virtual_node",V) :- virtual_root(V).
1 { provider(V,Q) : possible_provider(V,Q) } 1 :- attr("virtual_node",V).
attr("node",Q) :- provider(V,Q).
attr("depends_on",P,Q) :- attr("virtual_on_edge",P,V), provider(V,Q).
root(Q) :- virtual_root(V), provider(V,Q).
provides_virtual(Q,V) :- provider_condition(ID,Q,V), condition_holds(ID).
:- provider(V,Q), not provides_virtual(Q,V), error("provider does not provide the virtual package").
:- attr("node",V), virtual(V), error("virtual package cannot be a node").

% ---- versions -----------------------------------------------------------
1 { attr("version",P,V) : version_declared(P,V,W) } 1 :- attr("node",P).
attr("version_satisfies",P,C) :- attr("version",P,V), version_in_range(P,C,V).
:- attr("version_satisfies",P,C), attr("version",P,V), not version_in_range(P,C,V),
   error("version constraint not satisfied").
version_weight(P,W) :- attr("version",P,V), version_declared(P,V,W).
deprecated_used(P) :- attr("version",P,V), deprecated_version(P,V).

% ---- variants -----------------------------------------------------------
1 { attr("variant_value",P,V,X) : variant_possible_value(P,V,X) } :- attr("node",P), variant(P,V).
attr("variant_value",P,V,X) :- attr("variant_set",P,V,X).
:- attr("variant_value",P,V,X), attr("variant_value",P,V,Y), attr("node",P), X < Y,
   error("variant has more than one value").
:- attr("variant_set",P,V,X), attr("node",P), variant(P,V), not variant_possible_value(P,V,X),
   error("variant value is not allowed").
:- attr("variant_set",P,V,X), attr("node",P), not variant(P,V), error("variant does not exist").
variant_not_default(P,V,X) :- attr("variant_value",P,V,X), attr("node",P), variant(P,V),
   not variant_default(P,V,X).
variant_default_unused(P,V,X) :- variant_not_default(P,V,X), not attr("variant_set",P,V,X).

% ---- compilers ----------------------------------------------------------
1 { attr("node_compiler_version",P,C,V) : compiler_version(C,V) } 1 :- attr("node",P).
attr("node_compiler",P,C) :- attr("node_compiler_version",P,C,V).
:- attr("node_compiler_set",P,C), attr("node",P), not attr("node_compiler",P,C),
   error("compiler constraint not satisfied").
attr("node_compiler_version_satisfies",P,C,R) :- attr("node_compiler_version",P,C,V),
   compiler_version_in_range(C,R,V).
:- attr("node_compiler_version_satisfies",P,C,R), attr("node_compiler_version",P,C,V),
   not compiler_version_in_range(C,R,V), error("compiler version constraint not satisfied").
:- attr("node_compiler_version",P,C,V), attr("node_target",P,T), not compiler_supports_target(C,V,T),
   error("compiler does not support the target").

% ---- targets and operating systems --------------------------------------
1 { attr("node_target",P,T) : target(T) } 1 :- attr("node",P).
attr("node_target_satisfies",P,R) :- attr("node_target",P,T), target_satisfies(R,T).
:- attr("node_target_satisfies",P,R), attr("node_target",P,T), not target_satisfies(R,T),
   error("target constraint not satisfied").

1 { attr("node_os",P,O) : os(O) } 1 :- attr("node",P).
:- attr("node_os_set",P,O), attr("node",P), not attr("node_os",P,O),
   error("operating system constraint not satisfied").

% ---- requested dependencies and conflicts -------------------------------
in_dag(P) :- attr("node",P).
in_dag(V) :- attr("virtual_node",V).
:- user_dependency(D), not in_dag(D), error("requested dependency is not in the DAG").

:- conflict(ID,M), condition_holds(ID), error(M).

% ---- reuse --------------------------------------------------------------
{ attr("hash",P,H) : installed_hash(P,H) } 1 :- attr("node",P).
impose(H) :- attr("hash",P,H).
reused(P) :- attr("hash",P,H).
build(P) :- attr("node",P), not reused(P).
build_priority(P,200) :- build(P), optimize_for_reuse.
build_priority(P,0) :- build(P), not optimize_for_reuse.
build_priority(P,0) :- reused(P).

% ---- quantities the objectives minimize ---------------------------------
non_root(P) :- attr("node",P), not root(P).
provider_used(P,V,Q,W) :- attr("virtual_on_edge",P,V), provider(V,Q), provider_weight(V,Q,W).
provider_used(Q,V,Q,W) :- virtual_root(V), provider(V,Q), provider_weight(V,Q,W).
compiler_mismatch(P,D) :- attr("depends_on",P,D), attr("node_compiler",P,C1), attr("node_compiler",D,C2), C1 != C2.
compiler_mismatch(P,D) :- attr("depends_on",P,D), attr("node_compiler_version",P,C,V1),
   attr("node_compiler_version",D,C,V2), V1 != V2.
os_mismatch(P,D) :- attr("depends_on",P,D), attr("node_os",P,O1), attr("node_os",D,O2), O1 != O2.
target_mismatch(P,D) :- attr("depends_on",P,D), attr("node_target",P,T1), attr("node_target",D,T2), T1 != T2.
os_weight_used(P,W) :- attr("node_os",P,O), os_weight(O,W).
compiler_weight_used(P,W) :- attr("node_compiler_version",P,C,V), compiler_weight(C,V,W).
target_weight_used(P,W) :- attr("node_target",P,T), target_weight(T,W).
)lp";

}  // namespace

const std::vector<std::string>& fixed_error_messages() {
    static const std::vector<std::string> messages = {
        "cyclic dependency",
        "provider does not provide the virtual package",
        "virtual package cannot be a node",
        "version constraint not satisfied",
        "variant has more than one value",
        "variant value is not allowed",
        "variant does not exist",
        "compiler constraint not satisfied",
        "compiler version constraint not satisfied",
        "compiler does not support the target",
        "target constraint not satisfied",
        "operating system constraint not satisfied",
        "requested dependency is not in the DAG",
    };
    return messages;
}

const std::string& fixed_logic_program() {
    static const std::string text = program_text;
    return text;
}

logic::GroundAtom error_atom(const std::string& message) {
    return logic::GroundAtom{logic::Symbol("error"), {logic::Value::string(message)}};
}

}  // namespace concretix::encode
