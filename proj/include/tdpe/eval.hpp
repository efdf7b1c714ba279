#pragma once

#include "tdpe/semantics.hpp"
#include "tdpe/typing.hpp"

namespace tdpe {

// Evaluation of a derivation of ctx |-_b A into the semantic domain, at an
// ambient annotation b' with b <= b'. The environment must force (cbn) or
// strongly force (cbv) the context at the environment's world and at b'.
// Both evaluators recurse structurally on the derivation and differ in the
// clauses for hyp, application, injections and shift, and in how the reset
// clause at b' = 0 coerces the environment to annotation 1.
ForcingValue eval_cbn(const Derivation& d, const CbnEnv& env, Annot b);
ForcingValue eval_cbv(const Derivation& d, const CbvEnv& env, Annot b);

}  // namespace tdpe
