#pragma once

#include <cstdint>
#include <stdexcept>

#include "tdpe/term.hpp"
#include "tdpe/typing.hpp"

namespace tdpe {

struct GenError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GenConfig {
  std::uint64_t seed = 0;
  int max_depth = 4;
  Formula target = Formula::bot();
  bool allow_control = false;
  Annot annot = Annot::zero;
  // restrict sampled formulas to plain atoms and arrows (no bot, no sums),
  // which also keeps delimiters out of the generated terms
  bool pure_fragment = false;
};

// Type-directed random generation: picks a typing rule whose conclusion
// matches the goal and recurses on the premises, so every result checks at
// (ctx, annot, target). Deterministic per seed. Throws GenError when the goal
// resists bounded retries (e.g. an uninhabited atom in the empty context).
DbTerm gen_typed_term(const GenConfig& cfg, const Context& ctx = {});

}  // namespace tdpe
