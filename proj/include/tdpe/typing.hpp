#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tdpe/formula.hpp"
#include "tdpe/term.hpp"

namespace tdpe {

// Delimiter annotation on the turnstile: 1 means a reset is set above, which
// is what licenses shift.
enum class Annot : unsigned char { zero = 0, one = 1 };

inline int annot_value(Annot a) { return static_cast<int>(a); }

struct Judgment {
  Context ctx;
  Annot annot = Annot::zero;
  Formula type = Formula::bot();

  friend bool operator==(const Judgment& a, const Judgment& b) {
    return a.ctx == b.ctx && a.annot == b.annot && a.type == b.type;
  }
};

struct CheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A typing derivation: the term decorated at every node with its judgment.
// Premises appear in rule order. Elaboration fills the shift and case binder
// annotations into the stored terms.
class Derivation {
 public:
  Derivation(DbTerm term, Judgment judgment, std::vector<Derivation> premises);

  const DbTerm& term() const { return node_->term; }
  const Judgment& judgment() const { return node_->judgment; }
  const Context& ctx() const { return node_->judgment.ctx; }
  Annot annot() const { return node_->judgment.annot; }
  const Formula& type() const { return node_->judgment.type; }
  const Derivation& premise(int i) const { return node_->premises[i]; }
  int premise_count() const { return static_cast<int>(node_->premises.size()); }

 private:
  struct Node {
    DbTerm term;
    Judgment judgment;
    std::vector<Derivation> premises;
  };
  std::shared_ptr<const Node> node_;
};

// Checks t against the judgment ctx |-_b ty. Checking is syntax directed:
// hyp, wkn and application synthesize, the remaining constructors check, and
// ascription switches modes. Throws CheckError with a descriptive message.
Derivation check(const Context& ctx, Annot b, const DbTerm& t, const Formula& ty);

// A derivation at annotation 0 re-checks at annotation 1.
Derivation annot_weaken(const Derivation& d);

}  // namespace tdpe
