#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qsearch/state_vector.hpp"

namespace qsearch {

class UnitaryProgram;

// ---- primitives -----------------------------------------------------------

struct OneQubitOp {
  OneQubitUnitary gate;
  int qubit;
};

struct WalshHadamardOp {};

struct PhaseInvertOp {
  BasisSet states;
};

struct NegateOp {};

// Full bijection on [0, 2^n): map[i] is the image of basis state i. The table
// is shared so copying programs stays cheap.
struct BasisPermutationOp {
  std::shared_ptr<const std::vector<BasisIndex>> map;
};

struct RepeatOp {
  std::shared_ptr<const UnitaryProgram> body;
  std::int64_t count;
};

using Primitive =
    std::variant<OneQubitOp, WalshHadamardOp, PhaseInvertOp, NegateOp,
                 BasisPermutationOp, RepeatOp>;

// An invertible sequence of primitives denoting U; the first element is
// applied first. Immutable after construction.
class UnitaryProgram {
 public:
  explicit UnitaryProgram(int n_qubits, std::vector<Primitive> prims = {});

  int n_qubits() const { return n_; }
  const std::vector<Primitive>& primitives() const { return prims_; }
  bool empty() const { return prims_.empty(); }

 private:
  int n_;
  std::vector<Primitive> prims_;
};

// Validated constructors for the table-based primitives.
BasisPermutationOp make_permutation(std::vector<BasisIndex> map);

// Completes a partial injective map (src -> dst pairs) on [0, dim) to a
// bijection: each open chain is closed into a cycle (the last image maps back
// to the chain's head) and untouched indices stay fixed.
std::vector<BasisIndex> complete_permutation(
    std::int64_t dim, const std::vector<std::pair<BasisIndex, BasisIndex>>& pairs);

RepeatOp make_repeat(UnitaryProgram body, std::int64_t count);

// ---- operations ------------------------------------------------------------

// Applies the primitives in sequence (in place).
void apply_program(StateVector& sv, const UnitaryProgram& p);

// Elementary-operation cost of one application: OneQubit, PhaseInvert,
// Negate and BasisPermutation count 1, WalshHadamard counts n (one pass per
// qubit), Repeat counts count * body.
std::int64_t primitive_op_count(const UnitaryProgram& p);

// Reversed sequence of per-primitive inverses (the adjoint, exactly).
UnitaryProgram invert_program(const UnitaryProgram& p);

// Concatenation: apply_program(compose(p, q), v) = q applied after p.
UnitaryProgram compose(const UnitaryProgram& p, const UnitaryProgram& q);
UnitaryProgram compose(const UnitaryProgram& p, const UnitaryProgram& q,
                       const UnitaryProgram& r);

// Dense matrix of the program (column i = program applied to |i>). Guarded:
// refuses n_qubits > 12.
Eigen::MatrixXcd to_dense_matrix(const UnitaryProgram& p);

// U_ts: the amplitude of reaching t when the program is applied to |s>.
Amplitude amplitude_between(const UnitaryProgram& p, BasisIndex s, BasisIndex t);

// ---- textual dump ----------------------------------------------------------
// One primitive per line:
//   qprog 1 <n_qubits>        header (version 1)
//   gate <q> <8 reals>        row-major re/im pairs of the 2x2 matrix
//   wh                        Walsh-Hadamard on all qubits
//   flip <i> <i> ...          selective phase inversion (indices ascending)
//   neg                       global negation
//   perm <src>:<dst> ...      non-fixed points of the bijection
//   repeat <count> ... end    nested body between 'repeat' and its 'end'
// '#' starts a comment; reals carry 17 significant digits.

std::string dump_program(const UnitaryProgram& p);
UnitaryProgram parse_program(const std::string& text);

}  // namespace qsearch
