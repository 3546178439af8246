#include "qsearch/program.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qsearch {

namespace {

void validate_primitive(const Primitive& prim, int n_qubits) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  std::visit(
      [&](const auto& op) {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, OneQubitOp>) {
          if (op.qubit < 0 || op.qubit >= n_qubits)
            throw ArgumentError("gate qubit " + std::to_string(op.qubit) +
                                " out of range for " + std::to_string(n_qubits) +
                                " qubits");
        } else if constexpr (std::is_same_v<T, PhaseInvertOp>) {
          op.states.validate_for(n_qubits);
        } else if constexpr (std::is_same_v<T, BasisPermutationOp>) {
          if (!op.map || static_cast<std::int64_t>(op.map->size()) != dim)
            throw ArgumentError("permutation table size must be 2^n_qubits");
          std::vector<bool> seen(op.map->size(), false);
          for (BasisIndex img : *op.map) {
            if (img >= op.map->size() || seen[img])
              throw ArgumentError("permutation table is not a bijection");
            seen[img] = true;
          }
        } else if constexpr (std::is_same_v<T, RepeatOp>) {
          if (!op.body) throw ArgumentError("repeat body missing");
          if (op.body->n_qubits() != n_qubits)
            throw ArgumentError("repeat body qubit count mismatch");
          if (op.count < 0) throw ArgumentError("repeat count must be >= 0");
        }
      },
      prim);
}

}  // namespace

UnitaryProgram::UnitaryProgram(int n_qubits, std::vector<Primitive> prims)
    : n_(n_qubits), prims_(std::move(prims)) {
  if (n_qubits < 1 || n_qubits > 24)
    throw ArgumentError("program qubit count must be in [1, 24]");
  for (const Primitive& prim : prims_) validate_primitive(prim, n_);
}

BasisPermutationOp make_permutation(std::vector<BasisIndex> map) {
  return BasisPermutationOp{
      std::make_shared<const std::vector<BasisIndex>>(std::move(map))};
}

std::vector<BasisIndex> complete_permutation(
    std::int64_t dim, const std::vector<std::pair<BasisIndex, BasisIndex>>& pairs) {
  const BasisIndex unset = static_cast<BasisIndex>(dim);
  std::vector<BasisIndex> perm(static_cast<std::size_t>(dim), unset);
  std::unordered_map<BasisIndex, BasisIndex> pre;  // dst -> src
  for (const auto& [src, dst] : pairs) {
    if (src >= static_cast<BasisIndex>(dim) || dst >= static_cast<BasisIndex>(dim))
      throw ArgumentError("permutation pair out of range");
    if (perm[src] != unset) throw ArgumentError("duplicate permutation source");
    if (pre.count(dst)) throw ArgumentError("duplicate permutation destination");
    perm[src] = dst;
    pre.emplace(dst, src);
  }
  // Close every open chain into a cycle: the tail maps back to the head.
  for (const auto& [src, dst] : pairs) {
    (void)src;
    if (perm[dst] != unset) continue;  // mid-chain or already closed
    BasisIndex head = dst;
    auto it = pre.find(head);
    while (it != pre.end()) {
      head = it->second;
      it = pre.find(head);
    }
    perm[dst] = head;
  }
  for (std::int64_t i = 0; i < dim; ++i)
    if (perm[static_cast<std::size_t>(i)] == unset)
      perm[static_cast<std::size_t>(i)] = static_cast<BasisIndex>(i);
  return perm;
}

RepeatOp make_repeat(UnitaryProgram body, std::int64_t count) {
  return RepeatOp{std::make_shared<const UnitaryProgram>(std::move(body)), count};
}

void apply_program(StateVector& sv, const UnitaryProgram& p) {
  if (sv.n_qubits() != p.n_qubits())
    throw ArgumentError("program/state qubit count mismatch");
  for (const Primitive& prim : p.primitives()) {
    std::visit(
        [&sv](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, OneQubitOp>) {
            apply_one_qubit(sv, op.gate, op.qubit);
          } else if constexpr (std::is_same_v<T, WalshHadamardOp>) {
            walsh_hadamard(sv);
          } else if constexpr (std::is_same_v<T, PhaseInvertOp>) {
            selective_phase_inversion(sv, op.states);
          } else if constexpr (std::is_same_v<T, NegateOp>) {
            global_negate(sv);
          } else if constexpr (std::is_same_v<T, BasisPermutationOp>) {
            const auto& map = *op.map;
            Eigen::VectorXcd out(sv.dim());
            for (std::int64_t i = 0; i < sv.dim(); ++i)
              out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)])) =
                  sv.amps()(i);
            sv.amps() = std::move(out);
          } else if constexpr (std::is_same_v<T, RepeatOp>) {
            for (std::int64_t r = 0; r < op.count; ++r) apply_program(sv, *op.body);
          }
        },
        prim);
  }
}

std::int64_t primitive_op_count(const UnitaryProgram& p) {
  std::int64_t total = 0;
  for (const Primitive& prim : p.primitives()) {
    total += std::visit(
        [&p](const auto& op) -> std::int64_t {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, WalshHadamardOp>) {
            return p.n_qubits();
          } else if constexpr (std::is_same_v<T, RepeatOp>) {
            return op.count * primitive_op_count(*op.body);
          } else {
            return 1;
          }
        },
        prim);
  }
  return total;
}

UnitaryProgram invert_program(const UnitaryProgram& p) {
  std::vector<Primitive> inv;
  inv.reserve(p.primitives().size());
  for (auto it = p.primitives().rbegin(); it != p.primitives().rend(); ++it) {
    inv.push_back(std::visit(
        [](const auto& op) -> Primitive {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, OneQubitOp>) {
            return OneQubitOp{op.gate.adjoint(), op.qubit};
          } else if constexpr (std::is_same_v<T, BasisPermutationOp>) {
            std::vector<BasisIndex> inverse(op.map->size());
            for (std::size_t i = 0; i < op.map->size(); ++i)
              inverse[(*op.map)[i]] = static_cast<BasisIndex>(i);
            return make_permutation(std::move(inverse));
          } else if constexpr (std::is_same_v<T, RepeatOp>) {
            return RepeatOp{std::make_shared<const UnitaryProgram>(
                                invert_program(*op.body)),
                            op.count};
          } else {
            return op;  // WalshHadamard, PhaseInvert, Negate are self-inverse
          }
        },
        *it));
  }
  return UnitaryProgram(p.n_qubits(), std::move(inv));
}

UnitaryProgram compose(const UnitaryProgram& p, const UnitaryProgram& q) {
  if (p.n_qubits() != q.n_qubits())
    throw ArgumentError("compose qubit count mismatch");
  std::vector<Primitive> prims = p.primitives();
  prims.insert(prims.end(), q.primitives().begin(), q.primitives().end());
  return UnitaryProgram(p.n_qubits(), std::move(prims));
}

UnitaryProgram compose(const UnitaryProgram& p, const UnitaryProgram& q,
                       const UnitaryProgram& r) {
  return compose(compose(p, q), r);
}

Eigen::MatrixXcd to_dense_matrix(const UnitaryProgram& p) {
  if (p.n_qubits() > 12)
    throw RefusalError("dense matrix refused for n_qubits > 12 (2^n x 2^n)");
  const std::int64_t dim = std::int64_t{1} << p.n_qubits();
  Eigen::MatrixXcd m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    StateVector col = basis_state(p.n_qubits(), static_cast<BasisIndex>(i));
    apply_program(col, p);
    m.col(i) = col.amps();
  }
  return m;
}

Amplitude amplitude_between(const UnitaryProgram& p, BasisIndex s, BasisIndex t) {
  const std::int64_t dim = std::int64_t{1} << p.n_qubits();
  if (s >= static_cast<BasisIndex>(dim) || t >= static_cast<BasisIndex>(dim))
    throw ArgumentError("amplitude_between index out of range");
  StateVector sv = basis_state(p.n_qubits(), s);
  apply_program(sv, p);
  return sv.amp(t);
}

// ---- textual dump -----------------------------------------------------------

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void dump_into(const UnitaryProgram& p, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (const Primitive& prim : p.primitives()) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, OneQubitOp>) {
            out += pad + "gate " + std::to_string(op.qubit);
            const auto& m = op.gate.matrix();
            for (int r = 0; r < 2; ++r)
              for (int c = 0; c < 2; ++c) {
                out += ' ' + fmt_real(m(r, c).real());
                out += ' ' + fmt_real(m(r, c).imag());
              }
            out += '\n';
          } else if constexpr (std::is_same_v<T, WalshHadamardOp>) {
            out += pad + "wh\n";
          } else if constexpr (std::is_same_v<T, PhaseInvertOp>) {
            out += pad + "flip";
            for (BasisIndex i : op.states) out += ' ' + std::to_string(i);
            out += '\n';
          } else if constexpr (std::is_same_v<T, NegateOp>) {
            out += pad + "neg\n";
          } else if constexpr (std::is_same_v<T, BasisPermutationOp>) {
            out += pad + "perm";
            for (std::size_t i = 0; i < op.map->size(); ++i)
              if ((*op.map)[i] != i)
                out += ' ' + std::to_string(i) + ':' + std::to_string((*op.map)[i]);
            out += '\n';
          } else if constexpr (std::is_same_v<T, RepeatOp>) {
            out += pad + "repeat " + std::to_string(op.count) + '\n';
            dump_into(*op.body, out, depth + 1);
            out += pad + "end\n";
          }
        },
        prim);
  }
}

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) {
    if (t[0] == '#') break;
    toks.push_back(t);
  }
  return toks;
}

double parse_real(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ArgumentError("bad number in program text: '" + s + "'");
  return v;
}

BasisIndex parse_index(const std::string& s) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size())
    throw ArgumentError("bad index in program text: '" + s + "'");
  return static_cast<BasisIndex>(v);
}

// Parses primitives until 'end' (nested) or end of input (top level).
std::vector<Primitive> parse_body(std::istringstream& in, int n_qubits, bool nested) {
  const std::int64_t dim = std::int64_t{1} << n_qubits;
  std::vector<Primitive> prims;
  std::string line;
  while (std::getline(in, line)) {
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "end") {
      if (!nested) throw ArgumentError("'end' without matching 'repeat'");
      return prims;
    } else if (kw == "wh") {
      prims.push_back(WalshHadamardOp{});
    } else if (kw == "neg") {
      prims.push_back(NegateOp{});
    } else if (kw == "flip") {
      std::vector<BasisIndex> idx;
      for (std::size_t i = 1; i < toks.size(); ++i) idx.push_back(parse_index(toks[i]));
      prims.push_back(PhaseInvertOp{BasisSet(std::move(idx))});
    } else if (kw == "gate") {
      if (toks.size() != 10) throw ArgumentError("'gate' needs a qubit and 8 reals");
      Eigen::Matrix2cd m;
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          const std::size_t base = 2 + 2 * static_cast<std::size_t>(2 * r + c);
          m(r, c) = Amplitude(parse_real(toks[base]), parse_real(toks[base + 1]));
        }
      prims.push_back(OneQubitOp{OneQubitUnitary(m),
                                 static_cast<int>(parse_index(toks[1]))});
    } else if (kw == "perm") {
      std::vector<BasisIndex> map(static_cast<std::size_t>(dim));
      for (std::size_t i = 0; i < map.size(); ++i) map[i] = static_cast<BasisIndex>(i);
      std::unordered_set<BasisIndex> sources;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        const auto colon = toks[i].find(':');
        if (colon == std::string::npos)
          throw ArgumentError("'perm' entries look like src:dst");
        const BasisIndex src = parse_index(toks[i].substr(0, colon));
        const BasisIndex dst = parse_index(toks[i].substr(colon + 1));
        if (src >= map.size() || !sources.insert(src).second)
          throw ArgumentError("bad or duplicate 'perm' source");
        map[src] = dst;
      }
      prims.push_back(make_permutation(std::move(map)));
    } else if (kw == "repeat") {
      if (toks.size() != 2) throw ArgumentError("'repeat' needs a count");
      const auto count = static_cast<std::int64_t>(parse_index(toks[1]));
      auto body = parse_body(in, n_qubits, true);
      prims.push_back(make_repeat(UnitaryProgram(n_qubits, std::move(body)), count));
    } else {
      throw ArgumentError("unknown program keyword '" + kw + "'");
    }
  }
  if (nested) throw ArgumentError("'repeat' without matching 'end'");
  return prims;
}

}  // namespace

std::string dump_program(const UnitaryProgram& p) {
  std::string out = "qprog 1 " + std::to_string(p.n_qubits()) + '\n';
  dump_into(p, out, 0);
  return out;
}

UnitaryProgram parse_program(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    header = tokenize(line);
    if (!header.empty()) break;
  }
  if (header.size() != 3 || header[0] != "qprog" || header[1] != "1")
    throw ArgumentError("program text must start with 'qprog 1 <n_qubits>'");
  const int n = static_cast<int>(parse_index(header[2]));
  auto prims = parse_body(in, n, false);
  return UnitaryProgram(n, std::move(prims));  // ctor validates everything
}

}  // namespace qsearch
