#pragma once

#include <array>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twl/flow.hpp"
#include "twl/graph.hpp"
#include "twl/sequence.hpp"

namespace twl::lab {

// Sum of |Y| over parts Y joined to X by a black quotient edge.
inline long long black_neighborhood_weight(const PartitionedTrigraph& pt, int x) {
  if (!pt.partition.has_part(x)) throw invalid_input("unknown part id " + std::to_string(x));
  long long w = 0;
  for (int y : pt.quotient.black_neighbors(x)) w += pt.part_size(y);
  return w;
}

struct ObsViolation {
  int first, second;  // part ids, first < second
  int first_size, second_size;
};

// Black quotient edges between two parts of size >= t. Each one is a K_{t,t} in the graph.
inline std::vector<ObsViolation> check_obs_red_edge(const PartitionedTrigraph& pt, int t) {
  std::vector<ObsViolation> out;
  for (auto [a, b] : pt.quotient.black_edges()) {
    int sa = pt.part_size(a), sb = pt.part_size(b);
    if (sa >= t && sb >= t) out.push_back({a, b, sa, sb});
  }
  return out;
}

using PartQuad = std::array<int, 4>;

struct WitnessState {
  int step = 0;  // index j of the partition P^j (number of parts)
  PartQuad parts{};
  int t = 0;
  int s = 0;       // disjoint X1 -> X4 paths inside G[X1 u X2 u X3 u X4]
  long long w2 = 0;  // ||N^b(X2)||
  long long w3 = 0;  // ||N^b(X3)||

  long long total() const { return s + w2 + w3; }
};

enum class WitnessFailure {
  none,
  unknown_part,
  repeated_part,
  part_too_small,
  not_red_12,
  not_red_23,
  not_red_34,
  adjacent_14,
  inequality,
};

inline const char* to_string(WitnessFailure f) {
  switch (f) {
    case WitnessFailure::none: return "none";
    case WitnessFailure::unknown_part: return "unknown part";
    case WitnessFailure::repeated_part: return "parts not distinct";
    case WitnessFailure::part_too_small: return "part smaller than t";
    case WitnessFailure::not_red_12: return "X1-X2 not a red edge";
    case WitnessFailure::not_red_23: return "X2-X3 not a red edge";
    case WitnessFailure::not_red_34: return "X3-X4 not a red edge";
    case WitnessFailure::adjacent_14: return "X1-X4 adjacent";
    case WitnessFailure::inequality: return "s + w2 + w3 < 4t";
  }
  return "?";
}

struct WitnessCheck {
  std::optional<WitnessState> state;
  WitnessFailure failure = WitnessFailure::none;
  std::string detail;

  explicit operator bool() const { return state.has_value(); }
};

namespace detail {

inline std::vector<vertex_t> union_of(const VertexPartition& p, const PartQuad& x) {
  std::vector<vertex_t> out;
  for (int id : x) {
    const auto& vs = p.part(id).vertices;
    out.insert(out.end(), vs.begin(), vs.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline DisjointPaths witness_paths(const Graph& g, const VertexPartition& p, const PartQuad& x) {
  return max_disjoint_paths(g, p.part(x[0]).vertices, p.part(x[3]).vertices, union_of(p, x));
}

inline bool is_red(const Trigraph& q, int a, int b) {
  auto c = q.edge_color(a, b);
  return c && *c == Color::red;
}

}  // namespace detail

inline WitnessCheck check_witness(const Graph& g, const PartitionedTrigraph& pt, const PartQuad& x, int t,
                                  int step = 0) {
  WitnessCheck r;
  auto fail = [&](WitnessFailure f, std::string d = {}) {
    r.failure = f;
    r.detail = d.empty() ? to_string(f) : std::string(to_string(f)) + ": " + d;
    return r;
  };
  const auto& p = pt.partition;
  for (int id : x)
    if (!p.has_part(id)) return fail(WitnessFailure::unknown_part, std::to_string(id));
  if (std::set<int>(x.begin(), x.end()).size() != 4) return fail(WitnessFailure::repeated_part);
  for (int i = 0; i < 4; ++i)
    if (pt.part_size(x[i]) < t)
      return fail(WitnessFailure::part_too_small, "X" + std::to_string(i + 1) + " has " +
                                                      std::to_string(pt.part_size(x[i])) + " vertices");
  if (!detail::is_red(pt.quotient, x[0], x[1])) return fail(WitnessFailure::not_red_12);
  if (!detail::is_red(pt.quotient, x[1], x[2])) return fail(WitnessFailure::not_red_23);
  if (!detail::is_red(pt.quotient, x[2], x[3])) return fail(WitnessFailure::not_red_34);
  if (pt.quotient.adjacent(x[0], x[3])) return fail(WitnessFailure::adjacent_14);
  WitnessState w;
  w.step = step;
  w.parts = x;
  w.t = t;
  w.s = detail::witness_paths(g, p, x).count;
  w.w2 = black_neighborhood_weight(pt, x[1]);
  w.w3 = black_neighborhood_weight(pt, x[2]);
  if (w.total() < 4LL * t)
    return fail(WitnessFailure::inequality, std::to_string(w.s) + " + " + std::to_string(w.w2) + " + " +
                                                std::to_string(w.w3) + " < " + std::to_string(4 * t));
  r.state = w;
  return r;
}

inline WitnessCheck check_witness(const Graph& g, const VertexPartition& p, const PartQuad& x, int t, int step = 0) {
  return check_witness(g, quotient(g, p), x, t, step);
}

class structural_violation : public invalid_input {
public:
  using invalid_input::invalid_input;
};

// Every path of a maximum family of inclusion-minimal X1 -> X4 paths inside
// G[X1 u .. u X4] runs X1, X2, ..., X3, X4 at its ends.
inline bool check_path_layout(const Graph& g, const VertexPartition& p, const PartQuad& x) {
  for (int id : x)
    if (!p.has_part(id)) throw invalid_input("unknown part id " + std::to_string(id));
  if (std::set<int>(x.begin(), x.end()).size() != 4) throw invalid_input("witness parts are not distinct");
  auto q = quotient(g, p);
  if (q.quotient.adjacent(x[0], x[2]))
    throw structural_violation("X1 and X3 are adjacent, so the red degree of X3 would exceed 2");
  if (q.quotient.adjacent(x[1], x[3]))
    throw structural_violation("X2 and X4 are adjacent, so the red degree of X2 would exceed 2");
  auto paths = detail::witness_paths(g, p, x);
  for (const auto& path : paths.paths) {
    if (path.size() < 4) return false;
    if (p.part_of(path.front()) != x[0] || p.part_of(path[1]) != x[1] ||
        p.part_of(path[path.size() - 2]) != x[2] || p.part_of(path.back()) != x[3])
      return false;
  }
  return true;
}

enum class InvariantVerdict { maintained, violated_red_degree, violated_structure };

inline const char* to_string(InvariantVerdict v) {
  switch (v) {
    case InvariantVerdict::maintained: return "MAINTAINED";
    case InvariantVerdict::violated_red_degree: return "VIOLATED_RED_DEGREE";
    case InvariantVerdict::violated_structure: return "VIOLATED_STRUCTURE";
  }
  return "?";
}

struct InvariantReport {
  InvariantVerdict verdict = InvariantVerdict::violated_structure;
  std::string case_label;
  std::optional<WitnessState> successor;
  std::string detail;
};

// One uncontraction step of the invariant automaton. The successor quadruple follows the
// case analysis; s, w2 and w3 of the successor are recomputed from scratch.
inline InvariantReport advance_witness(const Graph& g, const VertexPartition& pj, const WitnessState& w,
                                       const SplitRecord& split) {
  InvariantReport r;
  auto before = quotient(g, pj);
  auto valid = check_witness(g, before, w.parts, w.t, w.step);
  VertexPartition next = pj.split(split.part, split.first, split.second);
  if (!valid) {
    r.verdict = InvariantVerdict::violated_structure;
    r.case_label = "input";
    r.detail = "input state is not a witness: " + valid.detail;
    return r;
  }
  const int t = w.t;
  const auto& x = w.parts;
  auto after = quotient(g, next);
  const Trigraph& q = after.quotient;
  const int a = split.first.id, b = split.second.id;

  auto red_violation = [&](std::string label, std::string detail) {
    r.verdict = InvariantVerdict::violated_red_degree;
    r.case_label = std::move(label);
    r.detail = std::move(detail);
    return r;
  };

  PartQuad succ = x;
  int pos = -1;
  for (int i = 0; i < 4; ++i)
    if (x[i] == split.part) pos = i;

  if (pos < 0) {
    r.case_label = "a: split outside the witness";
  } else if (pos == 0 || pos == 3) {
    // Orient so that the split part plays X1.
    PartQuad o = pos == 0 ? x : PartQuad{x[3], x[2], x[1], x[0]};
    auto paths = detail::witness_paths(g, pj, o);
    int starts_a = 0, starts_b = 0;
    std::set<vertex_t> in_a(split.first.vertices.begin(), split.first.vertices.end());
    for (const auto& path : paths.paths) (in_a.count(path.front()) ? starts_a : starts_b)++;
    int y, z;
    if (starts_a >= t && (starts_b < t || starts_a > starts_b || (starts_a == starts_b && a < b))) {
      y = a;
      z = b;
    } else if (starts_b >= t) {
      y = b;
      z = a;
    } else {
      r.verdict = InvariantVerdict::violated_structure;
      r.case_label = "b: split of an end part";
      r.detail = "neither half holds t path starts (" + std::to_string(starts_a) + ", " + std::to_string(starts_b) + ")";
      return r;
    }
    std::string label = pos == 0 ? "b: split of X1" : "b: split of X4";
    if (detail::is_red(q, y, o[1]) && detail::is_red(q, z, o[1]))
      return red_violation(label, "both halves red-adjacent to the next part, which also sees the third part");
    auto zc = q.edge_color(z, o[1]);
    label += !zc ? ", other half detached" : ", other half black-adjacent";
    r.case_label = label;
    PartQuad oriented{y, o[1], o[2], o[3]};
    succ = pos == 0 ? oriented : PartQuad{oriented[3], oriented[2], oriented[1], oriented[0]};
  } else {
    // Orient so that the split part plays X2.
    PartQuad o = pos == 1 ? x : PartQuad{x[3], x[2], x[1], x[0]};
    std::string side = pos == 1 ? "X2" : "X3";
    bool a3 = detail::is_red(q, a, o[2]), b3 = detail::is_red(q, b, o[2]);
    if (a3 && b3) return red_violation("c: split of " + side, "both halves red-adjacent to the far neighbour");
    if (!a3 && !b3) {
      r.verdict = InvariantVerdict::violated_structure;
      r.case_label = "c: split of " + side;
      r.detail = "no half is red-adjacent to the far neighbour";
      return r;
    }
    int y = a3 ? a : b, z = a3 ? b : a;
    PartQuad oriented;
    if (detail::is_red(q, y, o[0])) {
      if (detail::is_red(q, z, y))
        return red_violation("c1: split of " + side, "halves red-adjacent while one sees both neighbours");
      auto zy = q.edge_color(z, y);
      auto z3 = q.edge_color(z, o[2]);
      std::string sub = z3 ? "other half black to far neighbour" : zy ? "other half black to its twin half" : "other half detached";
      r.case_label = "c1: split of " + side + ", " + sub;
      oriented = {o[0], y, o[2], o[3]};
    } else {
      if (!detail::is_red(q, z, o[0])) {
        r.verdict = InvariantVerdict::violated_structure;
        r.case_label = "c: split of " + side;
        r.detail = "no half is red-adjacent to the near neighbour";
        return r;
      }
      r.case_label = "c2: split of " + side + ", path reroutes through both halves";
      oriented = {z, y, o[2], o[3]};
    }
    succ = pos == 1 ? oriented : PartQuad{oriented[3], oriented[2], oriented[1], oriented[0]};
  }

  auto checked = check_witness(g, after, succ, t, w.step + 1);
  if (!checked) {
    r.verdict = InvariantVerdict::violated_structure;
    r.detail = "successor is not a witness: " + checked.detail;
    return r;
  }
  r.verdict = InvariantVerdict::maintained;
  r.successor = checked.state;
  return r;
}

enum class AuditVerdict { no_witness, contradiction_found, sequence_escaped, witness_lost };

inline const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::no_witness: return "NO_WITNESS";
    case AuditVerdict::contradiction_found: return "CONTRADICTION_FOUND";
    case AuditVerdict::sequence_escaped: return "SEQUENCE_ESCAPED";
    case AuditVerdict::witness_lost: return "WITNESS_LOST";
  }
  return "?";
}

struct AuditResult {
  AuditVerdict verdict = AuditVerdict::no_witness;
  int step = 0;  // partition index where the verdict was reached
  std::string reason;
  std::vector<InvariantReport> trail;
};

// Runs the invariant automaton from P^m to the singleton partition.
inline AuditResult audit_sequence(const Graph& g, const ContractionSequence& s, int m, const PartQuad& x, int t) {
  auto u = invert(g, s);
  if (m < 1 || m > u.n) throw invalid_input("witness index " + std::to_string(m) + " out of range");
  auto parts = u.all_partitions();
  AuditResult r;
  r.step = m;
  auto start = check_witness(g, parts[m - 1], x, t, m);
  if (!start) {
    r.verdict = AuditVerdict::no_witness;
    r.reason = start.detail;
    return r;
  }
  WitnessState w = *start.state;
  for (int j = m; j < u.n; ++j) {
    auto rep = advance_witness(g, parts[j - 1], w, u.splits[j - 1]);
    r.trail.push_back(rep);
    r.step = j + 1;
    if (rep.verdict == InvariantVerdict::violated_red_degree) {
      r.verdict = AuditVerdict::contradiction_found;
      r.reason = rep.case_label + ": " + rep.detail;
      return r;
    }
    auto q = quotient(g, parts[j]);
    for (int id : parts[j].ids())
      if (q.quotient.red_degree(id) >= 3) {
        r.verdict = AuditVerdict::sequence_escaped;
        r.reason = "part " + std::to_string(id) + " has red degree " + std::to_string(q.quotient.red_degree(id));
        return r;
      }
    if (rep.verdict == InvariantVerdict::violated_structure) {
      r.verdict = AuditVerdict::witness_lost;
      r.reason = rep.case_label + ": " + rep.detail;
      return r;
    }
    w = *rep.successor;
  }
  r.verdict = AuditVerdict::contradiction_found;
  r.reason = "witness survives to the singleton partition";
  return r;
}

}  // namespace twl::lab
