#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ratg/groups.hpp"
#include "ratg/rat_expr.hpp"

namespace ratg {

using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

/// Elements ordered by their rendering; the deterministic output order.
std::vector<GroupElement> sorted(const ElementSet& set);

struct Edge {
  std::size_t source;
  GroupElement label;
  std::size_t target;
};

/// Finite automaton with edges labelled by elements of one group.
class GroupAutomaton {
 public:
  GroupAutomaton(SpecPtr spec, std::size_t states, std::vector<Edge> edges, std::size_t initial,
                 std::vector<std::size_t> terminals);

  [[nodiscard]] const SpecPtr& spec() const { return spec_; }
  [[nodiscard]] std::size_t state_count() const { return states_; }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] std::size_t initial() const { return initial_; }
  [[nodiscard]] const std::vector<std::size_t>& terminals() const { return terminals_; }
  [[nodiscard]] bool is_terminal(std::size_t s) const { return terminal_flag_[s]; }
  /// Indices into edges(), in edge order.
  [[nodiscard]] const std::vector<std::size_t>& out_edges(std::size_t s) const { return out_[s]; }

  /// States that are reachable from the initial state and reach a terminal.
  [[nodiscard]] std::vector<bool> useful_states() const;
  /// Copy restricted to useful states (renumbered in order); keeps the initial state.
  [[nodiscard]] GroupAutomaton trimmed() const;

 private:
  SpecPtr spec_;
  std::size_t states_;
  std::vector<Edge> edges_;
  std::size_t initial_;
  std::vector<std::size_t> terminals_;
  std::vector<bool> terminal_flag_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Position automaton of the expression: one state per singleton occurrence plus the
/// initial state, no epsilon edges. Words are evaluated in `alphabet`.
GroupAutomaton compile(const RatExprPtr& expr, const Alphabet& alphabet);
GroupAutomaton compile(const RatExprPtr& expr, const SpecPtr& spec);

/// Labels of accepting paths with at most max_edges edges.
ElementSet enumerate(const GroupAutomaton& aut, std::size_t max_edges);

enum class Membership { yes, unknown };
Membership member_bounded(const GroupAutomaton& aut, const GroupElement& g, std::size_t max_edges);

ElementSet intersect_bounded(const GroupAutomaton& a1, const GroupAutomaton& a2, std::size_t max_edges);

struct PumpingWitness {
  GroupElement a, q, b;
  /// a' = a b, q' = b^-1 q b, b' = 1: a' q'^n = a q^n b.
  GroupElement a_normalized, q_normalized;
  std::size_t state;
  std::size_t prefix_length, cycle_length, suffix_length;
};

/// Accepting path through a closed walk whose label has infinite order, searched with
/// paths and walks of at most max_explore edges.
std::optional<PumpingWitness> pump(const GroupAutomaton& aut, std::size_t max_explore);

/// Generators of the subgroup generated by the accepted set, from a spanning tree.
std::vector<GroupElement> subgroup_generators(const GroupAutomaton& aut);

/// Homomorphism given by images of the canonical generators of the source.
class GroupHom {
 public:
  GroupHom(SpecPtr source, SpecPtr target, std::map<std::string, GroupElement> images);
  /// Images given as words over `target` (for instance `{"h": "e1", "e1": "1"}`).
  static GroupHom from_words(SpecPtr source, const Alphabet& target, const std::map<std::string, std::string>& words);

  [[nodiscard]] const SpecPtr& source() const { return source_; }
  [[nodiscard]] const SpecPtr& target() const { return target_; }
  [[nodiscard]] GroupElement apply(const GroupElement& g) const;

  /// Finite kernel listing; every element must map to the identity.
  void set_kernel(std::vector<GroupElement> kernel);
  /// Lifts of the canonical generators of the target.
  void set_section(std::map<std::string, GroupElement> section);
  [[nodiscard]] const std::optional<std::vector<GroupElement>>& kernel() const { return kernel_; }
  [[nodiscard]] bool has_section() const { return section_.has_value(); }
  /// A preimage of g under this hom, via the section.
  [[nodiscard]] GroupElement lift(const GroupElement& g) const;

  /// Relations of the source whose image is not the identity (empty when well defined).
  [[nodiscard]] std::vector<Word> broken_relations() const;

 private:
  SpecPtr source_, target_;
  std::map<std::string, GroupElement> images_;
  std::optional<std::vector<GroupElement>> kernel_;
  std::optional<std::map<std::string, GroupElement>> section_;
};

GroupAutomaton image(const GroupAutomaton& aut, const GroupHom& hom);
/// Automaton over hom.source() accepting the full preimage; needs kernel and section.
GroupAutomaton preimage_finite_kernel(const GroupAutomaton& aut, const GroupHom& hom);

}  // namespace ratg
