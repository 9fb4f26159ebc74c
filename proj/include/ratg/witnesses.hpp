#pragma once

#include <map>
#include <string>
#include <vector>

#include "ratg/automaton.hpp"
#include "ratg/groups.hpp"

namespace ratg {

enum class Verdict { consistent, violation };

std::string_view verdict_name(Verdict v);

struct WitnessFact {
  std::string id;
  std::string description;
  bool pass = true;
  std::string evidence;
};

struct WitnessReport {
  std::string name;
  std::vector<WitnessFact> facts;
  std::vector<std::string> notes;
  std::map<std::string, std::string> bounds;
  /// Observations that are not pass/fail, e.g. {"repetition", "4"}.
  std::map<std::string, std::string> findings;

  /// violation iff some fact failed.
  [[nodiscard]] Verdict verdict() const;
  [[nodiscard]] const WitnessFact* find(std::string_view id) const;
  /// Human-readable summary followed by `fact <id> pass|fail <evidence>` lines.
  [[nodiscard]] std::string render() const;
};

/// Unset fields take the per-witness defaults listed by witness_names().
struct WitnessConfig {
  std::string name;
  SpecPtr spec;
  /// Bounds and element words, e.g. {"N", "8"}, {"w", "g"}, {"H", "a, t^2"}.
  std::map<std::string, std::string> params;
  /// Extra generator names, each a word over the canonical generators.
  std::map<std::string, std::string> gens;
};

std::vector<std::string> witness_names();
/// Group used when the config has no spec.
SpecPtr default_witness_spec(const std::string& name);

/// Orbit {M^n x} of x under conjugation by h in Z^r x| <h>.
/// Params: x (word in A, default e1), N (default 8).
WitnessReport polycyclic_orbit(const WitnessConfig& cfg);
/// R = (wg)*f* ∩ w*(gf)*, S = R(g* ∪ (g^-1)*) ∩ w*f* and the three-term pumping test.
/// Params: w (default g), g (default z), f (default f), N (default 8).
WitnessReport heisenberg_diagonal(const WitnessConfig& cfg);
/// The sets R1..R4 of the metabelian argument and the equalities that must fail.
/// Params: d (default 38), p (default m+2), N (default 4).
WitnessReport metabelian_r1r4(const WitnessConfig& cfg);
/// Balls of two subgroups and the growth of their intersection.
/// Params: H (default "a, t^2"), K (default "a t"), N (default 6).
WitnessReport lamplighter_howson(const WitnessConfig& cfg);

/// Dispatch on cfg.name.
WitnessReport run_witness(const WitnessConfig& cfg);

/// Elements of word length at most radius over gens and their inverses, with lengths.
std::map<std::size_t, ElementSet> ball_layers(const SpecPtr& spec, const std::vector<GroupElement>& gens,
                                              std::size_t radius);

}  // namespace ratg
