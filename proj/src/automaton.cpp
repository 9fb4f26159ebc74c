#include "ratg/automaton.hpp"

#include <algorithm>
#include <limits>
#include <deque>
#include <set>
#include <tuple>

namespace ratg {

std::vector<GroupElement> sorted(const ElementSet& set) {
  std::vector<std::pair<std::string, const GroupElement*>> keyed;
  keyed.reserve(set.size());
  for (const auto& g : set) keyed.emplace_back(g.render(), &g);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<GroupElement> out;
  out.reserve(keyed.size());
  for (const auto& [key, g] : keyed) out.push_back(*g);
  return out;
}

GroupAutomaton::GroupAutomaton(SpecPtr spec, std::size_t states, std::vector<Edge> edges, std::size_t initial,
                               std::vector<std::size_t> terminals)
    : spec_(std::move(spec)),
      states_(states),
      edges_(std::move(edges)),
      initial_(initial),
      terminals_(std::move(terminals)),
      terminal_flag_(states, false),
      out_(states) {
  if (initial_ >= states_) throw std::invalid_argument("initial state out of range");
  std::sort(terminals_.begin(), terminals_.end());
  terminals_.erase(std::unique(terminals_.begin(), terminals_.end()), terminals_.end());
  for (const auto s : terminals_) {
    if (s >= states_) throw std::invalid_argument("terminal state out of range");
    terminal_flag_[s] = true;
  }
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    if (e.source >= states_ || e.target >= states_) throw std::invalid_argument("edge endpoint out of range");
    if (!same_spec(e.label.spec(), spec_)) throw std::invalid_argument("spec mismatch");
    out_[e.source].push_back(i);
  }
}

std::vector<bool> GroupAutomaton::useful_states() const {
  std::vector<bool> forward(states_, false), backward(states_, false);
  std::vector<std::size_t> stack{initial_};
  forward[initial_] = true;
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    for (const auto i : out_[s]) {
      if (!forward[edges_[i].target]) {
        forward[edges_[i].target] = true;
        stack.push_back(edges_[i].target);
      }
    }
  }
  std::vector<std::vector<std::size_t>> in(states_);
  for (const auto& e : edges_) in[e.target].push_back(e.source);
  for (const auto t : terminals_) {
    backward[t] = true;
    stack.push_back(t);
  }
  while (!stack.empty()) {
    const auto s = stack.back();
    stack.pop_back();
    for (const auto p : in[s]) {
      if (!backward[p]) {
        backward[p] = true;
        stack.push_back(p);
      }
    }
  }
  std::vector<bool> useful(states_);
  for (std::size_t s = 0; s < states_; ++s) useful[s] = forward[s] && backward[s];
  return useful;
}

GroupAutomaton GroupAutomaton::trimmed() const {
  const auto useful = useful_states();
  if (!useful[initial_]) return {spec_, 1, {}, 0, {}};
  std::vector<std::size_t> index(states_, states_);
  std::size_t n = 0;
  for (std::size_t s = 0; s < states_; ++s) {
    if (useful[s]) index[s] = n++;
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (useful[e.source] && useful[e.target]) edges.push_back({index[e.source], e.label, index[e.target]});
  }
  std::vector<std::size_t> terminals;
  for (const auto t : terminals_) {
    if (useful[t]) terminals.push_back(index[t]);
  }
  return {spec_, n, std::move(edges), index[initial_], std::move(terminals)};
}

// ---------------------------------------------------------------------------
// compile

namespace {

struct Glushkov {
  const Alphabet& alphabet;
  std::vector<GroupElement> labels;
  std::set<std::pair<std::size_t, std::size_t>> follow;

  struct Info {
    bool nullable = false;
    std::vector<std::size_t> first, last;
  };

  static std::vector<std::size_t> merge(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
  }

  void link(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
    for (const auto p : from) {
      for (const auto q : to) follow.emplace(p, q);
    }
  }

  Info walk(const RatExprPtr& e) {
    switch (e->kind) {
      case RatExpr::Kind::empty: return {};
      case RatExpr::Kind::singleton: {
        labels.push_back(alphabet.evaluate(e->word));
        const std::size_t p = labels.size() - 1;
        return {false, {p}, {p}};
      }
      case RatExpr::Kind::union_of: {
        const Info a = walk(e->left);
        const Info b = walk(e->right);
        return {a.nullable || b.nullable, merge(a.first, b.first), merge(a.last, b.last)};
      }
      case RatExpr::Kind::concat: {
        const Info a = walk(e->left);
        const Info b = walk(e->right);
        link(a.last, b.first);
        return {a.nullable && b.nullable, a.nullable ? merge(a.first, b.first) : a.first,
                b.nullable ? merge(a.last, b.last) : b.last};
      }
      case RatExpr::Kind::star: {
        Info a = walk(e->left);
        link(a.last, a.first);
        a.nullable = true;
        return a;
      }
    }
    return {};
  }
};

struct Config {
  std::size_t state;
  GroupElement g;
  friend bool operator==(const Config& a, const Config& b) { return a.state == b.state && a.g == b.g; }
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const noexcept { return c.g.hash() * 31 + c.state; }
};

// Breadth-first over (state, label) pairs. visit(config, depth) returns true to stop.
template <class Visit>
void explore(const GroupAutomaton& aut, std::size_t start, const GroupElement& start_label, std::size_t max_edges,
             Visit&& visit) {
  std::unordered_set<Config, ConfigHash> seen;
  std::vector<Config> frontier{{start, start_label}};
  seen.insert(frontier.front());
  for (std::size_t depth = 0;; ++depth) {
    for (const auto& c : frontier) {
      if (visit(c, depth)) return;
    }
    if (depth == max_edges) return;
    std::vector<Config> next;
    for (const auto& c : frontier) {
      for (const auto i : aut.out_edges(c.state)) {
        const auto& e = aut.edges()[i];
        Config n{e.target, mul(c.g, e.label)};
        if (seen.insert(n).second) next.push_back(std::move(n));
      }
    }
    if (next.empty()) return;
    frontier = std::move(next);
  }
}

}  // namespace

GroupAutomaton compile(const RatExprPtr& expr, const Alphabet& alphabet) {
  Glushkov builder{alphabet, {}, {}};
  const auto info = builder.walk(expr);
  std::vector<Edge> edges;
  for (const auto p : info.first) edges.push_back({0, builder.labels[p], p + 1});
  for (const auto& [p, q] : builder.follow) edges.push_back({p + 1, builder.labels[q], q + 1});
  std::vector<std::size_t> terminals;
  if (info.nullable) terminals.push_back(0);
  for (const auto p : info.last) terminals.push_back(p + 1);
  return {alphabet.spec(), builder.labels.size() + 1, std::move(edges), 0, std::move(terminals)};
}

GroupAutomaton compile(const RatExprPtr& expr, const SpecPtr& spec) { return compile(expr, Alphabet(spec)); }

ElementSet enumerate(const GroupAutomaton& aut, std::size_t max_edges) {
  ElementSet out;
  explore(aut, aut.initial(), identity(aut.spec()), max_edges, [&](const Config& c, std::size_t) {
    if (aut.is_terminal(c.state)) out.insert(c.g);
    return false;
  });
  return out;
}

Membership member_bounded(const GroupAutomaton& aut, const GroupElement& g, std::size_t max_edges) {
  if (!same_spec(aut.spec(), g.spec())) throw std::invalid_argument("spec mismatch");
  bool found = false;
  explore(aut, aut.initial(), identity(aut.spec()), max_edges, [&](const Config& c, std::size_t) {
    found = aut.is_terminal(c.state) && c.g == g;
    return found;
  });
  return found ? Membership::yes : Membership::unknown;
}

ElementSet intersect_bounded(const GroupAutomaton& a1, const GroupAutomaton& a2, std::size_t max_edges) {
  if (!same_spec(a1.spec(), a2.spec())) throw std::invalid_argument("spec mismatch");
  const ElementSet left = enumerate(a1, max_edges);
  const ElementSet right = enumerate(a2, max_edges);
  ElementSet out;
  for (const auto& g : left) {
    if (right.count(g)) out.insert(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// pump

std::optional<PumpingWitness> pump(const GroupAutomaton& input, std::size_t max_explore) {
  const GroupAutomaton aut = input.trimmed();
  const std::size_t n = aut.state_count();
  const auto none = std::numeric_limits<std::size_t>::max();
  const auto& spec = aut.spec();

  // Shortest prefixes from the initial state.
  std::vector<std::size_t> dist_in(n, none), parent(n, none);
  std::deque<std::size_t> queue{aut.initial()};
  dist_in[aut.initial()] = 0;
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (const auto i : aut.out_edges(s)) {
      const auto t = aut.edges()[i].target;
      if (dist_in[t] == none) {
        dist_in[t] = dist_in[s] + 1;
        parent[t] = i;
        queue.push_back(t);
      }
    }
  }
  // Shortest suffixes to a terminal.
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t i = 0; i < aut.edges().size(); ++i) in[aut.edges()[i].target].push_back(i);
  std::vector<std::size_t> dist_out(n, none), next(n, none);
  for (const auto t : aut.terminals()) {
    dist_out[t] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (const auto i : in[s]) {
      const auto p = aut.edges()[i].source;
      if (dist_out[p] == none) {
        dist_out[p] = dist_out[s] + 1;
        next[p] = i;
        queue.push_back(p);
      }
    }
  }

  std::optional<PumpingWitness> best;
  auto key = [](const PumpingWitness& w) {
    return std::make_tuple(w.prefix_length + w.cycle_length + w.suffix_length, w.cycle_length, w.state);
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (dist_in[s] == none || dist_out[s] == none) continue;
    if (dist_in[s] > max_explore || dist_out[s] > max_explore) continue;
    std::optional<GroupElement> cycle;
    std::size_t cycle_length = 0;
    explore(aut, s, identity(spec), max_explore, [&](const Config& c, std::size_t depth) {
      if (depth > 0 && c.state == s && has_infinite_order(c.g)) {
        cycle = c.g;
        cycle_length = depth;
        return true;
      }
      return false;
    });
    if (!cycle) continue;
    GroupElement a = identity(spec);
    std::vector<std::size_t> path;
    for (auto v = s; v != aut.initial(); v = aut.edges()[parent[v]].source) path.push_back(parent[v]);
    for (auto it = path.rbegin(); it != path.rend(); ++it) a = mul(a, aut.edges()[*it].label);
    GroupElement b = identity(spec);
    for (auto v = s; !aut.is_terminal(v); v = aut.edges()[next[v]].target) b = mul(b, aut.edges()[next[v]].label);
    // Shift the prefix back along the loop while the shorter word is still accepted,
    // so that a q^0 b is the shortest member of the family.
    const GroupElement q_inv = inv(*cycle);
    for (std::size_t step = 0; step < max_explore; ++step) {
      const GroupElement shorter = mul(a, q_inv);
      if (member_bounded(aut, mul(shorter, b), dist_in[s] + dist_out[s]) != Membership::yes) break;
      a = shorter;
    }
    PumpingWitness w{a, *cycle, b, mul(a, b), conj(*cycle, b), s, dist_in[s], cycle_length, dist_out[s]};
    if (!best || key(w) < key(*best)) best = std::move(w);
  }
  return best;
}

// ---------------------------------------------------------------------------
// subgroup generators

std::vector<GroupElement> subgroup_generators(const GroupAutomaton& input) {
  const GroupAutomaton aut = input.trimmed();
  if (aut.terminals().empty()) return {};
  const auto& spec = aut.spec();
  struct Keyed {
    std::size_t source, target;
    std::string label;
    std::size_t index;
  };
  std::vector<Keyed> order;
  for (std::size_t i = 0; i < aut.edges().size(); ++i) {
    const auto& e = aut.edges()[i];
    order.push_back({e.source, e.target, e.label.render(), i});
  }
  std::sort(order.begin(), order.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.source, a.target, a.label, a.index) < std::tie(b.source, b.target, b.label, b.index);
  });
  std::vector<std::vector<std::size_t>> out(aut.state_count());
  for (const auto& k : order) out[k.source].push_back(k.index);

  std::vector<std::optional<GroupElement>> tree(aut.state_count());
  tree[aut.initial()] = identity(spec);
  std::deque<std::size_t> queue{aut.initial()};
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop_front();
    for (const auto i : out[u]) {
      const auto& e = aut.edges()[i];
      if (!tree[e.target]) {
        tree[e.target] = mul(*tree[u], e.label);
        queue.push_back(e.target);
      }
    }
  }
  ElementSet gens;
  for (const auto& k : order) {
    const auto& e = aut.edges()[k.index];
    auto g = mul(mul(*tree[e.source], e.label), inv(*tree[e.target]));
    if (!g.is_identity()) gens.insert(std::move(g));
  }
  for (const auto t : aut.terminals()) {
    if (!tree[t]->is_identity()) gens.insert(*tree[t]);
  }
  return sorted(gens);
}

// ---------------------------------------------------------------------------
// homomorphisms

namespace {

void complete_images(const SpecPtr& source, std::map<std::string, GroupElement>& images) {
  if (source->kind() == GroupKind::heisenberg && !images.count("z") && images.count("g") && images.count("f")) {
    images.emplace("z", commutator(images.at("g"), images.at("f")));
  }
}

GroupElement map_word(const Word& word, const std::map<std::string, GroupElement>& table, const SpecPtr& target) {
  GroupElement acc = identity(target);
  for (const auto& l : word) {
    const auto it = table.find(l.name);
    if (it == table.end()) throw std::invalid_argument("homomorphism has no image for generator '" + l.name + "'");
    acc = mul(acc, pow(it->second, l.exponent));
  }
  return acc;
}

}  // namespace

GroupHom::GroupHom(SpecPtr source, SpecPtr target, std::map<std::string, GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  complete_images(source_, images_);
  const auto names = source_->canonical_generators();
  for (const auto& [name, value] : images_) {
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("'" + name + "' is not a canonical generator of " + source_->render());
    }
    if (!same_spec(value.spec(), target_)) throw std::invalid_argument("spec mismatch");
  }
  for (const auto& name : names) {
    if (!images_.count(name)) throw std::invalid_argument("homomorphism has no image for generator '" + name + "'");
  }
}

GroupHom GroupHom::from_words(SpecPtr source, const Alphabet& target, const std::map<std::string, std::string>& words) {
  std::map<std::string, GroupElement> images;
  for (const auto& [name, text] : words) images.emplace(name, target.evaluate(parse_word(text)));
  return {std::move(source), target.spec(), std::move(images)};
}

GroupElement GroupHom::apply(const GroupElement& g) const {
  if (!same_spec(g.spec(), source_)) throw std::invalid_argument("spec mismatch");
  return map_word(to_word(g), images_, target_);
}

void GroupHom::set_kernel(std::vector<GroupElement> kernel) {
  ElementSet seen;
  std::vector<GroupElement> listing{identity(source_)};
  seen.insert(listing.front());
  for (auto& k : kernel) {
    if (!apply(k).is_identity()) throw std::invalid_argument("kernel element " + k.render() + " does not map to the identity");
    if (seen.insert(k).second) listing.push_back(std::move(k));
  }
  kernel_ = std::move(listing);
}

void GroupHom::set_section(std::map<std::string, GroupElement> section) {
  complete_images(target_, section);
  for (const auto& name : target_->canonical_generators()) {
    const auto it = section.find(name);
    if (it == section.end()) throw std::invalid_argument("section has no lift for generator '" + name + "'");
    if (!(apply(it->second) == Alphabet(target_).lookup(name))) {
      throw std::invalid_argument("section lift of '" + name + "' does not map back to it");
    }
  }
  section_ = std::move(section);
}

GroupElement GroupHom::lift(const GroupElement& g) const {
  if (!section_) throw std::invalid_argument("finite kernel required");
  return map_word(to_word(g), *section_, source_);
}

std::vector<Word> GroupHom::broken_relations() const {
  std::vector<Word> broken;
  for (const auto& r : defining_relations(*source_)) {
    if (!map_word(r, images_, target_).is_identity()) broken.push_back(r);
  }
  return broken;
}

GroupAutomaton image(const GroupAutomaton& aut, const GroupHom& hom) {
  if (!same_spec(aut.spec(), hom.source())) throw std::invalid_argument("spec mismatch");
  std::vector<Edge> edges;
  for (const auto& e : aut.edges()) edges.push_back({e.source, hom.apply(e.label), e.target});
  return {hom.target(), aut.state_count(), std::move(edges), aut.initial(), aut.terminals()};
}

GroupAutomaton preimage_finite_kernel(const GroupAutomaton& aut, const GroupHom& hom) {
  if (!hom.kernel() || !hom.has_section()) throw std::invalid_argument("finite kernel required");
  if (!same_spec(aut.spec(), hom.target())) throw std::invalid_argument("spec mismatch");
  const std::size_t sink = aut.state_count();
  std::vector<Edge> edges;
  for (const auto& e : aut.edges()) edges.push_back({e.source, hom.lift(e.label), e.target});
  for (const auto t : aut.terminals()) {
    for (const auto& k : *hom.kernel()) edges.push_back({t, k, sink});
  }
  return {hom.source(), sink + 1, std::move(edges), aut.initial(), {sink}};
}

}  // namespace ratg
