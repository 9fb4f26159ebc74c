#include "ratg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "ratg/automaton.hpp"
#include "ratg/presburger.hpp"
#include "ratg/semilinear.hpp"
#include "ratg/witnesses.hpp"

namespace ratg::cli {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string spec_text;
  std::string spec_file;
  bool porcelain = false;
  std::vector<std::string> gens;

  std::size_t max_edges = 8;
  bool exact = false;
  std::string expr;
  std::vector<std::string> exprs;
  std::string word;
  std::string target_spec;
  std::vector<std::string> maps;
  std::vector<std::string> kernel;
  std::vector<std::string> section;
  std::optional<std::size_t> image_max;
  std::string formula;
  std::vector<std::string> empty, subset, equal;
  std::string witness;
  std::vector<std::string> params;
};

std::pair<std::string, std::string> split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw UsageError("expected name=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

std::map<std::string, std::string> assignments(const std::vector<std::string>& items) {
  std::map<std::string, std::string> out;
  for (const auto& item : items) {
    auto [k, v] = split_assignment(item);
    out[k] = v;
  }
  return out;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  SpecPtr spec(bool required = true) const {
    std::string text = o_.spec_text;
    if (!o_.spec_file.empty()) {
      std::ifstream in(o_.spec_file);
      if (!in) throw UsageError("cannot read spec file '" + o_.spec_file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
      std::replace(text.begin(), text.end(), '\n', ' ');
    }
    if (text.empty()) {
      if (required) throw UsageError("a group spec is required (--spec or --spec-file)");
      return nullptr;
    }
    return GroupSpec::parse(text);
  }

  Alphabet alphabet(const SpecPtr& s) const {
    Alphabet a(s);
    for (const auto& [name, word] : assignments(o_.gens)) a.alias(name, parse_word(word));
    return a;
  }

  void record(std::string_view kind, const std::string& payload) const {
    if (o_.porcelain) {
      out_ << kind << '\t' << payload << '\n';
    } else {
      out_ << payload << '\n';
    }
  }

  void elements(const ElementSet& set) const {
    for (const auto& g : sorted(set)) record("element", g.render());
    if (!o_.porcelain) out_ << "# " << set.size() << " element" << (set.size() == 1 ? "" : "s") << '\n';
  }

  void automaton(const GroupAutomaton& aut) const {
    const char* sep = o_.porcelain ? "\t" : " ";
    out_ << "states" << sep << aut.state_count() << '\n';
    out_ << "initial" << sep << aut.initial() << '\n';
    out_ << "terminals" << sep;
    for (std::size_t i = 0; i < aut.terminals().size(); ++i) out_ << (i ? " " : "") << aut.terminals()[i];
    out_ << '\n';
    for (const auto& e : aut.edges()) {
      out_ << "edge" << sep << e.source << sep << e.target << sep << e.label.render() << '\n';
    }
  }

  GroupAutomaton compiled(const std::string& expr, const Alphabet& a) const {
    return compile(parse_rat_expr(expr), a);
  }

  SpecPtr free_abelian_spec() const {
    auto s = spec();
    if (s->kind() != GroupKind::free_abelian) throw UsageError("this operation needs kind=free_abelian");
    return s;
  }

  SemilinearSet semilinear_of(const std::string& expr) const {
    const auto s = free_abelian_spec();
    return from_automaton(compiled(expr, alphabet(s)));
  }

  int enumerate_verb() const {
    const auto s = spec();
    elements(enumerate(compiled(o_.expr, alphabet(s)), o_.max_edges));
    return 0;
  }

  int member_verb() const {
    const auto s = spec();
    const auto a = alphabet(s);
    const auto g = a.evaluate(parse_word(o_.word));
    const auto m = member_bounded(compiled(o_.expr, a), g, o_.max_edges);
    record("member", m == Membership::yes ? "yes" : "unknown");
    return 0;
  }

  int intersect_verb() const {
    if (o_.exact) {
      const auto set = intersect(semilinear_of(o_.exprs.at(0)), semilinear_of(o_.exprs.at(1)));
      record("semilinear", set.render());
      return 0;
    }
    const auto s = spec();
    const auto a = alphabet(s);
    elements(intersect_bounded(compiled(o_.exprs.at(0), a), compiled(o_.exprs.at(1), a), o_.max_edges));
    return 0;
  }

  int pump_verb() const {
    const auto s = spec();
    const auto w = pump(compiled(o_.expr, alphabet(s)), o_.max_edges);
    if (!w) {
      record("pump", "none");
      return 0;
    }
    const char* sep = o_.porcelain ? "\t" : " ";
    out_ << "a" << sep << w->a.render() << '\n';
    out_ << "q" << sep << w->q.render() << '\n';
    out_ << "b" << sep << w->b.render() << '\n';
    out_ << "a_normalized" << sep << w->a_normalized.render() << '\n';
    out_ << "q_normalized" << sep << w->q_normalized.render() << '\n';
    out_ << "state" << sep << w->state << '\n';
    out_ << "lengths" << sep << w->prefix_length << ' ' << w->cycle_length << ' ' << w->suffix_length << '\n';
    return 0;
  }

  int gens_verb() const {
    const auto s = spec();
    std::vector<GroupElement> gens = subgroup_generators(compiled(o_.expr, alphabet(s)));
    std::sort(gens.begin(), gens.end(),
              [](const GroupElement& x, const GroupElement& y) { return x.render() < y.render(); });
    for (const auto& g : gens) record("generator", g.render());
    return 0;
  }

  GroupHom hom(const SpecPtr& source, const SpecPtr& target) const {
    if (o_.maps.empty()) throw UsageError("--map name=word is required");
    auto h = GroupHom::from_words(source, Alphabet(target), assignments(o_.maps));
    const auto broken = h.broken_relations();
    if (!broken.empty()) throw std::invalid_argument("map is not a homomorphism: relation " + render_word(broken.front()));
    return h;
  }

  SpecPtr target() const {
    if (o_.target_spec.empty()) throw UsageError("--target spec is required");
    return GroupSpec::parse(o_.target_spec);
  }

  int image_verb() const {
    const auto s = spec();
    const auto t = target();
    const auto result = image(compiled(o_.expr, alphabet(s)), hom(s, t));
    if (o_.image_max) {
      elements(enumerate(result, *o_.image_max));
    } else {
      automaton(result);
    }
    return 0;
  }

  int preimage_verb() const {
    const auto s = spec();
    const auto t = target();
    auto h = hom(s, t);
    const Alphabet source_alphabet = alphabet(s);
    if (!o_.kernel.empty()) {
      std::vector<GroupElement> kernel;
      for (const auto& w : o_.kernel) kernel.push_back(source_alphabet.evaluate(parse_word(w)));
      h.set_kernel(std::move(kernel));
    }
    if (!o_.section.empty()) {
      std::map<std::string, GroupElement> lifts;
      for (const auto& [name, w] : assignments(o_.section)) lifts.emplace(name, source_alphabet.evaluate(parse_word(w)));
      h.set_section(std::move(lifts));
    }
    const auto result = preimage_finite_kernel(compiled(o_.expr, Alphabet(t)), h);
    if (o_.image_max) {
      elements(enumerate(result, *o_.image_max));
    } else {
      automaton(result);
    }
    return 0;
  }

  int semilinear_verb() const {
    record("semilinear", semilinear_of(o_.expr).render());
    return 0;
  }

  int decide_verb() const {
    const int modes = (o_.empty.empty() ? 0 : 1) + (o_.subset.empty() ? 0 : 1) + (o_.equal.empty() ? 0 : 1) +
                      (o_.formula.empty() ? 0 : 1);
    if (modes != 1) throw UsageError("decide takes exactly one of FORMULA, --empty, --subset, --equal");
    const auto start = std::chrono::steady_clock::now();
    bool result = false;
    if (!o_.formula.empty()) {
      result = decide(parse_formula(o_.formula));
    } else if (!o_.empty.empty()) {
      if (o_.empty.size() > 2) throw UsageError("--empty takes one or two expressions");
      auto e = SetExpr::atom(semilinear_of(o_.empty[0]));
      if (o_.empty.size() == 2) e = SetExpr::intersect(e, SetExpr::atom(semilinear_of(o_.empty[1])));
      result = decide_empty(e);
    } else {
      const auto& pair = o_.subset.empty() ? o_.equal : o_.subset;
      if (pair.size() != 2) throw UsageError("--subset and --equal take two expressions");
      const auto a = semilinear_of(pair[0]);
      const auto b = semilinear_of(pair[1]);
      result = o_.subset.empty() ? decide_equal(a, b) : decide_inclusion(a, b);
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    record("decision", result ? "true" : "false");
    err_ << "stats elapsed_ms=" << static_cast<long long>(ms) << '\n';
    return 0;
  }

  int witness_verb() const {
    WitnessConfig cfg;
    cfg.name = o_.witness;
    cfg.spec = spec(false);
    cfg.params = assignments(o_.params);
    cfg.gens = assignments(o_.gens);
    const auto report = run_witness(cfg);
    if (o_.porcelain) {
      for (const auto& [k, v] : report.findings) out_ << "finding\t" << k << '\t' << v << '\n';
      for (const auto& f : report.facts) {
        out_ << "fact\t" << f.id << '\t' << (f.pass ? "pass" : "fail") << '\t' << f.evidence << '\n';
      }
      out_ << "verdict\t" << verdict_name(report.verdict()) << '\n';
    } else {
      out_ << report.render();
    }
    return report.verdict() == Verdict::consistent ? 0 : 2;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Rational subsets of finitely generated groups", "ratg"};
  app.require_subcommand(1, 1);
  app.add_option("--spec", o.spec_text, "group spec, e.g. 'group kind=free_abelian rank=2'");
  app.add_option("--spec-file", o.spec_file, "file containing the group spec");
  app.add_flag("--porcelain", o.porcelain, "stable kind<TAB>payload records");
  app.add_option("--gen", o.gens, "extra generator name=word over the canonical generators")->take_all();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "elements accepted with at most --max edges");
  enumerate_cmd->add_option("expr", o.expr, "rational expression")->required();
  enumerate_cmd->add_option("--max", o.max_edges, "edge bound");

  auto* member_cmd = app.add_subcommand("member", "bounded membership of a word");
  member_cmd->add_option("expr", o.expr, "rational expression")->required();
  member_cmd->add_option("word", o.word, "word over the generators")->required();
  member_cmd->add_option("--max", o.max_edges, "edge bound");

  auto* intersect_cmd = app.add_subcommand("intersect", "bounded or exact intersection");
  intersect_cmd->add_option("exprs", o.exprs, "two rational expressions")->required()->expected(2);
  auto* max_opt = intersect_cmd->add_option("--max", o.max_edges, "edge bound");
  intersect_cmd->add_flag("--exact", o.exact, "exact semilinear intersection (free_abelian)")->excludes(max_opt);

  auto* pump_cmd = app.add_subcommand("pump", "pumping witness");
  pump_cmd->add_option("expr", o.expr, "rational expression")->required();
  pump_cmd->add_option("--max", o.max_edges, "exploration bound");

  auto* gens_cmd = app.add_subcommand("gens", "generators of the generated subgroup");
  gens_cmd->add_option("expr", o.expr, "rational expression")->required();

  for (auto* cmd : {app.add_subcommand("image", "image under a homomorphism"),
                    app.add_subcommand("preimage", "full preimage under a homomorphism with finite kernel")}) {
    cmd->add_option("expr", o.expr, "rational expression")->required();
    cmd->add_option("--target", o.target_spec, "target group spec")->required();
    cmd->add_option("--map", o.maps, "image of a source generator, name=word over the target")->take_all();
    cmd->add_option("--max", o.image_max, "enumerate the result with this edge bound");
    if (cmd->get_name() == "preimage") {
      cmd->add_option("--kernel", o.kernel, "kernel element as a word over the source")->take_all();
      cmd->add_option("--section", o.section, "lift of a target generator, name=word over the source")->take_all();
    }
  }

  auto* semilinear_cmd = app.add_subcommand("semilinear", "semilinear form of the denotation (free_abelian)");
  semilinear_cmd->add_option("expr", o.expr, "rational expression")->required();

  auto* decide_cmd = app.add_subcommand("decide", "decide a Presburger sentence or a set query");
  decide_cmd->add_option("formula", o.formula, "closed formula");
  decide_cmd->add_option("--empty", o.empty, "expression(s) whose (intersection of) denotation is tested for emptiness")
      ->expected(1, 2);
  decide_cmd->add_option("--subset", o.subset, "EXPR1 EXPR2: inclusion")->expected(2);
  decide_cmd->add_option("--equal", o.equal, "EXPR1 EXPR2: equality")->expected(2);

  auto* witness_cmd = app.add_subcommand("witness", "bounded replay of a proof construction");
  witness_cmd->add_option("name", o.witness, "witness name")->required()->check(CLI::IsMember(witness_names()));
  witness_cmd->add_option("--param", o.params, "key=value")->take_all();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  const Runner runner(o, out, err);
  try {
    const std::string verb = app.get_subcommands().front()->get_name();
    if (verb == "enumerate") return runner.enumerate_verb();
    if (verb == "member") return runner.member_verb();
    if (verb == "intersect") return runner.intersect_verb();
    if (verb == "pump") return runner.pump_verb();
    if (verb == "gens") return runner.gens_verb();
    if (verb == "image") return runner.image_verb();
    if (verb == "preimage") return runner.preimage_verb();
    if (verb == "semilinear") return runner.semilinear_verb();
    if (verb == "decide") return runner.decide_verb();
    return runner.witness_verb();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ratg::cli
