#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "natdual/natdual.hpp"

namespace natdual::cli {

namespace {

using nlohmann::json;
using namespace natdual::cases;

struct Options {
  std::vector<std::string> inputs;
  std::string ego;
  std::string format = "text";
  int depth = -1;
  std::size_t guard = 0;
  std::string window;
  std::string order;
  // Extension verbs.
  std::string case_name;
  std::string point;
  std::string target;
  std::string map;
  std::string compose;
  std::string localize;
  bool lift = false;
  std::string gamma;
  std::string sets;
  // natext.
  std::string generate;
  // case.
  int m = 0;
  int n = 3;
  std::string kinds = "ab";
  bool no_witness = false;
  std::string lattice;
  // boolean-power.
  int k = 2;
};

struct Output {
  std::string text;
  json data = json::object();
  std::string dot;
  int code = kExitOk;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string yes(bool b) { return b ? "yes" : "no"; }

template <class T, class F>
std::string joined(const std::vector<T>& items, const std::string& sep, F&& fn) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + fn(items[i]);
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + " '" + s + "'");
  }
}

// ---- inputs -------------------------------------------------------------

std::optional<FiniteAlgebra> builtin_algebra(const std::string& name) {
  if (name == "median-2") return median_two();
  if (name == "dl-2") return dl_two();
  if (name.starts_with("median-power-")) return median_power(parse_int(name.substr(13), "power"));
  if (name.starts_with("median-tree-")) return build_median_tree(parse_int(name.substr(12), "tree level"));
  for (auto& e : median_suite())
    if (e.name == name) return e.algebra;
  for (auto& e : dl_suite())
    if (e.name == name) return e.algebra;
  return std::nullopt;
}

FiniteAlgebra load_algebra(const std::string& spec) {
  if (spec.starts_with("@")) {
    if (auto a = builtin_algebra(spec.substr(1))) return *a;
    throw UsageError("unknown built-in algebra '" + spec + "'");
  }
  std::string text = io::read_file(spec);
  if (io::detect_kind(text, spec) == io::DocumentKind::Ego) return io::parse_ego(text, spec).algebra;
  return io::parse_algebra(text, spec);
}

AlterEgo load_ego(const std::string& spec) {
  if (spec == "@median-ego") return median_ego();
  if (spec == "@dl-ego") return dl_ego();
  if (spec.starts_with("@")) throw UsageError("unknown built-in alter ego '" + spec + "'");
  return io::parse_ego(io::read_file(spec), spec);
}

AlterEgo ego_for(const FiniteAlgebra& a, const Options& o) {
  if (!o.ego.empty()) return load_ego(o.ego);
  if (a.signature() == median_signature()) return median_ego();
  if (a.signature() == dl_signature()) return dl_ego();
  throw UsageError("no default alter ego for this signature; pass --ego");
}

const std::string& input(const Options& o, std::size_t i, const std::string& what) {
  if (o.inputs.size() <= i) throw UsageError("missing " + what);
  return o.inputs[i];
}

StructureGuard guard_of(const Options& o) {
  StructureGuard g;
  if (o.guard > 0) g.max_results = o.guard;
  return g;
}

// ---- rendering helpers ----------------------------------------------------

std::string tuple_text(const Tuple& t) {
  if (t.size() == 1) return std::to_string(t[0]);
  return "(" + joined(t, ",", [](Elem e) { return std::to_string(e); }) + ")";
}

std::string values_text(const ValueSet& v) {
  std::vector<Tuple> items(v.begin(), v.end());
  return "{" + joined(items, ",", tuple_text) + "}";
}

std::string window_text(const FiniteTarget& t, const std::vector<int>& w) {
  return "{" + joined(w, ",", [&](int phi) { return t.dual_name(phi); }) + "}";
}

json values_json(const ValueSet& v) {
  json arr = json::array();
  for (const auto& t : v) arr.push_back(t);
  return arr;
}

json window_json(const FiniteTarget& t, const WindowReport& w) {
  json h = json::array();
  for (const auto& [d, vals] : w.history) h.push_back({{"depth", d}, {"values", values_json(vals)}});
  json win = json::array();
  for (int phi : w.window) win.push_back(t.dual_name(phi));
  return {{"point", w.point},         {"window", win},
          {"depth", w.depth},         {"values", values_json(w.values)},
          {"stabilized", w.stabilized}, {"pending_witness", w.pending_witness},
          {"witnesses", w.witnesses}, {"history", h}};
}

std::string map_text(const std::vector<Elem>& m) {
  return "[" + joined(m, " ", [](Elem e) { return std::to_string(e); }) + "]";
}

std::string set_text(const FiniteAlgebra& a, const std::vector<Elem>& s) {
  return "{" + joined(s, ",", [&](Elem e) { return a.label(e); }) + "}";
}

// ---- extension context ------------------------------------------------------

struct Context {
  std::shared_ptr<SourceSpace> space;
  std::shared_ptr<FiniteSource> finite;  // set in finite mode
  FiniteTarget target;
  MapBetweenAlgebras map;
  ProElement point;
  std::vector<int> window;
  int depth = 0;
  std::optional<CaseFunction> case_fn;
};

std::vector<int> parse_window(const FiniteTarget& t, const std::string& s) {
  std::vector<int> out;
  for (const auto& tok : split(s, ',')) {
    if (auto phi = t.find_dual(tok)) {
      out.push_back(*phi);
      continue;
    }
    int v = parse_int(tok, "window entry");
    if (v < 0 || static_cast<std::size_t>(v) >= t.dual.size()) throw UsageError("window entry out of range: " + tok);
    out.push_back(v);
  }
  return out;
}

Context make_context(const Options& o) {
  Context c;
  if (!o.case_name.empty()) {
    auto fn = find_case_function(o.case_name);
    if (!fn) throw UsageError("unknown case function '" + o.case_name + "' (see list-cases)");
    c.case_fn = fn;
    c.space = fn->space;
    c.target = fn->target;
    c.map = fn->map;
    c.depth = o.depth >= 0 ? o.depth : fn->depth;
    const std::string pname = o.point.empty() ? fn->point : o.point;
    auto p = c.space->parse_point(pname);
    if (!p) throw UsageError("unknown point '" + pname + "' for " + fn->name);
    c.point = *p;
    c.window = o.window.empty() ? fn->window : parse_window(c.target, o.window);
    return c;
  }
  FiniteAlgebra a = load_algebra(input(o, 0, "source algebra (or --case)"));
  AlterEgo ego = ego_for(a, o);
  FiniteAlgebra b = o.target.empty() ? ego.algebra : load_algebra(o.target);
  c.finite = std::make_shared<FiniteSource>(a, ego);
  c.space = c.finite;
  c.target = FiniteTarget::make(b, ego.algebra);
  if (o.map.empty()) throw UsageError("finite mode needs --map with one target element per source element");
  std::vector<Elem> table;
  for (const auto& tok : split(o.map, ',')) {
    if (auto e = b.find_label(tok); e && !std::all_of(tok.begin(), tok.end(), ::isdigit)) {
      table.push_back(*e);
      continue;
    }
    int v = parse_int(tok, "map entry");
    if (v < 0 || v >= b.size()) throw UsageError("map entry out of range: " + tok);
    table.push_back(v);
  }
  if (table.size() != static_cast<std::size_t>(a.size()))
    throw UsageError("--map has " + std::to_string(table.size()) + " entries, expected " + std::to_string(a.size()));
  c.map = map_from_table("u", table);
  c.depth = std::max(o.depth, 0);
  auto samples = c.space->sample_points(0);
  if (o.point.empty()) {
    c.point = samples.front();
  } else {
    auto p = c.space->parse_point(o.point);
    if (!p) throw UsageError("unknown point '" + o.point + "'");
    c.point = *p;
  }
  c.window = o.window.empty() ? c.target.all_dual() : parse_window(c.target, o.window);
  return c;
}

TotalOrder order_of(const Options& o, const FiniteAlgebra& m) {
  if (o.order.empty()) return TotalOrder::index_order(m);
  std::vector<Elem> seq;
  for (const auto& tok : split(o.order, ',')) {
    if (auto e = m.find_label(tok)) {
      seq.push_back(*e);
      continue;
    }
    seq.push_back(parse_int(tok, "order entry"));
  }
  return TotalOrder::from_sequence(m, seq);
}

std::vector<std::vector<int>> single_windows(const Context& c) {
  if (c.case_fn) return {c.window};
  std::vector<std::vector<int>> out;
  for (int phi : c.target.all_dual()) out.push_back({phi});
  out.push_back(c.target.all_dual());
  return out;
}

// ---- verbs --------------------------------------------------------------------

Output verb_dual(const Options& o) {
  FiniteAlgebra a = load_algebra(input(o, 0, "algebra"));
  AlterEgo ego = ego_for(a, o);
  auto homs = enumerate_homs(a, ego.algebra);
  DualSpace d = dual_of(a, ego);
  Output out;
  std::ostringstream t;
  t << "|A*| = " << d.points.size() << "\n";
  json pts = json::array();
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    t << "  " << phi_label(static_cast<int>(i)) << " = " << map_text(d.points[i].map) << "\n";
    pts.push_back({{"label", phi_label(static_cast<int>(i))}, {"map", d.points[i].map}});
  }
  const auto& sig = d.structure.signature();
  json rels = json::object();
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    auto tuples = d.structure.relation(r);
    t << sig.relations()[r].name << ": "
      << joined(tuples, " ", [&](const Tuple& tp) {
           return "(" + joined(tp, ",", [&](Elem e) { return d.structure.label(e); }) + ")";
         })
      << "\n";
    rels[sig.relations()[r].name] = tuples;
  }
  json ops = json::object();
  for (std::size_t p = 0; p < sig.operations().size(); ++p) {
    if (sig.operations()[p].arity != 1) continue;
    t << sig.operations()[p].name << ": ";
    for (Elem x = 0; x < d.structure.size(); ++x)
      t << (x ? " " : "") << d.structure.label(x) << "↦"
        << d.structure.label(d.structure.apply(p, std::span<const Elem>(&x, 1)));
    t << "\n";
    ops[sig.operations()[p].name] = d.structure.operation(p);
  }
  json consts = json::object();
  for (std::size_t k = 0; k < sig.constants().size(); ++k) {
    t << "constant " << sig.constants()[k] << " = " << d.structure.label(d.structure.constants()[k]) << "\n";
    consts[sig.constants()[k]] = d.structure.constants()[k];
  }
  out.text = t.str();
  out.data = {{"size", d.points.size()}, {"homs", homs.size()}, {"points", pts},
              {"relations", rels},     {"operations", ops},    {"constants", consts}};
  out.dot = to_dot(d, "dual");
  return out;
}

Output verb_bidual(const Options& o) {
  FiniteAlgebra a = load_algebra(input(o, 0, "algebra"));
  AlterEgo ego = ego_for(a, o);
  DualSpace d = dual_of(a, ego);
  auto morphisms = enumerate_struct_morphisms(d.structure, ego.structure, guard_of(o));
  DualityCertificate cert = check_duality(a, ego);
  Output out;
  std::ostringstream t;
  t << "|𝒳(A*, M~)| = " << morphisms.size() << ", |A| = " << cert.algebra_size << "\n";
  if (cert.holds) {
    t << "duality holds: e_A is a bijection\n";
  } else {
    t << "duality fails\n";
    if (cert.missing) t << "  morphism outside e_A(A): " << map_text(cert.missing->map) << "\n";
    if (cert.collision)
      t << "  e_A identifies " << a.label(cert.collision->first) << " and " << a.label(cert.collision->second) << "\n";
    out.code = kExitCounterexample;
  }
  out.text = t.str();
  out.data = {{"morphisms", morphisms.size()}, {"algebra_size", cert.algebra_size}, {"holds", cert.holds}};
  if (cert.missing) out.data["missing"] = cert.missing->map;
  if (cert.holds) out.data["inverse"] = cert.inverse;
  return out;
}

Output verb_natext(const Options& o) {
  FiniteAlgebra a = load_algebra(input(o, 0, "algebra"));
  AlterEgo ego = ego_for(a, o);
  NaturalExtension ext = natural_extension(a, ego);
  const bool bijective = ext.embedding_injective && ext.points.size() == static_cast<std::size_t>(a.size());
  Output out;
  std::ostringstream t;
  t << "|A^δ| = " << ext.points.size() << ", e_A "
    << (bijective ? "bijective" : ext.embedding_injective ? "injective, not surjective" : "not injective") << "\n";
  for (std::size_t i = 0; i < ext.points.size(); ++i)
    t << "  " << ext.algebra.label(static_cast<Elem>(i)) << " = " << map_text(ext.points[i].map) << "\n";
  json data = {{"size", ext.points.size()},
               {"bijective", bijective},
               {"embedding", ext.embedding},
               {"embedding_homomorphism", ext.embedding_homomorphism}};
  if (!o.generate.empty()) {
    std::vector<Elem> gens;
    for (const auto& tok : split(o.generate, ',')) {
      auto e = ext.algebra.find_label(tok);
      if (!e) throw UsageError("unknown element '" + tok + "' of A^δ");
      gens.push_back(*e);
    }
    Subalgebra sub = subalgebra_generated(ext.algebra, gens);
    t << "generated by " << set_text(ext.algebra, gens) << ": " << set_text(ext.algebra, sub.inclusion) << "\n";
    data["generated"] = sub.inclusion;
  }
  out.text = t.str();
  out.data = data;
  if (!ext.embedding_homomorphism || !ext.embedding_injective) out.code = kExitCounterexample;
  return out;
}

Output verb_basis(const Options& o) {
  FiniteAlgebra a = load_algebra(input(o, 0, "algebra"));
  AlterEgo ego = ego_for(a, o);
  StructureGuard g = guard_of(o);
  DualSpace d = dual_of(a, ego);
  auto closed = closed_substructures(d.structure, g);
  auto partial = enumerate_partial_morphisms(d.structure, ego.structure, g);
  DeltaBasis basis = delta_basis(a, ego, g);
  DeltaBaseReport rep = check_delta_base(a, ego, g);
  Output out;
  std::ostringstream t;
  t << "closed substructures of A*: " << closed.size() << "\n";
  t << "partial morphisms A* ⇀ M~: " << partial.size() << "\n";
  json entries = json::array();
  for (const auto& e : basis.entries) {
    std::string f = joined(e.f.domain, ",", [&](Elem x) {
      return phi_label(x) + "↦" + std::to_string(e.f.map[static_cast<std::size_t>(x)]);
    });
    t << "  O_{" << f << "} = " << set_text(basis.extension.algebra, e.open) << "\n";
    entries.push_back({{"domain", e.f.domain}, {"map", e.f.map}, {"open", e.open}});
  }
  t << "Δ is a base: " << yes(rep.holds) << " (" << rep.pairs << " pairs: " << rep.empty << " disjoint, "
    << rep.union_matches << " via f ∪ g, " << rep.other_matches << " other)\n";
  out.text = t.str();
  out.data = {{"closed_substructures", closed.size()},
              {"partial_morphisms", partial.size()},
              {"basis", entries},
              {"is_base", rep.holds},
              {"pairs", rep.pairs},
              {"disjoint", rep.empty},
              {"union_matches", rep.union_matches},
              {"other_matches", rep.other_matches}};
  if (!rep.holds) out.code = kExitCounterexample;
  return out;
}

Output verb_extend(const Options& o) {
  Context c = make_context(o);
  Output out;
  std::ostringstream t;
  WindowReport w = tilde_u(*c.space, c.target, c.map, c.point, c.window, c.depth);
  t << "ũ(" << c.point.name << ")↾" << window_text(c.target, c.window) << " = " << values_text(w.values) << "  [depth "
    << w.depth << ", " << (w.stabilized ? "stabilized" : "not stabilized") << "]\n";
  for (const auto& [d, vals] : w.history) t << "  slice " << d << ": " << values_text(vals) << "\n";
  for (const auto& name : w.witnesses) t << "  witness: " << name << "\n";
  if (w.pending_witness) t << "  a registered witness is disabled\n";
  json data = {{"map", c.map.name}, {"tilde_u", window_json(c.target, w)}};

  // Basic neighbourhood from the slice alone, without registered witnesses.
  Neighborhood v = Neighborhood::around(*c.space, c.point, c.depth, false);
  try {
    ValueSet img = window_image(*c.space, c.target, c.map, v, c.window, c.depth + WindowOptions{}.pool_margin);
    t << "u(V, F) for V = slice " << c.depth << " neighbourhood: " << values_text(img) << "\n";
    data["slice_image"] = values_json(img);
  } catch (const EmptyAtDepth& e) {
    t << "u(V, F): empty at depth " << e.depth() << "\n";
  }

  if (!o.localize.empty()) {
    auto phis = parse_window(c.target, o.localize);
    for (int phi : phis) {
      Localized loc = localize(c.target, c.map, phi);
      WindowReport lw = point_window(*c.space, loc.target, loc.map, c.point, {loc.identity}, c.depth);
      t << "ũ_" << c.target.dual_name(phi) << "(" << c.point.name << ") = " << values_text(lw.values) << "\n";
      data["localized"][c.target.dual_name(phi)] = values_json(lw.values);
    }
  }
  if (o.lift) {
    auto k = c.space->sample_points(c.depth);
    ValueSet bar = lift_bar_u(*c.space, c.target, c.map, k, c.window, c.depth);
    t << "ū(K)↾" << window_text(c.target, c.window) << " over " << k.size() << " sample points = " << values_text(bar)
      << "\n";
    data["bar_u"] = values_json(bar);
  }
  if (!o.gamma.empty()) {
    if (!c.finite) throw UsageError("--gamma needs a finite source");
    const FiniteAlgebra& ad = c.finite->extension().algebra;
    auto op = ad.signature().find(o.gamma);
    if (!op) throw UsageError("unknown operation '" + o.gamma + "'");
    std::vector<std::set<Elem>> args;
    for (const auto& part : split(o.sets, ';')) {
      std::set<Elem> s;
      for (const auto& tok : split(part, '|')) {
        auto e = ad.find_label(tok);
        if (!e) throw UsageError("unknown element '" + tok + "' of A^δ");
        s.insert(*e);
      }
      args.push_back(std::move(s));
    }
    if (args.size() != static_cast<std::size_t>(ad.signature()[*op].arity))
      throw UsageError("--sets must give one set per argument of " + o.gamma);
    auto img = gamma_lift(ad, *op, args);
    std::vector<Elem> v(img.begin(), img.end());
    t << "g_" << o.gamma << " = " << set_text(ad, v) << "\n";
    data["gamma"] = v;
  }
  out.text = t.str();
  out.data = data;
  return out;
}

Output verb_smooth(const Options& o) {
  Context c = make_context(o);
  auto samples = c.space->sample_points(c.depth);
  auto windows = single_windows(c);
  SmoothReport rep = check_smooth(*c.space, c.target, c.map, samples, windows, c.depth);
  Output out;
  std::ostringstream t;
  json data = {{"map", c.map.name}, {"verdict", to_string(rep.verdict)}, {"depth", rep.depth},
               {"windows_checked", rep.windows_checked}};
  if (rep.verdict == Verdict::Counterexample) {
    const WindowReport& w = *rep.witness;
    t << "NOT SMOOTH; witness: " << w.point << ", window " << window_text(c.target, w.window) << ", values "
      << values_text(w.values) << "\n";
    auto x = c.space->parse_point(w.point);
    SelectionReport sel = no_continuous_selection_demo(*c.space, c.target, c.map, *x, w.window, c.depth);
    json forcing = json::array();
    for (const auto& f : sel.forcing) {
      t << "  choosing " << tuple_text(f.proposed) << " fails at slice " << f.depth << ": " << f.point << " gives "
        << tuple_text(f.value) << "\n";
      forcing.push_back({{"proposed", f.proposed}, {"depth", f.depth}, {"point", f.point}, {"value", f.value}});
    }
    data["witness"] = window_json(c.target, w);
    data["forcing"] = forcing;
    out.code = kExitCounterexample;
  } else if (rep.verdict == Verdict::Inconclusive) {
    const WindowReport& w = *rep.witness;
    t << "INCONCLUSIVE; " << w.point << ", window " << window_text(c.target, w.window) << ", values "
      << values_text(w.values) << " not stabilized at depth " << rep.depth
      << (w.pending_witness ? " (registered witness disabled)" : "") << "\n";
    data["witness"] = window_json(c.target, w);
    out.code = kExitError;
  } else {
    t << "SMOOTH (evidence: " << rep.windows_checked << " windows up to depth " << rep.depth << ")\n";
  }
  out.text = t.str();
  out.data = data;
  return out;
}

Output verb_strong(const Options& o) {
  Context c = make_context(o);
  auto samples = c.space->sample_points(c.depth);
  StrongReport rep = check_strong(*c.space, c.target, c.map, samples, single_windows(c), c.depth);
  Output out;
  std::ostringstream t;
  json data = {{"map", c.map.name}, {"verdict", to_string(rep.verdict)}, {"depth", rep.depth},
               {"windows_checked", rep.windows_checked}};
  if (rep.verdict == Verdict::Counterexample) {
    const WindowReport& w = *rep.window;
    t << "NOT STRONG; witness: " << w.point << ", window " << window_text(c.target, w.window) << ", values "
      << values_text(w.values) << "\n";
    json esc = json::array();
    for (const auto& e : rep.escapes) {
      t << "  slice " << e.depth << ": " << e.point << " gives " << tuple_text(e.value) << "\n";
      esc.push_back({{"depth", e.depth}, {"point", e.point}, {"value", e.value}});
    }
    data["witness"] = window_json(c.target, w);
    data["escapes"] = esc;
    out.code = kExitCounterexample;
  } else {
    t << "STRONG (evidence: " << rep.windows_checked << " windows up to depth " << rep.depth << ")\n";
  }
  if (!o.compose.empty()) {
    std::vector<Elem> v;
    for (const auto& tok : split(o.compose, ',')) {
      int e = parse_int(tok, "--compose entry");
      if (e < 0 || e >= c.target.algebra.size()) throw UsageError("--compose entry out of range: " + tok);
      v.push_back(e);
    }
    CompositionReport comp =
        check_composition(*c.space, c.target, c.map, v, c.target, c.point, c.window, c.depth);
    t << "composition at " << c.point.name << ": (vu)~ = " << values_text(comp.composite)
      << ", v̄(ũ) = " << values_text(comp.lifted) << ", included " << yes(comp.subset) << ", equal "
      << yes(comp.equal) << ", v homomorphism " << yes(comp.outer_is_homomorphism) << "\n";
    data["composition"] = {{"composite", values_json(comp.composite)},
                           {"lifted", values_json(comp.lifted)},
                           {"subset", comp.subset},
                           {"equal", comp.equal},
                           {"outer_is_homomorphism", comp.outer_is_homomorphism}};
    if (!comp.subset || (comp.outer_is_homomorphism && !comp.equal)) out.code = kExitCounterexample;
  }
  out.text = t.str();
  out.data = data;
  return out;
}

Output verb_updown(const Options& o) {
  Context c = make_context(o);
  TotalOrder ord = order_of(o, c.space->m());
  UpDownReport r = upper_lower(*c.space, c.target, c.map, c.point, c.window, c.depth, ord);
  LocalLatticeReport ll = check_local_lattice(c.target, ord);
  APlusReport ap = check_a_plus_membership(*c.space, c.point, ord, std::min(c.depth, 8));
  Output out;
  std::ostringstream t;
  t << "u^∇ = " << tuple_text(r.lower) << ", u^Δ = " << tuple_text(r.upper) << ", ũ window " << values_text(r.values)
    << " over " << window_text(c.target, c.window) << "\n";
  t << "order on M: " << (ord.algebraic ? "algebraic" : "not algebraic") << "\n";
  t << "⋀ũ = u^∇: " << yes(r.meet_agrees) << ", ⋁ũ = u^Δ: " << yes(r.join_agrees)
    << ", sandwich: " << yes(r.sandwich) << (r.stabilized ? "" : " (not stabilized)") << "\n";
  t << "local lattice (" << ll.checks << " checks): " << yes(ll.holds);
  if (!ll.holds) t << ", fails for " << ll.operation << " of " << *ll.b << " and " << *ll.c;
  t << "\n";
  t << "A+ membership of " << c.point.name << " (" << ap.pairs << " pairs): " << yes(ap.holds);
  if (ap.violation) t << ", violated at " << ap.violation->first << " ≤ " << ap.violation->second;
  t << "\n";
  out.text = t.str();
  out.data = {{"lower", r.lower},
              {"upper", r.upper},
              {"values", values_json(r.values)},
              {"meet_agrees", r.meet_agrees},
              {"join_agrees", r.join_agrees},
              {"sandwich", r.sandwich},
              {"stabilized", r.stabilized},
              {"order_algebraic", ord.algebraic},
              {"local_lattice", ll.holds},
              {"a_plus", ap.holds}};
  if (!r.sandwich || !ap.holds) out.code = kExitCounterexample;
  return out;
}

Output verb_product_check(const Options& o) {
  FiniteAlgebra a = load_algebra(input(o, 0, "first algebra"));
  FiniteAlgebra b = load_algebra(input(o, 1, "second algebra"));
  AlterEgo ego = ego_for(a, o);
  Product p = direct_product(a, b);
  ProductTheoremReport pt = check_product_theorem(a, b, ego);
  CongruenceProductReport cp = check_congruence_product(a, b);
  auto cons = all_congruences(p.algebra);
  DualSpace da = dual_of(a, ego);
  DualSpace db = dual_of(b, ego);
  DirectUnion u = direct_union_amalgamated(da.structure, db.structure);
  CoproductReport co = check_coproduct_universal(da.structure, db.structure, ego.structure);
  Output out;
  std::ostringstream t;
  t << "|A×B| = " << p.algebra.size() << ", |A* ⨿ B*| = " << u.structure.size() << "\n";
  t << "(A×B)^δ ≅ A^δ × B^δ: " << yes(pt.extension_iso) << "\n";
  t << "(A×B)* ≅ A* ⨿ B*: " << yes(pt.dual_iso) << "\n";
  t << "verdicts agree: " << yes(pt.agree) << "\n";
  t << "Con(A) × Con(B) ≅ Con(A×B): " << yes(cp.holds) << " (" << cp.left << " × " << cp.right << " vs "
    << cons.size() << ")\n";
  t << "A* ⨿ B* is a coproduct into M~: " << yes(co.holds) << " (" << co.pairs_checked << " pairs)\n";
  out.text = t.str();
  out.data = {{"product_size", p.algebra.size()},
              {"union_size", u.structure.size()},
              {"extension_iso", pt.extension_iso},
              {"dual_iso", pt.dual_iso},
              {"agree", pt.agree},
              {"congruence_product", cp.holds},
              {"congruences", cons.size()},
              {"coproduct", co.holds}};
  if (!pt.extension_iso || !pt.dual_iso || !pt.agree || !cp.holds || !co.holds) out.code = kExitCounterexample;
  return out;
}

struct CoverSweep {
  std::size_t instances = 0;
  std::size_t agree_coordinatewise = 0;
  std::size_t agree_in_algebra = 0;
};

CoverSweep cover_sweep(const FiniteAlgebra& a) {
  std::vector<std::vector<Elem>> lists;
  for (Elem x = 0; x < a.size(); ++x) lists.push_back({x});
  for (Elem x = 0; x < a.size(); ++x)
    for (Elem y = x; y < a.size(); ++y)
      if (x != y) lists.push_back({x, y});
  CoverSweep s;
  for (const auto& as : lists)
    for (const auto& bs : lists) {
      CoverFormulaResult r = check_median_cover_formula(a, as, bs);
      ++s.instances;
      if (r.cover == r.formula_coordinatewise) ++s.agree_coordinatewise;
      if (r.cover == r.formula_in_algebra) ++s.agree_in_algebra;
    }
  return s;
}

Output verb_boolean_power(const Options& o) {
  TernaryBooleanReport r = ternary_boolean_check(o.k);
  Output out;
  std::ostringstream t;
  t << "A = 2^" << r.k << ": |A^δ| = " << r.size << ", full product " << yes(r.full_product) << "\n";
  t << "x^c exists for every x: " << yes(r.complement_exists)
    << "; flipping constant points too gives a morphism: " << yes(r.naive_flip_is_morphism) << "\n";
  t << "(x, z, x^c) = z on " << r.identity_pairs << " pairs: " << yes(r.identity_holds)
    << "; x^c unique: " << yes(r.complement_unique) << "\n";
  t << "B_(A,a) Boolean for all " << r.base_points << " base points: " << yes(r.boolean_algebras) << "\n";
  json data = {{"k", r.k},
               {"size", r.size},
               {"full_product", r.full_product},
               {"complement_exists", r.complement_exists},
               {"naive_flip_is_morphism", r.naive_flip_is_morphism},
               {"identity_holds", r.identity_holds},
               {"complement_unique", r.complement_unique},
               {"boolean_algebras", r.boolean_algebras}};
  if (r.k <= 2) {
    CoverSweep s = cover_sweep(median_power(r.k));
    t << "cover formula on 2^" << r.k << ": " << s.instances << " instances, cover ⇔ formula in 2 under every φ: "
      << s.agree_coordinatewise << ", cover ⇔ formula read in A: " << s.agree_in_algebra << "\n";
    data["cover"] = {{"instances", s.instances},
                     {"agree_coordinatewise", s.agree_coordinatewise},
                     {"agree_in_algebra", s.agree_in_algebra}};
    if (s.agree_coordinatewise != s.instances) out.code = kExitCounterexample;
  }
  if (!r.ok()) out.code = kExitCounterexample;
  out.text = t.str();
  out.data = data;
  return out;
}

// ---- case studies ---------------------------------------------------------------

std::string ideal_set_text(const MedianTreeDual& d, const std::vector<SymPoint>& slice, const ProElement& x) {
  std::vector<SymPoint> in;
  for (const auto& p : slice)
    if (x.rule(p) == 1) in.push_back(p);
  return "{" + joined(in, ", ", [&](const SymPoint& p) { return d.name(p); }) + "}";
}

Output case_median_two(const Options&) {
  AlterEgo ego = median_ego();
  DualSpace d = dual_of(median_two(), ego);
  NaturalExtension ext = natural_extension(median_two(), ego);
  DualityCertificate cert = check_duality(median_two(), ego);
  Output out;
  std::ostringstream t;
  t << "|A*| = " << d.points.size() << "\n";
  for (std::size_t i = 0; i < d.points.size(); ++i)
    t << "  " << phi_label(static_cast<int>(i)) << " = " << map_text(d.points[i].map) << "\n";
  t << "|A^δ| = " << ext.points.size() << ", e_A " << (cert.holds ? "bijective" : "not bijective") << "\n";
  out.text = t.str();
  out.data = {{"dual_size", d.points.size()}, {"extension_size", ext.points.size()}, {"duality", cert.holds}};
  out.dot = to_dot(d, "median2");
  if (!cert.holds) out.code = kExitCounterexample;
  return out;
}

Output case_median_tree(const Options& o) {
  const int n = o.n;
  FiniteAlgebra a = build_median_tree(n);
  MedianTreeDual dual;
  const int level = o.depth >= 0 ? o.depth : n;
  FiniteStructure slice = dual.slice(level);
  SliceReport sr = check_slices(dual, level);
  Output out;
  std::ostringstream t;
  t << "T_" << n << ": " << a.size() << " elements, median axioms hold\n";
  t << "dual slice of level " << level << ": " << slice.size() << " points, nested and •-closed: " << yes(sr.ok())
    << "\n";
  auto le = *slice.signature().find_relation("≤");
  for (Elem x = 0; x < slice.size(); ++x) {
    std::vector<Elem> above;
    for (Elem y = 0; y < slice.size(); ++y)
      if (x != y && slice.holds(le, Tuple{x, y})) above.push_back(y);
    t << "  " << slice.label(x) << " ≤ " << "{" << joined(above, ", ", [&](Elem y) { return slice.label(y); }) << "}\n";
  }
  out.text = t.str();
  out.data = {{"n", n}, {"size", a.size()}, {"slice_level", level}, {"slice_size", slice.size()}, {"slices_ok", sr.ok()}};
  out.dot = to_dot(slice, "median_tree_dual");
  if (!sr.ok()) out.code = kExitCounterexample;
  return out;
}

Output case_median_bidual(const Options& o) {
  const int n = o.n;
  MedianTreeDual dual;
  auto slice = dual.slice_points(n + 1);
  auto points = median_bidual_points(n);
  Output out;
  std::ostringstream t;
  json rows = json::array();
  bool ok = true;
  for (const auto& x : points) {
    t << "e(" << x.name << ") ∩ slice " << n + 1 << " = " << ideal_set_text(dual, slice, x) << "\n";
    rows.push_back({{"point", x.name}, {"set", ideal_set_text(dual, slice, x)}});
  }
  for (std::int64_t i = 0; i <= n; ++i)
    for (const auto& p : slice) {
      ok = ok && (ideal_contains(p, tree_a(i)) ? 0 : 1) == (paper_e_a(i, p) ? 1 : 0);
      ok = ok && (ideal_contains(p, tree_b(i)) ? 0 : 1) == (paper_e_b(i, p) ? 1 : 0);
    }
  t << "e(a_i) = ↓A_{i+1} ∪ ↓A_i• ∪ {B_i} and e(b_i) = ↓B_i• on the slice: " << yes(ok) << "\n";
  out.text = t.str();
  out.data = {{"points", rows}, {"closed_forms_match", ok}};
  if (!ok) out.code = kExitCounterexample;
  return out;
}

Output case_median_infinity(const Options& o) {
  if (o.kinds.size() != 2) throw UsageError("--kinds takes two letters from {a,b}, e.g. ab");
  std::string r = median_triple_with_infinity(o.m, o.n, o.kinds[0], o.kinds[1]);
  Output out;
  out.text = r + "\n";
  out.data = {{"m", o.m}, {"n", o.n}, {"kinds", o.kinds}, {"result", r}};
  return out;
}

Output case_median_u_prime(const Options& o) {
  const int depth = o.depth >= 0 ? o.depth : 8;
  UPrimeReport r = median_u_prime_smoothness(depth, !o.no_witness);
  FiniteTarget target = median_u_target();
  Output out;
  std::ostringstream t;
  t << "u(a_i) = 0, u(b_i) = 1; registered witness " << (r.witness_enabled ? "enabled" : "disabled") << ", depth "
    << r.depth << "\n";
  json wins = json::array();
  for (const auto& w : r.windows) {
    t << "  window at ∞ over " << window_text(target, w.window) << ": " << values_text(w.values)
      << (w.stabilized ? "" : " (not stabilized)") << "\n";
    wins.push_back(window_json(target, w));
  }
  t << "smooth at ∞: " << to_string(r.smooth.verdict) << "\n";
  out.text = t.str();
  out.data = {{"witness_enabled", r.witness_enabled}, {"depth", r.depth}, {"windows", wins},
              {"verdict", to_string(r.smooth.verdict)}};
  if (r.smooth.verdict == Verdict::Counterexample) out.code = kExitCounterexample;
  if (r.smooth.verdict == Verdict::Inconclusive) out.code = kExitError;
  return out;
}

Output case_priestley(const Options& o) {
  std::vector<SuiteEntry> lattices;
  if (o.lattice.empty())
    lattices = dl_suite();
  else
    lattices.push_back({o.lattice, load_algebra(o.lattice)});
  Output out;
  std::ostringstream t;
  json rows = json::array();
  for (const auto& e : lattices) {
    DeltaPrimeReport r = dl_delta_equals_delta_prime(e.algebra);
    t << e.name << ": |L| = " << e.algebra.size() << ", |L*| = " << r.dual_points << ", O_f = [F, -F'] for "
      << r.basis_matched << "/" << r.basis_size << ", intervals as unions " << r.intervals_as_unions << "/"
      << r.intervals << " (" << r.empty_intervals << " empty), δ = δ′: " << yes(r.holds) << "\n";
    rows.push_back({{"name", e.name},
                    {"size", e.algebra.size()},
                    {"basis", r.basis_size},
                    {"basis_matched", r.basis_matched},
                    {"intervals", r.intervals},
                    {"intervals_as_unions", r.intervals_as_unions},
                    {"holds", r.holds}});
    if (!r.holds) out.code = kExitCounterexample;
  }
  out.text = t.str();
  out.data = {{"lattices", rows}};
  return out;
}

const std::map<std::string, std::pair<Output (*)(const Options&), std::string>>& case_table() {
  static const std::map<std::string, std::pair<Output (*)(const Options&), std::string>> table{
      {"median-2", {case_median_two, "dual and natural extension of the two-element median algebra"}},
      {"median-tree", {case_median_tree, "tree algebra T_n (--n) and its dual slice (--depth)"}},
      {"median-bidual", {case_median_bidual, "e(a_i), e(b_i) and ∞ as sets of prime ideals (--n)"}},
      {"median-infinity", {case_median_infinity, "(∞, x_m, y_n) for --m, --n, --kinds"}},
      {"median-u-prime", {case_median_u_prime, "smoothness of u at ∞ (--no-witness to disable the witness)"}},
      {"priestley", {case_priestley, "δ = δ′ on bounded distributive lattices (--lattice, default the suite)"}},
  };
  return table;
}

Output verb_case(const Options& o) {
  const std::string& name = input(o, 0, "case name");
  auto it = case_table().find(name);
  if (it == case_table().end()) throw UsageError("unknown case '" + name + "' (see list-cases)");
  return it->second.first(o);
}

Output verb_list_cases(const Options&) {
  Output out;
  std::ostringstream t;
  json cases = json::array();
  json fns = json::array();
  t << "cases:\n";
  for (const auto& [name, entry] : case_table()) {
    t << "  " << name << ": " << entry.second << "\n";
    cases.push_back({{"name", name}, {"description", entry.second}});
  }
  t << "case functions (--case):\n";
  for (const auto& c : l_case_functions()) {
    t << "  " << c.name << ": " << c.description << "; expected " << to_string(c.expected.smooth) << " for smooth";
    if (c.expected.strong) t << ", " << to_string(*c.expected.strong) << " for strong";
    t << "\n";
    json f = {{"name", c.name}, {"description", c.description}, {"smooth", to_string(c.expected.smooth)},
              {"point", c.point}, {"depth", c.depth}};
    if (c.expected.strong) f["strong"] = to_string(*c.expected.strong);
    fns.push_back(f);
  }
  out.text = t.str();
  out.data = {{"cases", cases}, {"functions", fns}};
  return out;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--depth", o.depth, "Exploration depth");
  sub->add_option("--window", o.window, "Dual points of the target, e.g. φ₀,φ₁ or 0,1");
  sub->add_option("--order", o.order, "Total order on M, least first, e.g. 1,0");
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  sub->add_option("--guard", o.guard, "Bound on enumerated results");
}

void add_inputs(CLI::App* sub, Options& o, const std::string& what) {
  sub->add_option("inputs", o.inputs, what);
  sub->add_option("--ego", o.ego, "Alter ego document or @median-ego / @dl-ego");
}

void add_map_source(CLI::App* sub, Options& o) {
  add_inputs(sub, o, "Source algebra (finite mode)");
  sub->add_option("--case", o.case_name, "Registered case function, see list-cases");
  sub->add_option("--point", o.point, "Point of A^δ");
  sub->add_option("--target", o.target, "Target algebra B (finite mode, default M)");
  sub->add_option("--map", o.map, "u as a table of B elements (finite mode)");
}

}  // namespace

const std::vector<VerbOwnership>& verb_ownership() {
  static const std::vector<VerbOwnership> table{
      {"dual", {"dual_of", "enumerate_homs", "parse_algebra", "parse_structure"}},
      {"bidual", {"check_duality", "enumerate_struct_morphisms"}},
      {"natext", {"natural_extension", "subalgebra_generated"}},
      {"basis", {"delta_basis", "check_delta_base", "closed_substructures", "enumerate_partial_morphisms"}},
      {"extend", {"window_image", "point_window", "tilde_u", "localize", "gamma_lift", "lift_bar_u"}},
      {"smooth", {"check_smooth", "no_continuous_selection_demo"}},
      {"strong", {"check_strong", "check_composition"}},
      {"updown", {"upper_lower", "check_local_lattice", "check_a_plus_membership"}},
      {"product-check",
       {"check_product_theorem", "direct_product", "all_congruences", "direct_union_amalgamated",
        "check_coproduct_universal"}},
      {"boolean-power", {"ternary_boolean_check", "check_median_cover_formula"}},
      {"case",
       {"build_median_tree", "median_bidual_points", "median_triple_with_infinity", "median_u_prime_smoothness",
        "dl_delta_equals_delta_prime"}},
      {"list-cases", {"l_case_functions"}},
  };
  return table;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Natural dualities and natural extensions of finite algebras", "natdual"};
  app.require_subcommand(1);
  Options o;
  std::map<CLI::App*, Output (*)(const Options&)> handlers;
  auto verb = [&](const std::string& name, const std::string& help, Output (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, o);
    handlers[sub] = fn;
    return sub;
  };

  add_inputs(verb("dual", "Dual A* = Hom(A, M) with its induced structure", verb_dual), o, "Algebra");
  add_inputs(verb("bidual", "Check that e_A maps A onto 𝒳(A*, M~)", verb_bidual), o, "Algebra");
  auto* natext = verb("natext", "Natural extension A^δ", verb_natext);
  add_inputs(natext, o, "Algebra");
  natext->add_option("--generate", o.generate, "Labels of A^δ generating a subalgebra");
  add_inputs(verb("basis", "The basis Δ of the δ-topology", verb_basis), o, "Algebra");
  auto* extend = verb("extend", "Windows of the multivalued extension ũ", verb_extend);
  add_map_source(extend, o);
  extend->add_option("--localize", o.localize, "Dual points φ of B for u_φ = φ ∘ u");
  extend->add_flag("--lift", o.lift, "ū over the sample points");
  extend->add_option("--gamma", o.gamma, "Operation of A^δ lifted to closed sets");
  extend->add_option("--sets", o.sets, "Arguments for --gamma, e.g. 0|1;0;1");
  add_map_source(verb("smooth", "Smoothness check", verb_smooth), o);
  auto* strong = verb("strong", "Strongness check", verb_strong);
  add_map_source(strong, o);
  strong->add_option("--compose", o.compose, "Endomap v of B as a table, compared through ũ");
  add_map_source(verb("updown", "Lower and upper extensions u^∇, u^Δ", verb_updown), o);
  add_inputs(verb("product-check", "Product theorem on A × B", verb_product_check), o, "Two algebras");
  verb("boolean-power", "Ternary Boolean check on 2^k and the cover formula", verb_boolean_power)
      ->add_option("--k", o.k, "Exponent k in 1..4");
  auto* cs = verb("case", "Run a named case study", verb_case);
  cs->add_option("inputs", o.inputs, "Case name");
  cs->add_option("--m", o.m, "Index m");
  cs->add_option("--n", o.n, "Index n or tree level");
  cs->add_option("--kinds", o.kinds, "Kinds of the two points, e.g. ab");
  cs->add_flag("--no-witness", o.no_witness, "Disable the registered witness");
  cs->add_option("--lattice", o.lattice, "Lattice for the priestley case");
  verb("list-cases", "List case studies and case functions", verb_list_cases);

  std::vector<std::string> argv_store{"natdual"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Output res = handlers.at(chosen)(o);
    if (o.format == "json") {
      json doc = res.data;
      doc["verb"] = chosen->get_name();
      doc["exit"] = res.code;
      out << doc.dump(2) << "\n";
    } else if (o.format == "dot") {
      if (res.dot.empty()) {
        err << "error: '" << chosen->get_name() << "' has no DOT rendering\n";
        return kExitError;
      }
      out << res.dot;
    } else {
      out << res.text;
    }
    return res.code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
  } catch (const NotAlgebraic& e) {
    err << "alter ego not algebraic: " << e.what() << "\n";
  } catch (const SignatureMismatch& e) {
    err << "signature mismatch: " << e.what() << "\n";
  } catch (const EmptyAtDepth& e) {
    err << "empty at depth " << e.depth() << ": " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitError;
}

}  // namespace natdual::cli
