#include "natdual/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "natdual/error.hpp"

namespace natdual::io {

namespace {

using nlohmann::json;

class Reader {
 public:
  explicit Reader(std::string_view source) : source_(source) {}

  json parse(std::string_view text) const {
    try {
      return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
      auto [line, col] = locate(text, e.byte);
      throw ParseError(source_ + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
    }
  }

  [[noreturn]] void fail(const std::string& path, const std::string& what) const {
    throw ParseError(source_ + ": " + (path.empty() ? "document" : path) + ": " + what);
  }

  const json& field(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) fail(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(join(path, key), "missing field");
    return *it;
  }

  const json* optional_field(const json& obj, const char* key) const {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  const json& array(const json& j, const std::string& path) const {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
  }

  long long integer(const json& j, const std::string& path, long long lo, long long hi) const {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    long long v = j.get<long long>();
    if (v < lo || v >= hi)
      fail(path, "value " + std::to_string(v) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
    return v;
  }

  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
  }

  // Nested arrays of depth `arity`, each of length `size`, read row-major.
  void table(const json& j, const std::string& path, int arity, int size, std::vector<Elem>& out,
             long long lo) const {
    if (arity == 0) {
      out.push_back(static_cast<Elem>(integer(j, path, lo, size)));
      return;
    }
    array(j, path);
    if (j.size() != static_cast<std::size_t>(size))
      fail(path, "expected " + std::to_string(size) + " entries, found " + std::to_string(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) table(j[i], path + "[" + std::to_string(i) + "]", arity - 1, size, out, lo);
  }

  std::vector<std::string> labels(const json& doc, int size) const {
    const json* l = optional_field(doc, "labels");
    if (!l) return {};
    array(*l, "labels");
    if (l->size() != static_cast<std::size_t>(size)) fail("labels", "expected one label per element");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < l->size(); ++i) out.push_back(string((*l)[i], "labels[" + std::to_string(i) + "]"));
    return out;
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

 private:
  static std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  std::string source_;
};

int read_size(const Reader& r, const json& doc, const std::string& path) {
  return static_cast<int>(r.integer(r.field(doc, path, "size"), Reader::join(path, "size"), 0, 1 << 16));
}

FiniteAlgebra algebra_from(const Reader& r, const json& doc, const std::string& path) {
  const int size = read_size(r, doc, path);
  const std::string sig_path = Reader::join(path, "signature");
  const json& sig = r.array(r.field(doc, path, "signature"), sig_path);
  std::vector<OpSymbol> ops;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    std::string p = sig_path + "[" + std::to_string(i) + "]";
    ops.push_back({r.string(r.field(sig[i], p, "name"), p + ".name"),
                   static_cast<int>(r.integer(r.field(sig[i], p, "arity"), p + ".arity", 0, 9))});
    for (std::size_t j = 0; j < i; ++j)
      if (ops[j].name == ops[i].name) r.fail(p + ".name", "duplicate operation '" + ops[i].name + "'");
  }
  const std::string tables_path = Reader::join(path, "tables");
  const json& tables = r.field(doc, path, "tables");
  if (!tables.is_object()) r.fail(tables_path, "expected an object");
  std::vector<std::vector<Elem>> flat;
  for (const auto& op : ops) {
    auto it = tables.find(op.name);
    if (it == tables.end()) r.fail(tables_path + "." + op.name, "missing table");
    if (ipow(static_cast<std::size_t>(size), op.arity) > (std::size_t{1} << 24))
      r.fail(tables_path + "." + op.name, "table too large");
    std::vector<Elem> t;
    r.table(*it, tables_path + "." + op.name, op.arity, size, t, 0);
    flat.push_back(std::move(t));
  }
  for (auto it = tables.begin(); it != tables.end(); ++it) {
    bool known = false;
    for (const auto& op : ops) known = known || op.name == it.key();
    if (!known) r.fail(tables_path + "." + it.key(), "table for an operation not in the signature");
  }
  auto labels = r.labels(doc, size);
  try {
    return FiniteAlgebra(Signature(std::move(ops)), size, std::move(flat), std::move(labels));
  } catch (const InvalidArgument& e) {
    r.fail(path, e.what());
  }
}

FiniteStructure structure_from(const Reader& r, const json& doc, const std::string& path) {
  const int size = read_size(r, doc, path);
  auto list = [&](const char* key) -> const json* {
    const json* j = r.optional_field(doc, key);
    if (j) r.array(*j, Reader::join(path, key));
    return j;
  };
  std::vector<OpSymbol> rel_syms, op_syms, part_syms;
  std::vector<std::string> const_names;
  std::vector<std::vector<Tuple>> relations;
  std::vector<std::vector<Elem>> operations, partial;
  std::vector<Elem> constants;
  auto symbol = [&](const json& j, const std::string& p) {
    return OpSymbol{r.string(r.field(j, p, "name"), p + ".name"),
                    static_cast<int>(r.integer(r.field(j, p, "arity"), p + ".arity", 0, 9))};
  };

  if (const json* rels = list("relations"))
    for (std::size_t i = 0; i < rels->size(); ++i) {
      std::string p = Reader::join(path, "relations") + "[" + std::to_string(i) + "]";
      OpSymbol sym = symbol((*rels)[i], p);
      const json& tuples = r.array(r.field((*rels)[i], p, "tuples"), p + ".tuples");
      std::vector<Tuple> ts;
      for (std::size_t k = 0; k < tuples.size(); ++k) {
        std::string tp = p + ".tuples[" + std::to_string(k) + "]";
        r.array(tuples[k], tp);
        if (tuples[k].size() != static_cast<std::size_t>(sym.arity)) r.fail(tp, "tuple length differs from arity");
        Tuple t;
        for (std::size_t e = 0; e < tuples[k].size(); ++e)
          t.push_back(static_cast<Elem>(r.integer(tuples[k][e], tp + "[" + std::to_string(e) + "]", 0, size)));
        ts.push_back(std::move(t));
      }
      rel_syms.push_back(std::move(sym));
      relations.push_back(std::move(ts));
    }

  if (const json* ops = list("operations"))
    for (std::size_t i = 0; i < ops->size(); ++i) {
      std::string p = Reader::join(path, "operations") + "[" + std::to_string(i) + "]";
      OpSymbol sym = symbol((*ops)[i], p);
      std::vector<Elem> t;
      r.table(r.field((*ops)[i], p, "table"), p + ".table", sym.arity, size, t, 0);
      op_syms.push_back(std::move(sym));
      operations.push_back(std::move(t));
    }

  if (const json* parts = list("partial_operations"))
    for (std::size_t i = 0; i < parts->size(); ++i) {
      std::string p = Reader::join(path, "partial_operations") + "[" + std::to_string(i) + "]";
      OpSymbol sym = symbol((*parts)[i], p);
      const json& dom = r.array(r.field((*parts)[i], p, "domain"), p + ".domain");
      const json& vals = r.array(r.field((*parts)[i], p, "table"), p + ".table");
      if (dom.size() != vals.size()) r.fail(p + ".table", "expected one value per domain tuple");
      std::vector<Elem> t(ipow(static_cast<std::size_t>(size), sym.arity), -1);
      for (std::size_t k = 0; k < dom.size(); ++k) {
        std::string tp = p + ".domain[" + std::to_string(k) + "]";
        r.array(dom[k], tp);
        if (dom[k].size() != static_cast<std::size_t>(sym.arity)) r.fail(tp, "tuple length differs from arity");
        Tuple args;
        for (std::size_t e = 0; e < dom[k].size(); ++e)
          args.push_back(static_cast<Elem>(r.integer(dom[k][e], tp + "[" + std::to_string(e) + "]", 0, size)));
        t[tuple_index(args, static_cast<std::size_t>(size))] =
            static_cast<Elem>(r.integer(vals[k], p + ".table[" + std::to_string(k) + "]", 0, size));
      }
      part_syms.push_back(std::move(sym));
      partial.push_back(std::move(t));
    }

  if (const json* cs = list("constants"))
    for (std::size_t i = 0; i < cs->size(); ++i) {
      std::string p = Reader::join(path, "constants") + "[" + std::to_string(i) + "]";
      const_names.push_back(r.string(r.field((*cs)[i], p, "name"), p + ".name"));
      constants.push_back(static_cast<Elem>(r.integer(r.field((*cs)[i], p, "value"), p + ".value", 0, size)));
    }

  auto labels = r.labels(doc, size);
  try {
    StructureSignature sig(std::move(rel_syms), std::move(op_syms), std::move(part_syms), std::move(const_names));
    return FiniteStructure(std::move(sig), size, std::move(relations), std::move(operations), std::move(partial),
                           std::move(constants), std::move(labels));
  } catch (const InvalidArgument& e) {
    r.fail(path, e.what());
  }
}

json nested(const std::vector<Elem>& flat, std::size_t& pos, int arity, int size) {
  if (arity == 0) return flat[pos++];
  json arr = json::array();
  for (int i = 0; i < size; ++i) arr.push_back(nested(flat, pos, arity - 1, size));
  return arr;
}

json nested(const std::vector<Elem>& flat, int arity, int size) {
  std::size_t pos = 0;
  return nested(flat, pos, arity, size);
}

json algebra_json(const FiniteAlgebra& a) {
  json doc;
  doc["size"] = a.size();
  json sig = json::array();
  json tables = json::object();
  for (std::size_t i = 0; i < a.signature().size(); ++i) {
    const auto& op = a.signature()[i];
    sig.push_back({{"name", op.name}, {"arity", op.arity}});
    tables[op.name] = nested(a.table(i), op.arity, a.size());
  }
  doc["signature"] = sig;
  doc["tables"] = tables;
  if (a.has_labels()) doc["labels"] = a.labels();
  return doc;
}

json structure_json(const FiniteStructure& s) {
  const auto& sig = s.signature();
  json doc;
  doc["size"] = s.size();
  json rels = json::array();
  for (std::size_t i = 0; i < sig.relations().size(); ++i)
    rels.push_back({{"name", sig.relations()[i].name}, {"arity", sig.relations()[i].arity}, {"tuples", s.relation(i)}});
  json ops = json::array();
  for (std::size_t i = 0; i < sig.operations().size(); ++i)
    ops.push_back({{"name", sig.operations()[i].name},
                   {"arity", sig.operations()[i].arity},
                   {"table", nested(s.operation(i), sig.operations()[i].arity, s.size())}});
  json parts = json::array();
  for (std::size_t i = 0; i < sig.partial_operations().size(); ++i) {
    const int k = sig.partial_operations()[i].arity;
    json dom = json::array();
    json vals = json::array();
    const auto& t = s.partial_operation(i);
    for (std::size_t j = 0; j < t.size(); ++j)
      if (t[j] >= 0) {
        dom.push_back(tuple_at(j, static_cast<std::size_t>(s.size()), k));
        vals.push_back(t[j]);
      }
    parts.push_back({{"name", sig.partial_operations()[i].name}, {"arity", k}, {"domain", dom}, {"table", vals}});
  }
  json cs = json::array();
  for (std::size_t i = 0; i < sig.constants().size(); ++i)
    cs.push_back({{"name", sig.constants()[i]}, {"value", s.constants()[i]}});
  doc["relations"] = rels;
  doc["operations"] = ops;
  doc["partial_operations"] = parts;
  doc["constants"] = cs;
  if (s.has_labels()) doc["labels"] = s.labels();
  return doc;
}

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text, std::string_view source) {
  Reader r(source);
  return algebra_from(r, r.parse(text), "");
}

FiniteStructure parse_structure(std::string_view text, std::string_view source) {
  Reader r(source);
  return structure_from(r, r.parse(text), "");
}

AlterEgo parse_ego(std::string_view text, std::string_view source) {
  Reader r(source);
  json doc = r.parse(text);
  FiniteAlgebra a = algebra_from(r, r.field(doc, "", "algebra"), "algebra");
  FiniteStructure s = structure_from(r, r.field(doc, "", "structure"), "structure");
  if (a.size() != s.size()) r.fail("structure.size", "carrier differs from the algebra's");
  return {std::move(a), std::move(s)};
}

std::string emit_algebra(const FiniteAlgebra& a) { return algebra_json(a).dump(2) + "\n"; }

std::string emit_structure(const FiniteStructure& s) { return structure_json(s).dump(2) + "\n"; }

std::string emit_ego(const AlterEgo& ego) {
  json doc;
  doc["algebra"] = algebra_json(ego.algebra);
  doc["structure"] = structure_json(ego.structure);
  return doc.dump(2) + "\n";
}

DocumentKind detect_kind(std::string_view text, std::string_view source) {
  Reader r(source);
  json doc = r.parse(text);
  if (!doc.is_object()) r.fail("", "expected an object");
  if (doc.contains("algebra") && doc.contains("structure")) return DocumentKind::Ego;
  if (doc.contains("signature")) return DocumentKind::Algebra;
  if (doc.contains("size")) return DocumentKind::Structure;
  r.fail("", "cannot tell whether this is an algebra, a structure or an alter ego");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace natdual::io
