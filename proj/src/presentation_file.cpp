#include "neron/presentation_file.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace neron {

namespace {

class BlockParser {
 public:
  explicit BlockParser(std::string_view text) : text_(text) {
    // Comments become blanks so that offsets keep their line and column.
    bool in_comment = false;
    for (char& c : text_) {
      if (c == '#') in_comment = true;
      if (c == '\n') in_comment = false;
      if (in_comment) c = ' ';
    }
  }

  /// A bare matrix such as [[u, 0], [0, 1]].
  static GenericMatrix standalone_matrix(std::string_view text) {
    Entry e;
    e.key = "matrix";
    e.value = std::string(text);
    e.value_pos = SourcePos{};
    return matrix(e);
  }

  PresentationFile parse() {
    PresentationFile file;
    std::set<std::string> names;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      SourcePos at = where(pos_);
      std::string kind = identifier("block kind");
      std::string name = identifier("block name");
      if (!names.insert(name).second) fail(at, "duplicate block name '" + name + "'");
      expect('{');
      std::vector<Entry> entries;
      std::set<std::string> keys;
      for (;;) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '}') {
          ++pos_;
          break;
        }
        Entry e;
        e.key_pos = where(pos_);
        e.key = identifier("key");
        expect(':');
        e.value_pos = where(pos_);
        std::size_t start = pos_;
        int depth = 0;
        while (pos_ < text_.size() && !(depth == 0 && text_[pos_] == ';')) {
          char c = text_[pos_];
          if (c == '(' || c == '[') ++depth;
          if (c == ')' || c == ']') --depth;
          if (c == '}' && depth == 0) fail(where(pos_), "missing ';' after value of '" + e.key + "'");
          ++pos_;
        }
        if (pos_ >= text_.size()) fail(e.value_pos, "unterminated value for '" + e.key + "'");
        e.value = std::string(text_.substr(start, pos_ - start));
        ++pos_;
        if (!keys.insert(e.key).second) fail(e.key_pos, "duplicate key '" + e.key + "'");
        entries.push_back(std::move(e));
      }
      if (kind == "group")
        file.groups.push_back(group(name, at, entries));
      else if (kind == "morphism")
        file.morphisms.push_back(morphism(name, at, entries));
      else if (kind == "rep")
        file.reps.push_back(rep(name, at, entries));
      else if (kind == "connection")
        file.connections.push_back(connection(name, at, entries));
      else
        fail(at, "unknown block kind '" + kind + "'");
    }
    for (const auto& m : file.morphisms) {
      for (const auto* ref : {&m.source, &m.target})
        if (!file.find_group(*ref))
          throw Error(ErrorKind::UndefinedName, loc(m.pos) + "morphism " + m.name + " refers to undefined group '" + *ref + "'");
    }
    for (const auto& r : file.reps)
      if (!file.find_group(r.group))
        throw Error(ErrorKind::UndefinedName, loc(r.pos) + "rep " + r.name + " refers to undefined group '" + r.group + "'");
    return file;
  }

 private:
  struct Entry {
    std::string key;
    std::string value;
    SourcePos key_pos, value_pos;
  };

  static std::string loc(SourcePos p) {
    return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": ";
  }

  [[noreturn]] static void fail(SourcePos p, const std::string& what) {
    throw Error(ErrorKind::SyntaxError, loc(p) + what);
  }

  SourcePos where(std::size_t offset) const {
    SourcePos p;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++p.line;
        p.column = 1;
      } else {
        ++p.column;
      }
    }
    return p;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(where(pos_), std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-'))
      ++pos_;
    if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start])))
      fail(where(start), std::string("expected ") + what);
    return std::string(text_.substr(start, pos_ - start));
  }

  // Splits at top-level commas; each piece keeps its starting position.
  static std::vector<std::pair<std::string, SourcePos>> split(const std::string& s, SourcePos origin) {
    std::vector<std::pair<std::string, SourcePos>> out;
    int depth = 0;
    std::size_t start = 0;
    SourcePos cur = origin, piece = origin;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      char c = i < s.size() ? s[i] : ',';
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if (c == ',' && depth == 0) {
        std::string item = s.substr(start, i - start);
        if (item.find_first_not_of(" \t\r\n") != std::string::npos) {
          out.emplace_back(item, piece);
        } else if (i < s.size() || !out.empty()) {
          fail(piece, "empty list item");
        }
        start = i + 1;
      }
      if (i < s.size()) {
        if (s[i] == '\n') {
          ++cur.line;
          cur.column = 1;
        } else {
          ++cur.column;
        }
      }
      if (c == ',' && depth == 0) piece = cur;
    }
    return out;
  }

  static std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
  }

  static std::string name_value(const Entry& e) {
    std::string v = trim(e.value);
    bool ok = !v.empty() && !std::isdigit(static_cast<unsigned char>(v[0]));
    for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-');
    if (!ok) fail(e.value_pos, "expected a name for '" + e.key + "'");
    return v;
  }

  static std::vector<std::string> names(const Entry& e) {
    std::vector<std::string> out;
    for (const auto& [item, p] : split(e.value, e.value_pos)) {
      std::string v = trim(item);
      bool ok = !v.empty() && (std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_');
      for (char c : v) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok) fail(p, "invalid variable name '" + v + "'");
      out.push_back(v);
    }
    return out;
  }

  static std::vector<GenericPoly> polys(const Entry& e) {
    std::vector<GenericPoly> out;
    for (const auto& [item, p] : split(e.value, e.value_pos)) out.push_back(parse_generic(item, p));
    return out;
  }

  static GenericMap mapping(const Entry& e) {
    GenericMap out;
    for (const auto& [item, p] : split(e.value, e.value_pos)) {
      auto arrow = item.find("->");
      if (arrow == std::string::npos) fail(p, "expected 'name -> polynomial'");
      std::string lhs = trim(item.substr(0, arrow));
      bool ok = !lhs.empty() && (std::isalpha(static_cast<unsigned char>(lhs[0])) || lhs[0] == '_');
      for (char c : lhs) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
      if (!ok) fail(p, "invalid variable name '" + lhs + "'");
      SourcePos rhs_pos = p;
      for (std::size_t i = 0; i < arrow + 2; ++i) {
        if (item[i] == '\n') {
          ++rhs_pos.line;
          rhs_pos.column = 1;
        } else {
          ++rhs_pos.column;
        }
      }
      out.emplace_back(lhs, parse_generic(std::string_view(item).substr(arrow + 2), rhs_pos));
    }
    return out;
  }

  static GenericMatrix matrix(const Entry& e) {
    std::string v = trim(e.value);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') fail(e.value_pos, "expected a matrix [[...], ...]");
    std::size_t lead = e.value.find('[');
    SourcePos inner = e.value_pos;
    for (std::size_t i = 0; i <= lead; ++i) {
      if (e.value[i] == '\n') {
        ++inner.line;
        inner.column = 1;
      } else {
        ++inner.column;
      }
    }
    GenericMatrix out;
    for (const auto& [row, p] : split(v.substr(1, v.size() - 2), inner)) {
      std::string r = trim(row);
      if (r.size() < 2 || r.front() != '[' || r.back() != ']') fail(p, "expected a matrix row [...]");
      SourcePos rp = p;
      rp.column += static_cast<int>(row.find('[')) + 1;
      std::vector<GenericPoly> entries;
      for (const auto& [item, ip] : split(r.substr(1, r.size() - 2), rp)) entries.push_back(parse_generic(item, ip));
      out.push_back(std::move(entries));
    }
    if (out.empty()) fail(e.value_pos, "empty matrix");
    for (const auto& row : out)
      if (row.size() != out.size()) fail(e.value_pos, "matrix must be square");
    return out;
  }

  static GroupBlock group(const std::string& name, SourcePos at, const std::vector<Entry>& entries) {
    GroupBlock g;
    g.name = name;
    g.pos = at;
    for (const auto& e : entries) {
      if (e.key == "vars")
        g.vars = names(e);
      else if (e.key == "relations")
        g.relations = polys(e);
      else if (e.key == "comul")
        g.comul = mapping(e);
      else if (e.key == "counit")
        g.counit = mapping(e);
      else if (e.key == "antipode")
        g.antipode = mapping(e);
      else if (e.key == "level") {
        std::string v = trim(e.value);
        if (v.empty() || v.size() > 6 || v.find_first_not_of("0123456789") != std::string::npos)
          fail(e.value_pos, "level must be a non-negative integer");
        g.level = static_cast<unsigned>(std::stoul(v));
      } else {
        fail(e.key_pos, "unknown key '" + e.key + "' in group block");
      }
    }
    return g;
  }

  static MorphismBlock morphism(const std::string& name, SourcePos at, const std::vector<Entry>& entries) {
    MorphismBlock m;
    m.name = name;
    m.pos = at;
    for (const auto& e : entries) {
      if (e.key == "source")
        m.source = name_value(e);
      else if (e.key == "target")
        m.target = name_value(e);
      else if (e.key == "pullback")
        m.pullback = mapping(e);
      else
        fail(e.key_pos, "unknown key '" + e.key + "' in morphism block");
    }
    if (m.source.empty() || m.target.empty()) fail(at, "morphism " + name + " needs source and target");
    return m;
  }

  static RepBlock rep(const std::string& name, SourcePos at, const std::vector<Entry>& entries) {
    RepBlock r;
    r.name = name;
    r.pos = at;
    for (const auto& e : entries) {
      if (e.key == "group")
        r.group = name_value(e);
      else if (e.key == "matrix")
        r.matrix = matrix(e);
      else if (e.key == "det_inverse")
        r.det_inverse = parse_generic(e.value, e.value_pos);
      else
        fail(e.key_pos, "unknown key '" + e.key + "' in rep block");
    }
    if (r.group.empty() || r.matrix.empty()) fail(at, "rep " + name + " needs group and matrix");
    return r;
  }

  static ConnectionBlock connection(const std::string& name, SourcePos at, const std::vector<Entry>& entries) {
    ConnectionBlock c;
    c.name = name;
    c.pos = at;
    for (const auto& e : entries) {
      if (e.key == "base") {
        c.base = name_value(e);
        if (c.base != "affine-line" && c.base != "punctured-line")
          fail(e.value_pos, "base must be affine-line or punctured-line");
      } else if (e.key == "matrix") {
        c.matrix = matrix(e);
      } else {
        fail(e.key_pos, "unknown key '" + e.key + "' in connection block");
      }
    }
    if (c.base.empty() || c.matrix.empty()) fail(at, "connection " + name + " needs base and matrix");
    return c;
  }

  std::string text_;
  std::size_t pos_ = 0;
};

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

std::string map_text(const GenericMap& m) {
  std::vector<std::string> items;
  for (const auto& [n, g] : m) items.push_back(n + " -> " + generic_str(g));
  return join(items);
}

std::string matrix_text(const GenericMatrix& m) {
  std::vector<std::string> rows;
  for (const auto& row : m) {
    std::vector<std::string> entries;
    for (const auto& g : row) entries.push_back(generic_str(g));
    rows.push_back("[" + join(entries) + "]");
  }
  return "[" + join(rows) + "]";
}

template <class T>
const T* find_named(const std::vector<T>& v, const std::string& name) {
  for (const auto& b : v)
    if (b.name == name) return &b;
  return nullptr;
}

std::map<std::string, Poly> to_map(const GenericMap& m, const RingPtr& r, const std::string& what) {
  std::map<std::string, Poly> out;
  for (const auto& [n, g] : m) {
    if (!out.emplace(n, to_poly(g, r)).second)
      throw Error(ErrorKind::SyntaxError, what + " given twice for '" + n + "'");
  }
  return out;
}

}  // namespace

const GroupBlock* PresentationFile::find_group(const std::string& name) const { return find_named(groups, name); }
const MorphismBlock* PresentationFile::find_morphism(const std::string& name) const {
  return find_named(morphisms, name);
}
const RepBlock* PresentationFile::find_rep(const std::string& name) const { return find_named(reps, name); }
const ConnectionBlock* PresentationFile::find_connection(const std::string& name) const {
  return find_named(connections, name);
}

PresentationFile parse_presentation(std::string_view text) {
  return BlockParser(text).parse();
}

PresentationFile load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::UndefinedName, "cannot open file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_presentation(ss.str());
}

std::string print_presentation(const PresentationFile& file) {
  std::ostringstream os;
  for (const auto& g : file.groups) {
    os << "group " << g.name << " {\n";
    os << "  vars: " << join(g.vars) << ";\n";
    std::vector<std::string> rel;
    for (const auto& r : g.relations) rel.push_back(generic_str(r));
    os << "  relations: " << join(rel) << ";\n";
    os << "  comul: " << map_text(g.comul) << ";\n";
    os << "  counit: " << map_text(g.counit) << ";\n";
    os << "  antipode: " << map_text(g.antipode) << ";\n";
    if (g.level) os << "  level: " << *g.level << ";\n";
    os << "}\n";
  }
  for (const auto& m : file.morphisms) {
    os << "morphism " << m.name << " {\n  source: " << m.source << ";\n  target: " << m.target
       << ";\n  pullback: " << map_text(m.pullback) << ";\n}\n";
  }
  for (const auto& r : file.reps) {
    os << "rep " << r.name << " {\n  group: " << r.group << ";\n  matrix: " << matrix_text(r.matrix) << ";\n";
    if (r.det_inverse) os << "  det_inverse: " << generic_str(*r.det_inverse) << ";\n";
    os << "}\n";
  }
  for (const auto& c : file.connections)
    os << "connection " << c.name << " {\n  base: " << c.base << ";\n  matrix: " << matrix_text(c.matrix) << ";\n}\n";
  return os.str();
}

HopfPresentation resolve_group(const PresentationFile& file, const std::string& name) {
  const GroupBlock* g = file.find_group(name);
  if (!g) throw Error(ErrorKind::UndefinedName, "no group named '" + name + "'");
  RingPtr r = make_ring(g->vars);
  RingPtr d = doubled_ring(*r);
  std::vector<Poly> rel;
  for (const auto& p : g->relations) rel.push_back(to_poly(p, r, g->pos));
  return make_hopf(g->name, g->vars, rel, to_map(g->comul, d, "comul"), to_map(g->counit, scalar_ring(), "counit"),
                   to_map(g->antipode, r, "antipode"), g->level);
}

GroupMorphism resolve_morphism(const PresentationFile& file, const std::string& name) {
  const MorphismBlock* m = file.find_morphism(name);
  if (!m) throw Error(ErrorKind::UndefinedName, "no morphism named '" + name + "'");
  HopfPresentation src = resolve_group(file, m->source);
  HopfPresentation tgt = resolve_group(file, m->target);
  return make_morphism(m->name, src, tgt, to_map(m->pullback, src.ring, "pullback"));
}

GenericMatrix parse_matrix(std::string_view text) { return BlockParser::standalone_matrix(text); }

RepMatrix resolve_rep(const PresentationFile& file, const std::string& name) {
  const RepBlock* b = file.find_rep(name);
  if (!b) throw Error(ErrorKind::UndefinedName, "no rep named '" + name + "'");
  HopfPresentation g = resolve_group(file, b->group);
  PolyMatrix m;
  for (const auto& row : b->matrix) {
    std::vector<Poly> r;
    for (const auto& e : row) r.push_back(to_poly(e, g.ring, b->pos));
    m.push_back(std::move(r));
  }
  std::optional<Poly> w;
  if (b->det_inverse) w = to_poly(*b->det_inverse, g.ring, b->pos);
  return make_rep(g, std::move(m), w);
}

Connection resolve_connection(const PresentationFile& file, const std::string& name) {
  const ConnectionBlock* c = file.find_connection(name);
  if (!c) throw Error(ErrorKind::UndefinedName, "no connection named '" + name + "'");
  return make_connection(parse_base(c->base), c->matrix);
}

std::string rep_block_text(const std::string& name, const RepMatrix& v) {
  std::ostringstream os;
  os << "rep " << name << " {\n  group: " << v.group.name << ";\n  matrix: " << matrix_str(v.entries)
     << ";\n  det_inverse: " << v.det_inverse.str() << ";\n}\n";
  return os.str();
}

std::string group_block_text(const HopfPresentation& h) {
  std::ostringstream os;
  os << "group " << h.name << " {\n";
  os << "  vars: " << join(h.vars()) << ";\n";
  std::vector<std::string> rel;
  for (const auto& g : h.relations.generators()) rel.push_back(g.str());
  os << "  relations: " << join(rel) << ";\n";
  std::vector<std::string> c, e, s;
  for (const auto& x : h.vars()) {
    c.push_back(x + " -> " + h.comul.image(x).str());
    e.push_back(x + " -> " + h.counit.image(x).str());
    s.push_back(x + " -> " + h.antipode.image(x).str());
  }
  os << "  comul: " << join(c) << ";\n";
  os << "  counit: " << join(e) << ";\n";
  os << "  antipode: " << join(s) << ";\n";
  if (h.level) os << "  level: " << *h.level << ";\n";
  os << "}\n";
  return os.str();
}

std::string morphism_block_text(const GroupMorphism& m) {
  std::vector<std::string> items;
  for (const auto& y : m.target.vars()) items.push_back(y + " -> " + m.pullback.image(y).str());
  return "morphism " + m.name + " {\n  source: " + m.source.name + ";\n  target: " + m.target.name +
         ";\n  pullback: " + join(items) + ";\n}\n";
}

}  // namespace neron
