#include "hofib/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace hofib {

namespace {

std::string format_error(SourcePos pos, const std::string& message,
                         const std::vector<std::string>& suggestions) {
  std::string out = std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
  if (!suggestions.empty()) {
    out += " (did you mean ";
    for (std::size_t k = 0; k < suggestions.size(); ++k) {
      if (k) out += ", ";
      out += "'" + suggestions[k] + "'";
    }
    out += "?)";
  }
  return out;
}

std::string where(SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

enum class Kind { Ident, Symbol, End };

struct Token {
  Kind kind = Kind::End;
  std::string text;
  SourcePos pos;
};

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '*';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (ident_char(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Kind::Ident, std::string(text.substr(i, j - i)), pos});
      advance(j - i);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      out.push_back({Kind::Symbol, "->", pos});
      advance(2);
    } else if (std::string_view("{}[](),;:.=").find(c) != std::string_view::npos) {
      out.push_back({Kind::Symbol, std::string(1, c), pos});
      advance(1);
    } else {
      throw ParseError(pos, "unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({Kind::End, "", pos});
  return out;
}

struct FaceExpr {
  std::vector<int> degeneracies;  // outermost first
  std::string name;
  SourcePos pos;
};

class Parser {
 public:
  Parser(std::string_view text, int max_dim) : tokens_(lex(text)) { doc_.max_dim = max_dim; }

  Document run() {
    while (peek().kind != Kind::End) {
      const Token& t = peek();
      if (t.kind == Kind::Ident && t.text == "sset") {
        parse_sset();
      } else if (t.kind == Kind::Ident && t.text == "map") {
        parse_map();
      } else if (t.kind == Kind::Ident && t.text == "monoid") {
        parse_monoid();
      } else if (t.kind == Kind::Ident && t.text == "diagram") {
        parse_diagram();
      } else {
        throw ParseError(t.pos, "expected 'sset', 'map', 'monoid' or 'diagram', found " + show(t));
      }
    }
    return std::move(doc_);
  }

 private:
  std::vector<Token> tokens_;
  std::size_t at_ = 0;
  Document doc_;
  std::map<std::string, SourcePos> seen_[4];

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(at_ + ahead, tokens_.size() - 1)];
  }
  Token next() { return at_ < tokens_.size() - 1 ? tokens_[at_++] : tokens_.back(); }

  static std::string show(const Token& t) {
    return t.kind == Kind::End ? "end of input" : "'" + t.text + "'";
  }

  bool at_symbol(const char* s) const { return peek().kind == Kind::Symbol && peek().text == s; }

  Token expect_symbol(const char* s) {
    if (!at_symbol(s)) throw ParseError(peek().pos, std::string("expected '") + s + "', found " + show(peek()));
    return next();
  }

  Token expect_ident(const char* what) {
    if (peek().kind != Kind::Ident) {
      throw ParseError(peek().pos, std::string("expected ") + what + ", found " + show(peek()));
    }
    return next();
  }

  void expect_keyword(const char* word) {
    if (peek().kind != Kind::Ident || peek().text != word) {
      throw ParseError(peek().pos, std::string("expected '") + word + "', found " + show(peek()));
    }
    next();
  }

  int expect_int(const char* what) {
    const Token t = expect_ident(what);
    if (!std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
        t.text.size() > 6) {
      throw ParseError(t.pos, std::string("expected ") + what + ", found '" + t.text + "'");
    }
    return std::stoi(t.text);
  }

  // Entries each terminated by ';', closed by '}'.  An entry that ends in
  // its own block (mul { ... }) needs no ';'.
  template <typename F>
  void entries(F&& entry) {
    expect_symbol("{");
    while (!at_symbol("}")) {
      entry();
      const bool closed_block = at_ > 0 && tokens_[at_ - 1].text == "}";
      if (at_symbol(";")) {
        next();
      } else if (!closed_block) {
        throw ParseError(peek().pos, "expected ';', found " + show(peek()));
      }
    }
    next();
  }

  void declare(int kind, const Token& name, const char* what) {
    const auto [it, fresh] = seen_[kind].emplace(name.text, name.pos);
    if (!fresh) {
      throw ParseError(name.pos, std::string("duplicate ") + what + " name '" + name.text +
                                     "' (first declared at " + where(it->second) + ")");
    }
  }

  template <typename Decl>
  const Decl& resolve(const std::vector<Decl>& decls, const Token& name, const char* what) {
    for (const Decl& d : decls) {
      if (d.name == name.text) return d;
    }
    std::vector<std::string> names;
    for (const Decl& d : decls) names.push_back(d.name);
    throw ParseError(name.pos, std::string("unknown ") + what + " '" + name.text + "'",
                     suggest(name.text, names));
  }

  static bool is_degeneracy(const std::string& s) {
    return s.size() > 1 && s[0] == 's' &&
           std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  }

  FaceExpr parse_face() {
    FaceExpr f;
    while (peek().kind == Kind::Ident && is_degeneracy(peek().text) && peek(1).kind == Kind::Ident) {
      f.degeneracies.push_back(std::stoi(next().text.substr(1)));
    }
    const Token name = expect_ident("a simplex name");
    f.name = name.text;
    f.pos = name.pos;
    return f;
  }

  static SimplexRef evaluate(const SimplicialSet& x, const FaceExpr& f, const std::string& space) {
    const auto g = x.find(f.name);
    if (!g) {
      std::vector<std::string> names;
      for (int d = 0; d <= x.max_dim(); ++d) {
        for (GenId h : x.generators(d)) names.push_back(x.label(h));
      }
      throw ParseError(f.pos, "unknown simplex '" + f.name + "' in " + space, suggest(f.name, names));
    }
    SimplexRef s = nondegenerate(*g);
    for (auto it = f.degeneracies.rbegin(); it != f.degeneracies.rend(); ++it) {
      if (*it > s.dim()) {
        throw ParseError(f.pos, "s" + std::to_string(*it) + " does not apply to a " +
                                    std::to_string(s.dim()) + "-simplex");
      }
      if (s.dim() + 1 > x.max_dim()) throw ParseError(f.pos, "degeneracy exceeds the truncation");
      s = x.degeneracy(s, *it);
    }
    return s;
  }

  void parse_sset() {
    next();
    const Token name = expect_ident("an sset name");
    declare(0, name, "sset");
    struct Entry {
      Token name;
      int dim;
      std::vector<FaceExpr> faces;
    };
    std::vector<Entry> simplices;
    entries([&] {
      Entry e{expect_ident("a simplex name"), 0, {}};
      expect_symbol(":");
      expect_keyword("dim");
      e.dim = expect_int("a dimension");
      if (peek().kind == Kind::Ident && peek().text == "faces") {
        next();
        expect_symbol("[");
        if (!at_symbol("]")) {
          e.faces.push_back(parse_face());
          while (at_symbol(",")) {
            next();
            e.faces.push_back(parse_face());
          }
        }
        expect_symbol("]");
      }
      if (e.dim > 0 && static_cast<int>(e.faces.size()) != e.dim + 1) {
        throw ParseError(e.name.pos, "a " + std::to_string(e.dim) + "-simplex needs " +
                                         std::to_string(e.dim + 1) + " faces, found " +
                                         std::to_string(e.faces.size()));
      }
      if (e.dim == 0 && !e.faces.empty()) throw ParseError(e.name.pos, "a vertex has no faces");
      simplices.push_back(std::move(e));
    });

    int top = 0;
    std::map<std::string, SourcePos> names;
    for (const Entry& e : simplices) {
      top = std::max(top, e.dim);
      const auto [it, fresh] = names.emplace(e.name.text, e.name.pos);
      if (!fresh) {
        throw ParseError(e.name.pos, "duplicate simplex '" + e.name.text + "' (first declared at " +
                                         where(it->second) + ")");
      }
    }
    auto space = std::make_shared<SimplicialSet>(std::max(top, doc_.max_dim));
    std::map<GenId, SourcePos> positions;
    for (int d = 0; d <= top; ++d) {
      for (const Entry& e : simplices) {
        if (e.dim != d) continue;
        std::vector<SimplexRef> faces;
        for (const FaceExpr& f : e.faces) {
          const auto declared = std::find_if(simplices.begin(), simplices.end(),
                                             [&](const Entry& o) { return o.name.text == f.name; });
          if (declared != simplices.end() &&
              declared->dim + static_cast<int>(f.degeneracies.size()) != d - 1) {
            throw ParseError(f.pos, "face of a " + std::to_string(d) + "-simplex must have dimension " +
                                        std::to_string(d - 1) + ", found " +
                                        std::to_string(declared->dim + f.degeneracies.size()));
          }
          SimplexRef s = evaluate(*space, f, name.text);
          if (s.dim() != d - 1) {
            throw ParseError(f.pos, "face of a " + std::to_string(d) + "-simplex must have dimension " +
                                        std::to_string(d - 1) + ", found " + std::to_string(s.dim()));
          }
          faces.push_back(std::move(s));
        }
        positions[space->add(e.name.text, std::move(faces))] = e.name.pos;
      }
    }
    const auto problems = validate(*space);
    if (!problems.empty()) {
      const auto it = positions.find(problems.front().generator);
      throw ParseError(it == positions.end() ? name.pos : it->second,
                       "sset '" + name.text + "': " + problems.front().message);
    }
    doc_.ssets.push_back({name.text, name.pos, space});
  }

  void parse_map() {
    next();
    const Token name = expect_ident("a map name");
    declare(1, name, "map");
    expect_symbol(":");
    const Token src = expect_ident("a source sset");
    expect_symbol("->");
    const Token dst = expect_ident("a target sset");
    const SSetPtr source = resolve(doc_.ssets, src, "sset").space;
    const SSetPtr target = resolve(doc_.ssets, dst, "sset").space;
    SimplicialMap m(source, target);
    entries([&] {
      const Token from = expect_ident("a simplex name");
      expect_symbol("->");
      const FaceExpr to = parse_face();
      const auto g = source->find(from.text);
      if (!g) {
        std::vector<std::string> names;
        for (int d = 0; d <= source->max_dim(); ++d) {
          for (GenId h : source->generators(d)) names.push_back(source->label(h));
        }
        throw ParseError(from.pos, "unknown simplex '" + from.text + "' in " + src.text,
                         suggest(from.text, names));
      }
      if (m.is_set(*g)) throw ParseError(from.pos, "simplex '" + from.text + "' is mapped twice");
      const SimplexRef image = evaluate(*target, to, dst.text);
      if (image.dim() != g->dim) {
        throw ParseError(to.pos, "image of a " + std::to_string(g->dim) + "-simplex must have dimension " +
                                     std::to_string(g->dim) + ", found " + std::to_string(image.dim()));
      }
      m.set(*g, image);
    });
    for (int d = 0; d <= source->max_dim(); ++d) {
      for (GenId g : source->generators(d)) {
        if (!m.is_set(g)) {
          throw ParseError(name.pos, "map '" + name.text + "' does not assign '" + source->label(g) + "'");
        }
      }
    }
    const auto problems = validate(m);
    if (!problems.empty()) {
      throw ParseError(name.pos, "map '" + name.text + "' is not simplicial at '" +
                                     source->label(problems.front().generator) +
                                     "': " + problems.front().message);
    }
    doc_.maps.push_back({name.text, name.pos, src.text, dst.text, std::move(m)});
  }

  void parse_monoid() {
    next();
    const Token name = expect_ident("a monoid name");
    declare(2, name, "monoid");
    Monoid m;
    m.name = name.text;
    std::optional<Token> unit;
    struct Product {
      Token a, b, c;
    };
    std::vector<Product> products;
    bool have_elements = false;
    entries([&] {
      const Token key = expect_ident("'elements', 'unit' or 'mul'");
      if (key.text == "elements") {
        if (have_elements) throw ParseError(key.pos, "elements are declared twice");
        have_elements = true;
        std::map<std::string, SourcePos> names;
        do {
          if (!m.elements.empty()) next();
          const Token e = expect_ident("an element name");
          const auto [it, fresh] = names.emplace(e.text, e.pos);
          if (!fresh) {
            throw ParseError(e.pos, "duplicate element '" + e.text + "' (first declared at " +
                                        where(it->second) + ")");
          }
          m.elements.push_back(e.text);
        } while (at_symbol(","));
      } else if (key.text == "unit") {
        if (unit) throw ParseError(key.pos, "unit is declared twice");
        unit = expect_ident("an element name");
      } else if (key.text == "mul") {
        entries([&] {
          Product p{expect_ident("an element name"), {}, {}};
          expect_symbol(".");
          p.b = expect_ident("an element name");
          expect_symbol("=");
          p.c = expect_ident("an element name");
          products.push_back(std::move(p));
        });
      } else {
        throw ParseError(key.pos, "expected 'elements', 'unit' or 'mul', found '" + key.text + "'",
                         suggest(key.text, {"elements", "unit", "mul"}));
      }
    });
    if (!have_elements) throw ParseError(name.pos, "monoid '" + name.text + "' declares no elements");
    if (!unit) throw ParseError(name.pos, "monoid '" + name.text + "' declares no unit");
    auto element = [&](const Token& t) {
      const auto it = std::find(m.elements.begin(), m.elements.end(), t.text);
      if (it == m.elements.end()) {
        throw ParseError(t.pos, "unknown element '" + t.text + "'", suggest(t.text, m.elements));
      }
      return static_cast<int>(it - m.elements.begin());
    };
    const int n = m.size();
    m.unit = element(*unit);
    m.table.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a) {
      m.table[m.unit][a] = a;
      m.table[a][m.unit] = a;
    }
    std::set<std::pair<int, int>> given;
    for (const Product& p : products) {
      const int a = element(p.a);
      const int b = element(p.b);
      const int c = element(p.c);
      if (!given.insert({a, b}).second) {
        throw ParseError(p.a.pos, "product " + p.a.text + "." + p.b.text + " is given twice");
      }
      if (m.table[a][b] >= 0 && m.table[a][b] != c) {
        throw ParseError(p.c.pos, "product " + p.a.text + "." + p.b.text + " contradicts the unit");
      }
      m.table[a][b] = c;
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (m.table[a][b] < 0) {
          throw ParseError(name.pos, "monoid '" + name.text + "' has no product " + m.elements[a] +
                                         "." + m.elements[b]);
        }
      }
    }
    const auto problems = validate(m);
    if (!problems.empty()) throw ParseError(name.pos, "monoid '" + name.text + "': " + problems.front());
    doc_.monoids.push_back({name.text, name.pos, std::move(m)});
  }

  void parse_diagram() {
    next();
    const Token name = expect_ident("a diagram name");
    declare(3, name, "diagram");
    expect_keyword("over");
    const Token over = expect_ident("a monoid name");
    const Monoid& monoid = resolve(doc_.monoids, over, "monoid").monoid;
    DiagramDecl d{name.text, name.pos, over.text, {nullptr}, {}};
    std::optional<SourcePos> value_pos;
    struct Act {
      Token element, map;
    };
    std::vector<Act> acts;
    auto object = [&](const Token& t) {
      if (t.text != "*") throw ParseError(t.pos, "unknown object '" + t.text + "'", {"*"});
    };
    entries([&] {
      const Token key = expect_ident("'F' or 'act'");
      if (key.text == "F") {
        expect_symbol("(");
        object(expect_ident("an object"));
        expect_symbol(")");
        expect_symbol("=");
        const Token value = expect_ident("an sset name");
        if (value_pos) throw ParseError(key.pos, "F(*) is assigned twice");
        value_pos = key.pos;
        d.values[0] = resolve(doc_.ssets, value, "sset").space;
      } else if (key.text == "act") {
        expect_symbol("(");
        object(expect_ident("an object"));
        expect_symbol(",");
        object(expect_ident("an object"));
        expect_symbol(")");
        expect_symbol(":");
        Act a{expect_ident("a monoid element"), {}};
        expect_symbol("->");
        a.map = expect_ident("a map name");
        acts.push_back(std::move(a));
      } else {
        throw ParseError(key.pos, "expected 'F' or 'act', found '" + key.text + "'",
                         suggest(key.text, {"F", "act"}));
      }
    });
    if (!value_pos) throw ParseError(name.pos, "diagram '" + name.text + "' does not assign F(*)");
    for (const Act& a : acts) {
      const auto it = std::find(monoid.elements.begin(), monoid.elements.end(), a.element.text);
      if (it == monoid.elements.end()) {
        throw ParseError(a.element.pos, "unknown element '" + a.element.text + "'",
                         suggest(a.element.text, monoid.elements));
      }
      const GenId f{0, static_cast<int>(it - monoid.elements.begin())};
      const MapDecl& m = resolve(doc_.maps, a.map, "map");
      if (m.map.source() != d.values[0] || m.map.target() != d.values[0]) {
        throw ParseError(a.map.pos, "map '" + m.name + "' is not an endomorphism of F(*)");
      }
      if (!d.actions.emplace(std::tuple{0, 0, f}, m.map).second) {
        throw ParseError(a.element.pos, "element '" + a.element.text + "' acts twice");
      }
    }
    d.actions.emplace(std::tuple{0, 0, GenId{0, monoid.unit}}, SimplicialMap::identity(d.values[0]));
    for (int e = 0; e < monoid.size(); ++e) {
      if (!d.actions.count({0, 0, GenId{0, e}})) {
        throw ParseError(name.pos, "diagram '" + name.text + "' gives no action of '" +
                                       monoid.elements[e] + "'");
      }
    }
    doc_.diagrams.push_back(std::move(d));
    const auto problems = validate(doc_.diagram(doc_.diagrams.back()));
    if (!problems.empty()) {
      throw ParseError(name.pos, "diagram '" + name.text + "': " + problems.front());
    }
  }
};

int edit_distance(std::string_view a, std::string_view b) {
  std::vector<int> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    int diagonal = row[0];
    row[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = up;
    }
  }
  return row[b.size()];
}

template <typename Decl>
const Decl* find_named(const std::vector<Decl>& decls, std::string_view name) {
  for (const Decl& d : decls) {
    if (d.name == name) return &d;
  }
  return nullptr;
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string message, std::vector<std::string> suggestions)
    : Error(format_error(pos, message, suggestions)),
      pos_(pos),
      message_(std::move(message)),
      suggestions_(std::move(suggestions)) {}

const SsetDecl* Document::find_sset(std::string_view name) const { return find_named(ssets, name); }
const MapDecl* Document::find_map(std::string_view name) const { return find_named(maps, name); }
const MonoidDecl* Document::find_monoid(std::string_view name) const {
  return find_named(monoids, name);
}
const DiagramDecl* Document::find_diagram(std::string_view name) const {
  return find_named(diagrams, name);
}

std::vector<std::string> Document::names() const {
  std::vector<std::string> out;
  for (const auto& d : ssets) out.push_back(d.name);
  for (const auto& d : maps) out.push_back(d.name);
  for (const auto& d : monoids) out.push_back(d.name);
  for (const auto& d : diagrams) out.push_back(d.name);
  return out;
}

Diagram Document::diagram(const DiagramDecl& d) const {
  const MonoidDecl* m = find_monoid(d.over);
  if (!m) throw PreconditionError("unknown monoid '" + d.over + "'");
  return diagram_from_maps(from_monoid(m->monoid, max_dim), d.values, d.actions);
}

Document parse(std::string_view text, int max_dim) {
  if (max_dim < 1) throw RangeError("truncation must be at least 1");
  return Parser(text, max_dim).run();
}

Document parse_file(const std::string& path, int max_dim) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), max_dim);
}

std::vector<std::string> suggest(std::string_view name, const std::vector<std::string>& candidates) {
  std::vector<std::pair<int, std::string>> close;
  for (const auto& c : candidates) {
    const int d = edit_distance(name, c);
    if (d <= 2 && c != name) close.emplace_back(d, c);
  }
  std::sort(close.begin(), close.end());
  std::vector<std::string> out;
  for (std::size_t k = 0; k < close.size() && k < 3; ++k) out.push_back(close[k].second);
  return out;
}

}  // namespace hofib
