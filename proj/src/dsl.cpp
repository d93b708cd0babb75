#include <b0calc/dsl.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>

namespace b0calc {

namespace {

struct Token {
  enum Kind { Ident, Number, Sym, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : s_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (tok_.kind != kind)
      throw SyntaxError("expected " + what + ", got '" + shown() + "'",
                        tok_.line, tok_.col);
    return take();
  }

  void expect_sym(const std::string& sym) {
    if (tok_.kind != Token::Sym || tok_.text != sym)
      throw SyntaxError("expected '" + sym + "', got '" + shown() + "'",
                        tok_.line, tok_.col);
    advance();
  }

  bool at_sym(const std::string& sym) const {
    return tok_.kind == Token::Sym && tok_.text == sym;
  }

 private:
  std::string shown() const {
    return tok_.kind == Token::End ? "end of input" : tok_.text;
  }

  void advance() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (std::isspace((unsigned char)c)) {
        ++col_;
        ++pos_;
      } else if (c == '#') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= s_.size()) {
      tok_ = {Token::End, "", line_, col_};
      return;
    }
    char c = s_[pos_];
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        ++pos_;
      tok_.kind = Token::Ident;
      tok_.text = s_.substr(start, pos_ - start);
    } else if (std::isdigit((unsigned char)c) ||
               (c == '-' && pos_ + 1 < s_.size() &&
                std::isdigit((unsigned char)s_[pos_ + 1]))) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_]))
        ++pos_;
      tok_.kind = Token::Number;
      tok_.text = s_.substr(start, pos_ - start);
    } else {
      tok_.kind = Token::Sym;
      tok_.text = std::string(1, c);
      ++pos_;
    }
    col_ += (int)tok_.text.size();
  }

  std::string s_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

long long parse_number(const Token& t) {
  try {
    return std::stoll(t.text);
  } catch (const std::exception&) {
    throw SyntaxError("number out of range: " + t.text, t.line, t.col);
  }
}

// A word is "1" or a sequence of id / id^exp factors, read up to ';'.
std::vector<std::pair<Token, long long>> parse_word(Lexer& lx) {
  std::vector<std::pair<Token, long long>> factors;
  if (lx.peek().kind == Token::Number && lx.peek().text == "1") {
    lx.take();
    return factors;
  }
  while (lx.peek().kind == Token::Ident) {
    Token id = lx.take();
    long long exp = 1;
    if (lx.at_sym("^")) {
      lx.take();
      exp = parse_number(lx.expect(Token::Number, "exponent"));
    }
    factors.emplace_back(id, exp);
  }
  if (factors.empty())
    throw SyntaxError("expected a word", lx.peek().line, lx.peek().col);
  return factors;
}

}  // namespace

ParsedGroup parse_dsl(const std::string& text) {
  Lexer lx(text);
  Token kw = lx.expect(Token::Ident, "'group'");
  if (kw.text != "group")
    throw SyntaxError("expected 'group'", kw.line, kw.col);
  std::string name = lx.expect(Token::Ident, "group name").text;
  lx.expect_sym("{");

  long long prime = 0;
  std::vector<Token> gens;
  std::vector<Token> central;
  std::vector<std::pair<Token, long long>> orders;
  struct ValueStmt {
    Token a, b;  // b unused for pow
    std::vector<std::pair<Token, long long>> word;
  };
  std::vector<ValueStmt> pows, comms;

  while (!lx.at_sym("}")) {
    Token stmt = lx.expect(Token::Ident, "a statement keyword");
    if (stmt.text == "prime") {
      if (prime != 0)
        throw SyntaxError("duplicate prime statement", stmt.line, stmt.col);
      prime = parse_number(lx.expect(Token::Number, "a prime"));
    } else if (stmt.text == "gens") {
      while (lx.peek().kind == Token::Ident) gens.push_back(lx.take());
    } else if (stmt.text == "central") {
      while (lx.peek().kind == Token::Ident) central.push_back(lx.take());
    } else if (stmt.text == "order") {
      Token id = lx.expect(Token::Ident, "a generator");
      long long q = parse_number(lx.expect(Token::Number, "an order"));
      orders.emplace_back(id, q);
    } else if (stmt.text == "pow") {
      Token id = lx.expect(Token::Ident, "a generator");
      lx.expect_sym("=");
      pows.push_back({id, id, parse_word(lx)});
    } else if (stmt.text == "comm") {
      lx.expect_sym("[");
      Token a = lx.expect(Token::Ident, "a generator");
      lx.expect_sym(",");
      Token b = lx.expect(Token::Ident, "a generator");
      lx.expect_sym("]");
      lx.expect_sym("=");
      comms.push_back({a, b, parse_word(lx)});
    } else {
      throw SyntaxError("unknown statement '" + stmt.text + "'", stmt.line,
                        stmt.col);
    }
    lx.expect_sym(";");
  }
  Token close = lx.take();
  lx.expect(Token::End, "end of input");

  if (prime == 0)
    throw SyntaxError("missing prime statement", close.line, close.col);
  if (gens.empty())
    throw SyntaxError("missing gens statement", close.line, close.col);

  // canonical generator order: noncentral block first, then central
  std::map<std::string, int> declared;
  for (const Token& g : gens) {
    if (declared.count(g.text))
      throw SyntaxError("duplicate generator '" + g.text + "'", g.line, g.col);
    declared[g.text] = -1;
  }
  for (const Token& c : central)
    if (!declared.count(c.text))
      throw SyntaxError("unknown generator '" + c.text + "'", c.line, c.col);
  std::vector<std::string> labels;
  auto is_central = [&](const std::string& l) {
    return std::any_of(central.begin(), central.end(),
                       [&](const Token& c) { return c.text == l; });
  };
  for (const Token& g : gens)
    if (!is_central(g.text)) labels.push_back(g.text);
  size_t noncentral_count = labels.size();
  for (const Token& g : gens)
    if (is_central(g.text)) labels.push_back(g.text);
  for (size_t i = 0; i < labels.size(); ++i) declared[labels[i]] = (int)i;

  std::vector<long long> rel_orders(labels.size(), 0);
  for (const auto& [id, q] : orders) {
    auto it = declared.find(id.text);
    if (it == declared.end())
      throw SyntaxError("unknown generator '" + id.text + "'", id.line,
                        id.col);
    if (q < 2)
      throw SyntaxError("order must be at least 2", id.line, id.col);
    rel_orders[it->second] = q;
  }
  for (size_t i = 0; i < labels.size(); ++i)
    if (rel_orders[i] == 0)
      throw SyntaxError("no order given for generator '" + labels[i] + "'",
                        close.line, close.col);

  ParsedGroup out{name,
                  PcPresentation(prime, labels, noncentral_count, rel_orders)};
  PcPresentation& p = out.pres;

  auto resolve = [&](const Token& id) {
    auto it = declared.find(id.text);
    if (it == declared.end())
      throw SyntaxError("unknown generator '" + id.text + "'", id.line,
                        id.col);
    return (size_t)it->second;
  };
  auto z_vector = [&](const std::vector<std::pair<Token, long long>>& word) {
    std::vector<Int> z(p.zsize(), 0);
    for (const auto& [id, exp] : word) {
      size_t k = resolve(id);
      if (k < p.noncentral)
        throw NotRefined("value references noncentral generator '" + id.text +
                         "'");
      z[k - p.noncentral] += exp;
    }
    return p.normalize_z(z);
  };

  for (const auto& stmt : pows) p.set_power_z(resolve(stmt.a), z_vector(stmt.word));
  for (const auto& stmt : comms) {
    size_t a = resolve(stmt.a), b = resolve(stmt.b);
    if (a >= p.noncentral || b >= p.noncentral)
      throw ClassTooHigh("commutator of central generator '" +
                         (a >= p.noncentral ? stmt.a : stmt.b).text +
                         "' must be trivial");
    std::vector<long long> z = z_vector(stmt.word);
    if (a > b) {
      p.set_comm_z(a, b, z);
    } else {
      std::vector<Int> neg(z.begin(), z.end());
      for (Int& v : neg) v = -v;
      p.set_comm_z(b, a, p.normalize_z(neg));
    }
  }

  p.validate_or_throw();
  return out;
}

namespace {

std::vector<long long> normal_z(const PcPresentation& g,
                                const std::vector<long long>& z) {
  return g.normalize_z(std::vector<Int>(z.begin(), z.end()));
}

std::string format_word(const PcPresentation& g,
                        const std::vector<long long>& z) {
  std::string out;
  for (size_t l = 0; l < z.size(); ++l) {
    if (z[l] == 0) continue;
    if (!out.empty()) out += ' ';
    out += g.gens[g.noncentral + l];
    if (z[l] != 1) out += "^" + std::to_string(z[l]);
  }
  return out.empty() ? "1" : out;
}

}  // namespace

std::string describe_dsl(const PcPresentation& g, const std::string& name) {
  std::ostringstream os;
  os << "group " << name << " {\n";
  os << "  prime " << g.prime << ";\n";
  os << "  gens";
  for (const auto& l : g.gens) os << ' ' << l;
  os << ";\n";
  if (g.zsize() > 0) {
    os << "  central";
    for (size_t i = g.noncentral; i < g.n(); ++i) os << ' ' << g.gens[i];
    os << ";\n";
  }
  for (size_t i = 0; i < g.n(); ++i)
    os << "  order " << g.gens[i] << ' ' << g.orders[i] << ";\n";
  for (size_t i = 0; i < g.n(); ++i) {
    std::vector<long long> z = normal_z(g, g.power_z[i]);
    bool trivial =
        std::all_of(z.begin(), z.end(), [](long long v) { return v == 0; });
    if (!trivial)
      os << "  pow " << g.gens[i] << " = " << format_word(g, z) << ";\n";
  }
  for (size_t i = 0; i + 1 < g.noncentral; ++i)
    for (size_t j = i + 1; j < g.noncentral; ++j) {
      std::vector<long long> z = normal_z(g, g.comm_vec(j, i));
      if (std::all_of(z.begin(), z.end(),
                      [](long long v) { return v == 0; }))
        continue;
      os << "  comm [" << g.gens[j] << ", " << g.gens[i]
         << "] = " << format_word(g, z) << ";\n";
    }
  os << "}\n";
  return os.str();
}

std::string presentation_hash(const PcPresentation& g) {
  // serialize every field in a fixed order, names excluded from values
  std::ostringstream os;
  os << "p=" << g.prime << ";nc=" << g.noncentral << ";orders=";
  for (long long q : g.orders) os << q << ',';
  os << ";gens=";
  for (const auto& l : g.gens) os << l << ',';
  for (size_t i = 0; i < g.n(); ++i) {
    os << ";pow" << i << '=';
    for (long long v : normal_z(g, g.power_z[i])) os << v << ',';
  }
  for (size_t i = 0; i + 1 < g.noncentral; ++i)
    for (size_t j = i + 1; j < g.noncentral; ++j) {
      os << ";comm" << j << ',' << i << '=';
      for (long long v : normal_z(g, g.comm_vec(j, i))) os << v << ',';
    }
  std::uint64_t h = 14695981039346656037ull;
  for (char c : os.str()) {
    h ^= (unsigned char)c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace b0calc
