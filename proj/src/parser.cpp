#include "nil2/parser.hpp"

#include <algorithm>
#include <cctype>

#include "nil2/errors.hpp"

namespace nil2 {

namespace {

struct Token {
  enum class Kind { Id, Int, Sym, End } kind = Kind::End;
  std::string text;
  int64_t value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;
  Token cur;

  explicit Lexer(const std::string& s) : src(s) { advance(); }

  void bump(char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') bump(src[pos]);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump(c);
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_ws();
    cur = Token{};
    cur.line = line;
    cur.col = col;
    if (pos >= src.size()) {
      cur.kind = Token::Kind::End;
      return;
    }
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string id;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        id += src[pos];
        bump(src[pos]);
      }
      // primed names from generated presentations
      while (pos < src.size() && src[pos] == '\'') {
        id += src[pos];
        bump(src[pos]);
      }
      cur.kind = Token::Kind::Id;
      cur.text = std::move(id);
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
      std::string num;
      if (c == '-') {
        num += c;
        bump(c);
      }
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        num += src[pos];
        bump(src[pos]);
      }
      cur.kind = Token::Kind::Int;
      cur.text = num;
      cur.value = std::stoll(num);
      return;
    }
    cur.kind = Token::Kind::Sym;
    cur.text = std::string(1, c);
    bump(c);
  }
};

struct Parser {
  Lexer lex;
  bool allow_even;
  std::vector<std::string>* lints;

  Parser(const std::string& s, bool even, std::vector<std::string>* l = nullptr)
      : lex(s), allow_even(even), lints(l) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw parse_error(msg, lex.cur.line, lex.cur.col);
  }

  bool at_sym(const char* s) {
    return lex.cur.kind == Token::Kind::Sym && lex.cur.text == s;
  }
  bool at_id(const char* s) {
    return lex.cur.kind == Token::Kind::Id && lex.cur.text == s;
  }
  void expect_sym(const char* s) {
    if (!at_sym(s)) fail(std::string("expected '") + s + "'");
    lex.advance();
  }
  std::string expect_id() {
    if (lex.cur.kind != Token::Kind::Id) fail("expected identifier");
    std::string t = lex.cur.text;
    lex.advance();
    return t;
  }
  int64_t expect_int() {
    if (lex.cur.kind != Token::Kind::Int) fail("expected integer");
    int64_t v = lex.cur.value;
    lex.advance();
    return v;
  }

  static bool contains_bracket(const Word& w) {
    if (w.kind == Word::Kind::Bracket) return true;
    for (const auto& s : w.sub)
      if (contains_bracket(s)) return true;
    return false;
  }

  std::size_t gen_index(const std::vector<std::string>& names,
                        const std::string& id) {
    auto it = std::find(names.begin(), names.end(), id);
    if (it == names.end()) fail("unknown generator '" + id + "'");
    return static_cast<std::size_t>(it - names.begin());
  }

  // term := id | id^int | [word,word](^int)? | (word)^int
  Word parse_term(const std::vector<std::string>& names) {
    if (lex.cur.kind == Token::Kind::Id) {
      std::size_t g = gen_index(names, lex.cur.text);
      lex.advance();
      if (at_sym("^")) {
        lex.advance();
        return Word::power(Word::make_gen(g), expect_int());
      }
      return Word::make_gen(g);
    }
    if (at_sym("[")) {
      int bl = lex.cur.line, bc = lex.cur.col;
      lex.advance();
      Word a = parse_word(names, true);
      expect_sym(",");
      Word b = parse_word(names, true);
      expect_sym("]");
      if (lints && (contains_bracket(a) || contains_bracket(b)))
        lints->push_back("nested bracket at " + std::to_string(bl) + ":" +
                         std::to_string(bc) +
                         " evaluates to the identity in class 2");
      Word br = Word::bracket(std::move(a), std::move(b));
      if (at_sym("^")) {
        lex.advance();
        return Word::power(std::move(br), expect_int());
      }
      return br;
    }
    if (at_sym("(")) {
      lex.advance();
      Word w = parse_word(names, true);
      expect_sym(")");
      expect_sym("^");
      return Word::power(std::move(w), expect_int());
    }
    fail("expected a word term");
  }

  bool term_start(bool inner) {
    if (lex.cur.kind == Token::Kind::Id) {
      // keywords end a word at the top level
      if (!inner && (lex.cur.text == "rels" || lex.cur.text == "gens" ||
                     lex.cur.text == "group"))
        return false;
      return true;
    }
    return at_sym("[") || at_sym("(");
  }

  Word parse_word(const std::vector<std::string>& names, bool inner) {
    std::vector<Word> terms;
    terms.push_back(parse_term(names));
    while (term_start(inner)) terms.push_back(parse_term(names));
    return Word::concat(std::move(terms));
  }

  NamedPresentation parse_group() {
    if (!at_id("group")) fail("expected 'group'");
    lex.advance();
    NamedPresentation np;
    np.name = expect_id();
    int64_t p = -1, n = -1;
    while (lex.cur.kind == Token::Kind::Id &&
           (lex.cur.text == "p" || lex.cur.text == "n")) {
      std::string key = expect_id();
      expect_sym("=");
      int64_t val = expect_int();
      (key == "p" ? p : n) = val;
    }
    if (p < 2 || n < 1) fail("presentation needs p=<prime> and n=<positive int>");
    {
      // primality check
      for (int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) fail("p must be prime");
    }
    if (p == 2 && !allow_even) fail("even p requires --allow-even");
    np.pres.v = Variety::make(static_cast<u32>(p), static_cast<u32>(n));
    if (!at_id("gens")) fail("expected 'gens'");
    lex.advance();
    np.pres.names.push_back(expect_id());
    while (at_sym(",")) {
      lex.advance();
      np.pres.names.push_back(expect_id());
    }
    {
      auto sorted = np.pres.names;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        fail("duplicate generator name");
    }
    if (at_id("rels")) {
      lex.advance();
      if (!at_sym(";")) {
        np.pres.relators.push_back(parse_word(np.pres.names, false));
        while (at_sym(",")) {
          lex.advance();
          np.pres.relators.push_back(parse_word(np.pres.names, false));
        }
      }
    }
    expect_sym(";");
    return np;
  }
};

}  // namespace

std::vector<NamedPresentation> parse_presentations(
    const std::string& text, bool allow_even, std::vector<std::string>* lints) {
  Parser p(text, allow_even, lints);
  std::vector<NamedPresentation> out;
  while (p.lex.cur.kind != Token::Kind::End) out.push_back(p.parse_group());
  if (out.empty()) p.fail("no group definitions found");
  return out;
}

NamedPresentation parse_presentation(const std::string& text, bool allow_even,
                                     std::vector<std::string>* lints) {
  return parse_presentations(text, allow_even, lints).front();
}

std::vector<Word> parse_words(const std::string& text, const Presentation& pres,
                              std::vector<std::string>* lints) {
  Parser p(text, true, lints);
  std::vector<Word> out;
  out.push_back(p.parse_word(pres.names, true));
  while (p.at_sym(",")) {
    p.lex.advance();
    out.push_back(p.parse_word(pres.names, true));
  }
  if (p.lex.cur.kind != Token::Kind::End) p.fail("trailing input after words");
  return out;
}

std::string print_presentation(const NamedPresentation& np) {
  // catalog references carry parentheses; flatten to a legal identifier
  std::string id;
  for (char c : np.name)
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_')
      id += c;
    else if (!id.empty() && id.back() != '_')
      id += '_';
  while (!id.empty() && id.back() == '_') id.pop_back();
  if (id.empty() || std::isdigit(static_cast<unsigned char>(id[0]))) id = "G" + id;
  std::string s = "group " + id + " p=" + std::to_string(np.pres.v.p) +
                  " n=" + std::to_string(np.pres.v.n) + " gens ";
  for (std::size_t i = 0; i < np.pres.names.size(); ++i) {
    if (i) s += ",";
    s += np.pres.names[i];
  }
  if (!np.pres.relators.empty()) {
    s += " rels ";
    for (std::size_t i = 0; i < np.pres.relators.size(); ++i) {
      if (i) s += ", ";
      s += np.pres.relators[i].print(np.pres.names);
    }
  }
  s += ";";
  return s;
}

}  // namespace nil2
