#include "semifree/dsl.hpp"

#include <cctype>
#include <sstream>

namespace semifree {

namespace {

struct Token {
  enum Kind { Ident, Number, LParen, RParen, Comma, Colon, Equals, End } kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  Lexer(const std::string& text, std::string file, std::size_t line0 = 1)
      : text_(text), file_(std::move(file)), line_(line0) {}

  ParseResult<std::vector<Token>> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
        continue;
      }
      if (c == '\r' || c == ' ' || c == '\t') {
        advance();
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t start_col = col_;
        std::string ident;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                text_[pos_] == '\'')) {
          ident += text_[pos_];
          advance();
        }
        out.push_back({Token::Ident, ident, line_, start_col});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start_col = col_;
        std::string num;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          num += text_[pos_];
          advance();
        }
        out.push_back({Token::Number, num, line_, start_col});
        continue;
      }
      Token::Kind kind;
      switch (c) {
        case '(': kind = Token::LParen; break;
        case ')': kind = Token::RParen; break;
        case ',': kind = Token::Comma; break;
        case ':': kind = Token::Colon; break;
        case '=': kind = Token::Equals; break;
        default:
          return ParseError{{file_, line_, col_}, std::string("unexpected character '") + c + "'"};
      }
      out.push_back({kind, std::string(1, c), line_, col_});
      advance();
    }
    out.push_back({Token::End, "", line_, col_});
    return out;
  }

 private:
  void advance() {
    ++pos_;
    ++col_;
  }
  const std::string& text_;
  std::string file_;
  std::size_t pos_ = 0;
  std::size_t line_;
  std::size_t col_ = 1;
};

class TermParser {
 public:
  TermParser(const std::vector<Token>& toks, const Signature& sig, std::string file)
      : toks_(toks), sig_(sig), file_(std::move(file)) {}

  ParseResult<Term> parse() {
    auto r = term();
    if (auto* err = std::get_if<ParseError>(&r)) return *err;
    if (cur().kind != Token::End) {
      return error("trailing input after term");
    }
    return std::get<Term>(r);
  }

  /// Parses one term without requiring end-of-input (used for equations).
  ParseResult<Term> term() {
    const Token& tok = cur();
    if (tok.kind != Token::Ident) return error("expected a term");
    const OperationSymbol* sym = sig_.find(tok.text);
    if (sym == nullptr) {
      ++idx_;
      return Term::var(tok.text);
    }
    ++idx_;
    if (cur().kind == Token::LParen) {
      ++idx_;
      std::vector<Term> args;
      if (cur().kind != Token::RParen) {
        while (true) {
          auto sub = term();
          if (auto* err = std::get_if<ParseError>(&sub)) return *err;
          args.push_back(std::get<Term>(sub));
          if (cur().kind == Token::Comma) {
            ++idx_;
            continue;
          }
          break;
        }
      }
      if (cur().kind != Token::RParen) return error("expected ')' or ','");
      ++idx_;
      if (args.size() != sym->arity) {
        return error("operation '" + sym->name + "' declared with arity " +
                     std::to_string(sym->arity) + " but applied to " +
                     std::to_string(args.size()) + " arguments", tok);
      }
      return Term::app(*sym, std::move(args));
    }
    if (sym->arity == 0) return Term::app(*sym);
    if (sym->arity == 1) {
      // prefix sugar: a a v
      auto sub = term();
      if (auto* err = std::get_if<ParseError>(&sub)) return *err;
      return Term::app(*sym, {std::get<Term>(sub)});
    }
    return error("operation '" + sym->name + "' of arity " + std::to_string(sym->arity) +
                 " needs parenthesized arguments", tok);
  }

  const Token& cur() const { return toks_[idx_]; }
  std::size_t index() const { return idx_; }

  ParseError error(const std::string& msg) const { return error(msg, cur()); }
  ParseError error(const std::string& msg, const Token& at) const {
    return ParseError{{file_, at.line, at.column}, msg};
  }

 private:
  const std::vector<Token>& toks_;
  const Signature& sig_;
  std::string file_;
  std::size_t idx_ = 0;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  lines.push_back(cur);
  return lines;
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool is_blank(const std::string& line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

std::string first_word(const std::string& line, std::size_t& word_col) {
  std::size_t i = 0;
  while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
  word_col = i + 1;
  std::string word;
  while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
    word += line[i];
    ++i;
  }
  return word;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  }
  return true;
}

}  // namespace

ParseResult<Term> parse_term(const std::string& text, const Signature& sig,
                             const std::string& file) {
  Lexer lexer(text, file);
  auto toks = lexer.run();
  if (auto* err = std::get_if<ParseError>(&toks)) return *err;
  TermParser parser(std::get<std::vector<Token>>(toks), sig, file);
  return parser.parse();
}

ParseResult<Equation> parse_equation(const std::string& text, const Signature& sig,
                                     const std::string& file) {
  Lexer lexer(text, file);
  auto toks_r = lexer.run();
  if (auto* err = std::get_if<ParseError>(&toks_r)) return *err;
  const auto& toks = std::get<std::vector<Token>>(toks_r);
  TermParser parser(toks, sig, file);
  auto lhs = parser.term();
  if (auto* err = std::get_if<ParseError>(&lhs)) return *err;
  if (parser.cur().kind != Token::Equals) return parser.error("expected '=' between terms");
  // Re-parse the right-hand side from the token after '='.
  std::vector<Token> rest(toks.begin() + static_cast<long>(parser.index()) + 1, toks.end());
  TermParser rhs_parser(rest, sig, file);
  auto rhs = rhs_parser.parse();
  if (auto* err = std::get_if<ParseError>(&rhs)) return *err;
  return Equation{std::get<Term>(lhs), std::get<Term>(rhs)};
}

ParseResult<Theory> parse_theory(const std::string& text, const std::string& file) {
  Theory th;
  bool seen_theory = false;
  bool seen_end = false;
  auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    std::string line = strip_comment(lines[ln]);
    if (is_blank(line)) continue;
    std::size_t line_no = ln + 1;
    if (seen_end) {
      return ParseError{{file, line_no, 1}, "content after 'end'"};
    }
    std::size_t word_col = 1;
    std::string keyword = first_word(line, word_col);
    std::string rest = line.substr(word_col - 1 + keyword.size());
    if (!seen_theory) {
      if (keyword != "theory") {
        return ParseError{{file, line_no, word_col}, "expected 'theory <Name>'"};
      }
      std::size_t name_col = 1;
      std::string name = first_word(rest, name_col);
      if (!valid_identifier(name)) {
        return ParseError{{file, line_no, word_col + keyword.size() + name_col},
                          "expected a theory name"};
      }
      th.name = name;
      seen_theory = true;
      continue;
    }
    if (keyword == "op") {
      Lexer lexer(rest, file, line_no);
      auto toks_r = lexer.run();
      if (auto* err = std::get_if<ParseError>(&toks_r)) return *err;
      const auto& toks = std::get<std::vector<Token>>(toks_r);
      if (toks.size() != 4 || toks[0].kind != Token::Ident || toks[1].kind != Token::Colon ||
          toks[2].kind != Token::Number || toks[3].kind != Token::End) {
        return ParseError{{file, line_no, word_col}, "expected 'op <name> : <arity>'"};
      }
      if (th.signature.contains(toks[0].text)) {
        return ParseError{{file, line_no, toks[0].column},
                          "duplicate operation symbol '" + toks[0].text + "'"};
      }
      if (toks[2].text.size() > 4) {
        return ParseError{{file, line_no, toks[2].column}, "arity out of range"};
      }
      th.signature.add({toks[0].text, static_cast<std::size_t>(std::stoul(toks[2].text))});
      continue;
    }
    if (keyword == "eq") {
      auto eq = parse_equation(rest, th.signature, file);
      if (auto* err = std::get_if<ParseError>(&eq)) {
        ParseError e = *err;
        e.span.line = line_no;
        e.span.column += word_col - 1 + keyword.size();
        return e;
      }
      th.equations.push_back(std::get<Equation>(eq));
      continue;
    }
    if (keyword == "end") {
      seen_end = true;
      continue;
    }
    return ParseError{{file, line_no, word_col},
                      "expected 'op', 'eq' or 'end', got '" + keyword + "'"};
  }
  if (!seen_theory) return ParseError{{file, lines.size(), 1}, "missing 'theory <Name>' header"};
  if (!seen_end) return ParseError{{file, lines.size(), 1}, "missing 'end'"};
  return th;
}

std::string print_theory(const Theory& th) {
  std::ostringstream out;
  out << "theory " << th.name << "\n";
  for (const auto& sym : th.signature.symbols()) {
    out << "op " << sym.name << " : " << sym.arity << "\n";
  }
  for (const auto& eq : th.equations) {
    out << "eq " << eq.lhs.to_string() << " = " << eq.rhs.to_string() << "\n";
  }
  out << "end\n";
  return out.str();
}

}  // namespace semifree
