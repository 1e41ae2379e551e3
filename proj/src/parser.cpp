#include "ccsni/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace ccsni {

namespace {

enum class Tok {
  Ident,
  KwMain,
  KwValues,
  KwLevels,
  KwAgent,
  KwNew,
  Zero,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Langle,
  Rangle,
  Comma,
  Dot,
  Plus,
  Bar,
  Quote,
  Under,
  Equals,
  Newline,
  End,
};

struct Token {
  Tok type;
  std::string text;
  int line, col;
};

std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok t, std::string text) {
    out.push_back({t, std::move(text), line, col});
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      push(Tok::Newline, "\n");
      ++i;
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() &&
             std::isalnum(static_cast<unsigned char>(src[j])))
        ++j;
      std::string word = src.substr(i, j - i);
      Tok t = Tok::Ident;
      if (word == "main") t = Tok::KwMain;
      else if (word == "values") t = Tok::KwValues;
      else if (word == "levels") t = Tok::KwLevels;
      else if (word == "agent") t = Tok::KwAgent;
      else if (word == "new") t = Tok::KwNew;
      push(t, word);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Tok t;
    switch (c) {
      case '0': t = Tok::Zero; break;
      case '(': t = Tok::LParen; break;
      case ')': t = Tok::RParen; break;
      case '{': t = Tok::LBrace; break;
      case '}': t = Tok::RBrace; break;
      case '<': t = Tok::Langle; break;
      case '>': t = Tok::Rangle; break;
      case ',': t = Tok::Comma; break;
      case '.': t = Tok::Dot; break;
      case '+': t = Tok::Plus; break;
      case '|': t = Tok::Bar; break;
      case '\'': t = Tok::Quote; break;
      case '_': t = Tok::Under; break;
      case '=': t = Tok::Equals; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'",
                          line, col);
    }
    push(t, std::string(1, c));
    ++i;
    ++col;
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) {}

  Program run() {
    Program prog;
    bool saw_values = false, saw_levels = false, saw_main = false;
    while (true) {
      skip_newlines();
      const Token& t = peek();
      if (t.type == Tok::End) break;
      if (t.type == Tok::KwValues) {
        if (saw_values) fail("duplicate values declaration");
        saw_values = true;
        advance();
        expect(Tok::LBrace, "'{'");
        std::vector<std::string> vals;
        vals.push_back(expect(Tok::Ident, "value name").text);
        while (peek().type == Tok::Comma) {
          advance();
          vals.push_back(expect(Tok::Ident, "value name").text);
        }
        expect(Tok::RBrace, "'}'");
        end_of_line();
        prog.values = std::move(vals);
      } else if (t.type == Tok::KwLevels) {
        if (saw_levels) fail("duplicate levels declaration");
        saw_levels = true;
        advance();
        std::vector<Level> chain;
        chain.push_back(expect(Tok::Ident, "level name").text);
        expect(Tok::Langle, "'<'");
        chain.push_back(expect(Tok::Ident, "level name").text);
        while (peek().type == Tok::Langle) {
          advance();
          chain.push_back(expect(Tok::Ident, "level name").text);
        }
        end_of_line();
        try {
          prog.lattice = SecurityLattice::chain(chain);
        } catch (const std::invalid_argument& e) {
          fail(e.what());
        }
      } else if (t.type == Tok::KwAgent) {
        advance();
        AgentDef def;
        def.name = expect(Tok::Ident, "agent name").text;
        expect(Tok::LParen, "'('");
        if (peek().type != Tok::RParen) {
          def.params.push_back(expect(Tok::Ident, "parameter name").text);
          while (peek().type == Tok::Comma) {
            advance();
            def.params.push_back(expect(Tok::Ident, "parameter name").text);
          }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Equals, "'='");
        def.body = parse_proc(0);
        end_of_line();
        prog.agents.push_back(std::move(def));
      } else if (t.type == Tok::KwMain) {
        advance();
        expect(Tok::Equals, "'='");
        prog.main = parse_proc(0);
        end_of_line();
        saw_main = true;
        skip_newlines();
        if (peek().type != Tok::End) fail("unexpected input after main");
        break;
      } else {
        fail("expected a declaration or 'main'");
      }
    }
    if (!saw_main) fail("missing 'main' process");
    resolve_program(prog);
    return prog;
  }

 private:
  static constexpr int kMaxDepth = 400;

  const Token& peek(int k = 0) const {
    std::size_t i = pos_ + k;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& advance() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    throw SyntaxError(msg, t.line, t.col);
  }
  const Token& expect(Tok type, const std::string& what) {
    if (peek().type != type) fail("expected " + what);
    return advance();
  }
  void skip_newlines() {
    while (peek().type == Tok::Newline) advance();
  }
  void end_of_line() {
    if (peek().type == Tok::Newline)
      advance();
    else if (peek().type != Tok::End)
      fail("expected end of line");
  }

  ChannelName parse_chan() {
    std::string base = expect(Tok::Ident, "channel name").text;
    expect(Tok::Under, "'_' and a level");
    std::string level = expect(Tok::Ident, "level name").text;
    return {std::move(base), std::move(level)};
  }

  ProcPtr parse_proc(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    std::vector<ProcPtr> parts;
    parts.push_back(parse_sum(depth + 1));
    while (peek().type == Tok::Bar) {
      advance();
      parts.push_back(parse_sum(depth + 1));
    }
    return parts.size() == 1 ? parts.front() : Process::par(std::move(parts));
  }

  ProcPtr parse_sum(int depth) {
    std::vector<ProcPtr> terms;
    const Token& first = peek();
    terms.push_back(parse_term(depth + 1));
    while (peek().type == Tok::Plus) {
      advance();
      terms.push_back(parse_term(depth + 1));
    }
    if (terms.size() == 1) return terms.front();
    std::vector<Branch> branches;
    for (const auto& t : terms) {
      if (t->kind != Process::Kind::Sum)
        throw SyntaxError("choice operands must be prefix-guarded", first.line,
                          first.col);
      for (const auto& br : t->branches) branches.push_back(br);
    }
    return Process::sum(std::move(branches));
  }

  ProcPtr parse_term(int depth) {
    if (depth > kMaxDepth) fail("nesting too deep");
    const Token& t = peek();
    switch (t.type) {
      case Tok::Zero:
        advance();
        return Process::nil();
      case Tok::LParen:
        advance();
        {
          auto p = parse_proc(depth + 1);
          expect(Tok::RParen, "')'");
          return p;
        }
      case Tok::KwNew: {
        advance();
        ChannelName ch = parse_chan();
        expect(Tok::Dot, "'.'");
        return Process::restrict(std::move(ch), parse_term(depth + 1));
      }
      case Tok::Quote: {  // output prefix
        advance();
        ChannelName ch = parse_chan();
        Prefix pre;
        pre.polarity = Prefix::Polarity::Output;
        pre.channel = std::move(ch);
        if (peek().type == Tok::Langle) {
          advance();
          pre.payload = Payload::var(expect(Tok::Ident, "payload").text);
          expect(Tok::Rangle, "'>'");
        } else {
          pre.nullary = true;
          pre.payload = Payload::value("u");
        }
        return Process::prefixed(std::move(pre), parse_cont(depth));
      }
      case Tok::Ident: {
        if (peek(1).type == Tok::Under) {  // input prefix
          ChannelName ch = parse_chan();
          Prefix pre;
          pre.polarity = Prefix::Polarity::Input;
          pre.channel = std::move(ch);
          if (peek().type == Tok::LParen) {
            advance();
            pre.payload = Payload::var(expect(Tok::Ident, "variable").text);
            expect(Tok::RParen, "')'");
          } else {
            pre.nullary = true;
            pre.payload = Payload::var("");
          }
          return Process::prefixed(std::move(pre), parse_cont(depth));
        }
        if (peek(1).type == Tok::LParen) {  // agent call
          std::string name = advance().text;
          advance();  // '('
          std::vector<Payload> args;
          if (peek().type != Tok::RParen) {
            args.push_back(Payload::var(expect(Tok::Ident, "argument").text));
            while (peek().type == Tok::Comma) {
              advance();
              args.push_back(Payload::var(expect(Tok::Ident, "argument").text));
            }
          }
          expect(Tok::RParen, "')'");
          return Process::call(std::move(name), std::move(args));
        }
        fail("expected a channel (ident_level) or an agent call");
      }
      default:
        fail("expected a process term");
    }
  }

  // optional "." term after a prefix; missing continuation means 0
  ProcPtr parse_cont(int depth) {
    if (peek().type == Tok::Dot) {
      advance();
      return parse_term(depth + 1);
    }
    return Process::nil();
  }

  // Payloads are lexed as bare identifiers; classify them against binders in
  // scope and the declared value set (binders win, shadowing a value name).
  void resolve_program(Program& prog) const {
    std::set<std::string> values(prog.values.begin(), prog.values.end());
    for (auto& a : prog.agents) {
      std::set<std::string> bound(a.params.begin(), a.params.end());
      a.body = resolve(a.body, bound, values);
    }
    prog.main = resolve(prog.main, {}, values);
  }

  static Payload resolve_payload(const Payload& pl,
                                 const std::set<std::string>& bound,
                                 const std::set<std::string>& values) {
    if (pl.kind == Payload::Kind::Var && !bound.count(pl.id) &&
        values.count(pl.id))
      return Payload::value(pl.id);
    return pl;
  }

  static ProcPtr resolve(const ProcPtr& p, std::set<std::string> bound,
                         const std::set<std::string>& values) {
    switch (p->kind) {
      case Process::Kind::Nil:
        return p;
      case Process::Kind::Sum: {
        std::vector<Branch> out;
        for (const auto& br : p->branches) {
          Branch nb = br;
          std::set<std::string> inner = bound;
          if (br.prefix.polarity == Prefix::Polarity::Input) {
            if (!br.prefix.nullary) inner.insert(br.prefix.payload.id);
          } else {
            nb.prefix.payload = resolve_payload(br.prefix.payload, bound, values);
          }
          nb.cont = resolve(br.cont, std::move(inner), values);
          out.push_back(std::move(nb));
        }
        return Process::sum(std::move(out));
      }
      case Process::Kind::Par: {
        std::vector<ProcPtr> out;
        for (const auto& q : p->parts) out.push_back(resolve(q, bound, values));
        return Process::par(std::move(out));
      }
      case Process::Kind::Restrict:
        return Process::restrict(p->bound, resolve(p->body, bound, values));
      case Process::Kind::Call: {
        std::vector<Payload> args;
        for (const auto& a : p->args)
          args.push_back(resolve_payload(a, bound, values));
        return Process::call(p->agent, std::move(args));
      }
    }
    return p;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string print_term(const ProcPtr& p);

std::string print_prefix(const Prefix& pre) {
  std::string out;
  if (pre.polarity == Prefix::Polarity::Output) {
    out = "'" + pre.channel.str();
    if (!pre.nullary) out += "<" + pre.payload.id + ">";
  } else {
    out = pre.channel.str();
    if (!pre.nullary) out += "(" + pre.payload.id + ")";
  }
  return out;
}

std::string print_proc(const ProcPtr& p) {
  switch (p->kind) {
    case Process::Kind::Nil:
      return "0";
    case Process::Kind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < p->branches.size(); ++i) {
        if (i) out += " + ";
        const auto& br = p->branches[i];
        out += print_prefix(br.prefix);
        if (br.cont->kind != Process::Kind::Nil)
          out += "." + print_term(br.cont);
      }
      return out;
    }
    case Process::Kind::Par: {
      std::string out = "(";
      for (std::size_t i = 0; i < p->parts.size(); ++i) {
        if (i) out += " | ";
        out += print_proc(p->parts[i]);
      }
      return out + ")";
    }
    case Process::Kind::Restrict:
      return "new " + p->bound.str() + "." + print_term(p->body);
    case Process::Kind::Call: {
      std::string out = p->agent + "(";
      for (std::size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += ", ";
        out += p->args[i].id;
      }
      return out + ")";
    }
  }
  return "0";
}

std::string print_term(const ProcPtr& p) {
  if (p->kind == Process::Kind::Sum && p->branches.size() > 1)
    return "(" + print_proc(p) + ")";
  return print_proc(p);
}

}  // namespace

Program parse(const std::string& text, const std::string&) {
  return Parser(text).run();
}

std::string pretty_print(const ProcPtr& p) { return print_proc(p); }

std::string pretty_print(const Program& prog) {
  std::string out;
  if (!(prog.lattice == SecurityLattice::two_point()) && prog.lattice.is_chain()) {
    auto chain = prog.lattice.chain_order();
    out += "levels";
    for (std::size_t i = 0; i < chain.size(); ++i)
      out += (i ? " < " : " ") + chain[i];
    out += "\n";
  }
  if (prog.values != std::vector<std::string>{"u"}) {
    out += "values {";
    for (std::size_t i = 0; i < prog.values.size(); ++i) {
      if (i) out += ", ";
      out += prog.values[i];
    }
    out += "}\n";
  }
  for (const auto& a : prog.agents) {
    out += "agent " + a.name + "(";
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      if (i) out += ", ";
      out += a.params[i];
    }
    out += ") = " + print_proc(a.body) + "\n";
  }
  out += "main = " + print_proc(prog.main) + "\n";
  return out;
}

}  // namespace ccsni
