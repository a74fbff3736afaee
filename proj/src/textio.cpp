#include "orbitspace/textio.hpp"

#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "orbitspace/errors.hpp"

namespace orbitspace {

// ----------------------------------------------------------------- printing

namespace {

std::string format_monomial(const Monomial& m, const GradedRing& ring) {
  std::string out;
  for (std::size_t i = 0; i < ring.arity(); ++i) {
    const unsigned e = m.exponent(i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += ring.name(i);
    if (e > 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace

std::string format_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = t.coefficient < 0;
    const Rational magnitude = negative ? Rational(-t.coefficient) : t.coefficient;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const std::string mono = format_monomial(t.monomial, *p.ring());
    if (mono.empty()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += mono;
    } else {
      out += to_string(magnitude) + '*' + mono;
    }
  }
  return out;
}

// ------------------------------------------------------------------ parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const RingPtr& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    Polynomial p = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError(why + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_primary() {
    const char c = peek();
    return std::isalnum(static_cast<unsigned char>(c)) || c == '(' || c == '_';
  }

  Polynomial expression() {
    Polynomial sum(ring_);
    bool first = true;
    while (true) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        negate = c == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      Polynomial t = term();
      sum = negate ? sum - t : sum + t;
      first = false;
    }
    return sum;
  }

  Polynomial term() {
    Polynomial prod = factor();
    while (true) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        prod = prod * factor();
      } else if (c == '/') {
        ++pos_;
        Polynomial d = factor();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        prod = prod.scaled(Rational(1) / d.constant_term());
      } else if (starts_primary()) {
        prod = prod * factor();
      } else {
        break;
      }
    }
    return prod;
  }

  Polynomial factor() {
    const char c = peek();
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    Polynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      if (start == pos_) fail("expected an exponent");
      const unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
      if (e > kMaxExponent) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  Polynomial primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      return Polynomial::constant(ring_, Rational(Integer(std::string(
                                             text_.substr(start, pos_ - start)))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string name(text_.substr(start, pos_ - start));
      const auto idx = ring_->find(name);
      if (!idx) fail("unknown variable '" + name + "'");
      return Polynomial::variable(ring_, *idx);
    }
    fail("expected a number, variable or '('");
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return Parser(text, ring).parse();
}

// ---------------------------------------------------------------- documents

std::string Document::header_value(std::string_view key) const {
  const std::string prefix = std::string(key) + ":";
  for (const auto& h : header) {
    const std::string line = trim(h);
    if (line.rfind(prefix, 0) == 0) return trim(line.substr(prefix.size()));
  }
  return {};
}

const Statement* Document::find(std::string_view name) const {
  for (const auto& s : statements) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Document parse_document(std::string_view text) {
  Document doc;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line[0] == '#') {
      doc.header.push_back(line.substr(1));
    } else {
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": missing '='");
      }
      doc.statements.push_back({trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no});
    }
    if (end == text.size()) break;
  }
  return doc;
}

Document read_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str());
}

std::uint64_t statement_checksum(const Document& doc) {
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::string_view s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& s : doc.statements) {
    feed(s.name);
    feed(" = ");
    feed(s.expression);
    feed("\n");
  }
  return h;
}

std::string checksum_hex(std::uint64_t value) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << value;
  return os.str();
}

}  // namespace orbitspace
