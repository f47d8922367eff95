#include "tightsigma/term.hpp"

#include <algorithm>
#include <cctype>
#include <memory>

namespace tightsigma {

namespace {

struct Node {
  enum class Kind { constant, variable, negate, conj, disj, exclusive, difference } kind;
  bool value = false;
  std::size_t var = 0;
  std::unique_ptr<Node> lhs;
  std::unique_ptr<Node> rhs;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  NodePtr parse() {
    NodePtr root = expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail(std::string("unexpected '") + text_[pos_] + "'");
    }
    return root;
  }

  std::size_t max_var() const { return max_var_; }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse, "term column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static NodePtr binary(Node::Kind kind, NodePtr lhs, NodePtr rhs) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return n;
  }

  NodePtr expr() {
    NodePtr lhs = exclusive();
    while (accept('|')) {
      lhs = binary(Node::Kind::disj, std::move(lhs), exclusive());
    }
    return lhs;
  }

  NodePtr exclusive() {
    NodePtr lhs = conjunction();
    while (accept('^')) {
      lhs = binary(Node::Kind::exclusive, std::move(lhs), conjunction());
    }
    return lhs;
  }

  NodePtr conjunction() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('&')) {
        lhs = binary(Node::Kind::conj, std::move(lhs), unary());
      } else if (accept('\\')) {
        lhs = binary(Node::Kind::difference, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  NodePtr unary() {
    skip_space();
    if (pos_ >= text_.size()) {
      fail("unexpected end of term");
    }
    const char c = text_[pos_];
    if (c == '!') {
      ++pos_;
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::negate;
      n->lhs = unary();
      return n;
    }
    if (c == '(') {
      ++pos_;
      NodePtr inner = expr();
      if (!accept(')')) {
        fail("expected ')'");
      }
      return inner;
    }
    if (c == '0' || c == '1') {
      ++pos_;
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::constant;
      n->value = c == '1';
      return n;
    }
    if (c == 'x') {
      ++pos_;
      std::size_t start = pos_;
      std::size_t index = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        index = index * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (index > 1000) {
          fail("variable index too large");
        }
        ++pos_;
      }
      if (pos_ == start || index == 0) {
        pos_ = start;
        fail("expected a variable index >= 1 after 'x'");
      }
      auto n = std::make_unique<Node>();
      n->kind = Node::Kind::variable;
      n->var = index - 1;
      max_var_ = std::max(max_var_, index);
      return n;
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t max_var_ = 0;
};

BoolPoly tabulate(const Node& n, std::size_t arity) {
  switch (n.kind) {
  case Node::Kind::constant:
    return BoolPoly::constant(arity, n.value);
  case Node::Kind::variable:
    return BoolPoly::variable(arity, n.var);
  case Node::Kind::negate:
    return !tabulate(*n.lhs, arity);
  case Node::Kind::conj:
    return tabulate(*n.lhs, arity) & tabulate(*n.rhs, arity);
  case Node::Kind::disj:
    return tabulate(*n.lhs, arity) | tabulate(*n.rhs, arity);
  case Node::Kind::exclusive:
    return tabulate(*n.lhs, arity) ^ tabulate(*n.rhs, arity);
  case Node::Kind::difference:
    return tabulate(*n.lhs, arity) & !tabulate(*n.rhs, arity);
  }
  return BoolPoly::constant(arity, false);
}

bool literal_before(const Literal& a, const Literal& b) {
  if (a.var != b.var) {
    return a.var < b.var;
  }
  return a.positive && !b.positive;
}

} // namespace

BoolPoly parse_term(std::string_view text, std::optional<std::size_t> arity) {
  Parser parser(text);
  NodePtr root = parser.parse();
  const std::size_t n = arity.value_or(parser.max_var());
  if (parser.max_var() > n) {
    throw Error(ErrorKind::arity_mismatch, "term uses x" + std::to_string(parser.max_var()) +
                                               " but arity is " + std::to_string(n));
  }
  if (n > kMaxArity) {
    throw Error(ErrorKind::size_bound, "term arity " + std::to_string(n) + " exceeds " +
                                           std::to_string(kMaxArity));
  }
  return tabulate(*root, n);
}

std::vector<std::vector<Literal>> prime_implicants(const BoolPoly& p) {
  const std::size_t n = p.arity();
  // Cubes in base 3: digit 0 = negative literal, 1 = positive, 2 = free.
  std::vector<std::size_t> pow3(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) {
    pow3[i] = pow3[i - 1] * 3;
  }
  const std::size_t cubes = pow3[n];
  std::vector<char> implicant(cubes, 0);
  for (std::size_t c = 0; c < cubes; ++c) {
    std::size_t free_var = n;
    std::uint64_t row = 0;
    for (std::size_t i = 0, rest = c; i < n; ++i, rest /= 3) {
      const std::size_t d = rest % 3;
      if (d == 2 && free_var == n) {
        free_var = i;
      }
      if (d == 1) {
        row |= std::uint64_t{1} << i;
      }
    }
    if (free_var == n) {
      implicant[c] = p.at(row);
    } else {
      const std::size_t as_zero = c - 2 * pow3[free_var];
      implicant[c] = implicant[as_zero] && implicant[as_zero + pow3[free_var]];
    }
  }

  std::vector<std::vector<Literal>> primes;
  for (std::size_t c = 0; c < cubes; ++c) {
    if (!implicant[c]) {
      continue;
    }
    bool prime = true;
    std::vector<Literal> lits;
    for (std::size_t i = 0, rest = c; i < n; ++i, rest /= 3) {
      const std::size_t d = rest % 3;
      if (d == 2) {
        continue;
      }
      lits.push_back({i, d == 1});
      if (implicant[c + (2 - d) * pow3[i]]) {
        prime = false;
        break;
      }
    }
    if (prime) {
      primes.push_back(std::move(lits));
    }
  }
  std::sort(primes.begin(), primes.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), literal_before);
  });
  return primes;
}

std::string format_dnf(const BoolPoly& p, const std::vector<std::string>& names) {
  if (!names.empty() && names.size() != p.arity()) {
    throw Error(ErrorKind::arity_mismatch, "expected " + std::to_string(p.arity()) +
                                               " variable names");
  }
  const auto primes = prime_implicants(p);
  if (primes.empty()) {
    return "0";
  }
  if (primes.front().empty()) {
    return "1";
  }
  std::string out;
  for (std::size_t t = 0; t < primes.size(); ++t) {
    if (t != 0) {
      out += " | ";
    }
    for (std::size_t l = 0; l < primes[t].size(); ++l) {
      if (l != 0) {
        out += " & ";
      }
      const Literal& lit = primes[t][l];
      if (!lit.positive) {
        out += '!';
      }
      out += names.empty() ? "x" + std::to_string(lit.var + 1) : names[lit.var];
    }
  }
  return out;
}

} // namespace tightsigma
