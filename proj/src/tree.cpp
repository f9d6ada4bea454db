#include "sbseries/tree.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace sbs {

std::strong_ordering compare_encodings(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return a.size() <=> b.size();
  const int c = a.compare(b);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering operator<=>(const Tree& a, const Tree& b) noexcept {
  return compare_encodings(a.encoding_, b.encoding_);
}

Tree Tree::leaf(Color color) { return node(color, {}); }

Tree Tree::node(Color color, std::vector<Tree> children) {
  if (color < 0) throw std::invalid_argument("negative tree color");
  std::erase_if(children, [](const Tree& c) { return c.empty(); });
  Tree t;
  t.root_ = color;
  t.nodes_ = 1;
  t.max_color_ = color;
  t.encoding_ = std::to_string(color);
  if (!children.empty()) {
    t.encoding_ += '[';
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (i) t.encoding_ += ',';
      t.encoding_ += children[i].encoding_;
      t.nodes_ += children[i].nodes_;
      t.max_color_ = std::max(t.max_color_, children[i].max_color_);
    }
    t.encoding_ += ']';
  }
  t.children_ = std::move(children);
  return t;
}

Color Tree::color() const {
  if (!root_) throw std::logic_error("empty tree has no root color");
  return *root_;
}

Tree canonical(const Tree& t) {
  if (t.empty() || t.children().empty()) return t;
  std::vector<Tree> kids;
  kids.reserve(t.children().size());
  for (const auto& c : t.children()) kids.push_back(canonical(c));
  std::sort(kids.begin(), kids.end());
  return Tree::node(t.color(), std::move(kids));
}

bool is_canonical(const Tree& t) { return canonical(t) == t; }

HalfInt rho(const Tree& t) {
  if (t.empty()) return HalfInt{};
  HalfInt r = t.color() == 0 ? HalfInt::whole(1) : kHalf;
  for (const auto& c : t.children()) r += rho(c);
  return r;
}

namespace {

Rational alpha_canonical(const Tree& t) {
  Rational a(1);
  const auto& kids = t.children();
  for (std::size_t i = 0; i < kids.size();) {
    std::size_t j = i;
    while (j < kids.size() && kids[j] == kids[i]) ++j;
    a /= Rational(factorial(static_cast<int>(j - i)));
    const Rational sub = alpha_canonical(kids[i]);
    for (std::size_t k = i; k < j; ++k) a *= sub;
    i = j;
  }
  return a;
}

void collect_colors(const Tree& t, std::vector<Color>& out) {
  if (t.empty()) return;
  out.push_back(t.color());
  for (const auto& c : t.children()) collect_colors(c, out);
}

// Trees whose total cost (sum of per-color costs) is at most `budget`.
std::vector<Tree> enumerate_by_cost(int m, int budget, const std::function<int(Color)>& cost) {
  if (m < 0) throw std::invalid_argument("noise dimension must be non-negative");
  std::vector<std::vector<Tree>> by_cost(static_cast<std::size_t>(std::max(budget, 0)) + 1);
  for (int k = 1; k <= budget; ++k) {
    for (Color l = 0; l <= m; ++l) {
      const int w = cost(l);
      if (w > k) continue;
      const int rest = k - w;
      if (rest == 0) {
        by_cost[k].push_back(Tree::leaf(l));
        continue;
      }
      std::vector<const Tree*> pool;
      std::vector<int> pool_cost;
      for (int j = 1; j <= rest; ++j) {
        for (const auto& t : by_cost[j]) {
          pool.push_back(&t);
          pool_cost.push_back(j);
        }
      }
      std::vector<Tree> picked;
      std::function<void(std::size_t, int)> choose = [&](std::size_t start, int remaining) {
        if (remaining == 0) {
          by_cost[k].push_back(canonical(Tree::node(l, picked)));
          return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
          if (pool_cost[i] > remaining) continue;
          picked.push_back(*pool[i]);
          choose(i, remaining - pool_cost[i]);
          picked.pop_back();
        }
      };
      choose(0, rest);
    }
    std::sort(by_cost[k].begin(), by_cost[k].end());
  }
  std::vector<Tree> out;
  for (auto& bucket : by_cost) {
    for (auto& t : bucket) out.push_back(std::move(t));
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Tree parse_all() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      skip_ws();
      expect(')');
      skip_ws();
      if (pos_ != text_.size()) fail("unexpected trailing input");
      return Tree{};
    }
    Tree t = parse_tree_rule();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  Tree parse_tree_rule() {
    const Color c = parse_color();
    skip_ws();
    if (peek() != '[') return Tree::leaf(c);
    ++pos_;
    std::vector<Tree> kids;
    kids.push_back(parse_tree_rule());
    for (;;) {
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        kids.push_back(parse_tree_rule());
        continue;
      }
      expect(']');
      break;
    }
    return Tree::node(c, std::move(kids));
  }

  Color parse_color() {
    skip_ws();
    const std::size_t start = pos_;
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000) fail("color out of range", start);
      ++pos_;
    }
    if (pos_ == start) fail("expected color");
    return static_cast<Color>(v);
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
    throw TreeParseError("tree syntax error at offset " + std::to_string(at) + ": " + msg, at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Rational alpha(const Tree& t) {
  if (t.empty()) return Rational(1);
  return alpha_canonical(canonical(t));
}

std::vector<Color> color_multiset(const Tree& t) {
  std::vector<Color> out;
  collect_colors(t, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Tree> enumerate_trees(int m, HalfInt max_rho) {
  return enumerate_by_cost(m, max_rho.twice(), [](Color l) { return l == 0 ? 2 : 1; });
}

std::vector<Tree> enumerate_trees_by_nodes(int m, std::size_t max_nodes) {
  return enumerate_by_cost(m, static_cast<int>(max_nodes), [](Color) { return 1; });
}

TreeParseError::TreeParseError(const std::string& what, std::size_t offset)
    : std::runtime_error(what), offset_(offset) {}

Tree parse_tree(std::string_view text) { return canonical(Parser(text).parse_all()); }

}  // namespace sbs
