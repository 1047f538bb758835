#include "causality/itc.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <vector>

#include "causality/error.hpp"

namespace causality {

struct IdTree::Children {
  IdTree left;
  IdTree right;
};

struct EventTree::Children {
  EventTree left;
  EventTree right;
};

// --- IdTree -----------------------------------------------------------------

IdTree IdTree::pair(IdTree left, IdTree right) {
  if (left.is_zero() && right.is_zero()) return zero();
  if (left.is_one() && right.is_one()) return one();
  IdTree t(false);
  t.children_ = std::make_shared<const Children>(Children{std::move(left), std::move(right)});
  return t;
}

const IdTree& IdTree::left() const {
  if (is_leaf()) throw Error("id leaf has no children");
  return children_->left;
}

const IdTree& IdTree::right() const {
  if (is_leaf()) throw Error("id leaf has no children");
  return children_->right;
}

unsigned IdTree::depth() const {
  return is_leaf() ? 0 : 1 + std::max(left().depth(), right().depth());
}

bool IdTree::operator==(const IdTree& other) const {
  if (is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return owned_ == other.owned_;
  return children_ == other.children_ ||
         (left() == other.left() && right() == other.right());
}

// --- EventTree --------------------------------------------------------------

EventTree EventTree::node(std::uint64_t base, EventTree left, EventTree right) {
  EventTree t(base);
  t.children_ = std::make_shared<const Children>(Children{std::move(left), std::move(right)});
  return t;
}

const EventTree& EventTree::left() const {
  if (is_leaf()) throw Error("event leaf has no children");
  return children_->left;
}

const EventTree& EventTree::right() const {
  if (is_leaf()) throw Error("event leaf has no children");
  return children_->right;
}

unsigned EventTree::depth() const {
  return is_leaf() ? 0 : 1 + std::max(left().depth(), right().depth());
}

std::uint64_t EventTree::min() const {
  return is_leaf() ? base_ : base_ + std::min(left().min(), right().min());
}

std::uint64_t EventTree::max() const {
  return is_leaf() ? base_ : base_ + std::max(left().max(), right().max());
}

EventTree EventTree::lifted(std::uint64_t by) const {
  EventTree t = *this;
  t.base_ += by;
  return t;
}

EventTree EventTree::normalized() const {
  if (is_leaf()) return *this;
  auto l = left().normalized();
  auto r = right().normalized();
  if (l.is_leaf() && r.is_leaf() && l.base_ == r.base_) return leaf(base_ + l.base_);
  const auto m = std::min(l.base_, r.base_);  // normalized subtrees have min == base
  l.base_ -= m;
  r.base_ -= m;
  return node(base_ + m, std::move(l), std::move(r));
}

bool EventTree::operator==(const EventTree& other) const {
  if (base_ != other.base_ || is_leaf() != other.is_leaf()) return false;
  if (is_leaf()) return true;
  return children_ == other.children_ ||
         (left() == other.left() && right() == other.right());
}

// --- operations -------------------------------------------------------------

namespace {

std::pair<IdTree, IdTree> split(const IdTree& id) {
  if (id.is_zero()) return {IdTree::zero(), IdTree::zero()};
  if (id.is_one()) {
    return {IdTree::pair(IdTree::one(), IdTree::zero()), IdTree::pair(IdTree::zero(), IdTree::one())};
  }
  if (id.left().is_zero()) {
    auto [a, b] = split(id.right());
    return {IdTree::pair(IdTree::zero(), a), IdTree::pair(IdTree::zero(), b)};
  }
  if (id.right().is_zero()) {
    auto [a, b] = split(id.left());
    return {IdTree::pair(a, IdTree::zero()), IdTree::pair(b, IdTree::zero())};
  }
  return {IdTree::pair(id.left(), IdTree::zero()), IdTree::pair(IdTree::zero(), id.right())};
}

// Path (false = left) to the shallowest owned leaf, leftmost on ties.
std::vector<bool> shallowest_owned(const IdTree& id) {
  struct Item {
    const IdTree* node;
    std::vector<bool> path;
  };
  std::deque<Item> queue{{&id, {}}};
  while (!queue.empty()) {
    auto item = std::move(queue.front());
    queue.pop_front();
    if (item.node->is_one()) return item.path;
    if (item.node->is_leaf()) continue;
    auto l = item.path;
    l.push_back(false);
    auto r = std::move(item.path);
    r.push_back(true);
    queue.push_back({&item.node->left(), std::move(l)});
    queue.push_back({&item.node->right(), std::move(r)});
  }
  throw Error("identity owns nothing");
}

EventTree raise_at(const EventTree& e, const std::vector<bool>& path, std::size_t pos) {
  if (pos == path.size()) return EventTree::leaf(e.max() + 1);
  const auto expanded =
      e.is_leaf() ? EventTree::node(e.base(), EventTree::leaf(0), EventTree::leaf(0)) : e;
  if (path[pos]) {
    return EventTree::node(expanded.base(), expanded.left(), raise_at(expanded.right(), path, pos + 1));
  }
  return EventTree::node(expanded.base(), raise_at(expanded.left(), path, pos + 1), expanded.right());
}

bool leq_offset(const EventTree& a, std::uint64_t oa, const EventTree& b, std::uint64_t ob) {
  const auto av = a.base() + oa;
  const auto bv = b.base() + ob;
  if (a.is_leaf()) return av <= ob + b.min();
  if (b.is_leaf()) return a.max() + oa <= bv;
  return av <= bv && leq_offset(a.left(), av, b.left(), bv) &&
         leq_offset(a.right(), av, b.right(), bv);
}

}  // namespace

IdTree id_sum(const IdTree& a, const IdTree& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_leaf() || b.is_leaf()) throw Error("joining stamps with overlapping identities");
  return IdTree::pair(id_sum(a.left(), b.left()), id_sum(a.right(), b.right()));
}

EventTree event_join(const EventTree& a, const EventTree& b) {
  if (a.is_leaf() && b.is_leaf()) return EventTree::leaf(std::max(a.base(), b.base()));
  if (a.is_leaf()) {
    return event_join(EventTree::node(a.base(), EventTree::leaf(0), EventTree::leaf(0)), b);
  }
  if (b.is_leaf()) {
    return event_join(a, EventTree::node(b.base(), EventTree::leaf(0), EventTree::leaf(0)));
  }
  if (a.base() > b.base()) return event_join(b, a);
  const auto d = b.base() - a.base();
  return EventTree::node(a.base(), event_join(a.left(), b.left().lifted(d)),
                         event_join(a.right(), b.right().lifted(d)))
      .normalized();
}

bool event_leq(const EventTree& a, const EventTree& b) { return leq_offset(a, 0, b, 0); }

ItcStamp itc_seed() { return {IdTree::one(), EventTree::leaf(0)}; }

std::pair<ItcStamp, ItcStamp> itc_fork(const ItcStamp& s) {
  if (s.id.is_zero()) throw Error("cannot fork a stamp without identity");
  auto [a, b] = split(s.id);
  return {{std::move(a), s.events}, {std::move(b), s.events}};
}

ItcStamp itc_event(const ItcStamp& s) {
  if (s.id.is_zero()) throw Error("cannot register an event without identity");
  return {s.id, raise_at(s.events, shallowest_owned(s.id), 0).normalized()};
}

ItcStamp itc_join(const ItcStamp& x, const ItcStamp& y) {
  return {id_sum(x.id, y.id), event_join(x.events, y.events)};
}

ItcStamp itc_peek(const ItcStamp& s) { return {IdTree::zero(), s.events}; }

bool itc_leq(const ItcStamp& x, const ItcStamp& y) { return event_leq(x.events, y.events); }

Order itc_relation(const ItcStamp& x, const ItcStamp& y) {
  const bool xy = itc_leq(x, y);
  const bool yx = itc_leq(y, x);
  if (xy && yx) return Order::Equal;
  if (xy) return Order::Before;
  if (yx) return Order::After;
  return Order::Concurrent;
}

// --- text -------------------------------------------------------------------

std::string to_string(const IdTree& id) {
  if (id.is_leaf()) return id.is_one() ? "1" : "0";
  return "(" + to_string(id.left()) + "," + to_string(id.right()) + ")";
}

std::string to_string(const EventTree& e) {
  if (e.is_leaf()) return std::to_string(e.base());
  return "(" + std::to_string(e.base()) + ", " + to_string(e.left()) + ", " + to_string(e.right()) + ")";
}

std::string to_string(const ItcStamp& s) {
  return "(" + to_string(s.id) + "; " + to_string(s.events) + ")";
}

namespace {

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : text_(text) {}

  IdTree id() {
    skip();
    if (peek() == '(') {
      expect('(');
      auto l = id();
      expect(',');
      auto r = id();
      expect(')');
      return IdTree::pair(std::move(l), std::move(r));
    }
    const auto n = number();
    if (n > 1) fail("id leaves must be 0 or 1");
    return n ? IdTree::one() : IdTree::zero();
  }

  EventTree events() {
    skip();
    if (peek() == '(') {
      expect('(');
      const auto base = number();
      expect(',');
      auto l = events();
      expect(',');
      auto r = events();
      expect(')');
      return EventTree::node(base, std::move(l), std::move(r));
    }
    return EventTree::leaf(number());
  }

  void expect(char c) {
    skip();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void finish() {
    skip();
    if (pos_ != text_.size()) fail("trailing text");
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::uint64_t number() {
    skip();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (ec != std::errc{}) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error("itc text at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

IdTree parse_id_tree(std::string_view text) {
  TreeReader r(text);
  auto id = r.id();
  r.finish();
  return id;
}

EventTree parse_event_tree(std::string_view text) {
  TreeReader r(text);
  auto e = r.events();
  r.finish();
  return e.normalized();
}

ItcStamp parse_itc_stamp(std::string_view text) {
  TreeReader r(text);
  r.expect('(');
  auto id = r.id();
  r.expect(';');
  auto e = r.events();
  r.expect(')');
  r.finish();
  return {std::move(id), e.normalized()};
}

}  // namespace causality
