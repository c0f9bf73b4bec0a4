#include "zipshift/point.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zipshift/errors.hpp"
#include "zipshift/preimage.hpp"
#include "zipshift/space.hpp"

namespace zipshift {

Tail Tail::drop(std::size_t k) const {
  Tail t;
  if (k <= prefix.size()) {
    t.prefix.assign(prefix.begin() + static_cast<std::ptrdiff_t>(k), prefix.end());
    t.cycle = cycle;
  } else {
    std::size_t r = (k - prefix.size()) % cycle.size();
    t.cycle = cycle;
    std::rotate(t.cycle.begin(), t.cycle.begin() + static_cast<std::ptrdiff_t>(r), t.cycle.end());
  }
  t.canonicalize();
  return t;
}

void Tail::canonicalize() {
  std::size_t m = cycle.size();
  for (std::size_t d = 1; d < m; ++d) {
    if (m % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < m && periodic; ++i) periodic = cycle[i] == cycle[i - d];
    if (periodic) {
      cycle.resize(d);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
    prefix.pop_back();
  }
}

EpPoint::EpPoint(Tail left, Tail right) : left_(std::move(left)), right_(std::move(right)) {
  if (left_.cycle.empty() || right_.cycle.empty())
    throw std::invalid_argument("eventually periodic point needs non-empty periods");
  left_.canonicalize();
  right_.canonicalize();
}

EpPoint EpPoint::from_parts(Word left_period, Word left_transient, Word right_transient,
                            Word right_period) {
  std::reverse(left_period.begin(), left_period.end());
  std::reverse(left_transient.begin(), left_transient.end());
  return EpPoint(Tail{std::move(left_transient), std::move(left_period)},
                 Tail{std::move(right_transient), std::move(right_period)});
}

EpPoint EpPoint::from_function(const std::function<Symbol(std::int64_t)>& f, std::size_t left_pre,
                               std::size_t left_per, std::size_t right_pre, std::size_t right_per) {
  Tail left, right;
  for (std::size_t k = 0; k < left_pre; ++k) left.prefix.push_back(f(-1 - static_cast<std::int64_t>(k)));
  for (std::size_t k = left_pre; k < left_pre + left_per; ++k)
    left.cycle.push_back(f(-1 - static_cast<std::int64_t>(k)));
  for (std::size_t i = 0; i < right_pre; ++i) right.prefix.push_back(f(static_cast<std::int64_t>(i)));
  for (std::size_t i = right_pre; i < right_pre + right_per; ++i)
    right.cycle.push_back(f(static_cast<std::int64_t>(i)));
  return EpPoint(std::move(left), std::move(right));
}

Symbol EpPoint::at(std::int64_t i) const {
  if (i >= 0) return right_.at(static_cast<std::size_t>(i));
  return left_.at(static_cast<std::size_t>(-i - 1));
}

Word EpPoint::left_period() const { return Word(left_.cycle.rbegin(), left_.cycle.rend()); }
Word EpPoint::left_transient() const { return Word(left_.prefix.rbegin(), left_.prefix.rend()); }

namespace {

std::vector<std::string> point_tokens(std::string_view text) {
  std::string spaced;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') {
      spaced += " ( ";
    } else if (c == ')') {
      if (i + 1 >= text.size() || text[i + 1] != '*')
        throw ParseError("expected '*' after ')' at offset " + std::to_string(i));
      spaced += " )* ";
      ++i;
    } else if (c == ';') {
      spaced += " ; ";
    } else if (c == '*') {
      throw ParseError("unexpected '*' at offset " + std::to_string(i));
    } else {
      spaced += c;
    }
  }
  std::istringstream in(spaced);
  std::vector<std::string> tokens;
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

}  // namespace

EpPoint parse_point(const Alphabet& a, const Alphabet& a_prime, std::string_view text) {
  auto tokens = point_tokens(text);
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> ParseError {
    std::string near = pos < tokens.size() ? "'" + tokens[pos] + "'" : "end of input";
    return ParseError("point: " + what + " at token " + std::to_string(pos) + " (" + near + ")");
  };
  auto expect = [&](const char* tok) {
    if (pos >= tokens.size() || tokens[pos] != tok) throw fail(std::string("expected '") + tok + "'");
    ++pos;
  };
  auto symbols_until = [&](const Alphabet& alphabet, const char* stop) {
    Word w;
    while (pos < tokens.size() && tokens[pos] != stop) {
      const std::string& t = tokens[pos];
      if (t == "(" || t == ")*" || t == ";") throw fail(std::string("expected symbol or '") + stop + "'");
      auto s = alphabet.find(t);
      if (!s) throw fail("unknown symbol");
      w.push_back(*s);
      ++pos;
    }
    return w;
  };
  expect("(");
  Word lp = symbols_until(a, ")*");
  expect(")*");
  Word lt = symbols_until(a, ";");
  expect(";");
  Word rt = symbols_until(a_prime, "(");
  expect("(");
  Word rp = symbols_until(a_prime, ")*");
  expect(")*");
  if (pos != tokens.size()) throw fail("trailing input");
  if (lp.empty()) throw ParseError("point: empty left period");
  if (rp.empty()) throw ParseError("point: empty right period");
  return EpPoint::from_parts(std::move(lp), std::move(lt), std::move(rt), std::move(rp));
}

EpPoint parse_point(const ZipShiftSpace& space, std::string_view text) {
  return parse_point(space.a(), space.a_prime(), text);
}

std::string format_point(const Alphabet& a, const Alphabet& a_prime, const EpPoint& x) {
  std::string out = "(" + format_word(a, x.left_period()) + ")*";
  if (!x.left().prefix.empty()) out += " " + format_word(a, x.left_transient());
  out += " ; ";
  if (!x.right_transient().empty()) out += format_word(a_prime, x.right_transient()) + " ";
  out += "(" + format_word(a_prime, x.right_period()) + ")*";
  return out;
}

std::string format_point(const ZipShiftSpace& space, const EpPoint& x) {
  return format_point(space.a(), space.a_prime(), x);
}

EpPoint shift(const ZipShiftSpace& space, const EpPoint& x) {
  Word window;
  for (std::size_t i = 0; i < space.n(); ++i) window.push_back(x.right().at(i));
  Tail left = x.left();
  left.prefix.insert(left.prefix.begin(), space.tm()(window));
  return EpPoint(std::move(left), x.right().drop(1));
}

EpPoint shift_k(const ZipShiftSpace& space, const EpPoint& x, std::size_t k) {
  EpPoint y = x;
  for (std::size_t i = 0; i < k; ++i) y = shift(space, y);
  return y;
}

Rational MetricValue::value() const {
  if (!exponent) return Rational(0);
  BigInt den = 1;
  den <<= static_cast<unsigned>(*exponent);
  return Rational(BigInt(1), den);
}

std::strong_ordering MetricValue::operator<=>(const MetricValue& other) const {
  if (!exponent && !other.exponent) return std::strong_ordering::equal;
  if (!exponent) return std::strong_ordering::less;
  if (!other.exponent) return std::strong_ordering::greater;
  return other.exponent.value() <=> exponent.value();
}

std::optional<std::size_t> first_difference(const Tail& a, const Tail& b) {
  std::size_t bound = std::max(a.prefix.size(), b.prefix.size()) +
                      std::lcm(a.cycle.size(), b.cycle.size());
  for (std::size_t k = 0; k < bound; ++k)
    if (a.at(k) != b.at(k)) return k;
  return std::nullopt;
}

PointMetrics metrics(const EpPoint& s, const EpPoint& t) {
  PointMetrics m;
  auto right = first_difference(s.right(), t.right());
  auto left = first_difference(s.left(), t.left());
  if (right) m.d_plus.exponent = *right;
  if (left) m.d_minus.exponent = *left;
  if (right || left) {
    std::uint64_t n = std::numeric_limits<std::uint64_t>::max();
    if (right) n = std::min<std::uint64_t>(n, *right);
    if (left) n = std::min<std::uint64_t>(n, *left + 1);
    m.d.exponent = n;
  }
  m.d_pm = (m.d_minus.value() + m.d_plus.value()) / 2;
  return m;
}

AdmissibilityReport is_admissible(const ZipShiftSpace& space, const EpPoint& x) {
  AdmissibilityReport report;
  std::size_t len = std::max(space.graph().window() + 1, space.n());
  std::int64_t lo = -static_cast<std::int64_t>(x.left().prefix.size() + 2 * x.left().cycle.size() + len);
  std::int64_t hi = static_cast<std::int64_t>(x.right().prefix.size() + 2 * x.right().cycle.size() + len);
  for (std::int64_t s = lo; s + static_cast<std::int64_t>(len) <= hi; ++s) {
    Word left, right;
    for (std::int64_t i = s; i < s + static_cast<std::int64_t>(len); ++i)
      (i < 0 ? left : right).push_back(x.at(i));
    if (!space.admits_mixed(left, right)) {
      std::string text = format_word(space.a(), left);
      text += left.empty() ? "; " : " ; ";
      text += format_word(space.a_prime(), right);
      report.diagnostic = "window [" + text + "] at index " + std::to_string(s) + " is not admissible";
      return report;
    }
  }
  if (!is_liftable(space, x)) {
    report.diagnostic = "not liftable";
    return report;
  }
  report.admissible = true;
  return report;
}

EpPoint random_point(const ZipShiftSpace& space, std::mt19937_64& rng, const SampleOptions& options) {
  const LabeledGraph& g = space.graph();
  auto pick = [&](std::size_t count) {
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
  };
  std::size_t free_steps = std::uniform_int_distribution<std::size_t>(0, options.max_transient)(rng);

  // Forward: vertices v_0, v_1, ... until a vertex repeats after the free steps.
  std::size_t start = pick(g.vertex_count());
  std::vector<std::size_t> fwd{start};
  std::size_t fwd_cycle_start = 0;
  while (true) {
    auto out = g.out_edges(fwd.back());
    std::size_t next = g.edges()[out[pick(out.size())]].to;
    if (fwd.size() > free_steps) {
      auto it = std::find(fwd.rbegin(), fwd.rend(), next);
      if (it != fwd.rend()) {
        fwd_cycle_start = static_cast<std::size_t>(fwd.rend() - it) - 1;
        break;
      }
    }
    fwd.push_back(next);
  }

  // Backward: u_0 = start, u_k reached through edge bwd_edges[k-1] into u_{k-1}.
  std::vector<std::size_t> bwd{start};
  std::vector<std::size_t> bwd_edges;
  std::size_t bwd_cycle_start = 0;
  free_steps = std::uniform_int_distribution<std::size_t>(0, options.max_transient)(rng);
  while (true) {
    auto in = g.in_edges(bwd.back());
    std::size_t e = in[pick(in.size())];
    std::size_t prev = g.edges()[e].from;
    bwd_edges.push_back(e);
    if (bwd.size() > free_steps) {
      auto it = std::find(bwd.rbegin(), bwd.rend(), prev);
      if (it != bwd.rend()) {
        bwd_cycle_start = static_cast<std::size_t>(bwd.rend() - it) - 1;
        break;
      }
    }
    bwd.push_back(prev);
  }
  // Edge k-1 (into u_{k-1}) carries x_{-k}; edges repeat with the vertex cycle.
  std::size_t left_per = bwd.size() - bwd_cycle_start;
  std::size_t left_pre = bwd_cycle_start;
  auto f = [&](std::int64_t i) -> Symbol {
    if (i >= 0) return g.label(fwd[static_cast<std::size_t>(i)])[0];
    return g.edges()[bwd_edges[static_cast<std::size_t>(-i - 1)]].sofic;
  };
  return EpPoint::from_function(f, left_pre, left_per, fwd_cycle_start, fwd.size() - fwd_cycle_start);
}

}  // namespace zipshift
