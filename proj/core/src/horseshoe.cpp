#include "zipshift/horseshoe.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "zipshift/errors.hpp"

namespace zipshift {

namespace {

struct Affine {
  Rational a = 1;
  Rational b = 0;
  Rational operator()(const Rational& x) const { return a * x + b; }
  // (*this) after g
  Affine after(const Affine& g) const { return Affine{a * g.a, a * g.b + b}; }
};

const Interval kUnit{0, 1};

}  // namespace

bool disjoint(const Rect& r, const Rect& s) {
  return r.x.hi < s.x.lo || s.x.hi < r.x.lo || r.y.hi < s.y.lo || s.y.hi < r.y.lo;
}

HorseshoeModel::HorseshoeModel(std::size_t N, Rational epsilon) : N_(N), epsilon_(std::move(epsilon)) {
  if (N == 0) throw GeometryError("N must be at least 1");
  if (epsilon_ <= 0) throw GeometryError("epsilon must be positive");
  delta_ = Rational(2 * N) + epsilon_;
  delta_prime_ = Rational(N) / delta_;
  // 2N strips of width 1/delta with equal gaps around them.
  gap_ = (1 - Rational(2 * N) / delta_) / Rational(2 * N + 1);
  for (std::size_t j = 0; j < 2 * N; ++j) {
    Rational lo = gap_ * (j + 1) + Rational(j) / delta_;
    branches_.push_back(Branch{j / 2 + 1, j % 2 == 0, Interval{lo, lo + 1 / delta_}});
  }
  Rational spare = (1 - 2 * delta_prime_) / 3;
  h_low_[0] = spare;
  h_low_[1] = 2 * spare + delta_prime_;
  for (std::size_t j = 1; j < branches_.size(); ++j)
    if (!(branches_[j - 1].strip.hi < branches_[j].strip.lo)) throw GeometryError("branch rectangles overlap");
  if (delta_ * delta_prime_ != Rational(N)) throw GeometryError("delta * delta' != N");
}

Rect HorseshoeModel::branch_rect(std::size_t b) const { return Rect{branches_.at(b).strip, kUnit}; }

Rect HorseshoeModel::h_rect(std::size_t letter) const {
  return Rect{kUnit, Interval{h_low_[letter], h_low_[letter] + delta_prime_}};
}

Rational HorseshoeModel::x_map(std::size_t b, const Rational& x) const {
  const Branch& br = branches_.at(b);
  Rational t = delta_ * (x - br.strip.lo);
  return br.zero ? t : 1 - t;
}

Rational HorseshoeModel::x_unmap(std::size_t b, const Rational& x) const {
  const Branch& br = branches_.at(b);
  return br.strip.lo + (br.zero ? x : 1 - x) / delta_;
}

Rational HorseshoeModel::y_map(std::size_t letter, const Rational& y) const {
  return delta_prime_ * y + h_low_[letter];
}

Rational HorseshoeModel::y_unmap(std::size_t letter, const Rational& y) const {
  return (y - h_low_[letter]) / delta_prime_;
}

Interval HorseshoeModel::x_unmap(std::size_t b, const Interval& I) const {
  Rational p = x_unmap(b, I.lo), q = x_unmap(b, I.hi);
  return p <= q ? Interval{p, q} : Interval{q, p};
}

Interval HorseshoeModel::y_map(std::size_t letter, const Interval& I) const {
  return Interval{y_map(letter, I.lo), y_map(letter, I.hi)};
}

std::optional<std::size_t> HorseshoeModel::branch_of(const Point2& p) const {
  if (!kUnit.contains(p.y)) return std::nullopt;
  for (std::size_t b = 0; b < branches_.size(); ++b)
    if (branches_[b].strip.contains(p.x)) return b;
  return std::nullopt;
}

std::optional<std::size_t> HorseshoeModel::h_of(const Point2& p) const {
  if (!kUnit.contains(p.x)) return std::nullopt;
  for (std::size_t l = 0; l < 2; ++l)
    if (h_rect(l).y.contains(p.y)) return l;
  return std::nullopt;
}

Point2 HorseshoeModel::apply(const Point2& p) const {
  auto b = branch_of(p);
  if (!b) throw EscapedSquare(0);
  return apply(*b, p);
}

Point2 HorseshoeModel::apply(std::size_t b, const Point2& p) const {
  return Point2{x_map(b, p.x), y_map(letter_of(b), p.y)};
}

Point2 HorseshoeModel::unapply(std::size_t b, const Point2& p) const {
  return Point2{x_unmap(b, p.x), y_unmap(letter_of(b), p.y)};
}

SpaceDefinition coding_definition(std::size_t N) {
  SpaceDefinition def;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= N; ++i) {
    names.push_back("0_" + std::to_string(i));
    names.push_back("1_" + std::to_string(i));
  }
  def.a = Alphabet({"a", "b"});
  def.a_prime = Alphabet(names);
  def.n = 1;
  def.kind = SpaceKind::Full;
  for (Symbol s = 0; s < names.size(); ++s) def.phi[Word{s}] = s % 2;
  return def;
}

ZipShiftSpace coding_space(std::size_t N) { return ZipShiftSpace(coding_definition(N)); }

std::string format_code(const HorseshoeModel& model, const ItineraryCode& code) {
  std::vector<std::string> names;
  for (const Branch& b : model.branches()) names.push_back((b.zero ? "0_" : "1_") + std::to_string(b.fold));
  Alphabet a({"a", "b"});
  Alphabet a_prime(names);
  std::string out = format_word(a, code.past);
  if (!out.empty()) out += " ";
  out += ";";
  if (!code.future.empty()) out += " " + format_word(a_prime, code.future);
  return out;
}

ItineraryCode code_point(const HorseshoeModel& model, const Point2& p, std::size_t k,
                         const std::vector<std::size_t>& branch_choices) {
  ItineraryCode code;
  Point2 q = p;
  for (std::size_t i = 0; i < k; ++i) {
    auto b = model.branch_of(q);
    if (!b) throw EscapedSquare(static_cast<long>(i));
    code.future.push_back(static_cast<Symbol>(*b));
    q = model.apply(*b, q);
  }
  q = p;
  for (std::size_t i = 1; i <= k; ++i) {
    auto l = model.h_of(q);
    if (!l) throw EscapedSquare(-static_cast<long>(i));
    code.past.insert(code.past.begin(), static_cast<Symbol>(*l));
    std::size_t fold = i - 1 < branch_choices.size() ? branch_choices[i - 1] : 1;
    if (fold < 1 || fold > model.N()) throw GeometryError("branch choice out of range");
    q = model.unapply(model.branch_index(fold, *l == 0), q);
  }
  return code;
}

ItineraryCode code_point(const HorseshoeModel& model, const Point2& p, std::size_t k) {
  return code_point(model, p, k, {});
}

Rect decode(const HorseshoeModel& model, const ItineraryCode& code) {
  Interval x = kUnit;
  for (auto it = code.future.rbegin(); it != code.future.rend(); ++it) {
    if (*it >= model.branches().size()) throw Unrealizable("no branch rectangle for letter " + std::to_string(*it));
    x = model.x_unmap(*it, x);
  }
  Interval y = kUnit;
  for (Symbol l : code.past) {
    if (l > 1) throw Unrealizable("no horizontal rectangle for letter " + std::to_string(l));
    y = model.y_map(l, y);
  }
  if (y.hi < y.lo || x.hi < x.lo) throw Unrealizable("empty rectangle");
  return Rect{x, y};
}

Point2 periodic_point(const HorseshoeModel& model, const Word& word) {
  if (word.empty()) throw GeometryError("empty periodic word");
  // x = unmap_{w0}(unmap_{w1}(... unmap_{w_{m-1}}(x)))
  Affine fx;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    if (*it >= model.branches().size()) throw Unrealizable("no branch rectangle for letter " + std::to_string(*it));
    Rational b0 = model.x_unmap(*it, Rational(0));
    Affine step{model.x_unmap(*it, Rational(1)) - b0, b0};
    fx = step.after(fx);
  }
  // y_{t+1} = g_{letter(w_t)}(y_t) around the cycle
  Affine fy;
  for (Symbol b : word) {
    Affine step{model.delta_prime(), model.y_map(model.letter_of(b), Rational(0))};
    fy = step.after(fy);
  }
  return Point2{fx.b / (1 - fx.a), fy.b / (1 - fy.a)};
}

ConjugacyReport verify_conjugacy(const HorseshoeModel& model, const ZipShiftSpace& space,
                                 std::size_t depth, std::size_t samples, std::uint64_t seed) {
  ConjugacyReport report;
  std::mt19937_64 rng(seed);
  const std::size_t k = std::max<std::size_t>(depth, 1);
  std::uniform_int_distribution<std::size_t> letter(0, 1), branch(0, model.branches().size() - 1);
  auto note = [&](std::string s) {
    if (report.violations.size() < 8) report.violations.push_back(std::move(s));
  };
  std::set<ItineraryCode> codes;
  std::vector<Rect> rects;
  for (std::size_t s = 0; s < samples; ++s) {
    ItineraryCode code;
    for (std::size_t i = 0; i < k; ++i) code.past.push_back(static_cast<Symbol>(letter(rng)));
    for (std::size_t i = 0; i <= k; ++i) code.future.push_back(static_cast<Symbol>(branch(rng)));
    ++report.samples;
    Rect r = decode(model, code);
    Point2 p{(r.x.lo + r.x.hi) / 2, (r.y.lo + r.y.hi) / 2};

    ItineraryCode depth_k{code.past, Word(code.future.begin(), code.future.end() - 1)};
    ItineraryCode got = code_point(model, p, k);
    ItineraryCode image = code_point(model, model.apply(p), k);
    ItineraryCode expected{Word(code.past.begin() + 1, code.past.end()), Word(code.future.begin() + 1, code.future.end())};
    expected.past.push_back(space.tm()(Word{code.future[0]}));
    if (got != depth_k || image != expected) {
      ++report.window_mismatches;
      note("window mismatch at " + format_code(model, code) + ": image coded " + format_code(model, image) +
           ", shifted code " + format_code(model, expected));
    }

    std::size_t count = 0;
    for (std::size_t b = 0; b < model.branches().size(); ++b) {
      Point2 q = model.unapply(b, p);
      if (model.branch_of(q) == b && model.apply(b, q) == p) ++count;
    }
    if (count != model.N()) {
      ++report.preimage_violations;
      note("point coded " + format_code(model, code) + " has " + std::to_string(count) + " pre-images");
    }

    if (codes.insert(depth_k).second) {
      Rect rk = decode(model, depth_k);
      for (const Rect& other : rects)
        if (!disjoint(rk, other)) {
          ++report.overlaps;
          note("rectangle of " + format_code(model, depth_k) + " overlaps another code");
        }
      rects.push_back(rk);
    }
  }
  return report;
}

std::vector<std::string> stable_string(std::string_view w) {
  std::vector<bool> primed;
  std::size_t i = 0;
  while (i < w.size()) {
    if (w[i] != '0' && w[i] != '1') throw BadLetter("bad letter at byte " + std::to_string(i) + " of '" + std::string(w) + "'");
    ++i;
    if (i < w.size() && w[i] == '\'') {
      primed.push_back(true);
      ++i;
    } else if (w.substr(i, 3) == "′") {
      primed.push_back(true);
      i += 3;
    } else {
      primed.push_back(false);
    }
  }
  if (primed.empty()) throw BadLetter("empty word");
  const std::string prime = w.find("′") != std::string_view::npos ? "′" : "'";
  const std::size_t k = primed.size();
  if (k > 20) throw BadLetter("word too long for a stable string");
  std::vector<std::string> out;
  for (std::size_t t = 0; t < (std::size_t{1} << k); ++t) {
    std::string word;
    for (std::size_t pos = 1; pos <= k; ++pos) {
      // Position pos fills blocks of 2^pos, offset by half a block.
      std::size_t bit = ((t + (std::size_t{1} << (pos - 1))) >> pos) & 1;
      word += bit ? '1' : '0';
      if (primed[pos - 1]) word += prime;
    }
    out.push_back(word);
  }
  return out;
}

}  // namespace zipshift
