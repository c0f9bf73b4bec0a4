#include "zipshift/codes.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "zipshift/errors.hpp"
#include "zipshift/orbits.hpp"
#include "zipshift/preimage.hpp"

namespace zipshift {

namespace {

std::string mixed_text(const BlockCodeSpec& spec, Symbol a, const Word& u) {
  return spec.source.a().name(a) + " ; " + format_word(spec.source.a_prime(), u);
}

Word right_window(const EpPoint& x, std::size_t start, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(x.right().at(start + i));
  return w;
}

}  // namespace

CodeValidation validate_code(const BlockCodeSpec& spec) {
  CodeValidation v;
  auto fail = [&](std::string why) {
    v.valid = false;
    v.failure = std::move(why);
    return v;
  };
  if (!spec.source.valid() || !spec.target.valid()) return fail("source or target space missing");
  const std::size_t w = spec.window;
  if (w == 0) return fail("window must be positive");
  const auto& src = spec.source;
  const auto& tgt = spec.target;

  for (const Word& u : language(src, w, Side::Aprime)) {
    auto it = spec.psi_plus.find(u);
    if (it == spec.psi_plus.end())
      return fail("psi_plus undefined on '" + format_word(src.a_prime(), u) + "'");
    if (it->second >= tgt.a_prime().size()) return fail("psi_plus value outside C'");
  }
  std::vector<MixedWord> mixed;
  for (auto& m : language_mixed(src, w + 1))
    if (m.left.size() == 1) mixed.push_back(m);
  for (const auto& m : mixed) {
    auto it = spec.psi_minus.find({m.left[0], m.right});
    if (it == spec.psi_minus.end())
      return fail("psi_minus undefined on '" + mixed_text(spec, m.left[0], m.right) + "'");
    if (it->second >= tgt.a().size()) return fail("psi_minus value outside C");
  }

  // Local commutation: phi^C_m(y_0 .. y_{m-1}) = psi_minus(phi_n(x_0 .. x_{n-1}); x_1 .. x_w).
  const std::size_t m = tgt.n(), n = src.n();
  const std::size_t len = std::max({w + 1, m + w - 1, n});
  for (const Word& u : language(src, len, Side::Aprime)) {
    Word y;
    for (std::size_t i = 0; i < m; ++i)
      y.push_back(spec.psi_plus.at(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                                        u.begin() + static_cast<std::ptrdiff_t>(i + w))));
    auto lhs = tgt.tm().lookup(y);
    if (!lhs)
      return fail("image block '" + format_word(tgt.a_prime(), y) + "' of '" +
                  format_word(src.a_prime(), u) + "' is not admissible in the target");
    Symbol a = src.tm()(std::span<const Symbol>(u).subspan(0, n));
    Word rest(u.begin() + 1, u.begin() + static_cast<std::ptrdiff_t>(1 + w));
    auto it = spec.psi_minus.find({a, rest});
    if (it == spec.psi_minus.end())
      return fail("psi_minus undefined on '" + mixed_text(spec, a, rest) + "'");
    if (it->second != *lhs)
      return fail("local commutation fails on '" + format_word(src.a_prime(), u) + "'");
  }

  // psi_minus may see a hidden history, so it must not depend on more than its phi image.
  std::map<std::pair<Symbol, Word>, std::pair<Symbol, Word>> by_image;
  for (const auto& mw : mixed) {
    Symbol value = spec.psi_minus.at({mw.left[0], mw.right});
    auto key = std::make_pair(mw.left[0], phi_extend(src.tm(), mw.right));
    auto [it, fresh] = by_image.emplace(key, std::make_pair(value, mw.right));
    if (!fresh && spec.psi_minus.at({mw.left[0], it->second.second}) != value)
      return fail("psi_minus distinguishes histories '" + mixed_text(spec, mw.left[0], mw.right) +
                  "' and '" + mixed_text(spec, mw.left[0], it->second.second) +
                  "' with the same phi image");
  }
  v.valid = true;
  return v;
}

BlockCode::BlockCode(BlockCodeSpec spec) : spec_(std::move(spec)), validation_(validate_code(spec_)) {}

EpPoint apply_code_unchecked(const BlockCodeSpec& spec, const EpPoint& x) {
  const std::size_t w = spec.window;
  auto lift = canonical_lift(spec.source, x);
  if (!lift) throw InvalidSpace("point is not admissible in the source space");
  auto history = [&](std::int64_t j) -> Symbol {
    return j >= 0 ? x.right().at(static_cast<std::size_t>(j)) : lift->at(static_cast<std::size_t>(-j - 1));
  };
  auto f = [&](std::int64_t i) -> Symbol {
    if (i >= 0) {
      Word u = right_window(x, static_cast<std::size_t>(i), w);
      auto it = spec.psi_plus.find(u);
      if (it == spec.psi_plus.end())
        throw InvalidCode("psi_plus undefined on '" + format_word(spec.source.a_prime(), u) + "'");
      return it->second;
    }
    Word u;
    for (std::int64_t j = i + 1; j <= i + static_cast<std::int64_t>(w); ++j) u.push_back(history(j));
    auto it = spec.psi_minus.find({x.at(i), u});
    if (it == spec.psi_minus.end()) throw InvalidCode("psi_minus undefined on '" + mixed_text(spec, x.at(i), u) + "'");
    return it->second;
  };
  std::size_t left_pre = std::max(x.left().prefix.size(), lift->prefix.size() + w + 1);
  std::size_t left_per = std::lcm(x.left().cycle.size(), lift->cycle.size());
  return EpPoint::from_function(f, left_pre, left_per, x.right().prefix.size(), x.right().cycle.size());
}

EpPoint apply_code(const BlockCode& code, const EpPoint& x) {
  if (!code.valid()) throw InvalidCode("invalid block code: " + code.validation().failure);
  return apply_code_unchecked(code.spec(), x);
}

namespace {

std::vector<EpPoint> test_points(const ZipShiftSpace& space, std::size_t samples, std::uint64_t seed,
                                 std::size_t max_period) {
  std::vector<EpPoint> points;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) points.push_back(random_point(space, rng));
  for (std::size_t m = 1; m <= max_period; ++m)
    for (auto& p : periodic_cycles(space, m)) points.push_back(p.point);
  return points;
}

}  // namespace

CommutationReport check_commutation(const BlockCodeSpec& spec, std::size_t samples, std::uint64_t seed) {
  CommutationReport report;
  for (const EpPoint& x : test_points(spec.source, samples, seed, 4)) {
    ++report.checked;
    try {
      EpPoint y = apply_code_unchecked(spec, x);
      if (!is_liftable(spec.target, y)) {
        report.ok = false;
        report.counterexample = x;
        report.reason = "image " + format_point(spec.target, y) + " is not in the target space";
        return report;
      }
      EpPoint lhs = apply_code_unchecked(spec, shift(spec.source, x));
      EpPoint rhs = shift(spec.target, y);
      if (lhs != rhs) {
        report.ok = false;
        report.counterexample = x;
        report.reason = "psi(sigma x) = " + format_point(spec.target, lhs) +
                        " but sigma(psi x) = " + format_point(spec.target, rhs);
        return report;
      }
    } catch (const Error& e) {
      report.ok = false;
      report.counterexample = x;
      report.reason = e.what();
      return report;
    }
  }
  return report;
}

BlockCodeSpec identity_code(const ZipShiftSpace& space) {
  BlockCodeSpec spec{space, space, 1, {}, {}};
  for (const Word& u : language(space, 1, Side::Aprime)) spec.psi_plus[u] = u[0];
  for (const auto& m : language_mixed(space, 2)) spec.psi_minus[{m.left[0], m.right}] = m.left[0];
  return spec;
}

InverseSearch invert_code(const BlockCodeSpec& spec, std::size_t max_window, std::uint64_t seed) {
  InverseSearch result;
  result.max_window = max_window;
  const auto& src = spec.source;
  const auto& tgt = spec.target;
  const std::size_t ws = spec.window;

  // Cheap screen: a conjugacy is injective on periodic points.
  for (std::size_t m = 1; m <= max_window; ++m) {
    std::map<EpPoint, EpPoint> seen;
    for (const auto& p : periodic_cycles(src, m)) {
      EpPoint image = apply_code_unchecked(spec, p.point);
      auto [it, fresh] = seen.emplace(image, p.point);
      if (!fresh && it->second != p.point) {
        result.reason = "not injective on periodic points of period " + std::to_string(m) + ": " +
                        format_point(src, it->second) + " and " + format_point(src, p.point) +
                        " have the same image";
        return result;
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<EpPoint> src_points, tgt_points;
  for (int i = 0; i < 50; ++i) src_points.push_back(random_point(src, rng));
  for (int i = 0; i < 50; ++i) tgt_points.push_back(random_point(tgt, rng));

  for (std::size_t w = 1; w <= max_window; ++w) {
    BlockCodeSpec inv{tgt, src, w, {}, {}};
    bool conflict = false;
    std::size_t len = std::max(w + ws - 1, ws);
    for (const Word& u : language(src, len, Side::Aprime)) {
      Word y;
      for (std::size_t i = 0; i < w; ++i)
        y.push_back(spec.psi_plus.at(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                                          u.begin() + static_cast<std::ptrdiff_t>(i + ws))));
      auto [it, fresh] = inv.psi_plus.emplace(y, u[0]);
      if (!fresh && it->second != u[0]) conflict = true;
    }
    for (const auto& m : language_mixed(src, len + 1)) {
      if (m.left.size() != 1) continue;
      const Word& u = m.right;
      Symbol c = spec.psi_minus.at({m.left[0], Word(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(ws))});
      Word y;
      for (std::size_t i = 0; i < w; ++i)
        y.push_back(spec.psi_plus.at(Word(u.begin() + static_cast<std::ptrdiff_t>(i),
                                          u.begin() + static_cast<std::ptrdiff_t>(i + ws))));
      auto [it, fresh] = inv.psi_minus.emplace(std::make_pair(c, y), m.left[0]);
      if (!fresh && it->second != m.left[0]) conflict = true;
    }
    if (conflict) continue;
    if (!validate_code(inv).valid) continue;
    bool round_trip = true;
    try {
      for (const auto& x : src_points)
        if (apply_code_unchecked(inv, apply_code_unchecked(spec, x)) != x) round_trip = false;
      for (const auto& y : tgt_points)
        if (apply_code_unchecked(spec, apply_code_unchecked(inv, y)) != y) round_trip = false;
    } catch (const Error&) {
      round_trip = false;
    }
    if (!round_trip) continue;
    result.inverse = std::move(inv);
    return result;
  }
  result.reason = "no inverse block code with window <= " + std::to_string(max_window);
  return result;
}

namespace {

std::string block_name(const Alphabet& alphabet, const Word& w) {
  bool single = std::all_of(w.begin(), w.end(), [&](Symbol s) { return alphabet.name(s).size() == 1; });
  return "[" + format_word(alphabet, w, single ? "" : ".") + "]";
}

// Minimal forbidden block words (length >= 2, up to max_len) for a block
// alphabet whose words are admissible iff `ok` says so.
std::vector<Word> minimal_forbidden(std::size_t letters, std::size_t max_len,
                                    const std::function<bool(const Word&)>& ok) {
  std::vector<Word> forbidden;
  std::vector<Word> level;
  for (Symbol s = 0; s < letters; ++s) level.push_back({s});
  std::set<Word> admissible(level.begin(), level.end());
  for (std::size_t len = 2; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& u : level)
      for (Symbol s = 0; s < letters; ++s) {
        Word w = u;
        w.push_back(s);
        if (!admissible.count(Word(w.begin() + 1, w.end()))) continue;
        if (ok(w)) next.push_back(w);
        else forbidden.push_back(w);
      }
    for (const Word& w : next) admissible.insert(w);
    level.swap(next);
  }
  return forbidden;
}

}  // namespace

HigherBlock::HigherBlock(const ZipShiftSpace& source, std::size_t N) : source_(source), N_(N) {
  if (N == 0) throw InvalidSpace("block length must be positive");
  const std::size_t n = source.n();
  const std::size_t n_new = n > N ? n - N + 1 : 1;
  const std::size_t K = N >= n ? N - n + 1 : 1;

  aprime_blocks_ = language(source, N, Side::Aprime);
  std::map<Word, Symbol> aprime_id;
  std::vector<std::string> aprime_names;
  for (std::size_t i = 0; i < aprime_blocks_.size(); ++i) {
    aprime_id[aprime_blocks_[i]] = static_cast<Symbol>(i);
    aprime_names.push_back(block_name(source.a_prime(), aprime_blocks_[i]));
  }
  auto spell = [&](const Word& blocks) {
    Word s = aprime_blocks_[blocks[0]];
    for (std::size_t i = 1; i < blocks.size(); ++i) s.push_back(aprime_blocks_[blocks[i]].back());
    return s;
  };
  auto consistent = [&](const Word& blocks) {
    for (std::size_t i = 1; i < blocks.size(); ++i) {
      const Word& p = aprime_blocks_[blocks[i - 1]];
      const Word& q = aprime_blocks_[blocks[i]];
      if (!std::equal(p.begin() + 1, p.end(), q.begin())) return false;
    }
    return true;
  };

  // phi on n_new consecutive blocks: phi images of the windows inside the first block.
  std::map<Word, Word> images;
  std::set<Word> a_set;
  for (const Word& s : language(source, N + n_new - 1, Side::Aprime)) {
    Word blocks;
    for (std::size_t i = 0; i < n_new; ++i)
      blocks.push_back(aprime_id.at(Word(s.begin() + static_cast<std::ptrdiff_t>(i),
                                         s.begin() + static_cast<std::ptrdiff_t>(i + N))));
    Word img = phi_extend(source.tm(), s);
    img.resize(K);
    images[blocks] = img;
    a_set.insert(img);
  }
  a_blocks_.assign(a_set.begin(), a_set.end());
  std::map<Word, Symbol> a_id;
  std::vector<std::string> a_names;
  for (std::size_t i = 0; i < a_blocks_.size(); ++i) {
    a_id[a_blocks_[i]] = static_cast<Symbol>(i);
    a_names.push_back(block_name(source.a(), a_blocks_[i]));
  }

  SpaceDefinition def;
  def.a = Alphabet(a_names);
  def.a_prime = Alphabet(aprime_names);
  def.n = n_new;
  for (const auto& [blocks, img] : images) def.phi[blocks] = a_id.at(img);
  if (source.kind() == SpaceKind::Sofic) {
    def.kind = SpaceKind::Sofic;
    LabeledGraph g = lift_window(source.graph(), std::max(source.graph().window(), N));
    for (std::size_t v = 0; v < g.vertex_count(); ++v) def.presentation.vertex_names.push_back("s" + std::to_string(v));
    for (const auto& e : g.edges()) {
      Word head(g.label(e.to).begin(), g.label(e.to).begin() + static_cast<std::ptrdiff_t>(N));
      def.presentation.edges.push_back({e.from, e.to, aprime_id.at(head)});
    }
  } else {
    def.kind = SpaceKind::Sft;
    std::size_t max_len = std::max<std::size_t>(2, source.step() + 2 > N ? source.step() + 2 - N : 2);
    def.forbidden = minimal_forbidden(aprime_blocks_.size(), max_len, [&](const Word& blocks) {
      return consistent(blocks) && source.admits(spell(blocks));
    });
  }
  target_ = ZipShiftSpace(std::move(def));
}

EpPoint HigherBlock::forward(const EpPoint& x) const {
  const std::size_t n = source_.n();
  const std::size_t K = a_blocks_.empty() ? 1 : a_blocks_[0].size();
  auto a_letter = [&](std::int64_t i) -> Symbol {
    if (i < 0) return x.at(i);
    return source_.tm()(right_window(x, static_cast<std::size_t>(i), n));
  };
  auto f = [&](std::int64_t j) -> Symbol {
    if (j >= 0) return target_.a_prime().at(block_name(source_.a_prime(), right_window(x, static_cast<std::size_t>(j), N_)));
    Word block;
    for (std::size_t i = 0; i < K; ++i) block.push_back(a_letter(j + static_cast<std::int64_t>(i)));
    return target_.a().at(block_name(source_.a(), block));
  };
  return EpPoint::from_function(f, x.left().prefix.size() + K, x.left().cycle.size(),
                                x.right().prefix.size(), x.right().cycle.size());
}

EpPoint HigherBlock::inverse(const EpPoint& y) const {
  auto f = [&](std::int64_t j) -> Symbol {
    return j >= 0 ? aprime_blocks_[y.at(j)][0] : a_blocks_[y.at(j)][0];
  };
  return EpPoint::from_function(f, y.left().prefix.size(), y.left().cycle.size(),
                                y.right().prefix.size(), y.right().cycle.size());
}

BlockCodeSpec HigherBlock::code() const {
  BlockCodeSpec spec{source_, target_, N_, {}, {}};
  for (std::size_t i = 0; i < aprime_blocks_.size(); ++i) spec.psi_plus[aprime_blocks_[i]] = static_cast<Symbol>(i);
  const std::size_t K = a_blocks_[0].size();
  for (const auto& m : language_mixed(source_, N_ + 1)) {
    if (m.left.size() != 1) continue;
    Word block{m.left[0]};
    if (K > 1) {
      Word inner = phi_extend(source_.tm(), std::span<const Symbol>(m.right).subspan(0, N_ - 1));
      block.insert(block.end(), inner.begin(), inner.end());
    }
    spec.psi_minus[{m.left[0], m.right}] = target_.a().at(block_name(source_.a(), block));
  }
  return spec;
}

HigherPower::HigherPower(const ZipShiftSpace& source, std::size_t N) : source_(source), N_(N) {
  if (N == 0) throw InvalidSpace("block length must be positive");
  const std::size_t n = source.n();
  const std::size_t m_new = 1 + (n - 1 + N - 1) / N;

  aprime_blocks_ = language(source, N, Side::Aprime);
  std::map<Word, Symbol> aprime_id;
  std::vector<std::string> aprime_names;
  for (std::size_t i = 0; i < aprime_blocks_.size(); ++i) {
    aprime_id[aprime_blocks_[i]] = static_cast<Symbol>(i);
    aprime_names.push_back(block_name(source.a_prime(), aprime_blocks_[i]));
  }
  auto spell = [&](const Word& blocks) {
    Word s;
    for (Symbol b : blocks) s.insert(s.end(), aprime_blocks_[b].begin(), aprime_blocks_[b].end());
    return s;
  };
  std::map<Word, Word> images;
  std::set<Word> a_set;
  for (const Word& s : language(source, m_new * N, Side::Aprime)) {
    Word blocks;
    for (std::size_t i = 0; i < m_new; ++i)
      blocks.push_back(aprime_id.at(Word(s.begin() + static_cast<std::ptrdiff_t>(i * N),
                                         s.begin() + static_cast<std::ptrdiff_t>((i + 1) * N))));
    Word img = phi_extend(source.tm(), s);
    img.resize(N);
    images[blocks] = img;
    a_set.insert(img);
  }
  a_blocks_.assign(a_set.begin(), a_set.end());
  std::map<Word, Symbol> a_id;
  std::vector<std::string> a_names;
  for (std::size_t i = 0; i < a_blocks_.size(); ++i) {
    a_id[a_blocks_[i]] = static_cast<Symbol>(i);
    a_names.push_back(block_name(source.a(), a_blocks_[i]));
  }
  SpaceDefinition def;
  def.a = Alphabet(a_names);
  def.a_prime = Alphabet(aprime_names);
  def.n = m_new;
  for (const auto& [blocks, img] : images) def.phi[blocks] = a_id.at(img);
  if (source.kind() == SpaceKind::Sofic) {
    def.kind = SpaceKind::Sofic;
    const LabeledGraph& g = source.graph();
    for (std::size_t v = 0; v < g.vertex_count(); ++v) def.presentation.vertex_names.push_back("s" + std::to_string(v));
    std::function<void(std::size_t, std::size_t, Word&)> walk = [&](std::size_t start, std::size_t v, Word& w) {
      if (w.size() == N) {
        def.presentation.edges.push_back({start, v, aprime_id.at(w)});
        return;
      }
      w.push_back(g.label(v)[0]);
      for (std::size_t e : g.out_edges(v)) walk(start, g.edges()[e].to, w);
      w.pop_back();
    };
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      Word w;
      walk(v, v, w);
    }
  } else if (source.kind() == SpaceKind::Full) {
    def.kind = SpaceKind::Full;
  } else {
    def.kind = SpaceKind::Sft;
    std::size_t max_len = std::max<std::size_t>(2, (source.step() + N - 1) / N + 1);
    def.forbidden = minimal_forbidden(aprime_blocks_.size(), max_len,
                                      [&](const Word& blocks) { return source.admits(spell(blocks)); });
  }
  target_ = ZipShiftSpace(std::move(def));
}

EpPoint HigherPower::forward(const EpPoint& x) const {
  auto f = [&](std::int64_t i) -> Symbol {
    Word block;
    for (std::size_t r = 0; r < N_; ++r) block.push_back(x.at(i * static_cast<std::int64_t>(N_) + static_cast<std::int64_t>(r)));
    if (i >= 0) return target_.a_prime().at(block_name(source_.a_prime(), block));
    return target_.a().at(block_name(source_.a(), block));
  };
  auto blocks_for = [&](std::size_t len) { return (len + N_ - 1) / N_; };
  auto period_for = [&](std::size_t per) { return std::lcm(per, N_) / N_; };
  return EpPoint::from_function(f, blocks_for(x.left().prefix.size()), period_for(x.left().cycle.size()),
                                blocks_for(x.right().prefix.size()), period_for(x.right().cycle.size()));
}

EpPoint HigherPower::inverse(const EpPoint& y) const {
  auto f = [&](std::int64_t j) -> Symbol {
    std::int64_t N = static_cast<std::int64_t>(N_);
    std::int64_t b = j >= 0 ? j / N : -((-j - 1) / N) - 1;
    std::size_t r = static_cast<std::size_t>(j - b * N);
    return b >= 0 ? aprime_blocks_[y.at(b)][r] : a_blocks_[y.at(b)][r];
  };
  return EpPoint::from_function(f, y.left().prefix.size() * N_, y.left().cycle.size() * N_,
                                y.right().prefix.size() * N_, y.right().cycle.size() * N_);
}

}  // namespace zipshift
