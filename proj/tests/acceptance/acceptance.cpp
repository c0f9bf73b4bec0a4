// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "oracles.hpp"
#include "zipshift_cli/cli.hpp"

using namespace zipshift;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<void(Outcome&)> body;
};

const char* kFixtures[] = {"abc3.json",   "full2.json",        "sigma_f.json",   "sigma_g.json",
                           "primed4.json",   "disconnected.json", "classical.json", "twostep.json",
                           "even.json",   "sofic6.json"};

std::string cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  zipshift::cli::run_cli(args, out, err);
  return out.str();
}

EpPoint pt(const ZipShiftSpace& sp, const std::string& text) { return parse_point(sp, text); }

void stable_strings(Outcome& o) {
  if (cli({"horseshoe", "stable-string", "00"}) != "00\t10\t11\t01\n") o.fail("chain for 00");
  if (cli({"horseshoe", "stable-string", "10′1′"}) != "00′0′\t10′0′\t11′0′\t01′0′\t01′1′\t11′1′\t10′1′\t00′1′\n")
    o.fail("chain for 10'1'");
  o.detail = o.ok ? "both chains byte-exact" : o.detail;
}

void periodic_counts(Outcome& o) {
  auto sp = coding_space(2);
  std::string seen;
  for (std::size_t m = 1; m <= 3; ++m) {
    std::size_t got = periodic_points(sp, m).size();
    std::size_t want = std::size_t{1} << (2 * m);
    seen += (seen.empty() ? "" : " ") + std::to_string(got);
    if (got != want) o.fail("m=" + std::to_string(m) + " gave " + std::to_string(got));
  }
  if (o.ok) o.detail = "counts " + seen;
}

void preimage_cardinality(Outcome& o) {
  for (auto [name, want] : {std::pair{"sigma_f.json", 2u}, std::pair{"sigma_g.json", 4u}}) {
    auto sp = oracle::load(name);
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
      EpPoint x = random_point(sp, rng);
      auto got = preimages(sp, x).points.size();
      if (got != want) o.fail(std::string(name) + " " + format_point(sp, x) + " has " + std::to_string(got));
    }
  }
  if (o.ok) o.detail = "200 points";
}

void homoclinic(Outcome& o) {
  auto sp = oracle::load("primed4.json");
  auto p = make_periodic(sp, parse_word(sp.a_prime(), "0 1'"));
  auto datum = make_homoclinic_datum(sp, p, pt(sp, "(a b)* b a ; 1 (0 1')*"));
  auto r = homoclinic_orbits(sp, datum);
  if (r.orbits.size() != 4) o.fail(std::to_string(r.orbits.size()) + " orbits");
  std::set<EpPoint> first, second;
  for (const auto& orb : r.orbits) {
    first.insert(orbit_point(sp, datum, orb, -1));
    second.insert(orbit_point(sp, datum, orb, -2));
  }
  std::set<EpPoint> h1{pt(sp, "(a b)* b ; 0 1 (0 1')*"), pt(sp, "(a b)* b ; 0' 1 (0 1')*")};
  std::set<EpPoint> h2{pt(sp, "(a b)* ; 1 0 1 (0 1')*"), pt(sp, "(a b)* ; 1' 0 1 (0 1')*"),
                       pt(sp, "(a b)* ; 1 0' 1 (0 1')*"), pt(sp, "(a b)* ; 1' 0' 1 (0 1')*")};
  if (first != h1) o.fail("first-level points differ");
  if (second != h2) o.fail("second-level points differ");
  if (o.ok) o.detail = "4 orbits, h1 h2 h11 h12 h21 h22 match";
}

void conjugacy(Outcome& o) {
  for (auto [N, eps] : {std::pair{std::size_t{1}, Rational(1)}, std::pair{std::size_t{2}, Rational(1, 2)}}) {
    auto r = verify_conjugacy(HorseshoeModel(N, eps), coding_space(N), 6, 200, 7);
    if (r.window_mismatches || r.overlaps || r.preimage_violations)
      o.fail("N=" + std::to_string(N) + ": " + (r.violations.empty() ? "" : r.violations[0]));
  }
  if (o.ok) o.detail = "N=1,2 depth 6, 200 samples each";
}

void trace_counting(Outcome& o) {
  std::vector<ZipShiftSpace> spaces;
  for (const char* name : kFixtures) {
    auto sp = oracle::load(name);
    if (sp.kind() != SpaceKind::Sofic && sp.a_prime().size() <= 4) spaces.push_back(sp);
  }
  spaces.push_back(coding_space(1));
  spaces.push_back(coding_space(2));
  for (const auto& sp : spaces)
    for (std::size_t m = 1; m <= 5; ++m)
      if (count_periodic(sp, m) != oracle::cycles(sp.definition(), m).size())
        o.fail("m=" + std::to_string(m) + " on " + space_to_json(sp.definition()).substr(0, 40));
  if (o.ok) o.detail = std::to_string(spaces.size()) + " spaces, m <= 5";
}

void commutation(Outcome& o) {
  std::vector<std::pair<std::string, BlockCodeSpec>> codes;
  for (const char* name : kFixtures) codes.push_back({std::string("identity ") + name, identity_code(oracle::load(name))});
  codes.push_back({"swap", load_code(oracle::fixture("swap.json"))});
  codes.push_back({"collapse", load_code(oracle::fixture("collapse.json"))});
  for (const char* name : {"abc3.json", "even.json", "twostep.json"}) {
    HigherBlock h(oracle::load(name), 2);
    codes.push_back({std::string("2-block ") + name, h.code()});
    auto inv = invert_code(h.code(), 2);
    if (!inv.inverse) o.fail(std::string("no inverse for 2-block ") + name);
    else codes.push_back({std::string("inverse 2-block ") + name, *inv.inverse});
  }
  for (const auto& [label, spec] : codes) {
    if (!validate_code(spec).valid) o.fail(label + " invalid");
    auto r = check_commutation(spec, 200, 11);
    if (!r.ok) o.fail(label + ": " + r.reason);
  }
  BlockCodeSpec bad = load_code(oracle::fixture("collapse.json"));
  auto& entry = bad.psi_minus.begin()->second;
  entry = entry == 0 ? 1 : 0;
  auto r = check_commutation(bad, 200, 11);
  if (r.ok || !r.counterexample) o.fail("corrupted table was not caught");
  if (o.ok) o.detail = std::to_string(codes.size()) + " codes commute; corrupted table fails at " +
                       format_point(bad.source, *r.counterexample);
}

void higher_block_power(Outcome& o) {
  std::size_t checked = 0;
  for (const char* name : kFixtures) {
    auto sp = oracle::load(name);
    for (std::size_t N = 1; N <= 3; ++N) {
      HigherBlock hb(sp, N);
      HigherPower hp(sp, N);
      std::mt19937_64 rng(N);
      for (int i = 0; i < 100; ++i) {
        EpPoint x = random_point(sp, rng);
        EpPoint y = hb.forward(x);
        if (hb.inverse(y) != x) o.fail(std::string("block round trip ") + name);
        if (hb.forward(shift(sp, x)) != shift(hb.target(), y)) o.fail(std::string("block commutation ") + name);
        EpPoint z = hp.forward(x);
        if (hp.inverse(z) != x) o.fail(std::string("power round trip ") + name);
        if (hp.forward(shift_k(sp, x, N)) != shift(hp.target(), z)) o.fail(std::string("power commutation ") + name);
        ++checked;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " points";
}

void preimage_oracle(Outcome& o) {
  std::size_t checked = 0;
  for (const char* name : kFixtures) {
    auto sp = oracle::load(name);
    if (sp.a_prime().size() > 6) continue;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
      EpPoint x = random_point(sp, rng);
      auto r = preimages(sp, x).points;
      if (std::set<EpPoint>(r.begin(), r.end()) != oracle::preimage_points(sp.definition(), x, 12))
        o.fail(std::string(name) + " " + format_point(sp, x));
      ++checked;
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " points";
}

void even_shift(Outcome& o) {
  auto sp = oracle::load("even.json");
  if (sp.admits(parse_word(sp.a_prime(), "1 0 1"))) o.fail("101 accepted");
  if (!sp.admits(parse_word(sp.a_prime(), "1 0 0 1"))) o.fail("1001 rejected");
  // vertex-like graph with the duplicated 0 vertex; edge label a' / phi_2(first letter of source, a')
  std::set<std::string> want{"v0_1 -> v0_1 [label=\"1/a\"];", "v0_1 -> v1_0 [label=\"0/b\"];",
                             "v1_0 -> v2_0 [label=\"0/c\"];", "v2_0 -> v0_1 [label=\"1/b\"];",
                             "v2_0 -> v1_0 [label=\"0/c\"];"};
  std::set<std::string> got;
  std::istringstream dot(export_dot(sp.graph(), sp.a(), sp.a_prime()));
  for (std::string line; std::getline(dot, line);)
    if (line.find("->") != std::string::npos) got.insert(line.substr(line.find_first_not_of(' ')));
  if (got != want) o.fail("edge table differs");
  if (o.ok) o.detail = "5 edges match";
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "stable strings", 1, stable_strings},
      {2, "periodic counts", 5, periodic_counts},
      {3, "pre-image cardinality", 5, preimage_cardinality},
      {4, "homoclinic orbits", 5, homoclinic},
      {5, "conjugacy", 30, conjugacy},
      {6, "trace counting", 10, trace_counting},
      {7, "commutation", 30, commutation},
      {8, "higher block/power", 30, higher_block_power},
      {9, "pre-image oracle", 60, preimage_oracle},
      {10, "even shift", 1, even_shift},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs >= c.limit_seconds) o.fail("over the time limit");
    failures += !o.ok;
    std::printf("%s criterion %d (%s): %.3f s / %.0f s, %s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_seconds, o.detail.c_str());
  }
  return failures ? 1 : 0;
}
