#include "zipshift_cli/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "CLI11.hpp"
#include "json.hpp"
#include "zipshift/zipshift.hpp"

namespace zipshift::cli {

namespace {

using Record = std::vector<std::string>;

// What a subcommand produced: tab-separated records, or one raw document.
struct Output {
  std::vector<Record> records;
  std::optional<std::string> document;
  int status = 0;
};

std::string join(const Record& r) {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "\t" : "") + r[i];
  return s;
}

std::string metric_text(const MetricValue& m) {
  return m.exponent ? "2^-" + std::to_string(*m.exponent) : "0";
}

std::string kind_name(SpaceKind k) {
  return k == SpaceKind::Full ? "full" : k == SpaceKind::Sft ? "sft" : "sofic";
}

Record matrix_row(const std::vector<int>& row) {
  Record r;
  for (int v : row) r.push_back(std::to_string(v));
  return r;
}

PeriodicPoint parse_periodic(const ZipShiftSpace& space, const std::string& text) {
  if (text.find(';') == std::string::npos) {
    Word w = parse_word(space.a_prime(), text);
    try {
      return make_periodic(space, w);
    } catch (const std::invalid_argument& e) {
      throw InvalidSpace(e.what());
    }
  }
  auto p = as_periodic(space, parse_point(space, text));
  if (!p) throw InvalidSpace("'" + text + "' is not a periodic point of the space");
  return *p;
}

std::string model_rect(const Rect& r) {
  return "[" + format_rational(r.x.lo) + "," + format_rational(r.x.hi) + "]x[" + format_rational(r.y.lo) +
         "," + format_rational(r.y.hi) + "]";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zip shift spaces: construction, pre-images, block codes, orbits, horseshoe"};
  app.require_subcommand(1);
  bool json = false;
  std::uint64_t seed = 0;
  app.add_flag("--json", json, "Emit one JSON document instead of tab-separated records");
  app.add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();

  std::string spec_path, point_text, point_text2, side = "aprime", dot_path, w_text, periodic_text;
  std::size_t k = 1, dmax = 32, m = 1, level = 1, max_window = 3, samples = 200, depth = 6, N = 1;
  std::string eps_text = "1";
  bool backward_flag = false, count_only = false, classify = false;
  std::string command;
  std::function<Output()> action;

  auto on = [&](CLI::App* sub, std::string name, std::function<Output()> f) {
    sub->callback([&, name, f] {
      command = name;
      action = f;
    });
  };

  auto* space_cmd = app.add_subcommand("space", "Space specs")->require_subcommand(1);
  {
    auto* s = space_cmd->add_subcommand("validate", "Check a space spec");
    s->add_option("spec", spec_path)->required();
    on(s, "space validate", [&] {
      auto sp = load_space(spec_path);
      Output o;
      o.records.push_back({"valid", kind_name(sp.kind()), "n=" + std::to_string(sp.n()),
                           "A=" + std::to_string(sp.a().size()), "A'=" + std::to_string(sp.a_prime().size())});
      return o;
    });
    s = space_cmd->add_subcommand("words", "List admissible words");
    s->add_option("spec", spec_path)->required();
    s->add_option("-k", k, "Word length")->required();
    s->add_option("--side", side)->check(CLI::IsMember({"a", "aprime"}))->capture_default_str();
    on(s, "space words", [&] {
      auto sp = load_space(spec_path);
      Output o;
      Side sd = side == "a" ? Side::A : Side::Aprime;
      for (const Word& w : language(sp, k, sd)) o.records.push_back({format_word(sd == Side::A ? sp.a() : sp.a_prime(), w)});
      return o;
    });
    s = space_cmd->add_subcommand("matrices", "Adjacency and transition matrices");
    s->add_option("spec", spec_path)->required();
    on(s, "space matrices", [&] {
      auto sp = load_space(spec_path);
      MatrixSet ms = build_matrices(sp);
      Output o;
      o.records.push_back({"K", std::to_string(ms.K)});
      o.records.push_back({"N", std::to_string(ms.N)});
      Record header{"aprime_words"};
      for (const Word& w : ms.aprime_words) header.push_back(format_word(sp.a_prime(), w));
      o.records.push_back(header);
      for (std::size_t i = 0; i < ms.aprime_adj.size(); ++i) {
        Record r{"aprime_adj", format_word(sp.a_prime(), ms.aprime_words[i])};
        for (auto& v : matrix_row(ms.aprime_adj[i])) r.push_back(v);
        o.records.push_back(r);
      }
      header = {"a_words"};
      for (const Word& w : ms.a_words) header.push_back(format_word(sp.a(), w));
      o.records.push_back(header);
      for (std::size_t i = 0; i < ms.a_adj.size(); ++i) {
        Record r{"a_adj", format_word(sp.a(), ms.a_words[i])};
        for (auto& v : matrix_row(ms.a_adj[i])) r.push_back(v);
        o.records.push_back(r);
      }
      for (std::size_t i = 0; i < ms.t.size(); ++i) {
        Record r{"t", format_word(sp.a(), ms.a_words[i])};
        for (auto& v : matrix_row(ms.t[i])) r.push_back(v);
        o.records.push_back(r);
      }
      for (const Word& w : ms.a_forbidden) o.records.push_back({"a_forbidden", format_word(sp.a(), w)});
      return o;
    });
    s = space_cmd->add_subcommand("irreducible", "Irreducibility of the A' side");
    s->add_option("spec", spec_path)->required();
    on(s, "space irreducible", [&] {
      auto sp = load_space(spec_path);
      auto rep = is_irreducible(sp);
      Output o;
      if (rep.irreducible) {
        o.records.push_back({"irreducible"});
        for (const auto& [x, y, w] : rep.witnesses)
          o.records.push_back({sp.a_prime().name(x), sp.a_prime().name(y), format_word(sp.a_prime(), w)});
      } else {
        Record r{"reducible"};
        if (rep.disconnected)
          r.insert(r.end(), {sp.a_prime().name(rep.disconnected->first), sp.a_prime().name(rep.disconnected->second)});
        o.records.push_back(r);
      }
      return o;
    });
  }

  auto* graph_cmd = app.add_subcommand("graph", "Labeled graph")->require_subcommand(1);
  {
    auto* s = graph_cmd->add_subcommand("build", "Build the labeled graph and export DOT");
    s->add_option("spec", spec_path)->required();
    s->add_flag("--backward", backward_flag);
    s->add_option("--dot", dot_path, "Output file, - for stdout")->required();
    on(s, "graph build", [&] {
      auto sp = load_space(spec_path);
      const LabeledGraph& g = backward_flag ? sp.backward_graph() : sp.graph();
      std::string dot = export_dot(g, sp.a(), sp.a_prime());
      Output o;
      if (dot_path == "-") {
        o.document = dot;
        return o;
      }
      std::ofstream f(dot_path, std::ios::binary);
      if (!f) throw ParseError("cannot write '" + dot_path + "'");
      f << dot;
      o.records.push_back({"vertices", std::to_string(g.vertex_count()), "edges", std::to_string(g.edges().size())});
      return o;
    });
  }

  auto* point_cmd = app.add_subcommand("point", "Points")->require_subcommand(1);
  {
    auto* s = point_cmd->add_subcommand("shift", "Apply the zip shift k times");
    s->add_option("spec", spec_path)->required();
    s->add_option("point", point_text)->required();
    s->add_option("-k", k)->capture_default_str();
    on(s, "point shift", [&] {
      auto sp = load_space(spec_path);
      EpPoint x = parse_point(sp, point_text);
      // shift is a formula on the letters; an inadmissible input only earns a warning
      if (auto rep = is_admissible(sp, x); !rep) err << "warning: point is not admissible: " << rep.diagnostic << "\n";
      Output o;
      o.records.push_back({format_point(sp, shift_k(sp, x, k))});
      return o;
    });
    s = point_cmd->add_subcommand("preimages", "All y with shift_depth(y) = x");
    s->add_option("spec", spec_path)->required();
    s->add_option("point", point_text)->required();
    s->add_option("--depth", k)->capture_default_str();
    s->add_option("--dmax", dmax)->capture_default_str();
    s->add_flag("--classify", classify, "First record: label classification of the backward graph");
    on(s, "point preimages", [&] {
      auto sp = load_space(spec_path);
      EpPoint x = parse_point(sp, point_text);
      if (auto rep = is_admissible(sp, x); !rep) throw InvalidSpace("point is not admissible: " + rep.diagnostic);
      Output o;
      std::vector<EpPoint> pts;
      if (k == 1) {
        auto res = preimages(sp, x, dmax);
        if (classify) o.records.push_back({"classification", describe(res.classification)});
        pts = res.points;
      } else {
        pts = preimages_k(sp, x, k, dmax);
      }
      for (const auto& y : pts) o.records.push_back({format_point(sp, y)});
      return o;
    });
    s = point_cmd->add_subcommand("metrics", "d, d+, d-, d+- between two points");
    s->add_option("spec", spec_path)->required();
    s->add_option("p1", point_text)->required();
    s->add_option("p2", point_text2)->required();
    on(s, "point metrics", [&] {
      auto sp = load_space(spec_path);
      auto pm = metrics(parse_point(sp, point_text), parse_point(sp, point_text2));
      Output o;
      o.records.push_back({"d", metric_text(pm.d)});
      o.records.push_back({"d+", metric_text(pm.d_plus)});
      o.records.push_back({"d-", metric_text(pm.d_minus)});
      o.records.push_back({"d+-", format_rational(pm.d_pm)});
      return o;
    });
  }

  {
    auto* s = app.add_subcommand("periodic", "Periodic points of period m");
    s->add_option("spec", spec_path)->required();
    s->add_option("-m", m)->required()->check(CLI::PositiveNumber);
    s->add_flag("--count-only", count_only);
    on(s, "periodic", [&] {
      auto sp = load_space(spec_path);
      Output o;
      if (count_only) {
        o.records.push_back({std::to_string(count_periodic(sp, m))});
        return o;
      }
      for (const auto& p : periodic_points(sp, m)) o.records.push_back({format_point(sp, p.point)});
      return o;
    });
    s = app.add_subcommand("preperiodic", "Pre-periodic points of a periodic point");
    s->add_option("spec", spec_path)->required();
    s->add_option("point", point_text, "Periodic point, or its repeating A' word")->required();
    s->add_option("--level", level)->capture_default_str()->check(CLI::PositiveNumber);
    s->add_option("--dmax", dmax)->capture_default_str();
    on(s, "preperiodic", [&] {
      auto sp = load_space(spec_path);
      PeriodicPoint p = parse_periodic(sp, point_text);
      Output o;
      for (const auto& y : pre_periodic_points(sp, p, level, dmax)) o.records.push_back({format_point(sp, y)});
      return o;
    });
  }

  auto* code_cmd = app.add_subcommand("code", "Sliding block codes")->require_subcommand(1);
  {
    auto* s = code_cmd->add_subcommand("check", "Validate tables and check shift commutation");
    s->add_option("codespec", spec_path)->required();
    s->add_option("--samples", samples)->capture_default_str();
    on(s, "code check", [&] {
      BlockCodeSpec spec = load_code(spec_path);
      Output o;
      auto v = validate_code(spec);
      if (!v.valid) {
        o.records.push_back({"invalid", v.failure});
        o.status = 1;
        return o;
      }
      auto rep = check_commutation(spec, samples, seed);
      if (!rep.ok) {
        o.records.push_back({"fails", format_point(spec.source, *rep.counterexample), rep.reason});
        o.status = 1;
        return o;
      }
      o.records.push_back({"commutes", std::to_string(rep.checked)});
      return o;
    });
    s = code_cmd->add_subcommand("apply", "Image of a point");
    s->add_option("codespec", spec_path)->required();
    s->add_option("point", point_text)->required();
    on(s, "code apply", [&] {
      BlockCode code(load_code(spec_path));
      EpPoint x = parse_point(code.spec().source, point_text);
      Output o;
      o.records.push_back({format_point(code.spec().target, apply_code(code, x))});
      return o;
    });
    s = code_cmd->add_subcommand("invert", "Search an inverse block code");
    s->add_option("codespec", spec_path)->required();
    s->add_option("--max-window", max_window)->capture_default_str();
    on(s, "code invert", [&] {
      BlockCode code(load_code(spec_path));
      if (!code.valid()) throw InvalidCode("invalid block code: " + code.validation().failure);
      auto res = invert_code(code.spec(), max_window, seed);
      Output o;
      if (!res.inverse) {
        o.records.push_back({"not found", res.reason});
        o.status = 1;
        return o;
      }
      o.document = code_to_json(*res.inverse);
      return o;
    });
  }

  {
    auto* s = app.add_subcommand("homoclinic", "Homoclinic orbits of a point to a periodic orbit");
    s->add_option("spec", spec_path)->required();
    s->add_option("--periodic", periodic_text, "Periodic point, or its repeating A' word")->required();
    s->add_option("--point", point_text)->required();
    on(s, "homoclinic", [&] {
      auto sp = load_space(spec_path);
      PeriodicPoint p = parse_periodic(sp, periodic_text);
      EpPoint x = parse_point(sp, point_text);
      HomoclinicDatum d;
      try {
        d = make_homoclinic_datum(sp, p, x);
      } catch (const std::invalid_argument& e) {
        throw InvalidSpace(e.what());
      }
      auto res = homoclinic_orbits(sp, d);
      Output o;
      o.records.push_back({"N_x", std::to_string(d.n_x), "N'_x", std::to_string(d.n_prime_x)});
      o.records.push_back({"orbits", std::to_string(res.orbits.size()), "sum_bound", std::to_string(res.sum_bound),
                           res.exceeds_sum_bound ? "exceeds" : "within"});
      for (const auto& orb : res.orbits) {
        Record r{"orbit", format_word(sp.a_prime(), orb.choices)};
        for (std::int64_t i = -1; i > -static_cast<std::int64_t>(d.n_x); --i)
          r.push_back(format_point(sp, orbit_point(sp, d, orb, i)));
        o.records.push_back(r);
      }
      return o;
    });
  }

  auto* hs_cmd = app.add_subcommand("horseshoe", "N-to-1 horseshoe model")->require_subcommand(1);
  {
    auto* s = hs_cmd->add_subcommand("build", "Model geometry");
    s->add_option("-n", N)->required()->check(CLI::PositiveNumber);
    s->add_option("--eps", eps_text)->capture_default_str();
    on(s, "horseshoe build", [&] {
      HorseshoeModel model(N, parse_rational(eps_text));
      Output o;
      o.records.push_back({"delta", format_rational(model.delta())});
      o.records.push_back({"delta'", format_rational(model.delta_prime())});
      o.records.push_back({"gap", format_rational(model.gap())});
      for (std::size_t b = 0; b < model.branches().size(); ++b) {
        const auto& br = model.branches()[b];
        o.records.push_back({"V", std::string(br.zero ? "0_" : "1_") + std::to_string(br.fold), model_rect(model.branch_rect(b))});
      }
      o.records.push_back({"H", "a", model_rect(model.h_rect(0))});
      o.records.push_back({"H", "b", model_rect(model.h_rect(1))});
      return o;
    });
    s = hs_cmd->add_subcommand("verify", "Check the conjugacy with the coding space");
    s->add_option("-n", N)->required()->check(CLI::PositiveNumber);
    s->add_option("--eps", eps_text)->capture_default_str();
    s->add_option("--depth", depth)->capture_default_str();
    s->add_option("--samples", samples)->capture_default_str();
    on(s, "horseshoe verify", [&] {
      HorseshoeModel model(N, parse_rational(eps_text));
      auto rep = verify_conjugacy(model, coding_space(N), depth, samples, seed);
      Output o;
      o.records.push_back({"samples", std::to_string(rep.samples)});
      o.records.push_back({"window_mismatches", std::to_string(rep.window_mismatches)});
      o.records.push_back({"overlaps", std::to_string(rep.overlaps)});
      o.records.push_back({"preimage_violations", std::to_string(rep.preimage_violations)});
      for (const auto& v : rep.violations) o.records.push_back({"violation", v});
      o.status = rep.ok() ? 0 : 1;
      return o;
    });
    s = hs_cmd->add_subcommand("stable-string", "Stable string of a word (N = 2)");
    s->add_option("w", w_text)->required();
    on(s, "horseshoe stable-string", [&] {
      Output o;
      o.records.push_back(stable_string(w_text));
      return o;
    });
    s = hs_cmd->add_subcommand("coding", "Spec file of the coding zip shift");
    s->add_option("-n", N)->required()->check(CLI::PositiveNumber);
    on(s, "horseshoe coding", [&] {
      Output o;
      o.document = space_to_json(coding_definition(N));
      return o;
    });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (!action) {
    err << "no subcommand\n";
    return 2;
  }

  Output o;
  try {
    o = action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  if (json) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["status"] = o.status;
    if (o.document) j["document"] = *o.document;
    else j["records"] = o.records;
    out << j.dump(2) << "\n";
  } else if (o.document) {
    out << *o.document;
  } else {
    for (const auto& r : o.records) out << join(r) << "\n";
  }
  return o.status;
}

}  // namespace zipshift::cli
