#include "noarb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "noarb/classify.hpp"
#include "noarb/generator.hpp"
#include "noarb/io.hpp"
#include "noarb/linalg.hpp"
#include "noarb/parity.hpp"
#include "noarb/portfolio.hpp"
#include "noarb/symmetry.hpp"

namespace noarb::cli {

namespace {

using io::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string ref_text(const Market& m, std::size_t node) {
  const NodeRef r = m.ref(node);
  return "(" + r.trajectory + ", " + std::to_string(r.stage) + ")";
}

// "-" writes to the text stream.
void emit_json(const std::string& path, const json& report, std::ostream& out) {
  if (path.empty()) return;
  const std::string text = report.dump(2) + "\n";
  if (path == "-") {
    out << text;
  } else {
    io::write_file(path, text);
  }
}

Market load_market(const std::string& path) { return Market(io::parse_market(io::read_file(path))); }

struct CheckOptions {
  std::string market;
  bool arbitrage_free = false;
  bool zero_neutral = false;
  bool find = false;
  std::string json_path;
};

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const Market m = load_market(o.market);
  const MarketVerdict v = classify_market(m);

  std::string property = "local-arbitrage-free";
  if (o.zero_neutral) property = "local-zero-neutral";
  if (o.find) property = "find-arbitrage";

  json report = {{"command", "check"}, {"property", property}, {"verdict", io::to_json(v, m)}};
  bool holds = false;
  if (o.find) {
    const auto record = find_arbitrage(m, v);
    holds = !record.has_value();
    if (record) {
      report["arbitrage"] = io::to_json(*record, m);
      out << "arbitrage opportunity at node " << ref_text(m, record->node) << ", strict gain on trajectory "
          << m.trajectory(record->strict_trajectory).id << " = " << to_string(record->terminal_gain[record->strict_trajectory])
          << "\n";
      out << "  holdings " << to_string(std::span<const Scalar>(record->witness.h)) << "\n";
    } else {
      out << "no arbitrage opportunity: every node is arbitrage-free\n";
    }
  } else {
    holds = o.zero_neutral ? v.zero_neutral() : v.arbitrage_free();
    for (const auto& n : v.nodes) {
      if (n.kind == VerdictKind::ArbitrageFree) continue;
      if (o.zero_neutral && n.kind == VerdictKind::ZeroNeutralOnly) continue;
      out << "node " << ref_text(m, n.node) << ": " << to_string(n.kind);
      if (n.separator) out << " h = " << to_string(std::span<const Scalar>(n.separator->h));
      out << "\n";
    }
  }
  out << "market: " << to_string(v.kind) << " (" << v.nodes.size() << " nodes, " << v.arbitrage_nodes.size()
      << " arbitrage, " << v.zero_neutral_only.size() << " 0-neutral only)\n";
  out << property << ": " << (holds ? "holds" : "fails") << "\n";
  report["holds"] = holds;
  report["timing_ms"] = elapsed_ms(start);
  emit_json(o.json_path, report, out);
  (void)err;
  return holds ? kHolds : kFails;
}

struct TransformOptions {
  std::string market;
  std::string transform;
  std::string output;
  bool verify = false;
  std::string json_path;
};

int cmd_transform(const TransformOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const Market m = load_market(o.market);
  const FractionalTransform t = io::transform_from_json(io::parse_json(io::read_file(o.transform)));

  const ImageRank rank = image_rank(t);
  if (!rank.spans_beyond_plane) {
    err << "warning: transform image has rank " << rank.rank << " < 3; invariance results need not apply\n";
  }

  TrajectorySet image;
  try {
    image = apply_transform(t, m.set());
  } catch (const DomainViolation& e) {
    err << "domain violation at trajectory " << e.trajectory() << ", stage " << e.stage() << ": " << e.what() << "\n";
    return kFails;
  }
  const std::string text = io::serialize_market(image);
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    io::write_file(o.output, text);
  }
  if (!o.verify) return kHolds;

  SymmetryReport rep;
  try {
    rep = verify_symmetry_on_market(t, m);
  } catch (const InvalidMarket& e) {
    err << "transformed market is invalid: " << e.what() << "\n";
    return kFails;
  }
  std::ostream& text_out = o.output.empty() || o.output == "-" ? err : out;
  for (std::size_t i : rep.violations) {
    const auto& n = rep.nodes[i];
    text_out << "node " << ref_text(m, n.source_node) << ": " << to_string(n.before) << " became " << to_string(n.after)
             << "\n";
  }
  text_out << "before: " << to_string(rep.before.kind) << ", after: " << to_string(rep.after.kind) << "\n";
  text_out << "invariance: " << (rep.holds() ? "holds" : "fails") << "\n";
  json report = {{"command", "transform"}, {"symmetry", io::to_json(rep)}, {"timing_ms", elapsed_ms(start)}};
  emit_json(o.json_path, report, text_out);
  return rep.holds() ? kHolds : kFails;
}

struct ParityOptions {
  std::string spec;
  bool demo = false;
  std::string json_path;
};

void print_parity(const std::string& label, const ParityReport& r, std::ostream& out) {
  out << label << ": " << (r.holds() ? "pi = 0 at every node" : "parity fails") << "\n";
  for (const auto& b : r.boundary_issues) out << "  boundary: " << b << "\n";
  for (const auto& n : r.not_zero_neutral) out << "  not 0-neutral: (" << n.trajectory << ", " << n.stage << ")\n";
  for (const auto& n : r.pi_failures) out << "  pi != 0: (" << n.trajectory << ", " << n.stage << ")\n";
}

int cmd_parity(const ParityOptions& o, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  if (o.demo == !o.spec.empty()) {
    err << "parity: give exactly one of SPEC or --demo\n";
    return kInvalid;
  }
  const ParitySpec spec = o.demo ? demo_spec() : io::parity_spec_from_json(io::parse_json(io::read_file(o.spec)));
  const ParityLabReport rep = run_parity_lab(spec);
  print_parity("source", rep.source, out);
  out << "swap symmetry: " << (rep.nas.holds() ? "verdicts preserved" : "verdicts changed") << "\n";
  print_parity("transformed", rep.transformed, out);
  out << "a_F identity: " << to_string(rep.identity_factor.a_F) << (rep.identity_factor.holds() ? "" : " (identity fails)")
      << "\n";
  out << "a_F swap: " << to_string(rep.nas_factor.a_F) << (rep.nas_factor.holds() ? "" : " (identity fails)") << "\n";
  out << "parity: " << (rep.holds() ? "holds" : "fails") << "\n";
  json report = {{"command", "parity"}, {"lab", io::to_json(rep)}, {"timing_ms", elapsed_ms(start)}};
  emit_json(o.json_path, report, out);
  return rep.holds() ? kHolds : kFails;
}

struct GenerateOptions {
  GeneratorParams params;
  std::string regime = "arbitrage-free";
  std::string price_lo = "1/2";
  std::string price_hi = "2";
  std::string output;
};

int cmd_generate(GenerateOptions o, std::ostream& out, std::ostream& err) {
  try {
    o.params.regime = parse_regime(o.regime);
    o.params.price_lo = parse_scalar(o.price_lo);
    o.params.price_hi = parse_scalar(o.price_hi);
    validate_params(o.params);
  } catch (const std::exception& e) {
    err << "generate: " << e.what() << "\n";
    return kInvalid;
  }
  const TrajectorySet ts = generate_market(o.params);
  const Market m(ts);
  const MarketVerdict v = classify_market(m);
  if (!regime_satisfied(o.params, v)) {
    err << "generate: market does not realize regime " << to_string(o.params.regime) << " (got " << to_string(v.kind)
        << ")\n";
    return kFails;
  }
  const std::string text = io::serialize_market(ts);
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    io::write_file(o.output, text);
  }
  return kHolds;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact no-arbitrage checks for trajectory markets", "noarb"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* c = app.add_subcommand("check", "Classify every node of a market");
  c->add_option("market", check.market, "Market document")->required();
  auto* f1 = c->add_flag("--local-arbitrage-free", check.arbitrage_free, "Every node arbitrage-free (default)");
  auto* f2 = c->add_flag("--local-zero-neutral", check.zero_neutral, "Every node 0-neutral");
  auto* f3 = c->add_flag("--find-arbitrage", check.find, "Construct an arbitrage portfolio if one exists");
  f1->excludes(f2)->excludes(f3);
  f2->excludes(f3);
  c->add_option("--json", check.json_path, "Write the JSON report here ('-' for stdout)");

  TransformOptions transform;
  auto* t = app.add_subcommand("transform", "Apply a fractional transform to a market");
  t->add_option("market", transform.market, "Market document")->required();
  t->add_option("--transform", transform.transform, "Transform document")->required();
  t->add_option("--output,-o", transform.output, "Transformed market ('-' or empty for stdout)");
  t->add_flag("--verify", transform.verify, "Check node verdict invariance");
  t->add_option("--json", transform.json_path, "Write the JSON report here");

  ParityOptions parity;
  auto* p = app.add_subcommand("parity", "Call-put parity lab");
  p->add_option("spec", parity.spec, "Parity spec document");
  p->add_flag("--demo", parity.demo, "K = 1, Y_T in {2, 1/2}, equal weights");
  p->add_option("--json", parity.json_path, "Write the JSON report here ('-' for stdout)");

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Generate a market for a regime");
  g->add_option("--depth", gen.params.depth, "Tree depth")->capture_default_str();
  g->add_option("--branching", gen.params.branching, "Children per node")->capture_default_str();
  g->add_option("--dim", gen.params.dim, "Risky assets")->capture_default_str();
  g->add_option("--seed", gen.params.seed, "RNG seed")->capture_default_str();
  g->add_option("--regime", gen.regime, "arbitrage-free | zero-neutral | plant-arbitrage")->capture_default_str();
  g->add_option("--plant", gen.params.plant, "Arbitrage nodes to plant")->capture_default_str();
  g->add_option("--numeraire", gen.params.numeraire, "Numeraire coordinate")->capture_default_str();
  g->add_option("--price-lo", gen.price_lo, "Lower price bound")->capture_default_str();
  g->add_option("--price-hi", gen.price_hi, "Upper price bound")->capture_default_str();
  g->add_option("--output,-o", gen.output, "Output path ('-' or empty for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kHolds;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (c->parsed()) return cmd_check(check, out, err);
    if (t->parsed()) return cmd_transform(transform, out, err);
    if (p->parsed()) return cmd_parity(parity, out, err);
    if (g->parsed()) return cmd_generate(gen, out, err);
  } catch (const InvalidMarket& e) {
    err << "invalid market: " << e.what() << "\n";
    return kInvalid;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace noarb::cli
