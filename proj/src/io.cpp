#include "noarb/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "noarb/linalg.hpp"

namespace noarb::io {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

Scalar read_scalar(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (!j.is_string()) fail(path, "expected a rational string");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

Vector read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rationals");
  Vector out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_scalar(j[i], path + "/" + std::to_string(i)));
  return out;
}

Matrix read_matrix(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of rows");
  Matrix out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_vector(j[i], path + "/" + std::to_string(i)));
  return out;
}

std::size_t read_index(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) fail(path, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

long read_long(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<long>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

json write_vector(std::span<const Scalar> v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(to_string(e));
  return out;
}

json write_matrix(const Matrix& m) {
  json out = json::array();
  for (const auto& row : m) out.push_back(write_vector(row));
  return out;
}

json write_ref(const NodeRef& r) { return {{"trajectory", r.trajectory}, {"stage", r.stage}}; }

void check_version(const json& j) {
  const json& v = field(j, "schema_version", "");
  if (read_string(v, "/schema_version") != kSchemaVersion) fail("/schema_version", "unsupported schema version");
}

ParityTree read_tree(const json& j, const std::string& path) {
  ParityTree t;
  if (!j.is_object()) fail(path, "expected a tree node object");
  if (j.contains("Y")) {
    t.Y = read_scalar(j["Y"], path + "/Y");
    return t;
  }
  const json& kids = field(j, "children", path);
  if (!kids.is_array()) fail(path + "/children", "expected an array");
  for (std::size_t i = 0; i < kids.size(); ++i) t.children.push_back(read_tree(kids[i], path + "/children/" + std::to_string(i)));
  t.weights = read_vector(field(j, "weights", path), path + "/weights");
  return t;
}

}  // namespace

json to_json(const TrajectorySet& ts) {
  json trajs = json::array();
  for (const auto& t : ts.trajectories) {
    trajs.push_back({{"id", t.id}, {"prices", write_matrix(t.prices)}, {"tags", t.tags}, {"horizon", t.horizon}});
  }
  return {{"schema_version", kSchemaVersion},
          {"dim", ts.dim},
          {"numeraire", ts.numeraire},
          {"s0", write_vector(ts.s0)},
          {"w0", ts.w0},
          {"trajectories", std::move(trajs)}};
}

TrajectorySet market_from_json(const json& j) {
  if (!j.is_object()) fail("", "expected a market document object");
  check_version(j);
  TrajectorySet ts;
  ts.dim = read_index(field(j, "dim", ""), "/dim");
  ts.numeraire = read_index(field(j, "numeraire", ""), "/numeraire");
  ts.s0 = read_vector(field(j, "s0", ""), "/s0");
  ts.w0 = read_string(field(j, "w0", ""), "/w0");
  const json& trajs = field(j, "trajectories", "");
  if (!trajs.is_array()) fail("/trajectories", "expected an array");
  for (std::size_t i = 0; i < trajs.size(); ++i) {
    const std::string p = "/trajectories/" + std::to_string(i);
    Trajectory t;
    t.id = read_string(field(trajs[i], "id", p), p + "/id");
    t.prices = read_matrix(field(trajs[i], "prices", p), p + "/prices");
    const json& tags = field(trajs[i], "tags", p);
    if (!tags.is_array()) fail(p + "/tags", "expected an array of strings");
    for (std::size_t k = 0; k < tags.size(); ++k) t.tags.push_back(read_string(tags[k], p + "/tags/" + std::to_string(k)));
    t.horizon = read_index(field(trajs[i], "horizon", p), p + "/horizon");
    ts.trajectories.push_back(std::move(t));
  }
  return ts;
}

std::string serialize_market(const TrajectorySet& ts) { return to_json(ts).dump(2) + "\n"; }

TrajectorySet parse_market(const std::string& text) { return market_from_json(parse_json(text)); }

json to_json(const FractionalTransform& t) {
  json mult = std::visit(
      [](const auto& m) -> json {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, NumeraireCoordinate>) {
          return "numeraire";
        } else if constexpr (std::is_same_v<M, Monomial>) {
          return {{"monomial", {{"coeff", to_string(m.coeff)}, {"exponents", m.exponents}}}};
        } else if constexpr (std::is_same_v<M, SampleTable>) {
          json s = json::array();
          for (const auto& [p, v] : m.entries) s.push_back({{"s", write_vector(p)}, {"value", to_string(v)}});
          return {{"samples", std::move(s)}};
        } else {
          return {{"compose", json::array({to_json(*m.first), to_json(*m.second)})}};
        }
      },
      t.multiplier);
  return {{"L", write_matrix(t.L)},
          {"src_numeraire", t.src_numeraire},
          {"dst_numeraire", t.dst_numeraire},
          {"multiplier", std::move(mult)}};
}

FractionalTransform transform_from_json(const json& j) {
  FractionalTransform t;
  t.L = read_matrix(field(j, "L", ""), "/L");
  t.src_numeraire = read_index(field(j, "src_numeraire", ""), "/src_numeraire");
  t.dst_numeraire = read_index(field(j, "dst_numeraire", ""), "/dst_numeraire");
  if (j.contains("multiplier")) {
    const json& m = j["multiplier"];
    if (m.is_string()) {
      if (m.get<std::string>() != "numeraire") fail("/multiplier", "unknown multiplier '" + m.get<std::string>() + "'");
    } else if (m.is_object() && m.contains("monomial")) {
      const json& mono = m["monomial"];
      Monomial out;
      out.coeff = read_scalar(field(mono, "coeff", "/multiplier/monomial"), "/multiplier/monomial/coeff");
      const json& ex = field(mono, "exponents", "/multiplier/monomial");
      if (!ex.is_array()) fail("/multiplier/monomial/exponents", "expected an array of integers");
      for (std::size_t i = 0; i < ex.size(); ++i) {
        out.exponents.push_back(read_long(ex[i], "/multiplier/monomial/exponents/" + std::to_string(i)));
      }
      t.multiplier = std::move(out);
    } else if (m.is_object() && m.contains("samples")) {
      const json& s = m["samples"];
      if (!s.is_array()) fail("/multiplier/samples", "expected an array");
      SampleTable table;
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string p = "/multiplier/samples/" + std::to_string(i);
        table.entries.emplace_back(read_vector(field(s[i], "s", p), p + "/s"), read_scalar(field(s[i], "value", p), p + "/value"));
      }
      t.multiplier = std::move(table);
    } else if (m.is_object() && m.contains("compose")) {
      const json& c = m["compose"];
      if (!c.is_array() || c.size() != 2) fail("/multiplier/compose", "expected two transforms");
      t.multiplier = Composite{std::make_shared<const FractionalTransform>(transform_from_json(c[0])),
                               std::make_shared<const FractionalTransform>(transform_from_json(c[1]))};
    } else {
      fail("/multiplier", "unrecognized multiplier");
    }
  }
  try {
    validate_transform(t);
  } catch (const std::invalid_argument& e) {
    fail("", e.what());
  }
  return t;
}

ParitySpec parity_spec_from_json(const json& j) {
  if (!j.is_object()) fail("", "expected a parity spec object");
  ParitySpec spec;
  spec.strike = read_scalar(field(j, "strike", ""), "/strike");
  if (j.contains("times")) spec.times = read_vector(j["times"], "/times");
  if (j.contains("bond")) spec.bond = read_vector(j["bond"], "/bond");
  if (j.contains("root_offset")) spec.root_offset = read_vector(j["root_offset"], "/root_offset");
  if (j.contains("tree")) {
    spec.tree = read_tree(j["tree"], "/tree");
  } else {
    const Vector terminal = read_vector(field(j, "terminal", ""), "/terminal");
    const Vector weights = read_vector(field(j, "weights", ""), "/weights");
    auto one = one_step_spec(spec.strike, terminal, weights);
    spec.tree = std::move(one.tree);
  }
  return spec;
}

json to_json(const HullCertificate& c) {
  return {{"indices", c.indices}, {"weights", write_vector(c.weights)}};
}

json to_json(const SeparationCertificate& c) {
  return {{"h", write_vector(c.h)},
          {"kind", c.kind == SeparationKind::StrictSeparator ? "StrictSeparator" : "WeakArbitrageWitness"}};
}

json to_json(const NodeVerdict& v, const Market& m) {
  json out = {{"node", v.node}, {"at", write_ref(m.ref(v.node))}, {"kind", to_string(v.kind)},
              {"increments", write_matrix(v.increments.points())}};
  if (v.membership) out["membership"] = to_json(*v.membership);
  if (v.separator) out["separator"] = to_json(*v.separator);
  return out;
}

json to_json(const MarketVerdict& v, const Market& m) {
  json nodes = json::array();
  for (const auto& n : v.nodes) nodes.push_back(to_json(n, m));
  json arb = json::array(), zn = json::array();
  for (std::size_t id : v.arbitrage_nodes) arb.push_back(write_ref(m.ref(id)));
  for (std::size_t id : v.zero_neutral_only) zn.push_back(write_ref(m.ref(id)));
  return {{"kind", to_string(v.kind)}, {"nodes", std::move(nodes)}, {"arbitrage_nodes", std::move(arb)},
          {"zero_neutral_only", std::move(zn)}};
}

json to_json(const Portfolio& p, const Market& m) {
  json holdings = json::array();
  for (std::size_t id = 0; id < p.holdings.size(); ++id) {
    if (is_zero(p.holdings[id])) continue;
    holdings.push_back({{"at", write_ref(m.ref(id))}, {"h", write_vector(p.holdings[id])}});
  }
  json liq = json::object();
  for (std::size_t t = 0; t < p.liquidation.size(); ++t) liq[m.trajectory(t).id] = p.liquidation[t];
  return {{"initial_value", to_string(p.initial_value)}, {"holdings", std::move(holdings)}, {"liquidation", std::move(liq)}};
}

json to_json(const ArbitrageRecord& r, const Market& m) {
  json gains = json::object();
  for (std::size_t t = 0; t < r.terminal_gain.size(); ++t) gains[m.trajectory(t).id] = to_string(r.terminal_gain[t]);
  return {{"node", write_ref(m.ref(r.node))},
          {"witness", to_json(r.witness)},
          {"portfolio", to_json(r.portfolio, m)},
          {"terminal_gains", std::move(gains)},
          {"strict_trajectory", m.trajectory(r.strict_trajectory).id}};
}

json to_json(const SymmetryReport& r) {
  json nodes = json::array();
  for (const auto& n : r.nodes) {
    nodes.push_back({{"source_node", n.source_node}, {"target_node", n.target_node}, {"before", to_string(n.before)},
                     {"after", to_string(n.after)}, {"holds", n.holds}});
  }
  json bad = json::array();
  for (std::size_t i : r.violations) bad.push_back(nodes[i]);
  return {{"holds", r.holds()},
          {"rank", r.rank.rank},
          {"spans_beyond_plane", r.rank.spans_beyond_plane},
          {"before", to_string(r.before.kind)},
          {"after", to_string(r.after.kind)},
          {"implications", std::move(nodes)},
          {"violations", std::move(bad)}};
}

json to_json(const ParityReport& r) {
  auto refs = [](const std::vector<NodeRef>& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(write_ref(x));
    return out;
  };
  return {{"holds", r.holds()},
          {"market", to_string(r.verdict.kind)},
          {"boundary_issues", r.boundary_issues},
          {"not_zero_neutral", refs(r.not_zero_neutral)},
          {"derivation_failures", refs(r.derivation_failures)},
          {"pi_failures", refs(r.pi_failures)}};
}

json to_json(const ParityLabReport& r) {
  auto factor = [](const ParityFactor& f) {
    json out = {{"a_F", to_string(f.a_F)}, {"holds", f.holds()}};
    if (f.failure) out["failure"] = write_ref(*f.failure);
    return out;
  };
  return {{"holds", r.holds()},
          {"source", to_json(r.source)},
          {"nas", to_json(r.nas)},
          {"transformed", to_json(r.transformed)},
          {"identity_factor", factor(r.identity_factor)},
          {"nas_factor", factor(r.nas_factor)}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace noarb::io
