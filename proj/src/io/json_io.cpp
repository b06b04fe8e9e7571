#include "mprs/io/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace mprs {
namespace {

std::string_view relation_symbol(Relation r) {
  switch (r) {
    case Relation::kLessEqual: return "<=";
    case Relation::kEqual: return "=";
    case Relation::kGreaterEqual: return ">=";
  }
  return "=";
}

Relation relation_from_symbol(const std::string& s) {
  if (s == "<=") return Relation::kLessEqual;
  if (s == "=") return Relation::kEqual;
  if (s == ">=") return Relation::kGreaterEqual;
  throw ModelError("unknown constraint sense '" + s + "'");
}

// JSON has no infinity; null stands for +inf.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double from_finite_or_null(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

Json points_to_json(const std::vector<Point>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back({p[0], p[1]});
  return out;
}

std::vector<Point> points_from_json(const Json& j) {
  std::vector<Point> pts;
  for (const auto& p : j) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
  return pts;
}

template <class T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ModelError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ModelError(std::string("bad field '") + key + "': " + e.what());
  }
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["kind"] = to_string(inst.metadata.kind);
  j["n"] = inst.n;
  j["K"] = inst.num_groups();
  j["c_lower"] = inst.c_lower;
  j["deviations"] = inst.deviations;
  j["partition"] = inst.partition;
  Json rows = Json::array(), senses = Json::array(), rhs = Json::array();
  for (const auto& c : inst.feasible_set) {
    Json terms = Json::array();
    for (const auto& t : c.terms) terms.push_back({t.var, t.coeff});
    rows.push_back(std::move(terms));
    senses.push_back(relation_symbol(c.relation));
    rhs.push_back(c.rhs);
  }
  j["constraints"] = {{"rows", rows}, {"senses", senses}, {"rhs", rhs}};
  const auto& md = inst.metadata;
  Json m;
  m["totally_unimodular"] = md.totally_unimodular;
  m["seed"] = md.seed ? Json(*md.seed) : Json(nullptr);
  if (md.graph) {
    Json arcs = Json::array();
    for (const auto& a : md.graph->arcs) arcs.push_back({a.tail, a.head});
    m["graph"] = {{"nodes", points_to_json(md.graph->nodes)},
                  {"arcs", arcs},
                  {"source", md.graph->source},
                  {"sink", md.graph->sink}};
  }
  if (md.medians) {
    m["medians"] = {{"locations", md.medians->locations},
                    {"p", md.medians->medians},
                    {"points", points_to_json(md.medians->points)},
                    {"demands", md.medians->demands}};
  }
  if (md.kind == InstanceKind::kToy) m["toy_n"] = md.toy_n;
  m["partition_scheme"] = md.partition_scheme;
  m["partition_groups"] = md.partition_groups;
  j["metadata"] = std::move(m);
  return j;
}

Instance instance_from_json(const Json& j) {
  Instance inst;
  inst.metadata.kind = instance_kind_from_string(get_field<std::string>(j, "kind"));
  inst.n = get_field<int>(j, "n");
  inst.c_lower = get_field<std::vector<double>>(j, "c_lower");
  inst.deviations = get_field<std::vector<double>>(j, "deviations");
  inst.partition = get_field<std::vector<std::vector<int>>>(j, "partition");
  if (j.contains("K") && get_field<int>(j, "K") != inst.num_groups()) {
    throw ModelError("K differs from the number of partition groups");
  }
  const auto& c = j.at("constraints");
  const auto& rows = c.at("rows");
  const auto& senses = c.at("senses");
  const auto& rhs = c.at("rhs");
  if (rows.size() != senses.size() || rows.size() != rhs.size()) {
    throw ModelError("constraints rows/senses/rhs differ in length");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Constraint con;
    for (const auto& t : rows[i]) con.terms.push_back({t.at(0).get<int>(), t.at(1).get<double>()});
    con.relation = relation_from_symbol(senses[i].get<std::string>());
    con.rhs = rhs[i].get<double>();
    inst.feasible_set.push_back(std::move(con));
  }
  if (j.contains("metadata")) {
    const auto& m = j.at("metadata");
    auto& md = inst.metadata;
    md.totally_unimodular = m.value("totally_unimodular", false);
    if (m.contains("seed") && !m.at("seed").is_null()) md.seed = m.at("seed").get<std::uint64_t>();
    if (m.contains("graph")) {
      const auto& g = m.at("graph");
      SpGraph graph;
      graph.nodes = points_from_json(g.at("nodes"));
      for (const auto& a : g.at("arcs")) graph.arcs.push_back({a.at(0).get<int>(), a.at(1).get<int>()});
      graph.source = g.at("source").get<int>();
      graph.sink = g.at("sink").get<int>();
      md.graph = std::move(graph);
    }
    if (m.contains("medians")) {
      const auto& p = m.at("medians");
      PlmData data;
      data.locations = p.at("locations").get<int>();
      data.medians = p.at("p").get<int>();
      data.points = points_from_json(p.at("points"));
      data.demands = p.at("demands").get<std::vector<double>>();
      md.medians = std::move(data);
    }
    md.toy_n = m.value("toy_n", 0);
    md.partition_scheme = m.value("partition_scheme", std::string());
    md.partition_groups = m.value("partition_groups", 0);
  }
  validate(inst);
  return inst;
}

Json omega_to_json(const OmegaSpec& omega) {
  Json j;
  j["kind"] = to_string(omega.kind());
  switch (omega.kind()) {
    case OmegaKind::kInterval:
      j["lower"] = omega.lower();
      j["upper"] = omega.upper();
      break;
    case OmegaKind::kSegment:
      j["gamma0"] = omega.gamma0();
      j["alpha_lo"] = omega.alpha_lo();
      j["alpha_hi"] = omega.alpha_hi();
      break;
    case OmegaKind::kBudgeted:
      j["gamma_lo"] = omega.gamma_lo();
      j["spread"] = omega.spread();
      j["budget"] = omega.budget();
      break;
  }
  return j;
}

OmegaSpec omega_from_json(const Json& j) {
  switch (omega_kind_from_string(get_field<std::string>(j, "kind"))) {
    case OmegaKind::kInterval:
      return OmegaSpec::interval(get_field<std::vector<double>>(j, "lower"),
                                 get_field<std::vector<double>>(j, "upper"));
    case OmegaKind::kSegment:
      return OmegaSpec::segment(get_field<std::vector<double>>(j, "gamma0"),
                                get_field<double>(j, "alpha_lo"), get_field<double>(j, "alpha_hi"));
    case OmegaKind::kBudgeted:
      return OmegaSpec::budgeted(get_field<std::vector<double>>(j, "gamma_lo"),
                                 get_field<std::vector<double>>(j, "spread"),
                                 get_field<double>(j, "budget"));
  }
  throw ModelError("unknown omega kind");
}

Json result_to_json(const MprsResult& r) {
  Json j;
  j["mode"] = to_string(r.mode);
  j["stop_reason"] = to_string(r.stop_reason);
  j["epsilon_used"] = r.epsilon_used;
  j["initial_value"] = r.initial_value;
  j["iterations"] = r.iterations();
  j["distinct_solutions"] = r.distinct_solutions();
  j["q_values"] = r.q_values;
  Json bounds = Json::array();
  for (double b : r.relative_error_bounds) bounds.push_back(finite_or_null(b));
  j["relative_error_bounds"] = std::move(bounds);
  Json hist = Json::array();
  for (const auto& e : r.history) {
    Json h;
    h["gamma"] = e.gamma.values;
    h["pi"] = e.pi;
    h["rho"] = e.rho;
    h["x"] = e.x;
    if (e.variant) {
      h["w"] = e.w;
      h["alpha"] = e.alpha;
    }
    h["q_value_at_discovery"] =
        e.q_value_at_discovery ? Json(*e.q_value_at_discovery) : Json(nullptr);
    hist.push_back(std::move(h));
  }
  j["history"] = std::move(hist);
  j["distinct_x"] = r.distinct_x;
  if (!r.distinct_medians.empty()) j["distinct_medians"] = r.distinct_medians;
  j["timing"] = {{"elapsed_seconds", r.elapsed_seconds}};
  return j;
}

MprsResult result_from_json(const Json& j) {
  MprsResult r;
  r.mode = robust_mode_from_string(get_field<std::string>(j, "mode"));
  r.stop_reason = stop_reason_from_string(get_field<std::string>(j, "stop_reason"));
  r.epsilon_used = get_field<double>(j, "epsilon_used");
  r.initial_value = get_field<double>(j, "initial_value");
  r.q_values = get_field<std::vector<double>>(j, "q_values");
  for (const auto& b : j.at("relative_error_bounds")) {
    r.relative_error_bounds.push_back(from_finite_or_null(b));
  }
  for (const auto& h : j.at("history")) {
    HistoryEntry e;
    e.gamma = GammaVector(get_field<std::vector<double>>(h, "gamma"));
    e.pi = get_field<std::vector<double>>(h, "pi");
    e.rho = get_field<std::vector<double>>(h, "rho");
    e.x = get_field<std::vector<double>>(h, "x");
    e.variant = r.mode == RobustMode::kVariant;
    if (e.variant) {
      e.w = get_field<std::vector<double>>(h, "w");
      e.alpha = get_field<std::vector<double>>(h, "alpha");
    }
    if (h.contains("q_value_at_discovery") && !h.at("q_value_at_discovery").is_null()) {
      e.q_value_at_discovery = h.at("q_value_at_discovery").get<double>();
    }
    r.history.push_back(std::move(e));
  }
  r.distinct_x = get_field<std::vector<std::vector<double>>>(j, "distinct_x");
  if (j.contains("distinct_medians")) {
    r.distinct_medians = get_field<std::vector<std::vector<int>>>(j, "distinct_medians");
  }
  if (j.contains("timing")) r.elapsed_seconds = j.at("timing").value("elapsed_seconds", 0.0);
  return r;
}

Json trace_to_json(const TraceRecord& rec) {
  Json j;
  j["r"] = rec.iteration;
  j["q_value"] = rec.q_value;
  j["gamma"] = rec.gamma.values;
  j["distinct_solutions"] = rec.distinct_solutions;
  j["elapsed_seconds"] = rec.elapsed_seconds;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace mprs
