#include "nnt/instance_io.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "nnt/error.hpp"

namespace nnt {

namespace {

using json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

json dec_out(const ExactDec& d) { return d.str(); }

ExactDec dec_in(const json& j) {
  if (!j.is_string())
    throw Error(Errc::parse, "expected a decimal string, got " + j.dump());
  return ExactDec::parse(j.get<std::string>());
}

json dec_list_out(const std::vector<ExactDec>& v) {
  json a = json::array();
  for (const auto& d : v) a.push_back(dec_out(d));
  return a;
}

std::vector<ExactDec> dec_list_in(const json& j) {
  std::vector<ExactDec> v;
  for (const auto& item : j) v.push_back(dec_in(item));
  return v;
}

std::vector<ExactDec> dec_set_in(const json& j) {
  std::vector<ExactDec> v = dec_list_in(j);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

const char* base_name(BaseActivation b) {
  switch (b) {
    case BaseActivation::identity: return "identity";
    case BaseActivation::relu: return "relu";
    case BaseActivation::slp_mul: return "slp_mul";
    case BaseActivation::dec_shift: return "dec_shift";
  }
  return "identity";
}

BaseActivation base_from_name(const std::string& s) {
  if (s == "identity") return BaseActivation::identity;
  if (s == "relu") return BaseActivation::relu;
  if (s == "slp_mul") return BaseActivation::slp_mul;
  if (s == "dec_shift") return BaseActivation::dec_shift;
  throw Error(Errc::parse, "unknown activation '" + s + "'");
}

json activation_out(const Activation& act) {
  struct Visitor {
    json operator()(const Identity&) const { return "identity"; }
    json operator()(const Relu&) const { return "relu"; }
    json operator()(const SlpMul&) const { return "slp_mul"; }
    json operator()(const DecShift&) const { return "dec_shift"; }
    json operator()(const Wrapped& w) const {
      json j;
      j["base"] = base_name(w.base);
      j["routes"] = json::array();
      for (std::size_t e : w.on_path_edges) j["routes"].push_back(e);
      return j;
    }
  };
  return std::visit(Visitor{}, act);
}

Activation activation_in(const json& j,
                         const std::shared_ptr<const ProbeTable>& table) {
  if (j.is_string()) {
    switch (base_from_name(j.get<std::string>())) {
      case BaseActivation::identity: return Identity{};
      case BaseActivation::relu: return Relu{};
      case BaseActivation::slp_mul: return SlpMul{};
      case BaseActivation::dec_shift: return DecShift{};
    }
  }
  if (!j.is_object())
    throw Error(Errc::parse, "activation must be a name or an object");
  if (!table)
    throw Error(Errc::parse,
                "wrapped activation requires a probe loss on the instance");
  Wrapped w;
  w.base = base_from_name(j.at("base").get<std::string>());
  w.table = table;
  for (const auto& e : j.at("routes"))
    w.on_path_edges.insert(e.get<std::size_t>());
  return w;
}

json base_loss_out(const BaseLoss& loss) {
  json j;
  if (std::holds_alternative<SumSquares>(loss)) {
    j["type"] = "sum_squares";
  } else if (std::holds_alternative<SlpThreshold>(loss)) {
    j["type"] = "slp_threshold";
  } else {
    const auto& csp = std::get<CspDecode>(loss);
    j["type"] = "csp_decode";
    j["alphabet_size"] = csp.alphabet_size;
    json all = json::array();
    for (const auto& pairs : csp.allowed) {
      json ps = json::array();
      for (const auto& [l, m] : pairs) ps.push_back(json::array({l, m}));
      all.push_back(ps);
    }
    j["allowed"] = all;
  }
  return j;
}

BaseLoss base_loss_in(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "sum_squares") return SumSquares{};
  if (type == "slp_threshold") return SlpThreshold{};
  if (type == "csp_decode") {
    CspDecode csp;
    csp.alphabet_size = j.at("alphabet_size").get<std::size_t>();
    for (const auto& pairs : j.at("allowed")) {
      std::set<std::pair<long, long>> ps;
      for (const auto& p : pairs)
        ps.insert({p.at(0).get<long>(), p.at(1).get<long>()});
      csp.allowed.push_back(std::move(ps));
    }
    return csp;
  }
  throw Error(Errc::parse, "unknown loss '" + type + "'");
}

json loss_out(const Loss& loss) {
  if (const auto* cp = std::get_if<CnntProbe>(&loss)) {
    json j;
    j["type"] = "cnnt_probe";
    j["base"] = base_loss_out(cp->base);
    j["original_outputs"] = cp->original_outputs;
    j["original_count"] = cp->original_count;
    j["penalty"] = dec_out(cp->penalty);
    j["wrap_exponent"] = cp->wrap_exponent;
    json probes = json::array();
    for (const Probe& pr : cp->probes) {
      json p;
      p["edge"] = pr.edge;
      p["dim"] = pr.dim;
      p["f"] = dec_out(pr.f);
      p["path"] = pr.path;
      p["upstream"] = pr.upstream;
      p["allowed"] = dec_list_out(pr.allowed);
      probes.push_back(std::move(p));
    }
    j["probes"] = std::move(probes);
    return j;
  }
  if (std::holds_alternative<SumSquares>(loss))
    return base_loss_out(SumSquares{});
  if (std::holds_alternative<SlpThreshold>(loss))
    return base_loss_out(SlpThreshold{});
  return base_loss_out(std::get<CspDecode>(loss));
}

Loss loss_in(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type != "cnnt_probe") {
    BaseLoss base = base_loss_in(j);
    if (std::holds_alternative<SumSquares>(base)) return SumSquares{};
    if (std::holds_alternative<SlpThreshold>(base)) return SlpThreshold{};
    return std::get<CspDecode>(base);
  }
  CnntProbe cp;
  cp.base = base_loss_in(j.at("base"));
  cp.original_outputs = j.at("original_outputs").get<std::vector<std::string>>();
  cp.original_count = j.at("original_count").get<std::size_t>();
  cp.penalty = dec_in(j.at("penalty"));
  cp.wrap_exponent = j.at("wrap_exponent").get<std::uint32_t>();
  for (const auto& p : j.at("probes")) {
    Probe pr;
    pr.edge = p.at("edge").get<std::size_t>();
    pr.dim = p.at("dim").get<std::size_t>();
    pr.f = dec_in(p.at("f"));
    pr.path = p.at("path").get<std::vector<std::string>>();
    pr.upstream = p.at("upstream").get<std::vector<std::string>>();
    pr.allowed = dec_set_in(p.at("allowed"));
    cp.probes.push_back(std::move(pr));
  }
  return cp;
}

// Magnitude bands are rebuilt from the probe list: band i covers
// [f_i, wrap_exponent * f_i].
std::shared_ptr<const ProbeTable> build_table(const CnntProbe& cp) {
  auto table = std::make_shared<ProbeTable>();
  table->wrap_exponent = cp.wrap_exponent;
  table->threshold = ExactDec::pow10(cp.wrap_exponent);
  table->multiplier = mpz_class(static_cast<unsigned long>(cp.wrap_exponent));
  ExactDec mult(table->multiplier);
  for (const Probe& pr : cp.probes) {
    ProbeInterval iv;
    iv.edge = pr.edge;
    iv.dim = pr.dim;
    iv.f = pr.f;
    iv.low = pr.f;
    iv.high = pr.f * mult;
    table->intervals.push_back(std::move(iv));
  }
  std::sort(table->intervals.begin(), table->intervals.end(),
            [](const ProbeInterval& a, const ProbeInterval& b) {
              return a.low < b.low;
            });
  return table;
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = inst.kind == Kind::continuous ? "continuous" : "discrete";

  json net;
  net["source"] = inst.network.source;
  net["hidden"] = inst.network.hidden;
  net["outputs"] = inst.network.outputs;
  json edges = json::array();
  for (const Edge& e : inst.network.edges)
    edges.push_back(json::array({e.from, e.to}));
  net["edges"] = std::move(edges);
  j["network"] = std::move(net);

  json ds;
  ds["input_dim"] = inst.dataset.input_dim;
  json points = json::array();
  for (const DataPoint& p : inst.dataset.points) {
    json pt;
    pt["x"] = dec_list_out(p.x);
    pt["y"] = dec_list_out(p.y);
    points.push_back(std::move(pt));
  }
  ds["points"] = std::move(points);
  j["dataset"] = std::move(ds);

  json acts;
  for (const auto& [v, act] : inst.activations) acts[v] = activation_out(act);
  j["activations"] = std::move(acts);

  j["loss"] = loss_out(inst.loss);

  json params;
  params["continuous"] = inst.params.continuous;
  if (!inst.params.continuous) {
    json pe = json::array();
    for (const EdgeSpace& sp : inst.params.edges) {
      json e;
      json ws = json::array();
      for (const auto& s : sp.weight_sets) ws.push_back(dec_list_out(s));
      e["weights"] = std::move(ws);
      e["bias"] = dec_list_out(sp.bias_set);
      pe.push_back(std::move(e));
    }
    params["edges"] = std::move(pe);
  }
  j["params"] = std::move(params);

  j["gamma"] = dec_out(inst.gamma);

  if (inst.source_problem) j["source_problem"] = source_to_json(*inst.source_problem);
  if (inst.provenance) {
    json prov;
    prov["seed"] = inst.provenance->seed;
    prov["recipe"] = inst.provenance->recipe;
    j["provenance"] = std::move(prov);
  }

  return j.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    if (!j.contains("format_version") ||
        j.at("format_version").get<int>() != kFormatVersion)
      throw Error(Errc::parse, "unsupported format version");

    Instance inst;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "discrete") {
      inst.kind = Kind::discrete;
    } else if (kind == "continuous") {
      inst.kind = Kind::continuous;
    } else {
      throw Error(Errc::parse, "unknown kind '" + kind + "'");
    }

    const json& net = j.at("network");
    inst.network.source = net.at("source").get<std::string>();
    inst.network.hidden = net.at("hidden").get<std::vector<std::string>>();
    inst.network.outputs = net.at("outputs").get<std::vector<std::string>>();
    for (const auto& e : net.at("edges"))
      inst.network.edges.push_back(
          {e.at(0).get<std::string>(), e.at(1).get<std::string>()});

    const json& ds = j.at("dataset");
    inst.dataset.input_dim = ds.at("input_dim").get<std::size_t>();
    for (const auto& pt : ds.at("points"))
      inst.dataset.points.push_back(
          {dec_list_in(pt.at("x")), dec_list_in(pt.at("y"))});

    inst.loss = loss_in(j.at("loss"));
    std::shared_ptr<const ProbeTable> table;
    if (const auto* cp = std::get_if<CnntProbe>(&inst.loss))
      table = build_table(*cp);

    for (const auto& [v, a] : j.at("activations").items())
      inst.activations.emplace(v, activation_in(a, table));

    const json& params = j.at("params");
    inst.params.continuous = params.at("continuous").get<bool>();
    if (!inst.params.continuous) {
      for (const auto& e : params.at("edges")) {
        EdgeSpace sp;
        for (const auto& s : e.at("weights")) sp.weight_sets.push_back(dec_set_in(s));
        sp.bias_set = dec_set_in(e.at("bias"));
        inst.params.edges.push_back(std::move(sp));
      }
    }

    inst.gamma = dec_in(j.at("gamma"));

    if (j.contains("source_problem"))
      inst.source_problem = source_from_json(j.at("source_problem"));
    if (j.contains("provenance")) {
      Provenance prov;
      prov.seed = j.at("provenance").at("seed").get<std::uint64_t>();
      prov.recipe = j.at("provenance").at("recipe").get<std::string>();
      inst.provenance = std::move(prov);
    }

    finalize(inst);
    return inst;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("malformed instance: ") + e.what());
  }
}

std::string serialize_assignment(const Assignment& theta, const Instance& inst) {
  json j;
  j["format_version"] = kFormatVersion;
  json edges = json::array();
  for (std::size_t i = 0; i < theta.edges.size(); ++i) {
    const EdgeAssign& ea = theta.edges[i];
    json e;
    bool first = i < inst.topo.first_layer.size() && inst.topo.first_layer[i];
    if (first) {
      e["weights"] = dec_list_out(ea.weights);
    } else {
      e["weight"] = dec_out(ea.weights.at(0));
    }
    e["bias"] = dec_out(ea.bias);
    edges.push_back(std::move(e));
  }
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

Assignment parse_assignment(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("witness is not valid JSON: ") + e.what());
  }
  try {
    if (!j.contains("format_version") ||
        j.at("format_version").get<int>() != kFormatVersion)
      throw Error(Errc::parse, "unsupported format version");
    Assignment theta;
    for (const auto& e : j.at("edges")) {
      EdgeAssign ea;
      if (e.contains("weights")) {
        ea.weights = dec_list_in(e.at("weights"));
      } else {
        ea.weights.push_back(dec_in(e.at("weight")));
      }
      ea.bias = dec_in(e.at("bias"));
      theta.edges.push_back(std::move(ea));
    }
    return theta;
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("malformed witness: ") + e.what());
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::parse, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::parse, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(Errc::parse, "cannot write '" + path + "'");
}

}  // namespace

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

void save_instance(const Instance& inst, const std::string& path) {
  write_file(path, serialize_instance(inst));
}

Assignment load_assignment(const std::string& path) {
  return parse_assignment(read_file(path));
}

void save_assignment(const Assignment& theta, const Instance& inst,
                     const std::string& path) {
  write_file(path, serialize_assignment(theta, inst));
}

json source_to_json(const SourceProblem& src) {
  json j;
  if (const auto* ss = std::get_if<SubsetSumInstance>(&src)) {
    j["problem"] = "subset_sum";
    json items = json::array();
    for (const auto& a : ss->items) items.push_back(a.get_str());
    j["items"] = std::move(items);
    j["target"] = ss->target.get_str();
    return j;
  }
  if (const auto* csp = std::get_if<CspInstance>(&src)) {
    j["problem"] = "csp";
    j["vertices"] = csp->vertices;
    j["alphabet"] = csp->alphabet;
    json cs = json::array();
    for (const auto& c : csp->constraints) {
      json cj;
      cj["u"] = csp->vertices.at(c.u);
      cj["v"] = csp->vertices.at(c.v);
      json allowed = json::array();
      for (const auto& [a, b] : c.allowed)
        allowed.push_back(json::array(
            {csp->alphabet.at(a), csp->alphabet.at(b)}));
      cj["allowed"] = std::move(allowed);
      cs.push_back(std::move(cj));
    }
    j["constraints"] = std::move(cs);
    return j;
  }
  if (const auto* ec = std::get_if<ExactCoverInstance>(&src)) {
    j["problem"] = "exact_cover";
    j["universe_size"] = ec->universe_size;
    j["sets"] = ec->sets;
    j["k"] = ec->k;
    return j;
  }
  const auto& slp = std::get<Slp>(src);
  j["problem"] = "slp";
  json ins = json::array();
  for (const SlpOp& op : slp.instructions) {
    json oj;
    oj["op"] = std::string(1, op.op);
    oj["args"] = json::array({op.j, op.k});
    ins.push_back(std::move(oj));
  }
  j["instructions"] = std::move(ins);
  return j;
}

SourceProblem source_from_json(const json& j) {
  std::string kind = j.at("problem").get<std::string>();
  if (kind == "subset_sum") {
    SubsetSumInstance ss;
    for (const auto& a : j.at("items"))
      ss.items.emplace_back(a.get<std::string>());
    ss.target = mpz_class(j.at("target").get<std::string>());
    return ss;
  }
  if (kind == "csp") {
    CspInstance csp;
    csp.vertices = j.at("vertices").get<std::vector<std::string>>();
    csp.alphabet = j.at("alphabet").get<std::vector<std::string>>();
    auto vertex_index = [&](const std::string& name) {
      auto it = std::find(csp.vertices.begin(), csp.vertices.end(), name);
      if (it == csp.vertices.end())
        throw Error(Errc::parse, "constraint references unknown vertex '" + name + "'");
      return std::size_t(it - csp.vertices.begin());
    };
    auto letter_index = [&](const std::string& name) {
      auto it = std::find(csp.alphabet.begin(), csp.alphabet.end(), name);
      if (it == csp.alphabet.end())
        throw Error(Errc::parse, "constraint references unknown letter '" + name + "'");
      return std::size_t(it - csp.alphabet.begin());
    };
    for (const auto& cj : j.at("constraints")) {
      CspInstance::Constraint c;
      c.u = vertex_index(cj.at("u").get<std::string>());
      c.v = vertex_index(cj.at("v").get<std::string>());
      for (const auto& p : cj.at("allowed"))
        c.allowed.push_back({letter_index(p.at(0).get<std::string>()),
                             letter_index(p.at(1).get<std::string>())});
      csp.constraints.push_back(std::move(c));
    }
    return csp;
  }
  if (kind == "exact_cover") {
    ExactCoverInstance ec;
    ec.universe_size = j.at("universe_size").get<std::size_t>();
    ec.sets = j.at("sets").get<std::vector<std::vector<std::size_t>>>();
    ec.k = j.at("k").get<std::size_t>();
    return ec;
  }
  if (kind == "slp") {
    Slp slp;
    for (const auto& oj : j.at("instructions")) {
      SlpOp op;
      std::string name = oj.at("op").get<std::string>();
      if (name != "+" && name != "-" && name != "*")
        throw Error(Errc::parse, "unknown opcode '" + name + "'");
      op.op = name[0];
      op.j = oj.at("args").at(0).get<std::size_t>();
      op.k = oj.at("args").at(1).get<std::size_t>();
      slp.instructions.push_back(op);
    }
    return slp;
  }
  throw Error(Errc::parse, "unknown source problem '" + kind + "'");
}

}  // namespace nnt
