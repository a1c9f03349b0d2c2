#include "nnt/netmodel.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "nnt/error.hpp"

namespace nnt {

namespace {

struct GraphScan {
  bool acyclic = true;
  std::vector<std::string> order;  // valid only when acyclic
};

// Kahn's algorithm; source popped first, then lexicographic vertex id.
GraphScan scan_graph(const Network& net,
                     const std::map<std::string, std::size_t>& known) {
  std::map<std::string, std::size_t> indeg;
  std::map<std::string, std::vector<std::string>> out;
  for (const auto& [id, _] : known) indeg[id] = 0;
  for (const Edge& e : net.edges) {
    if (!known.count(e.from) || !known.count(e.to)) continue;
    ++indeg[e.to];
    out[e.from].push_back(e.to);
  }
  std::set<std::string> ready;
  for (const auto& [id, deg] : indeg)
    if (deg == 0) ready.insert(id);
  GraphScan r;
  while (!ready.empty()) {
    auto it = ready.find(net.source);
    if (r.order.empty() && it != ready.end()) {
      // nothing: keep source first when available
    } else {
      it = ready.begin();
    }
    std::string v = *it;
    ready.erase(it);
    r.order.push_back(v);
    for (const std::string& w : out[v])
      if (--indeg[w] == 0) ready.insert(w);
  }
  r.acyclic = r.order.size() == known.size();
  return r;
}

}  // namespace

std::vector<std::string> validate(const Instance& inst) {
  std::vector<std::string> report;
  auto bad = [&](const std::string& msg) { report.push_back(msg); };

  const Network& net = inst.network;
  if (net.source.empty()) bad("source vertex id is empty");
  if (net.outputs.empty()) bad("network has no output vertex");

  std::map<std::string, std::size_t> known;
  auto add_vertex = [&](const std::string& id, const char* role) {
    if (id.empty()) {
      bad(std::string(role) + " vertex id is empty");
      return;
    }
    if (!known.emplace(id, known.size()).second)
      bad("duplicate vertex id '" + id + "'");
  };
  add_vertex(net.source, "source");
  for (const auto& h : net.hidden) add_vertex(h, "hidden");
  for (const auto& t : net.outputs) add_vertex(t, "output");

  bool edges_ok = true;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    if (!known.count(e.from) || !known.count(e.to)) {
      bad("edge " + std::to_string(i) + " references unknown vertex");
      edges_ok = false;
      continue;
    }
    if (e.to == net.source) {
      bad("edge " + std::to_string(i) + " points into the source");
      edges_ok = false;
    }
  }

  GraphScan scan;
  if (edges_ok && !known.empty()) {
    scan = scan_graph(net, known);
    if (!scan.acyclic) bad("acyclicity violated");
  }

  if (edges_ok && scan.acyclic) {
    // Source-to-output reachability.
    std::map<std::string, std::vector<std::string>> out;
    for (const Edge& e : net.edges) out[e.from].push_back(e.to);
    std::set<std::string> seen{net.source};
    std::deque<std::string> queue{net.source};
    while (!queue.empty()) {
      std::string v = queue.front();
      queue.pop_front();
      for (const std::string& w : out[v])
        if (seen.insert(w).second) queue.push_back(w);
    }
    for (const auto& t : net.outputs)
      if (!seen.count(t)) bad("output '" + t + "' unreachable from source");
  }

  // Activation map covers exactly the non-source vertices.
  for (const auto& [id, _] : known)
    if (id != net.source && !inst.activations.count(id))
      bad("vertex '" + id + "' has no activation");
  for (const auto& [id, act] : inst.activations) {
    if (!known.count(id)) bad("activation for unknown vertex '" + id + "'");
    if (id == net.source) bad("source vertex must not carry an activation");
    if (const auto* w = std::get_if<Wrapped>(&act)) {
      if (!w->table) {
        bad("wrapped activation on '" + id + "' lacks its probe table");
      } else {
        for (std::size_t e : w->on_path_edges)
          if (e >= net.edges.size())
            bad("wrapped activation on '" + id + "' routes unknown edge " +
                std::to_string(e));
      }
    }
  }

  // Dataset shapes; per-output dimension is fixed at 1.
  if (inst.dataset.points.empty()) bad("dataset is empty");
  if (inst.dataset.input_dim == 0) bad("input dimension must be at least 1");
  for (std::size_t i = 0; i < inst.dataset.points.size(); ++i) {
    const DataPoint& p = inst.dataset.points[i];
    if (p.x.size() != inst.dataset.input_dim)
      bad("data point " + std::to_string(i) + " has |x| = " +
          std::to_string(p.x.size()) + ", expected " +
          std::to_string(inst.dataset.input_dim));
    if (p.y.size() != net.outputs.size())
      bad("data point " + std::to_string(i) + " has |y| = " +
          std::to_string(p.y.size()) + ", expected " +
          std::to_string(net.outputs.size()));
  }

  // Parameter space.
  if (inst.params.continuous != (inst.kind == Kind::continuous))
    bad("kind and parameter-space marker disagree");
  if (!inst.params.continuous) {
    if (inst.params.edges.size() != net.edges.size()) {
      bad("parameter space covers " + std::to_string(inst.params.edges.size()) +
          " edges, network has " + std::to_string(net.edges.size()));
    } else {
      for (std::size_t i = 0; i < net.edges.size(); ++i) {
        const EdgeSpace& sp = inst.params.edges[i];
        bool first = edges_ok && net.edges[i].from == net.source;
        std::size_t want = first ? inst.dataset.input_dim : 1;
        if (sp.weight_sets.size() != want)
          bad("edge " + std::to_string(i) + " needs " + std::to_string(want) +
              " weight set(s), has " + std::to_string(sp.weight_sets.size()));
        for (const auto& s : sp.weight_sets)
          if (s.empty()) bad("empty weight set on edge " + std::to_string(i));
        if (sp.bias_set.empty())
          bad("empty bias set on edge " + std::to_string(i));
      }
    }
  }

  // Loss payload shapes.
  if (const auto* csp = std::get_if<CspDecode>(&inst.loss)) {
    if (csp->alphabet_size == 0) bad("decode loss with empty alphabet");
    if (csp->allowed.size() != net.outputs.size())
      bad("decode loss covers " + std::to_string(csp->allowed.size()) +
          " outputs, network has " + std::to_string(net.outputs.size()));
    for (std::size_t i = 0; i < csp->allowed.size(); ++i) {
      if (csp->allowed[i].empty())
        bad("decode loss output " + std::to_string(i) + " allows no pair");
      for (const auto& [l, m] : csp->allowed[i])
        if (l < 1 || m < 1 || l > long(csp->alphabet_size) ||
            m > long(csp->alphabet_size))
          bad("decode pair out of alphabet range on output " +
              std::to_string(i));
    }
  } else if (const auto* cp = std::get_if<CnntProbe>(&inst.loss)) {
    if (cp->original_count > inst.dataset.points.size())
      bad("probe loss claims more original points than the dataset has");
    else if (cp->original_count + cp->probes.size() != inst.dataset.points.size())
      bad("probe count does not match the dataset tail");
    if (!(cp->penalty > ExactDec(0))) bad("probe penalty must be positive");
    std::set<std::string> outs(net.outputs.begin(), net.outputs.end());
    for (const auto& t : cp->original_outputs)
      if (!outs.count(t))
        bad("probe loss original output '" + t + "' is not an output");
    for (std::size_t i = 0; i < cp->probes.size(); ++i) {
      const Probe& pr = cp->probes[i];
      if (pr.edge >= net.edges.size())
        bad("probe " + std::to_string(i) + " targets unknown edge");
      if (pr.allowed.empty())
        bad("probe " + std::to_string(i) + " has an empty allowed set");
      if (!(pr.f > ExactDec(0)))
        bad("probe " + std::to_string(i) + " has non-positive magnitude");
    }
  }

  // Probe tables behind wrapped activations: bands sorted and disjoint,
  // entirely beyond the threshold.
  const ProbeTable* table = nullptr;
  for (const auto& [id, act] : inst.activations)
    if (const auto* w = std::get_if<Wrapped>(&act))
      if (w->table) {
        table = w->table.get();
        break;
      }
  if (table) {
    for (std::size_t i = 0; i < table->intervals.size(); ++i) {
      const ProbeInterval& iv = table->intervals[i];
      if (iv.low < table->threshold)
        bad("probe band " + std::to_string(i) + " starts below the threshold");
      if (iv.high < iv.low) bad("probe band " + std::to_string(i) + " is empty");
      if (i > 0 && !(table->intervals[i - 1].high < iv.low))
        bad("probe bands " + std::to_string(i - 1) + " and " +
            std::to_string(i) + " overlap");
    }
  }

  return report;
}

void finalize(Instance& inst) {
  std::vector<std::string> report = validate(inst);
  if (!report.empty()) {
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& line : report) msg << "\n  " << line;
    throw Error(Errc::validation, msg.str());
  }

  const Network& net = inst.network;
  std::map<std::string, std::size_t> known;
  known.emplace(net.source, 0);
  for (const auto& h : net.hidden) known.emplace(h, known.size());
  for (const auto& t : net.outputs) known.emplace(t, known.size());

  Topology topo;
  topo.order = scan_graph(net, known).order;
  for (std::size_t i = 0; i < topo.order.size(); ++i)
    topo.position[topo.order[i]] = i;
  for (const auto& [id, _] : known) topo.in_edges[id];
  topo.first_layer.resize(net.edges.size());
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    topo.in_edges[net.edges[i].to].push_back(i);
    topo.first_layer[i] = net.edges[i].from == net.source;
  }

  // Longest-path layering for width/depth statistics.
  std::map<std::string, long> dist;
  dist[net.source] = 0;
  for (const std::string& v : topo.order) {
    if (v == net.source) continue;
    long best = -1;
    for (std::size_t e : topo.in_edges[v]) {
      auto it = dist.find(net.edges[e].from);
      if (it != dist.end() && it->second >= 0) best = std::max(best, it->second + 1);
    }
    dist[v] = best;  // -1: unreachable from the source
  }
  std::map<long, std::size_t> layer_sizes;
  for (const auto& [v, d] : dist)
    if (d >= 1) ++layer_sizes[d];
  for (const auto& [_, n] : layer_sizes) topo.width = std::max(topo.width, n);
  for (const auto& t : net.outputs)
    topo.depth = std::max(topo.depth, static_cast<std::size_t>(dist[t]));

  inst.topo = std::move(topo);
}

bool membership(const Assignment& theta, const Instance& inst) {
  const Network& net = inst.network;
  if (theta.edges.size() != net.edges.size())
    throw Error(Errc::membership,
                "assignment covers " + std::to_string(theta.edges.size()) +
                    " edges, instance has " + std::to_string(net.edges.size()));
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    bool first = net.edges[i].from == net.source;
    std::size_t want = first ? inst.dataset.input_dim : 1;
    if (theta.edges[i].weights.size() != want)
      throw Error(Errc::membership,
                  "edge " + std::to_string(i) + ": expected " +
                      std::to_string(want) + " weight(s), got " +
                      std::to_string(theta.edges[i].weights.size()));
  }
  if (inst.params.continuous) return true;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const EdgeSpace& sp = inst.params.edges[i];
    const EdgeAssign& ea = theta.edges[i];
    for (std::size_t j = 0; j < ea.weights.size(); ++j)
      if (!std::binary_search(sp.weight_sets[j].begin(), sp.weight_sets[j].end(),
                              ea.weights[j]))
        return false;
    if (!std::binary_search(sp.bias_set.begin(), sp.bias_set.end(), ea.bias))
      return false;
  }
  return true;
}

}  // namespace nnt
