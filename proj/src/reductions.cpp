#include "nnt/reductions.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <memory>
#include <set>
#include <variant>

#include "nnt/error.hpp"

namespace nnt {

namespace {

std::vector<ExactDec> singleton(long v) { return {ExactDec(v)}; }

mpz_class ceil_mag(const ExactDec& v) {
  IntFracParts parts = int_frac_split(v.is_negative() ? -v : v);
  return parts.frac.is_zero() ? parts.int_part : parts.int_part + 1;
}

EdgeSpace scalar_space(std::vector<ExactDec> weights) {
  EdgeSpace sp;
  sp.weight_sets.push_back(std::move(weights));
  sp.bias_set = singleton(0);
  return sp;
}

}  // namespace

Instance subset_sum_to_dnnt(const SubsetSumInstance& src) {
  require_valid_source(src);
  std::size_t n = src.items.size();

  Instance inst;
  inst.kind = Kind::discrete;
  inst.network.source = "s";
  for (std::size_t i = 1; i <= n; ++i)
    inst.network.hidden.push_back("h" + std::to_string(i));
  inst.network.outputs = {"t"};
  for (const auto& h : inst.network.hidden) inst.network.edges.push_back({"s", h});
  for (const auto& h : inst.network.hidden) inst.network.edges.push_back({h, "t"});

  for (std::size_t i = 0; i < n; ++i)
    inst.params.edges.push_back(
        scalar_space({ExactDec(0), ExactDec(src.items[i])}));
  for (std::size_t i = 0; i < n; ++i)
    inst.params.edges.push_back(scalar_space(singleton(1)));

  for (const auto& h : inst.network.hidden) inst.activations.emplace(h, Identity{});
  inst.activations.emplace("t", Identity{});

  inst.dataset.input_dim = 1;
  inst.dataset.points.push_back({{ExactDec(1)}, {ExactDec(src.target)}});
  inst.loss = SumSquares{};
  inst.gamma = ExactDec(0);
  inst.source_problem = src;
  finalize(inst);
  return inst;
}

Instance csp_to_dnnt(const CspInstance& src) {
  require_valid_source(src);
  if (src.constraints.empty())
    throw Error(Errc::precondition,
                "the constraint reduction needs at least one constraint");
  std::size_t nv = src.vertices.size();
  std::size_t n = src.alphabet.size();

  Instance inst;
  inst.kind = Kind::discrete;
  inst.network.source = "s";
  for (std::size_t i = 1; i <= nv; ++i)
    inst.network.hidden.push_back("h" + std::to_string(i));
  for (std::size_t c = 1; c <= src.constraints.size(); ++c)
    inst.network.outputs.push_back("t" + std::to_string(c));

  std::vector<ExactDec> symbols;
  for (std::size_t v = 1; v <= n; ++v) symbols.push_back(ExactDec(long(v)));

  for (const auto& h : inst.network.hidden) {
    inst.network.edges.push_back({"s", h});
    inst.params.edges.push_back(scalar_space(symbols));
  }

  CspDecode loss;
  loss.alphabet_size = n;
  for (std::size_t c = 0; c < src.constraints.size(); ++c) {
    const auto& con = src.constraints[c];
    std::string t = inst.network.outputs[c];
    inst.network.edges.push_back({inst.network.hidden[con.u], t});
    inst.params.edges.push_back(scalar_space(singleton(1)));
    inst.network.edges.push_back({inst.network.hidden[con.v], t});
    inst.params.edges.push_back(scalar_space(singleton(2 * long(n))));
    std::set<std::pair<long, long>> pairs;
    for (const auto& [a, b] : con.allowed)
      pairs.insert({long(a) + 1, long(b) + 1});
    loss.allowed.push_back(std::move(pairs));
  }

  for (const auto& h : inst.network.hidden) inst.activations.emplace(h, Identity{});
  for (const auto& t : inst.network.outputs) inst.activations.emplace(t, Identity{});

  inst.dataset.input_dim = 1;
  DataPoint pt;
  pt.x = {ExactDec(1)};
  pt.y.assign(src.constraints.size(), ExactDec(0));
  inst.dataset.points.push_back(std::move(pt));
  inst.loss = std::move(loss);
  inst.gamma = ExactDec(1);
  inst.source_problem = src;
  finalize(inst);
  return inst;
}

Instance exact_cover_to_dnnt(const ExactCoverInstance& src) {
  require_valid_source(src);
  std::size_t m = src.sets.size();

  Instance inst;
  inst.kind = Kind::discrete;
  inst.network.source = "s";
  inst.network.hidden = {"h"};
  inst.network.outputs = {"t"};
  inst.network.edges.push_back({"s", "h"});
  inst.network.edges.push_back({"h", "t"});

  EdgeSpace first;
  for (std::size_t j = 0; j < m; ++j)
    first.weight_sets.push_back({ExactDec(0), ExactDec(1)});
  first.bias_set = singleton(0);
  inst.params.edges.push_back(std::move(first));
  inst.params.edges.push_back(scalar_space(singleton(1)));

  inst.activations.emplace("h", Identity{});
  inst.activations.emplace("t", Identity{});

  inst.dataset.input_dim = m;
  for (std::size_t el = 1; el <= src.universe_size; ++el) {
    DataPoint pt;
    pt.x.assign(m, ExactDec(0));
    for (std::size_t j = 0; j < m; ++j)
      if (std::find(src.sets[j].begin(), src.sets[j].end(), el) !=
          src.sets[j].end())
        pt.x[j] = ExactDec(1);
    pt.y = {ExactDec(1)};
    inst.dataset.points.push_back(std::move(pt));
  }
  DataPoint closing;
  closing.x.assign(m, ExactDec(1));
  closing.y = {ExactDec(long(src.k))};
  inst.dataset.points.push_back(std::move(closing));

  inst.loss = SumSquares{};
  inst.gamma = ExactDec(0);
  inst.source_problem = src;
  finalize(inst);
  return inst;
}

Instance slp_to_dnnt(const Slp& src) {
  require_valid_source(src);
  std::size_t L = src.instructions.size();
  auto h = [](std::size_t i) { return "h" + std::to_string(i); };
  auto hp = [](std::size_t i) { return "hp" + std::to_string(i); };

  Instance inst;
  inst.kind = Kind::discrete;
  inst.network.source = h(0);
  for (std::size_t i = 1; i < L; ++i) inst.network.hidden.push_back(h(i));
  for (std::size_t i = 0; i <= L; ++i) inst.network.hidden.push_back(hp(i));
  inst.network.outputs = {h(L)};

  auto add_edge = [&](const std::string& from, const std::string& to, long w) {
    inst.network.edges.push_back({from, to});
    inst.params.edges.push_back(scalar_space(singleton(w)));
  };
  for (std::size_t i = 0; i < L; ++i) {
    const SlpOp& op = src.instructions[i];
    if (op.op == '*') {
      add_edge(h(op.j), h(i + 1), 1);
      add_edge(hp(op.k), h(i + 1), 1);
      inst.activations.emplace(h(i + 1), SlpMul{});
    } else {
      add_edge(h(op.j), h(i + 1), 1);
      add_edge(h(op.k), h(i + 1), op.op == '-' ? -1 : 1);
      inst.activations.emplace(h(i + 1), Identity{});
    }
  }
  for (std::size_t r = 0; r <= L; ++r) {
    add_edge(h(r), hp(r), 1);
    inst.activations.emplace(hp(r), DecShift{});
  }

  inst.dataset.input_dim = 1;
  inst.dataset.points.push_back({{ExactDec(1)}, {ExactDec(1)}});
  inst.loss = SlpThreshold{};
  inst.gamma = ExactDec(1);
  inst.source_problem = src;
  finalize(inst);
  return inst;
}

namespace {

// Everything dnnt_to_cnnt needs to know about magnitudes: an absolute
// value bound and a decimal-scale bound per vertex, walked in
// topological order. Biases are all zero by precondition.
struct MagBound {
  mpz_class mag;
  std::size_t scale = 0;
};

std::size_t digits_of(const mpz_class& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 10);
}

mpz_class max_abs_of(const std::vector<ExactDec>& set) {
  mpz_class best = 0;
  for (const ExactDec& v : set) {
    mpz_class a = abs(v.mantissa());
    if (a > best) best = a;
  }
  return best;
}

mpz_class value_bound(const Instance& disc) {
  std::vector<mpz_class> xmax(disc.dataset.input_dim, 0);
  for (const DataPoint& p : disc.dataset.points)
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      mpz_class a = abs(p.x[i].mantissa());
      if (a > xmax[i]) xmax[i] = a;
    }

  mpz_class best = 1;
  std::map<std::string, MagBound> bound;
  for (const std::string& v : disc.topo.order) {
    if (v == disc.network.source) continue;
    MagBound pre;
    for (std::size_t e : disc.topo.in_edges.at(v)) {
      const EdgeSpace& sp = disc.params.edges[e];
      if (disc.topo.first_layer[e]) {
        for (std::size_t i = 0; i < xmax.size(); ++i)
          pre.mag += max_abs_of(sp.weight_sets[i]) * xmax[i];
      } else {
        const MagBound& up = bound.at(disc.network.edges[e].from);
        pre.mag += max_abs_of(sp.weight_sets[0]) * up.mag;
        pre.scale = std::max(pre.scale, up.scale);
      }
    }
    if (pre.mag > best) best = pre.mag;
    MagBound post = pre;
    const Activation& act = disc.activations.at(v);
    if (std::holds_alternative<SlpMul>(act)) {
      mpz_class shift;
      mpz_ui_pow_ui(shift.get_mpz_t(), 10,
                    static_cast<unsigned long>(pre.scale));
      post.mag = pre.mag * shift;
      post.scale = 0;
    } else if (std::holds_alternative<DecShift>(act)) {
      post.mag = 1;
      post.scale = digits_of(pre.mag == 0 ? mpz_class(1) : pre.mag);
    }
    if (post.mag > best) best = post.mag;
    bound.emplace(v, std::move(post));
  }
  return best;
}

BaseActivation base_of(const Activation& act, const std::string& vertex) {
  if (std::holds_alternative<Identity>(act)) return BaseActivation::identity;
  if (std::holds_alternative<Relu>(act)) return BaseActivation::relu;
  if (std::holds_alternative<SlpMul>(act)) return BaseActivation::slp_mul;
  if (std::holds_alternative<DecShift>(act)) return BaseActivation::dec_shift;
  throw Error(Errc::precondition,
              "vertex '" + vertex + "' already carries a wrapped activation");
}

// Shortest path from the source to `target`, breaking ties toward the
// lexicographically smallest predecessor.
std::vector<std::string> route_to(const Instance& disc,
                                  const std::string& target) {
  if (target == disc.network.source) return {disc.network.source};
  std::map<std::string, std::size_t> dist;
  std::map<std::string, std::string> parent;
  dist[disc.network.source] = 0;
  std::deque<std::string> queue{disc.network.source};
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    for (const Edge& e : disc.network.edges) {
      if (e.from != v) continue;
      auto it = dist.find(e.to);
      if (it == dist.end()) {
        dist[e.to] = dist[v] + 1;
        parent[e.to] = v;
        queue.push_back(e.to);
      } else if (it->second == dist[v] + 1 && v < parent[e.to]) {
        parent[e.to] = v;
      }
    }
  }
  if (!dist.count(target))
    throw Error(Errc::precondition,
                "edge tail '" + target + "' is unreachable from the source");
  std::vector<std::string> path{target};
  while (path.back() != disc.network.source) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

Instance dnnt_to_cnnt(const Instance& disc) {
  if (disc.topo.order.empty())
    throw Error(Errc::precondition, "instance is not finalized");
  if (disc.kind != Kind::discrete || disc.params.continuous)
    throw Error(Errc::precondition,
                "only discrete instances can be made continuous");
  if (std::holds_alternative<CnntProbe>(disc.loss))
    throw Error(Errc::precondition, "instance already carries a probe loss");
  if (disc.gamma.is_negative())
    throw Error(Errc::precondition,
                "a negative loss budget cannot be made continuous");

  const Network& net = disc.network;
  std::set<std::pair<std::string, std::string>> seen_edges;
  for (const Edge& e : net.edges)
    if (!seen_edges.insert({e.from, e.to}).second)
      throw Error(Errc::precondition,
                  "parallel edges cannot be probed apart");

  mpz_class max_val = 0;
  auto feed = [&](const ExactDec& v, const std::string& what) {
    if (!v.is_integer())
      throw Error(Errc::precondition, what + " must be an integer, got " + v.str());
    mpz_class a = abs(v.mantissa());
    if (a > max_val) max_val = a;
  };
  for (std::size_t e = 0; e < disc.params.edges.size(); ++e) {
    const EdgeSpace& sp = disc.params.edges[e];
    if (sp.bias_set.size() != 1 || !sp.bias_set[0].is_zero())
      throw Error(Errc::precondition,
                  "edge " + std::to_string(e) + " has a non-zero bias set");
    for (const auto& set : sp.weight_sets)
      for (const ExactDec& v : set)
        feed(v, "weight on edge " + std::to_string(e));
  }
  for (std::size_t i = 0; i < disc.dataset.points.size(); ++i) {
    for (const ExactDec& v : disc.dataset.points[i].x)
      feed(v, "input of data point " + std::to_string(i));
    for (const ExactDec& v : disc.dataset.points[i].y)
      feed(v, "target of data point " + std::to_string(i));
  }
  {
    mpz_class g = ceil_mag(disc.gamma);
    if (g > max_val) max_val = g;
  }
  if (max_val < 1) max_val = 1;

  // Wrap threshold: strictly above every reachable network value and at
  // least twice the data bound, so integer-weight probes stay inside
  // their own band.
  mpz_class m_big = 2 * max_val;
  std::size_t need = digits_of(value_bound(disc)) + 1;
  if (m_big < mpz_class(static_cast<unsigned long>(need)))
    m_big = mpz_class(static_cast<unsigned long>(need));
  if (!m_big.fits_ulong_p() || m_big > mpz_class(4000000000UL))
    throw Error(Errc::precondition, "wrap exponent " + m_big.get_str() +
                                        " is too large to realize");
  std::uint32_t M = static_cast<std::uint32_t>(mpz_get_ui(m_big.get_mpz_t()));

  std::size_t d = disc.dataset.input_dim;
  std::size_t n_vertices = 1 + net.hidden.size() + net.outputs.size();

  Instance cont;
  cont.kind = Kind::continuous;
  cont.params.continuous = true;
  cont.network.source = net.source;
  cont.network.edges = net.edges;
  for (const std::string& v : disc.topo.order)
    if (v != net.source) cont.network.outputs.push_back(v);
  cont.dataset.input_dim = d + 2;

  CnntProbe loss;
  if (const auto* s = std::get_if<SumSquares>(&disc.loss)) loss.base = *s;
  if (const auto* s = std::get_if<SlpThreshold>(&disc.loss)) loss.base = *s;
  if (const auto* s = std::get_if<CspDecode>(&disc.loss)) loss.base = *s;
  loss.original_outputs = net.outputs;
  loss.original_count = disc.dataset.points.size();
  loss.wrap_exponent = M;
  loss.penalty = (ExactDec(2) + disc.gamma) * ExactDec(long(n_vertices)) *
                 ExactDec(long(net.edges.size())) * ExactDec(long(d + 1)) *
                 ExactDec(long(disc.dataset.points.size()));

  mpz_class ten_m;
  mpz_ui_pow_ui(ten_m.get_mpz_t(), 10, M);
  mpz_class step = m_big + 1;

  std::map<std::string, std::set<std::size_t>> on_path;
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    std::vector<std::string> path = route_to(disc, net.edges[e].from);
    for (const std::string& v : path)
      if (v != net.source) on_path[v].insert(e);
    on_path[net.edges[e].to].insert(e);

    std::vector<std::string> upstream;
    for (std::size_t o : disc.topo.in_edges.at(net.edges[e].to)) {
      if (o == e) continue;
      const std::string& tail = net.edges[o].from;
      if (tail == net.source) continue;
      if (std::find(path.begin(), path.end(), tail) != path.end()) continue;
      upstream.push_back(tail);
    }
    std::sort(upstream.begin(), upstream.end());
    upstream.erase(std::unique(upstream.begin(), upstream.end()),
                   upstream.end());

    for (std::size_t dim = 1; dim <= d + 1; ++dim) {
      std::size_t idx = e * (d + 1) + (dim - 1);
      mpz_class power;
      mpz_pow_ui(power.get_mpz_t(), step.get_mpz_t(),
                 static_cast<unsigned long>(idx + 1));
      Probe pr;
      pr.edge = e;
      pr.dim = dim;
      pr.f = ExactDec(ten_m * power);
      pr.path = path;
      pr.upstream = upstream;
      if (disc.topo.first_layer[e]) {
        pr.allowed = dim <= d ? disc.params.edges[e].weight_sets[dim - 1]
                              : singleton(0);
      } else {
        pr.allowed = disc.params.edges[e].weight_sets[0];
      }

      DataPoint pt;
      pt.x.assign(d + 2, ExactDec(0));
      if (disc.topo.first_layer[e]) {
        pt.x[dim - 1] = pr.f;
      } else {
        pt.x[d + 1] = pr.f;
      }
      pt.y.assign(cont.network.outputs.size(), ExactDec(0));

      loss.probes.push_back(std::move(pr));
      // probe points are appended after all original points below
      cont.dataset.points.push_back(std::move(pt));
    }
  }

  // Originals first, probes after; the probe points were pushed already,
  // so splice the originals in front.
  {
    std::vector<DataPoint> originals;
    for (const DataPoint& p : disc.dataset.points) {
      DataPoint pt;
      pt.x = p.x;
      pt.x.push_back(ExactDec(0));
      pt.x.push_back(ExactDec(0));
      pt.y.assign(cont.network.outputs.size(), ExactDec(0));
      for (std::size_t j = 0; j < net.outputs.size(); ++j) {
        auto it = std::find(cont.network.outputs.begin(),
                            cont.network.outputs.end(), net.outputs[j]);
        pt.y[std::size_t(it - cont.network.outputs.begin())] = p.y[j];
      }
      originals.push_back(std::move(pt));
    }
    cont.dataset.points.insert(cont.dataset.points.begin(),
                               std::make_move_iterator(originals.begin()),
                               std::make_move_iterator(originals.end()));
  }

  cont.loss = std::move(loss);
  const CnntProbe& cp = std::get<CnntProbe>(cont.loss);

  auto table = std::make_shared<ProbeTable>();
  table->wrap_exponent = M;
  table->threshold = ExactDec::pow10(M);
  table->multiplier = m_big;
  for (const Probe& pr : cp.probes) {
    ProbeInterval iv;
    iv.edge = pr.edge;
    iv.dim = pr.dim;
    iv.f = pr.f;
    iv.low = pr.f;
    iv.high = pr.f * ExactDec(m_big);
    table->intervals.push_back(std::move(iv));
  }

  for (const auto& [v, act] : disc.activations) {
    Wrapped w;
    w.base = base_of(act, v);
    w.table = table;
    auto it = on_path.find(v);
    if (it != on_path.end()) w.on_path_edges = it->second;
    cont.activations.emplace(v, std::move(w));
  }

  cont.gamma = disc.gamma +
               ExactDec(long(net.edges.size())) * ExactDec(long(d + 1));
  cont.source_problem = disc.source_problem;
  finalize(cont);
  return cont;
}

Assignment lift_assignment(const Assignment& theta, const Instance& disc,
                           const Instance& cont) {
  if (theta.edges.size() != disc.network.edges.size())
    throw Error(Errc::precondition,
                "witness does not cover the discrete instance");
  if (cont.network.edges.size() != disc.network.edges.size())
    throw Error(Errc::precondition,
                "continuous instance does not match the discrete one");
  Assignment out;
  for (std::size_t e = 0; e < theta.edges.size(); ++e) {
    EdgeAssign ea;
    if (disc.topo.first_layer[e]) {
      ea.weights = theta.edges[e].weights;
      ea.weights.push_back(ExactDec(0));  // bias slot
      ea.weights.push_back(ExactDec(1));  // routing slot
    } else {
      ea.weights = theta.edges[e].weights;
    }
    ea.bias = ExactDec(0);
    out.edges.push_back(std::move(ea));
  }
  return out;
}

namespace {

const Instance& require_source(const Instance& inst, bool ok,
                               const std::string& what) {
  if (!inst.source_problem || !ok)
    throw Error(Errc::precondition,
                "instance does not carry a " + what + " source");
  return inst;
}

}  // namespace

std::vector<std::size_t> extract_subset_sum(const Assignment& theta,
                                            const Instance& inst) {
  const auto* src = inst.source_problem
                        ? std::get_if<SubsetSumInstance>(&*inst.source_problem)
                        : nullptr;
  require_source(inst, src != nullptr, "subset sum");
  std::size_t n = src->items.size();
  if (theta.edges.size() != 2 * n)
    throw Error(Errc::precondition, "witness does not fit the encoding");

  std::vector<std::size_t> picked;
  mpz_class sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const ExactDec& w = theta.edges[i].weights.at(0);
    if (w == ExactDec(src->items[i])) {
      picked.push_back(i + 1);
      sum += src->items[i];
    } else if (!w.is_zero()) {
      throw Error(Errc::precondition,
                  "edge " + std::to_string(i) + " weight " + w.str() +
                      " is neither zero nor the item value");
    }
  }
  if (sum != src->target)
    throw Error(Errc::precondition, "selected items sum to " + sum.get_str() +
                                        ", not " + src->target.get_str());
  return picked;
}

std::vector<std::size_t> extract_csp(const Assignment& theta,
                                     const Instance& inst) {
  const auto* src = inst.source_problem
                        ? std::get_if<CspInstance>(&*inst.source_problem)
                        : nullptr;
  require_source(inst, src != nullptr, "constraint graph");
  std::size_t nv = src->vertices.size();
  std::size_t n = src->alphabet.size();
  if (theta.edges.size() < nv)
    throw Error(Errc::precondition, "witness does not fit the encoding");

  std::vector<std::size_t> phi;
  for (std::size_t i = 0; i < nv; ++i) {
    const ExactDec& w = theta.edges[i].weights.at(0);
    if (!w.is_integer() || w.is_negative() || w.is_zero() ||
        w > ExactDec(long(n)))
      throw Error(Errc::precondition,
                  "vertex '" + src->vertices[i] + "' carries " + w.str() +
                      ", not a symbol number");
    phi.push_back(static_cast<std::size_t>(mpz_get_ui(w.mantissa().get_mpz_t())));
  }
  for (std::size_t c = 0; c < src->constraints.size(); ++c) {
    const auto& con = src->constraints[c];
    bool ok = false;
    for (const auto& [a, b] : con.allowed)
      if (phi[con.u] == a + 1 && phi[con.v] == b + 1) {
        ok = true;
        break;
      }
    if (!ok)
      throw Error(Errc::precondition,
                  "constraint " + std::to_string(c) + " is violated");
  }
  return phi;
}

std::vector<std::size_t> extract_exact_cover(const Assignment& theta,
                                             const Instance& inst) {
  const auto* src = inst.source_problem
                        ? std::get_if<ExactCoverInstance>(&*inst.source_problem)
                        : nullptr;
  require_source(inst, src != nullptr, "exact cover");
  std::size_t m = src->sets.size();
  if (theta.edges.empty() || theta.edges[0].weights.size() != m)
    throw Error(Errc::precondition, "witness does not fit the encoding");

  std::vector<std::size_t> picked;
  for (std::size_t j = 0; j < m; ++j) {
    const ExactDec& w = theta.edges[0].weights[j];
    if (w == ExactDec(1)) {
      picked.push_back(j + 1);
    } else if (!w.is_zero()) {
      throw Error(Errc::precondition, "set " + std::to_string(j + 1) +
                                          " carries " + w.str() +
                                          ", not an indicator");
    }
  }
  if (picked.size() != src->k)
    throw Error(Errc::precondition,
                std::to_string(picked.size()) + " sets selected, need " +
                    std::to_string(src->k));
  std::set<std::size_t> covered;
  for (std::size_t j : picked)
    for (std::size_t el : src->sets[j - 1])
      if (!covered.insert(el).second)
        throw Error(Errc::precondition, "selected sets overlap on element " +
                                            std::to_string(el));
  if (covered.size() != src->universe_size)
    throw Error(Errc::precondition, "selected sets cover " +
                                        std::to_string(covered.size()) +
                                        " of " +
                                        std::to_string(src->universe_size) +
                                        " elements");
  return picked;
}

}  // namespace nnt
