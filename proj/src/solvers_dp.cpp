#include <algorithm>
#include <map>
#include <variant>

#include "nnt/error.hpp"
#include "nnt/evaluator.hpp"
#include "nnt/solvers.hpp"

namespace nnt {

namespace {

// Shape required by the dynamic program: one output with an identity
// activation, and every hidden unit tied to exactly one edge from the
// source and one edge into the output.
struct TwoLayer {
  std::vector<std::size_t> first_edge;   // per unit, ascending edge index
  std::vector<std::size_t> second_edge;  // matching output edge
  std::vector<std::string> hidden;       // unit order
};

TwoLayer two_layer_shape(const Instance& inst) {
  auto refuse = [](const std::string& msg) -> TwoLayer {
    throw Error(Errc::precondition, msg);
  };
  if (inst.topo.order.empty()) return refuse("instance is not finalized");
  if (inst.params.continuous)
    return refuse("the dynamic program needs a finite parameter space");
  if (inst.network.outputs.size() != 1)
    return refuse("the dynamic program needs a single output vertex");
  const std::string& out = inst.network.outputs[0];
  if (!std::holds_alternative<Identity>(inst.activations.at(out)))
    return refuse("the dynamic program needs an identity output activation");

  std::map<std::string, std::size_t> in_edge, out_edge;
  std::map<std::string, std::size_t> in_count, out_count;
  for (std::size_t e = 0; e < inst.network.edges.size(); ++e) {
    const Edge& edge = inst.network.edges[e];
    if (edge.from == inst.network.source && edge.to != out) {
      in_edge.emplace(edge.to, e);
      ++in_count[edge.to];
    } else if (edge.to == out && edge.from != inst.network.source) {
      out_edge.emplace(edge.from, e);
      ++out_count[edge.from];
    } else {
      return refuse("the network is not two layers");
    }
  }
  TwoLayer shape;
  for (std::size_t e = 0; e < inst.network.edges.size(); ++e) {
    const Edge& edge = inst.network.edges[e];
    if (edge.from != inst.network.source) continue;
    const std::string& h = edge.to;
    if (in_count[h] != 1 || out_count[h] != 1)
      return refuse("hidden unit '" + h +
                    "' needs exactly one incoming and one outgoing edge");
    shape.first_edge.push_back(in_edge[h]);
    shape.second_edge.push_back(out_edge[h]);
    shape.hidden.push_back(h);
  }
  for (const auto& [h, _] : out_count)
    if (!in_count.count(h))
      return refuse("hidden unit '" + h + "' has no edge from the source");
  return shape;
}

enum class UnitAct { identity, relu, slp_mul };

UnitAct unit_activation(const Instance& inst, const std::string& h) {
  const Activation& act = inst.activations.at(h);
  if (std::holds_alternative<Identity>(act)) return UnitAct::identity;
  if (std::holds_alternative<Relu>(act)) return UnitAct::relu;
  if (std::holds_alternative<SlpMul>(act)) return UnitAct::slp_mul;
  throw Error(Errc::precondition,
              "hidden activation at '" + h +
                  "' is not supported by the dynamic program");
}

// Digit-product of an integer is always zero: the fractional part of a
// whole number is empty.
mpz_class apply_unit(UnitAct act, const mpz_class& v) {
  switch (act) {
    case UnitAct::identity: return v;
    case UnitAct::relu: return v < 0 ? mpz_class(0) : v;
    case UnitAct::slp_mul: return mpz_class(0);
  }
  return v;
}

BaseLoss to_base_loss(const Instance& inst) {
  if (const auto* s = std::get_if<SumSquares>(&inst.loss)) return *s;
  if (const auto* s = std::get_if<SlpThreshold>(&inst.loss)) return *s;
  if (const auto* s = std::get_if<CspDecode>(&inst.loss)) return *s;
  throw Error(Errc::precondition,
              "probe losses are not supported by the dynamic program");
}

mpz_class natural_of(const ExactDec& v, const std::string& what) {
  if (!v.is_integer() || v.is_negative())
    throw Error(Errc::precondition, what + " must be a natural, got " + v.str());
  return v.mantissa();
}

struct NaturalData {
  std::vector<std::vector<mpz_class>> x;  // [point][dim]
  // per unit: d weight sets + bias set (first layer), weight + bias
  // set (second layer), all as naturals
  std::vector<std::vector<std::vector<mpz_class>>> w1;
  std::vector<std::vector<mpz_class>> b1, w2, b2;
  std::vector<UnitAct> acts;
};

NaturalData gather_naturals(const Instance& inst, const TwoLayer& shape) {
  NaturalData nd;
  for (std::size_t i = 0; i < inst.dataset.points.size(); ++i) {
    std::vector<mpz_class> row;
    for (const ExactDec& v : inst.dataset.points[i].x)
      row.push_back(natural_of(v, "input entry of data point " + std::to_string(i)));
    nd.x.push_back(std::move(row));
  }
  auto set_of = [](const std::vector<ExactDec>& s, const std::string& what) {
    std::vector<mpz_class> out;
    for (const ExactDec& v : s) out.push_back(natural_of(v, what));
    return out;
  };
  for (std::size_t q = 0; q < shape.hidden.size(); ++q) {
    const EdgeSpace& sp1 = inst.params.edges[shape.first_edge[q]];
    const EdgeSpace& sp2 = inst.params.edges[shape.second_edge[q]];
    std::string tag = "parameter set of unit '" + shape.hidden[q] + "'";
    std::vector<std::vector<mpz_class>> ws;
    for (const auto& s : sp1.weight_sets) ws.push_back(set_of(s, tag));
    nd.w1.push_back(std::move(ws));
    nd.b1.push_back(set_of(sp1.bias_set, tag));
    nd.w2.push_back(set_of(sp2.weight_sets[0], tag));
    nd.b2.push_back(set_of(sp2.bias_set, tag));
    nd.acts.push_back(unit_activation(inst, shape.hidden[q]));
  }
  return nd;
}

mpz_class ceil_abs(const ExactDec& a) {
  IntFracParts parts = int_frac_split(a.is_negative() ? -a : a);
  if (!parts.frac.is_zero()) return parts.int_part + 1;
  return parts.int_part;
}

}  // namespace

ValueBound compute_bound(const Instance& inst) {
  TwoLayer shape = two_layer_shape(inst);
  NaturalData nd = gather_naturals(inst, shape);
  BaseLoss base = to_base_loss(inst);

  std::size_t d = inst.dataset.input_dim;
  std::size_t k = shape.hidden.size();
  mpz_class w_max = 0;
  auto consider = [&](const mpz_class& v) {
    if (v > w_max) w_max = v;
    if (-v > w_max) w_max = -v;
  };

  ExactDec total_loss_max(0);
  for (std::size_t i = 0; i < nd.x.size(); ++i) {
    for (const mpz_class& xv : nd.x[i]) consider(xv);
    mpz_class out_lo = 0, out_hi = 0;
    for (std::size_t q = 0; q < k; ++q) {
      mpz_class pre_lo = nd.b1[q].front(), pre_hi = nd.b1[q].back();
      for (std::size_t j = 0; j < d; ++j) {
        pre_lo += nd.w1[q][j].front() * nd.x[i][j];
        pre_hi += nd.w1[q][j].back() * nd.x[i][j];
      }
      consider(pre_lo);
      consider(pre_hi);
      mpz_class post_lo = apply_unit(nd.acts[q], pre_lo);
      mpz_class post_hi = apply_unit(nd.acts[q], pre_hi);
      consider(post_lo);
      consider(post_hi);
      out_lo += nd.w2[q].front() * post_lo + nd.b2[q].front();
      out_hi += nd.w2[q].back() * post_hi + nd.b2[q].back();
    }
    consider(out_lo);
    consider(out_hi);
    ExactDec point_max;
    if (std::holds_alternative<SumSquares>(base)) {
      ExactDec lo_err = ExactDec(out_lo) - inst.dataset.points[i].y[0];
      ExactDec hi_err = ExactDec(out_hi) - inst.dataset.points[i].y[0];
      ExactDec lo_sq = lo_err * lo_err, hi_sq = hi_err * hi_err;
      point_max = lo_sq < hi_sq ? hi_sq : lo_sq;
    } else {
      point_max = ExactDec(2);
    }
    consider(ceil_abs(point_max));
    total_loss_max += point_max;
  }
  consider(ceil_abs(total_loss_max));

  ValueBound b;
  b.w_max = w_max;
  b.bound_m = mpz_class(static_cast<unsigned long>(d)) * w_max *
              mpz_class(static_cast<unsigned long>(k));
  return b;
}

namespace {

using DpKey = std::vector<mpz_class>;

struct DimEntry {
  ExactDec chosen;  // weight at this level; bias at the last level
  DpKey parent;     // key one level up; empty at the first level
};

struct FinalEntry {
  DpKey parent;   // combination key over the previous units
  DpKey dim_key;  // pre-activation key of this unit
  ExactDec w2, b2;
};

using DimMap = std::map<DpKey, DimEntry>;
using FinalMap = std::map<DpKey, FinalEntry>;

}  // namespace

SolveResult dp_solve(const Instance& inst, const SolveOptions& opts) {
  TwoLayer shape = two_layer_shape(inst);
  NaturalData nd = gather_naturals(inst, shape);
  BaseLoss base = to_base_loss(inst);
  ValueBound bound = compute_bound(inst);

  std::size_t n0 = nd.x.size();
  std::size_t d = inst.dataset.input_dim;
  std::size_t k = shape.hidden.size();

  std::uint64_t entries = 0;
  auto count_entry = [&](bool inserted) {
    if (inserted && ++entries > opts.budget)
      throw Error(Errc::budget, "dynamic program tables exceed budget " +
                                    std::to_string(opts.budget) + " entries");
  };

  // Per-unit tables: level j holds every reachable vector of partial
  // pre-activation sums after the first j weights (last level adds the
  // bias). First writer wins, so iterating parents and values in
  // ascending order pins the lexicographically smallest derivation.
  std::vector<std::vector<DimMap>> dim(k);
  std::uint64_t dim_entries = 0;
  for (std::size_t q = 0; q < k; ++q) {
    dim[q].resize(d + 1);
    const EdgeSpace& sp = inst.params.edges[shape.first_edge[q]];
    for (std::size_t wi = 0; wi < nd.w1[q][0].size(); ++wi) {
      DpKey key(n0);
      for (std::size_t i = 0; i < n0; ++i) key[i] = nd.w1[q][0][wi] * nd.x[i][0];
      count_entry(dim[q][0].emplace(std::move(key),
                                    DimEntry{sp.weight_sets[0][wi], {}}).second);
    }
    for (std::size_t lvl = 1; lvl <= d; ++lvl) {
      bool bias_level = lvl == d;
      const std::vector<mpz_class>& values = bias_level ? nd.b1[q] : nd.w1[q][lvl];
      const std::vector<ExactDec>& labels =
          bias_level ? sp.bias_set : sp.weight_sets[lvl];
      for (const auto& [key, _] : dim[q][lvl - 1]) {
        for (std::size_t vi = 0; vi < values.size(); ++vi) {
          DpKey next(n0);
          for (std::size_t i = 0; i < n0; ++i)
            next[i] = key[i] + (bias_level ? values[vi]
                                           : values[vi] * nd.x[i][lvl]);
          count_entry(
              dim[q][lvl].emplace(std::move(next), DimEntry{labels[vi], key})
                  .second);
        }
      }
    }
    for (const DimMap& m : dim[q]) dim_entries += m.size();
  }

  // Combination tables: level q holds every reachable vector of output
  // values using only the first q units (each unit's output edge folds
  // its own bias in).
  std::vector<FinalMap> fin(k + 1);
  count_entry(fin[0].emplace(DpKey(n0, mpz_class(0)), FinalEntry{}).second);
  for (std::size_t q = 0; q < k; ++q) {
    const EdgeSpace& sp = inst.params.edges[shape.second_edge[q]];
    for (const auto& [pkey, _] : fin[q]) {
      for (const auto& [dkey, _d] : dim[q][d]) {
        for (std::size_t wi = 0; wi < nd.w2[q].size(); ++wi) {
          for (std::size_t bi = 0; bi < nd.b2[q].size(); ++bi) {
            DpKey next(n0);
            for (std::size_t i = 0; i < n0; ++i)
              next[i] = pkey[i] +
                        nd.w2[q][wi] * apply_unit(nd.acts[q], dkey[i]) +
                        nd.b2[q][bi];
            count_entry(fin[q + 1]
                            .emplace(std::move(next),
                                     FinalEntry{pkey, dkey, sp.weight_sets[0][wi],
                                                sp.bias_set[bi]})
                            .second);
          }
        }
      }
    }
  }
  std::uint64_t final_entries = 0;
  for (const FinalMap& m : fin) final_entries += m.size();

  // Minimum loss over reachable output vectors; ties go to the
  // lexicographically smallest vector.
  const DpKey* best_key = nullptr;
  ExactDec best_loss;
  for (const auto& [key, _] : fin[k]) {
    ExactDec loss(0);
    for (std::size_t i = 0; i < n0; ++i)
      loss += base_point_loss(base, {ExactDec(key[i])},
                              {inst.dataset.points[i].y[0]});
    if (!best_key || loss < best_loss) {
      best_key = &key;
      best_loss = loss;
    }
  }

  if (!best_key)
    throw Error(Errc::evaluation, "dynamic program produced no output value");

  Assignment theta;
  theta.edges.resize(inst.network.edges.size());
  DpKey cur = *best_key;
  for (std::size_t q = k; q-- > 0;) {
    const FinalEntry& fe = fin[q + 1].at(cur);
    EdgeAssign& second = theta.edges[shape.second_edge[q]];
    second.weights = {fe.w2};
    second.bias = fe.b2;
    EdgeAssign& first = theta.edges[shape.first_edge[q]];
    first.weights.resize(d);
    DpKey dcur = fe.dim_key;
    for (std::size_t lvl = d + 1; lvl-- > 0;) {
      const DimEntry& de = dim[q][lvl].at(dcur);
      if (lvl == d) {
        first.bias = de.chosen;
      } else {
        first.weights[lvl] = de.chosen;
      }
      dcur = de.parent;
    }
    cur = fe.parent;
  }

  // Cross-check the reconstruction against the direct evaluator.
  ExactDec verified = total_loss(inst, theta);
  if (verified != best_loss)
    throw Error(Errc::evaluation,
                "reconstructed witness disagrees with the table: table loss " +
                    best_loss.str() + ", evaluator loss " + verified.str());

  SolveResult r;
  r.decision = best_loss <= inst.gamma;
  r.loss = best_loss;
  r.witness = std::move(theta);
  r.stats.dim_entries = dim_entries;
  r.stats.final_entries = final_entries;
  r.stats.w_max = bound.w_max;
  r.stats.bound_m = bound.bound_m;
  return r;
}

namespace {

std::uint32_t max_scale_of(const std::vector<ExactDec>& vs, std::uint32_t acc) {
  for (const ExactDec& v : vs) acc = std::max(acc, v.scale());
  return acc;
}

ExactDec shift_up(const ExactDec& v, std::uint32_t exp) {
  return v * ExactDec::pow10(exp);
}

ExactDec shift_down(const ExactDec& v, std::uint32_t exp) {
  if (exp == 0 || v.is_zero()) return v;
  return ExactDec(v.mantissa(), v.scale() + exp);
}

}  // namespace

Instance scale_to_naturals(const Instance& inst, std::uint32_t& p,
                           std::uint32_t& q, std::uint32_t& r) {
  TwoLayer shape = two_layer_shape(inst);

  auto check_sign = [](const std::vector<ExactDec>& vs, const std::string& what) {
    for (const ExactDec& v : vs)
      if (v.is_negative())
        throw Error(Errc::precondition,
                    what + " holds " + v.str() + "; negatives cannot be "
                    "scaled to naturals");
  };
  std::uint32_t sx = 0, sw1 = 0, sb1 = 0, sw2 = 0, sb2 = 0, sy = 0;
  for (std::size_t i = 0; i < inst.dataset.points.size(); ++i) {
    check_sign(inst.dataset.points[i].x, "data point " + std::to_string(i));
    sx = max_scale_of(inst.dataset.points[i].x, sx);
    sy = max_scale_of(inst.dataset.points[i].y, sy);
  }
  for (std::size_t u = 0; u < shape.hidden.size(); ++u) {
    const EdgeSpace& sp1 = inst.params.edges[shape.first_edge[u]];
    const EdgeSpace& sp2 = inst.params.edges[shape.second_edge[u]];
    std::string tag = "parameter set of unit '" + shape.hidden[u] + "'";
    for (const auto& s : sp1.weight_sets) {
      check_sign(s, tag);
      sw1 = max_scale_of(s, sw1);
    }
    check_sign(sp1.bias_set, tag);
    sb1 = max_scale_of(sp1.bias_set, sb1);
    check_sign(sp2.weight_sets[0], tag);
    sw2 = max_scale_of(sp2.weight_sets[0], sw2);
    check_sign(sp2.bias_set, tag);
    sb2 = max_scale_of(sp2.bias_set, sb2);
  }

  p = sx;
  q = std::max(sw1, sb1 > p ? sb1 - p : 0);
  std::uint32_t tail = std::max(sb2, sy);
  r = std::max(sw2, tail > p + q ? tail - (p + q) : 0);
  std::uint32_t sg = inst.gamma.scale();
  if (sg > 2 * (p + q + r)) r += (sg - 2 * (p + q + r) + 1) / 2;

  if (p == 0 && q == 0 && r == 0) return inst;

  if (!std::holds_alternative<SumSquares>(inst.loss))
    throw Error(Errc::precondition,
                "only the squared loss survives rescaling");
  for (const std::string& h : shape.hidden) {
    const Activation& act = inst.activations.at(h);
    if (!std::holds_alternative<Identity>(act) &&
        !std::holds_alternative<Relu>(act))
      throw Error(Errc::precondition,
                  "digit activations at '" + h + "' do not survive rescaling");
  }

  Instance out = inst;
  std::uint32_t s = p + q + r;
  for (DataPoint& pt : out.dataset.points) {
    for (ExactDec& v : pt.x) v = shift_up(v, p);
    for (ExactDec& v : pt.y) v = shift_up(v, s);
  }
  for (std::size_t u = 0; u < shape.hidden.size(); ++u) {
    EdgeSpace& sp1 = out.params.edges[shape.first_edge[u]];
    EdgeSpace& sp2 = out.params.edges[shape.second_edge[u]];
    for (auto& set : sp1.weight_sets)
      for (ExactDec& v : set) v = shift_up(v, q);
    for (ExactDec& v : sp1.bias_set) v = shift_up(v, p + q);
    for (ExactDec& v : sp2.weight_sets[0]) v = shift_up(v, r);
    for (ExactDec& v : sp2.bias_set) v = shift_up(v, s);
  }
  out.gamma = shift_up(inst.gamma, 2 * s);
  return out;
}

Instance scale_to_naturals(const Instance& inst) {
  std::uint32_t p = 0, q = 0, r = 0;
  return scale_to_naturals(inst, p, q, r);
}

Assignment unscale_assignment(const Assignment& theta, const Instance& original,
                              std::uint32_t p, std::uint32_t q,
                              std::uint32_t r) {
  Assignment out = theta;
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    bool first = e < original.topo.first_layer.size() &&
                 original.topo.first_layer[e];
    for (ExactDec& w : out.edges[e].weights)
      w = shift_down(w, first ? q : r);
    out.edges[e].bias = shift_down(out.edges[e].bias, first ? p + q : p + q + r);
  }
  return out;
}

}  // namespace nnt
