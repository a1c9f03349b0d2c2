#include "nnt/evaluator.hpp"

#include <algorithm>
#include <variant>

#include "nnt/error.hpp"

namespace nnt {

namespace {

ExactDec abs_val(const ExactDec& a) { return a.is_negative() ? -a : a; }

// Finds the magnitude band containing q, if any. Bands are sorted by
// their lower end and pairwise disjoint.
const ProbeInterval* find_band(const ProbeTable& table, const ExactDec& q) {
  auto it = std::upper_bound(
      table.intervals.begin(), table.intervals.end(), q,
      [](const ExactDec& v, const ProbeInterval& iv) { return v < iv.low; });
  if (it == table.intervals.begin()) return nullptr;
  --it;
  if (q > it->high) return nullptr;
  return &*it;
}

ExactDec apply_activation(const Activation& act, const ExactDec& z,
                          const std::string& vertex) {
  struct Visitor {
    const ExactDec& z;
    const std::string& vertex;

    ExactDec operator()(const Identity&) const { return z; }
    ExactDec operator()(const Relu&) const {
      return z.is_negative() ? ExactDec(0) : z;
    }
    ExactDec operator()(const SlpMul&) const { return slp_mul_activation(z); }
    ExactDec operator()(const DecShift&) const {
      if (!z.is_integer())
        throw Error(Errc::evaluation, "digit-shift activation at '" + vertex +
                                          "' needs an integer, got " + z.str());
      return dec_activation(z);
    }
    ExactDec operator()(const Wrapped& w) const {
      ExactDec q = abs_val(z);
      if (q < w.table->threshold) {
        switch (w.base) {
          case BaseActivation::identity:
            return (*this)(Identity{});
          case BaseActivation::relu:
            return (*this)(Relu{});
          case BaseActivation::slp_mul:
            return (*this)(SlpMul{});
          case BaseActivation::dec_shift:
            return (*this)(DecShift{});
        }
        throw Error(Errc::evaluation, "unknown wrapped base activation");
      }
      const ProbeInterval* band = find_band(*w.table, q);
      if (!band) return z;
      return w.on_path_edges.count(band->edge) ? z : ExactDec(0);
    }
  };
  return std::visit(Visitor{z, vertex}, act);
}

}  // namespace

// Base losses share one shape: a vector of observed output values
// against a target vector of the same length.
ExactDec base_point_loss(const BaseLoss& loss,
                         const std::vector<ExactDec>& outs,
                         const std::vector<ExactDec>& ys) {
  if (std::holds_alternative<SumSquares>(loss)) {
    ExactDec total(0);
    for (std::size_t j = 0; j < outs.size(); ++j) {
      ExactDec diff = outs[j] - ys[j];
      total += diff * diff;
    }
    return total;
  }
  if (std::holds_alternative<SlpThreshold>(loss)) {
    const ExactDec& alpha = outs[0];
    if (alpha == ExactDec(1) && ys[0] == ExactDec(1)) return ExactDec(0);
    if (alpha > ExactDec(0)) return ExactDec(1);
    return ExactDec(2);
  }
  const auto& csp = std::get<CspDecode>(loss);
  mpz_class period = 2 * mpz_class(static_cast<unsigned long>(csp.alphabet_size));
  for (std::size_t j = 0; j < outs.size(); ++j) {
    const ExactDec& f = outs[j];
    if (!f.is_integer()) return ExactDec(2);
    mpz_class l, m;
    mpz_fdiv_qr(m.get_mpz_t(), l.get_mpz_t(), f.mantissa().get_mpz_t(),
                period.get_mpz_t());
    if (l < 1 || !mpz_fits_slong_p(l.get_mpz_t())) return ExactDec(2);
    if (m < 1 || !mpz_fits_slong_p(m.get_mpz_t())) return ExactDec(2);
    long lv = mpz_get_si(l.get_mpz_t());
    long mv = mpz_get_si(m.get_mpz_t());
    if (lv > long(csp.alphabet_size) || mv > long(csp.alphabet_size))
      return ExactDec(2);
    if (!csp.allowed[j].count({lv, mv})) return ExactDec(2);
  }
  return ExactDec(1);
}

ForwardResult forward(const Instance& inst, const Assignment& theta,
                      const std::vector<ExactDec>& x, const EvalOptions& opts) {
  if (inst.topo.order.empty())
    throw Error(Errc::precondition, "instance is not finalized");
  if (x.size() != inst.dataset.input_dim)
    throw Error(Errc::evaluation,
                "input has " + std::to_string(x.size()) + " entries, expected " +
                    std::to_string(inst.dataset.input_dim));

  const Network& net = inst.network;
  const std::vector<std::string>& order =
      opts.order ? *opts.order : inst.topo.order;
  std::map<std::string, ExactDec> values;

  for (const std::string& v : order) {
    if (v == net.source) continue;
    ExactDec pre(0);
    for (std::size_t e : inst.topo.in_edges.at(v)) {
      const EdgeAssign& ea = theta.edges[e];
      if (inst.topo.first_layer[e]) {
        for (std::size_t i = 0; i < x.size(); ++i) pre += ea.weights[i] * x[i];
      } else {
        pre += ea.weights[0] * values.at(net.edges[e].from);
      }
      pre += ea.bias;
    }
    values.emplace(v, apply_activation(inst.activations.at(v), pre, v));
  }

  ForwardResult r;
  r.outputs.reserve(net.outputs.size());
  for (const auto& t : net.outputs) r.outputs.push_back(values.at(t));
  if (opts.want_full) r.values = std::move(values);
  return r;
}

ExactDec point_loss(const Instance& inst, const Assignment& theta,
                    std::size_t point_index) {
  const DataPoint& p = inst.dataset.points.at(point_index);

  if (const auto* cp = std::get_if<CnntProbe>(&inst.loss)) {
    EvalOptions opts;
    opts.want_full = true;
    ForwardResult fr = forward(inst, theta, p.x, opts);
    if (point_index < cp->original_count) {
      std::vector<ExactDec> outs, ys;
      outs.reserve(cp->original_outputs.size());
      ys.reserve(cp->original_outputs.size());
      for (const auto& name : cp->original_outputs) {
        auto it = std::find(inst.network.outputs.begin(),
                            inst.network.outputs.end(), name);
        std::size_t j = std::size_t(it - inst.network.outputs.begin());
        outs.push_back(fr.outputs[j]);
        ys.push_back(p.y[j]);
      }
      return base_point_loss(cp->base, outs, ys);
    }
    const Probe& pr = cp->probes[point_index - cp->original_count];
    for (const std::string& v : pr.path)
      if (v != inst.network.source && fr.values.at(v) != pr.f)
        return cp->penalty;
    for (const std::string& u : pr.upstream)
      if (!fr.values.at(u).is_zero()) return cp->penalty;
    const ExactDec& z = fr.values.at(inst.network.edges[pr.edge].to);
    for (const ExactDec& a : pr.allowed)
      if (z == a * pr.f) return ExactDec(1);
    return cp->penalty;
  }

  ForwardResult fr = forward(inst, theta, p.x);
  if (const auto* ss = std::get_if<SumSquares>(&inst.loss))
    return base_point_loss(*ss, fr.outputs, p.y);
  if (const auto* st = std::get_if<SlpThreshold>(&inst.loss))
    return base_point_loss(*st, fr.outputs, p.y);
  return base_point_loss(std::get<CspDecode>(inst.loss), fr.outputs, p.y);
}

ExactDec total_loss(const Instance& inst, const Assignment& theta) {
  ExactDec total(0);
  for (std::size_t i = 0; i < inst.dataset.points.size(); ++i)
    total += point_loss(inst, theta, i);
  return total;
}

bool decide(const Instance& inst, const Assignment& theta) {
  return total_loss(inst, theta) <= inst.gamma;
}

}  // namespace nnt
