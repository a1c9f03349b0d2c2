#include <cstdlib>
#include <string>

#include "nnt/error.hpp"
#include "nnt/evaluator.hpp"
#include "nnt/solvers.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nnt {

SolveOptions::SolveOptions() {
  if (const char* env = std::getenv("NNT_ENUM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw Error(Errc::parse, "NNT_ENUM_BUDGET must be a positive integer");
    budget = v;
  }
}

namespace {

// One enumeration slot per parameter: every weight dimension of every
// edge, then the edge's bias. Earlier slots vary slower, so candidate
// index order is lexicographic order over assignments.
struct Slot {
  std::size_t edge = 0;
  std::size_t dim = 0;  // weight index; ignored for the bias slot
  bool bias = false;
  const std::vector<ExactDec>* values = nullptr;
};

struct SlotPlan {
  std::vector<Slot> slots;
  std::vector<std::uint64_t> stride;
  std::uint64_t total = 1;
};

SlotPlan make_plan(const Instance& inst, std::uint64_t budget) {
  if (inst.params.continuous)
    throw Error(Errc::precondition,
                "enumeration needs a finite parameter space");
  if (inst.topo.order.empty())
    throw Error(Errc::precondition, "instance is not finalized");

  SlotPlan plan;
  for (std::size_t e = 0; e < inst.params.edges.size(); ++e) {
    const EdgeSpace& sp = inst.params.edges[e];
    for (std::size_t i = 0; i < sp.weight_sets.size(); ++i)
      plan.slots.push_back({e, i, false, &sp.weight_sets[i]});
    plan.slots.push_back({e, 0, true, &sp.bias_set});
  }

  mpz_class total = 1;
  for (const Slot& s : plan.slots)
    total *= mpz_class(static_cast<unsigned long>(s.values->size()));
  if (total > mpz_class(budget) || !total.fits_ulong_p())
    throw Error(Errc::budget, "search space of " + total.get_str() +
                                  " candidates exceeds budget " +
                                  std::to_string(budget));
  plan.total = mpz_get_ui(total.get_mpz_t());

  plan.stride.resize(plan.slots.size());
  std::uint64_t acc = 1;
  for (std::size_t i = plan.slots.size(); i-- > 0;) {
    plan.stride[i] = acc;
    acc *= plan.slots[i].values->size();
  }
  return plan;
}

Assignment shaped_assignment(const Instance& inst) {
  Assignment theta;
  theta.edges.resize(inst.params.edges.size());
  for (std::size_t e = 0; e < inst.params.edges.size(); ++e)
    theta.edges[e].weights.resize(inst.params.edges[e].weight_sets.size());
  return theta;
}

void decode(const SlotPlan& plan, std::uint64_t idx, Assignment& theta) {
  for (std::size_t i = 0; i < plan.slots.size(); ++i) {
    const Slot& s = plan.slots[i];
    const ExactDec& v = (*s.values)[(idx / plan.stride[i]) % s.values->size()];
    if (s.bias) {
      theta.edges[s.edge].bias = v;
    } else {
      theta.edges[s.edge].weights[s.dim] = v;
    }
  }
}

struct Best {
  bool has = false;
  ExactDec loss;
  std::uint64_t idx = 0;

  void offer(const ExactDec& l, std::uint64_t i) {
    if (!has || l < loss || (l == loss && i < idx)) {
      has = true;
      loss = l;
      idx = i;
    }
  }
  void merge(const Best& o) {
    if (o.has) offer(o.loss, o.idx);
  }
};

struct FirstError {
  bool has = false;
  std::uint64_t idx = 0;
  Errc code = Errc::evaluation;
  std::string message;

  void offer(std::uint64_t i, const Error& e) {
    if (!has || i < idx) {
      has = true;
      idx = i;
      code = e.code();
      message = e.what();
    }
  }
  void merge(const FirstError& o) {
    if (o.has && (!has || o.idx < idx)) *this = o;
  }
};

SolveResult finish(const Instance& inst, const SlotPlan& plan, Best best,
                   FirstError err) {
  if (err.has) throw Error(err.code, err.message);
  SolveResult r;
  r.stats.candidates = plan.total;
  r.loss = best.loss;
  r.decision = best.loss <= inst.gamma;
  Assignment theta = shaped_assignment(inst);
  decode(plan, best.idx, theta);
  r.witness = std::move(theta);
  return r;
}

}  // namespace

SolveResult brute_force_serial(const Instance& inst, const SolveOptions& opts) {
  SlotPlan plan = make_plan(inst, opts.budget);
  Best best;
  FirstError err;
  Assignment theta = shaped_assignment(inst);
  for (std::uint64_t idx = 0; idx < plan.total; ++idx) {
    decode(plan, idx, theta);
    try {
      best.offer(total_loss(inst, theta), idx);
    } catch (const Error& e) {
      err.offer(idx, e);
      break;  // later candidates cannot beat an earlier error for determinism
    }
  }
  return finish(inst, plan, best, err);
}

SolveResult brute_force(const Instance& inst, const SolveOptions& opts) {
#ifndef _OPENMP
  return brute_force_serial(inst, opts);
#else
  if (opts.serial) return brute_force_serial(inst, opts);
  SlotPlan plan = make_plan(inst, opts.budget);
  Best best;
  FirstError err;
#pragma omp parallel
  {
    Best local_best;
    FirstError local_err;
    Assignment theta = shaped_assignment(inst);
    long long n = static_cast<long long>(plan.total);
#pragma omp for schedule(static)
    for (long long idx = 0; idx < n; ++idx) {
      if (local_err.has) continue;
      decode(plan, static_cast<std::uint64_t>(idx), theta);
      try {
        local_best.offer(total_loss(inst, theta),
                         static_cast<std::uint64_t>(idx));
      } catch (const Error& e) {
        local_err.offer(static_cast<std::uint64_t>(idx), e);
      }
    }
#pragma omp critical
    {
      best.merge(local_best);
      err.merge(local_err);
    }
  }
  return finish(inst, plan, best, err);
#endif
}

}  // namespace nnt
