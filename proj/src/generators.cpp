#include "nnt/generators.hpp"

#include <algorithm>
#include <set>

#include "nnt/error.hpp"
#include "nnt/rng.hpp"

namespace nnt {

SubsetSumInstance random_subset_sum(std::uint64_t seed, std::size_t n,
                                    unsigned long max_value) {
  if (n == 0 || max_value == 0)
    throw Error(Errc::precondition, "need at least one item and value 1");
  Rng rng(seed);
  SubsetSumInstance ss;
  for (std::size_t i = 0; i < n; ++i)
    ss.items.emplace_back(static_cast<unsigned long>(rng.below(max_value) + 1));

  mpz_class sum = 0;
  bool any = false;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.coin()) {
      sum += ss.items[i];
      any = true;
    }
  if (!any) sum = ss.items[rng.below(n)];
  ss.target = sum;
  if (rng.coin()) ss.target += rng.below(max_value) + 1;  // usually a miss
  return ss;
}

CspInstance random_csp(std::uint64_t seed, std::size_t vertices,
                       std::size_t alphabet, std::size_t constraints) {
  if (vertices < 2 || alphabet == 0 || constraints == 0)
    throw Error(Errc::precondition,
                "need at least two vertices, letters, and constraints");
  Rng rng(seed);
  CspInstance csp;
  for (std::size_t i = 1; i <= vertices; ++i)
    csp.vertices.push_back("v" + std::to_string(i));
  for (std::size_t i = 1; i <= alphabet; ++i)
    csp.alphabet.push_back("a" + std::to_string(i));

  std::size_t max_pairs = std::min<std::size_t>(4, alphabet * alphabet);
  for (std::size_t c = 0; c < constraints; ++c) {
    CspInstance::Constraint con;
    // Constraint-graph edges join distinct vertices.
    con.u = rng.below(vertices);
    con.v = (con.u + 1 + rng.below(vertices - 1)) % vertices;
    std::size_t want = 1 + rng.below(max_pairs);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (seen.size() < want)
      seen.insert({rng.below(alphabet), rng.below(alphabet)});
    con.allowed.assign(seen.begin(), seen.end());
    csp.constraints.push_back(std::move(con));
  }
  return csp;
}

ExactCoverInstance random_exact_cover(std::uint64_t seed, std::size_t universe,
                                      std::size_t sets, std::size_t k) {
  if (universe == 0 || sets == 0 || k == 0 || k > sets)
    throw Error(Errc::precondition, "need a universe, sets, and 1 <= k <= sets");
  if (k > universe)
    throw Error(Errc::precondition,
                "no exact cover by more non-empty sets than elements; "
                "lower k or grow the universe");
  Rng rng(seed);
  ExactCoverInstance ec;
  ec.universe_size = universe;
  ec.k = k;

  auto random_subset = [&]() {
    std::vector<std::size_t> s;
    for (std::size_t el = 1; el <= universe; ++el)
      if (rng.below(3) == 0) s.push_back(el);
    return s;
  };

  if (rng.coin()) {
    // Plant a cover: shuffle the universe and cut it into k blocks.
    std::vector<std::size_t> order(universe);
    for (std::size_t i = 0; i < universe; ++i) order[i] = i + 1;
    rng.shuffle(order);
    std::set<std::size_t> cuts{0, universe};
    while (cuts.size() < k + 1) cuts.insert(1 + rng.below(universe - 1));
    std::vector<std::size_t> edges(cuts.begin(), cuts.end());
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      std::vector<std::size_t> block(order.begin() + long(edges[b]),
                                     order.begin() + long(edges[b + 1]));
      std::sort(block.begin(), block.end());
      ec.sets.push_back(std::move(block));
    }
    while (ec.sets.size() < sets) ec.sets.push_back(random_subset());
    rng.shuffle(ec.sets);
  } else {
    for (std::size_t s = 0; s < sets; ++s) ec.sets.push_back(random_subset());
  }
  return ec;
}

namespace {

// The digit-product gadget multiplies correctly exactly when the value
// fed through the decimal shift is zero or positive without trailing
// zeros.
bool in_mul_domain(const mpz_class& a) {
  if (a == 0) return true;
  if (a < 0) return false;
  return a % 10 != 0;
}

}  // namespace

Slp random_slp(std::uint64_t seed, std::size_t length,
               std::uint64_t digit_budget) {
  if (length == 0)
    throw Error(Errc::precondition, "need at least one instruction");
  Rng rng(seed);
  Slp slp;
  std::vector<mpz_class> values{mpz_class(1)};

  const char codes[3] = {'+', '-', '*'};
  for (std::size_t i = 1; i <= length; ++i) {
    std::size_t j = rng.below(i);
    std::size_t k = rng.below(i);
    char wanted = codes[rng.below(3)];
    char chain[3] = {wanted, '+', '-'};

    bool placed = false;
    for (char op : chain) {
      std::size_t aj = j, ak = k;
      if (op == '*') {
        if (!in_mul_domain(values[ak])) {
          if (in_mul_domain(values[aj])) {
            std::swap(aj, ak);  // commutative, so route the good operand right
          } else {
            continue;
          }
        }
      }
      mpz_class v;
      if (op == '+') {
        v = values[aj] + values[ak];
      } else if (op == '-') {
        v = values[aj] - values[ak];
      } else {
        v = values[aj] * values[ak];
      }
      if (mpz_sizeinbase(v.get_mpz_t(), 10) > digit_budget) continue;
      slp.instructions.push_back({op, aj, ak});
      values.push_back(std::move(v));
      placed = true;
      break;
    }
    if (!placed)
      throw Error(Errc::budget,
                  "cannot extend the program within the digit budget");
  }
  return slp;
}

Instance random_two_layer(std::uint64_t seed, std::size_t d, std::size_t k,
                          std::size_t points, std::uint64_t slot_cap) {
  if (d == 0 || k == 0 || points == 0 || slot_cap == 0)
    throw Error(Errc::precondition, "need dimensions, units, and points");
  Rng rng(seed);

  Instance inst;
  inst.kind = Kind::discrete;
  inst.network.source = "s";
  for (std::size_t q = 1; q <= k; ++q)
    inst.network.hidden.push_back("h" + std::to_string(q));
  inst.network.outputs = {"t"};
  for (const auto& h : inst.network.hidden) inst.network.edges.push_back({"s", h});
  for (const auto& h : inst.network.hidden) inst.network.edges.push_back({h, "t"});

  auto random_set = [&](long hi) {
    std::set<long> s;
    std::size_t want = 1 + rng.below(3);
    while (s.size() < want) s.insert(rng.range(0, hi));
    std::vector<ExactDec> out;
    for (long v : s) out.emplace_back(v);
    return out;
  };
  for (std::size_t q = 0; q < k; ++q) {
    EdgeSpace sp;
    for (std::size_t i = 0; i < d; ++i) sp.weight_sets.push_back(random_set(4));
    sp.bias_set = random_set(2);
    inst.params.edges.push_back(std::move(sp));
  }
  for (std::size_t q = 0; q < k; ++q) {
    EdgeSpace sp;
    sp.weight_sets.push_back(random_set(3));
    sp.bias_set = random_set(2);
    inst.params.edges.push_back(std::move(sp));
  }

  // Trim the grid to the candidate cap: repeatedly shrink the largest
  // set (first one in slot order on ties) from the top.
  auto all_sets = [&]() {
    std::vector<std::vector<ExactDec>*> sets;
    for (EdgeSpace& sp : inst.params.edges) {
      for (auto& s : sp.weight_sets) sets.push_back(&s);
      sets.push_back(&sp.bias_set);
    }
    return sets;
  };
  while (true) {
    double product = 1;
    for (auto* s : all_sets()) product *= double(s->size());
    if (product <= double(slot_cap)) break;
    std::vector<ExactDec>* biggest = nullptr;
    for (auto* s : all_sets())
      if (!biggest || s->size() > biggest->size()) biggest = s;
    if (biggest->size() <= 1) break;
    biggest->pop_back();
  }

  for (const auto& h : inst.network.hidden) {
    switch (rng.below(4)) {
      case 0:
      case 1: inst.activations.emplace(h, Identity{}); break;
      case 2: inst.activations.emplace(h, Relu{}); break;
      default: inst.activations.emplace(h, SlpMul{}); break;
    }
  }
  inst.activations.emplace("t", Identity{});

  inst.dataset.input_dim = d;
  long y_hi = long(d) * 4 * long(k);
  for (std::size_t p = 0; p < points; ++p) {
    DataPoint pt;
    for (std::size_t i = 0; i < d; ++i) pt.x.emplace_back(rng.range(0, 3));
    pt.y = {ExactDec(rng.range(0, y_hi))};
    inst.dataset.points.push_back(std::move(pt));
  }
  inst.loss = SumSquares{};
  inst.gamma = ExactDec(rng.range(0, 20));
  inst.provenance = Provenance{
      seed, "two_layer d=" + std::to_string(d) + " k=" + std::to_string(k) +
                " points=" + std::to_string(points)};
  finalize(inst);
  return inst;
}

}  // namespace nnt
