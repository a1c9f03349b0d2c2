#include "nnt/sources.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "nnt/error.hpp"
#include "nnt/instance_io.hpp"

namespace nnt {

OracleOptions::OracleOptions() : enum_budget(2000000), digit_budget(10000) {
  auto read = [](const char* name, std::uint64_t& into) {
    if (const char* env = std::getenv(name)) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || v == 0)
        throw Error(Errc::parse,
                    std::string(name) + " must be a positive integer");
      into = v;
    }
  };
  read("NNT_ENUM_BUDGET", enum_budget);
  read("NNT_SLP_DIGIT_BUDGET", digit_budget);
}

std::vector<std::string> validate_source(const SourceProblem& src) {
  std::vector<std::string> report;
  auto bad = [&](const std::string& msg) { report.push_back(msg); };

  if (const auto* ss = std::get_if<SubsetSumInstance>(&src)) {
    if (ss->items.empty()) bad("subset sum needs at least one item");
    for (std::size_t i = 0; i < ss->items.size(); ++i)
      if (ss->items[i] <= 0)
        bad("item " + std::to_string(i + 1) + " must be positive");
    if (ss->target <= 0) bad("target must be positive");
    return report;
  }

  if (const auto* csp = std::get_if<CspInstance>(&src)) {
    if (csp->vertices.empty()) bad("constraint graph has no vertices");
    if (csp->alphabet.empty()) bad("alphabet is empty");
    std::set<std::string> seen;
    for (const auto& v : csp->vertices) {
      if (v.empty()) bad("vertex name is empty");
      if (!seen.insert(v).second) bad("duplicate vertex '" + v + "'");
    }
    seen.clear();
    for (const auto& a : csp->alphabet) {
      if (a.empty()) bad("letter name is empty");
      if (!seen.insert(a).second) bad("duplicate letter '" + a + "'");
    }
    for (std::size_t c = 0; c < csp->constraints.size(); ++c) {
      const auto& con = csp->constraints[c];
      if (con.u >= csp->vertices.size() || con.v >= csp->vertices.size())
        bad("constraint " + std::to_string(c) + " references a missing vertex");
      if (con.allowed.empty())
        bad("constraint " + std::to_string(c) + " allows no pair");
      for (const auto& [a, b] : con.allowed)
        if (a >= csp->alphabet.size() || b >= csp->alphabet.size())
          bad("constraint " + std::to_string(c) + " references a missing letter");
    }
    return report;
  }

  if (const auto* ec = std::get_if<ExactCoverInstance>(&src)) {
    if (ec->universe_size == 0) bad("universe is empty");
    if (ec->sets.empty()) bad("no sets given");
    if (ec->k == 0 || ec->k > ec->sets.size())
      bad("cover size must be between 1 and the number of sets");
    for (std::size_t s = 0; s < ec->sets.size(); ++s) {
      std::set<std::size_t> members;
      for (std::size_t el : ec->sets[s]) {
        if (el < 1 || el > ec->universe_size)
          bad("set " + std::to_string(s + 1) + " holds element " +
              std::to_string(el) + " outside the universe");
        if (!members.insert(el).second)
          bad("set " + std::to_string(s + 1) + " repeats element " +
              std::to_string(el));
      }
    }
    return report;
  }

  const auto& slp = std::get<Slp>(src);
  if (slp.instructions.empty()) bad("program has no instructions");
  for (std::size_t i = 0; i < slp.instructions.size(); ++i) {
    const SlpOp& op = slp.instructions[i];
    if (op.op != '+' && op.op != '-' && op.op != '*')
      bad("instruction " + std::to_string(i + 1) + " has an unknown opcode");
    if (op.j > i || op.k > i)
      bad("instruction " + std::to_string(i + 1) +
          " reads a value that is not defined yet");
  }
  return report;
}

void require_valid_source(const SourceProblem& src) {
  std::vector<std::string> report = validate_source(src);
  if (report.empty()) return;
  std::ostringstream msg;
  msg << "invalid source problem:";
  for (const auto& line : report) msg << "\n  " << line;
  throw Error(Errc::validation, msg.str());
}

std::vector<mpz_class> slp_eval(const Slp& p, std::uint64_t digit_budget) {
  std::vector<mpz_class> values;
  values.emplace_back(1);
  for (std::size_t i = 0; i < p.instructions.size(); ++i) {
    const SlpOp& op = p.instructions[i];
    const mpz_class& a = values[op.j];
    const mpz_class& b = values[op.k];
    mpz_class v;
    switch (op.op) {
      case '+': v = a + b; break;
      case '-': v = a - b; break;
      case '*': v = a * b; break;
      default:
        throw Error(Errc::validation, "unknown opcode in instruction " +
                                          std::to_string(i + 1));
    }
    if (mpz_sizeinbase(v.get_mpz_t(), 10) > digit_budget)
      throw Error(Errc::budget, "value of instruction " + std::to_string(i + 1) +
                                    " exceeds " + std::to_string(digit_budget) +
                                    " digits");
    values.push_back(std::move(v));
  }
  return values;
}

namespace {

OracleResult subset_sum_oracle(const SubsetSumInstance& ss,
                               const OracleOptions& opts) {
  // Reachable sums with a first-writer backtrace; discovery order is
  // fixed by item order, so the recovered subset is deterministic.
  std::map<mpz_class, std::pair<std::size_t, mpz_class>> trace;
  std::vector<mpz_class> sums{mpz_class(0)};
  for (std::size_t i = 0; i < ss.items.size(); ++i) {
    std::size_t known = sums.size();
    for (std::size_t s = 0; s < known; ++s) {
      mpz_class next = sums[s] + ss.items[i];
      if (next > ss.target) continue;  // items are positive, overshoot is final
      if (!trace.count(next)) {
        trace.emplace(next, std::make_pair(i, sums[s]));
        sums.push_back(std::move(next));
      }
    }
    if (sums.size() > opts.enum_budget)
      throw Error(Errc::budget, "reachable sums exceed budget " +
                                    std::to_string(opts.enum_budget));
  }
  OracleResult r;
  r.decision = trace.count(ss.target) != 0;
  if (r.decision) {
    std::vector<std::size_t> picked;
    mpz_class cur = ss.target;
    while (cur != 0) {
      const auto& [item, prev] = trace.at(cur);
      picked.push_back(item + 1);
      cur = prev;
    }
    std::sort(picked.begin(), picked.end());
    std::ostringstream w;
    for (std::size_t i = 0; i < picked.size(); ++i)
      w << (i ? "," : "") << picked[i];
    r.witness = w.str();
  }
  return r;
}

OracleResult csp_oracle(const CspInstance& csp, const OracleOptions& opts) {
  std::size_t n = csp.alphabet.size();
  mpz_class space;
  mpz_ui_pow_ui(space.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(csp.vertices.size()));
  if (space > mpz_class(opts.enum_budget))
    throw Error(Errc::budget, "assignment space of " + space.get_str() +
                                  " exceeds budget " +
                                  std::to_string(opts.enum_budget));

  std::vector<std::size_t> phi(csp.vertices.size(), 0);
  auto satisfied = [&]() {
    for (const auto& con : csp.constraints) {
      bool ok = false;
      for (const auto& [a, b] : con.allowed)
        if (phi[con.u] == a && phi[con.v] == b) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    return true;
  };
  while (true) {
    if (satisfied()) {
      OracleResult r;
      r.decision = true;
      std::ostringstream w;
      for (std::size_t i = 0; i < phi.size(); ++i)
        w << (i ? " " : "") << csp.vertices[i] << "=" << csp.alphabet[phi[i]];
      r.witness = w.str();
      return r;
    }
    std::size_t pos = phi.size();
    while (pos > 0 && phi[pos - 1] + 1 == n) phi[--pos] = 0;
    if (pos == 0) return {};
    ++phi[pos - 1];
  }
}

OracleResult exact_cover_oracle(const ExactCoverInstance& ec,
                                const OracleOptions& opts) {
  mpz_class combos;
  mpz_bin_uiui(combos.get_mpz_t(), static_cast<unsigned long>(ec.sets.size()),
               static_cast<unsigned long>(ec.k));
  if (combos > mpz_class(opts.enum_budget))
    throw Error(Errc::budget, combos.get_str() + " covers to try exceed budget " +
                                  std::to_string(opts.enum_budget));

  std::vector<std::size_t> pick(ec.k);
  for (std::size_t i = 0; i < ec.k; ++i) pick[i] = i;
  auto is_exact = [&]() {
    std::set<std::size_t> seen;
    std::size_t count = 0;
    for (std::size_t s : pick)
      for (std::size_t el : ec.sets[s]) {
        if (!seen.insert(el).second) return false;  // overlap
        ++count;
      }
    return count == ec.universe_size;
  };
  while (true) {
    if (is_exact()) {
      OracleResult r;
      r.decision = true;
      std::ostringstream w;
      for (std::size_t i = 0; i < pick.size(); ++i)
        w << (i ? "," : "") << pick[i] + 1;
      r.witness = w.str();
      return r;
    }
    // next k-combination in lexicographic order
    std::size_t i = ec.k;
    while (i > 0 && pick[i - 1] == ec.sets.size() - ec.k + (i - 1)) --i;
    if (i == 0) return {};
    ++pick[i - 1];
    for (std::size_t j = i; j < ec.k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

OracleResult slp_oracle(const Slp& slp, const OracleOptions& opts) {
  std::vector<mpz_class> values = slp_eval(slp, opts.digit_budget);
  OracleResult r;
  r.decision = values.back() > 0;
  r.witness = values.back().get_str();
  return r;
}

}  // namespace

OracleResult oracle_decide(const SourceProblem& src, const OracleOptions& opts) {
  require_valid_source(src);
  if (const auto* ss = std::get_if<SubsetSumInstance>(&src))
    return subset_sum_oracle(*ss, opts);
  if (const auto* csp = std::get_if<CspInstance>(&src))
    return csp_oracle(*csp, opts);
  if (const auto* ec = std::get_if<ExactCoverInstance>(&src))
    return exact_cover_oracle(*ec, opts);
  return slp_oracle(std::get<Slp>(src), opts);
}

SourceProblem parse_source(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw Error(Errc::parse,
                std::string("source problem is not valid JSON: ") + e.what());
  }
  try {
    return source_from_json(j);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(Errc::parse, std::string("malformed source problem: ") + e.what());
  }
}

std::string serialize_source(const SourceProblem& src) {
  return source_to_json(src).dump(2) + "\n";
}

}  // namespace nnt
