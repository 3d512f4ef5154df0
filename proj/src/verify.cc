// Verification suites. Each suite returns structural checks (exact counts of
// violations) and statistical checks (3 standard errors or an explicit slack).

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>

#include "gsp/bridge.h"
#include "gsp/generators.h"
#include "gsp/graph.h"
#include "gsp/harness.h"
#include "gsp/offline.h"
#include "gsp/online.h"
#include "gsp/random.h"

namespace gsp {

namespace {

struct Context {
  VerifyParams params;
  std::uint64_t seed = 0;
  int threads = 1;

  std::int64_t get(const std::string& key) const { return params.at(key); }
};

Check count_check(std::string name, std::string claim, std::int64_t violations) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.expected = 0;
  c.measured = static_cast<double>(violations);
  c.tolerance = 0;
  c.passed = violations == 0;
  return c;
}

Check equal_check(std::string name, std::string claim, double expected,
                  double measured) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = 0;
  c.passed = expected == measured;
  return c;
}

// Passes iff measured >= expected - tolerance.
Check lower_check(std::string name, std::string claim, double expected,
                  double measured, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = tolerance;
  c.passed = measured >= expected - tolerance;
  return c;
}

// Passes iff measured <= expected.
Check upper_check(std::string name, std::string claim, double expected,
                  double measured) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = 0;
  c.passed = measured <= expected;
  return c;
}

// Passes iff |measured - expected| <= tolerance.
Check band_check(std::string name, std::string claim, double expected,
                 double measured, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.claim = std::move(claim);
  c.expected = expected;
  c.measured = measured;
  c.tolerance = tolerance;
  c.passed = std::abs(measured - expected) <= tolerance;
  return c;
}

// Runs body(i, local) over [0, n) in chunks; each chunk gets a fresh Acc
// which is merged into `total` with merge(total, local).
template <typename Acc, typename Body, typename Merge>
void chunked(std::int64_t n, int threads, Acc& total, Body body, Merge merge) {
  constexpr std::int64_t kChunk = 1024;
  const std::int64_t chunks = (n + kChunk - 1) / kChunk;
  std::mutex mu;
  parallel_for(chunks, threads, [&](std::int64_t ch) {
    Acc local{};
    const std::int64_t end = std::min(n, (ch + 1) * kChunk);
    for (std::int64_t i = ch * kChunk; i < end; ++i) body(i, local);
    std::lock_guard<std::mutex> lock(mu);
    merge(total, local);
  });
}

// ---------------------------------------------------------------------------

Instance three_bidder_example() {
  Instance inst(Flavor::kAdAuction);
  inst.add_keyword("k1");
  inst.add_keyword("k2");
  inst.add_bidder("bidder1", 6);
  inst.add_bidder("bidder2", 3);
  inst.add_bidder("bidder3", 5);
  inst.set_bid(0, 0, 4);
  inst.set_bid(0, 1, 3);
  inst.set_bid(1, 0, 6);
  inst.set_bid(1, 2, 3);
  return inst;
}

std::vector<Check> suite_fig1(const Context&) {
  const Instance inst = three_bidder_example();
  Arbiter arb(inst);
  const Money p1 = arb.apply(Decision::assign(0, 1));
  const Money left = arb.state().remaining[0];
  // Bidder 1's bid of 6 is clamped to its remaining 3, tying bidder 3.
  const Money p2 = arb.apply(Decision::assign(2, 0));
  const Money opt = brute_force_2paa_opt(inst).ledger.total;
  return {
      equal_check("price-k1", "keyword 1 price", 3, static_cast<double>(p1)),
      equal_check("budget-after-k1", "bidder 1 remaining after keyword 1", 3,
                  static_cast<double>(left)),
      equal_check("price-k2", "keyword 2 price", 3, static_cast<double>(p2)),
      equal_check("total", "replayed total", 6,
                  static_cast<double>(arb.ledger().total)),
      equal_check("opt", "exhaustive optimum", 6, static_cast<double>(opt)),
      equal_check("upper-bound", "sum of second-highest bids", 6,
                  static_cast<double>(second_price_upper_bound(inst))),
  };
}

// ---------------------------------------------------------------------------

struct RmAcc {
  std::int64_t instances = 0;
  std::int64_t half_opt = 0;
  std::int64_t half_matching = 0;
  std::int64_t bad_price = 0;
  std::int64_t opt_above_matching = 0;
  // Worst OPT / value ratio as a fraction.
  Money worst_num = 0;
  Money worst_den = 1;
};

void merge_rm(RmAcc& a, const RmAcc& b) {
  a.instances += b.instances;
  a.half_opt += b.half_opt;
  a.half_matching += b.half_matching;
  a.bad_price += b.bad_price;
  a.opt_above_matching += b.opt_above_matching;
  if (static_cast<__int128>(b.worst_num) * a.worst_den >
      static_cast<__int128>(a.worst_num) * b.worst_den) {
    a.worst_num = b.worst_num;
    a.worst_den = b.worst_den;
  }
}

void check_reverse_match(const BipartiteGraph& g, RmAcc& acc) {
  const Instance inst = to_matching_instance(g);
  const ReverseMatchResult rm = reverse_match(inst);
  const Money value = rm.ledger.total;
  const Money opt = brute_force_2pm_opt(inst).ledger.total;
  ++acc.instances;
  if (2 * value < opt) ++acc.half_opt;
  if (2 * value < rm.matching_size) ++acc.half_matching;
  if (opt > rm.matching_size) ++acc.opt_above_matching;
  for (int u = 0; u < inst.num_keywords(); ++u) {
    if (!rm.allocation[u].is_skip() && rm.ledger.prices[u] != 1) {
      ++acc.bad_price;
    }
  }
  if (value > 0 &&
      static_cast<__int128>(opt) * acc.worst_den >
          static_cast<__int128>(acc.worst_num) * value) {
    acc.worst_num = opt;
    acc.worst_den = value;
  }
}

std::vector<Check> suite_reverse_match(const Context& ctx) {
  const int max_kw = static_cast<int>(ctx.get("max_keywords"));
  const int max_bd = static_cast<int>(ctx.get("max_bidders"));
  const std::int64_t limit = ctx.get("exhaustive_limit");
  const std::int64_t samples = ctx.get("samples");

  RmAcc total;
  std::int64_t exhaustive = 0;
  std::vector<std::pair<int, int>> sampled;
  for (int n = 2; n <= max_bd; ++n) {
    std::vector<std::vector<int>> subsets;
    for (int mask = 0; mask < (1 << n); ++mask) {
      if (std::popcount(static_cast<unsigned>(mask)) < 2) continue;
      std::vector<int> s;
      for (int v = 0; v < n; ++v) {
        if (mask >> v & 1) s.push_back(v);
      }
      subsets.push_back(std::move(s));
    }
    const std::int64_t base = static_cast<std::int64_t>(subsets.size());
    for (int m = 1; m <= max_kw; ++m) {
      std::int64_t count = 1;
      bool too_many = false;
      for (int i = 0; i < m; ++i) {
        count *= base;
        if (count > limit) {
          too_many = true;
          break;
        }
      }
      if (too_many) {
        sampled.emplace_back(m, n);
        continue;
      }
      exhaustive += count;
      chunked(
          count, ctx.threads, total,
          [&](std::int64_t idx, RmAcc& acc) {
            BipartiteGraph g(m, n);
            for (int u = 0; u < m; ++u) {
              g.adj[u] = subsets[idx % base];
              idx /= base;
            }
            check_reverse_match(g, acc);
          },
          merge_rm);
    }
  }

  std::int64_t drawn = 0;
  for (std::size_t p = 0; p < sampled.size(); ++p) {
    const auto [m, n] = sampled[p];
    const std::int64_t share =
        samples / static_cast<std::int64_t>(sampled.size()) +
        (static_cast<std::int64_t>(p) <
                 samples % static_cast<std::int64_t>(sampled.size())
             ? 1
             : 0);
    drawn += share;
    chunked(
        share, ctx.threads, total,
        [&](std::int64_t j, RmAcc& acc) {
          RandomGraphOptions o;
          o.num_keywords = m;
          o.num_bidders = n;
          o.edge_prob = 0.5;
          check_reverse_match(
              random_bipartite_graph(
                  o, derive_seed(ctx.seed, (static_cast<std::uint64_t>(p) << 32) |
                                               static_cast<std::uint64_t>(j))),
              acc);
        },
        merge_rm);
  }

  const double worst = total.worst_den == 0
                           ? 0.0
                           : static_cast<double>(total.worst_num) /
                                 static_cast<double>(total.worst_den);
  return {
      equal_check("instances", "exhaustive plus sampled instances checked",
                  static_cast<double>(exhaustive + drawn),
                  static_cast<double>(total.instances)),
      count_check("value-vs-opt", "2 * value >= OPT", total.half_opt),
      count_check("value-vs-matching", "value >= ceil(|M| / 2)",
                  total.half_matching),
      count_check("unit-prices", "every assigned keyword is priced 1",
                  total.bad_price),
      count_check("opt-vs-matching", "OPT <= |M|", total.opt_above_matching),
      upper_check("worst-ratio", "max OPT / value <= 2", 2.0, worst),
  };
}

// ---------------------------------------------------------------------------

std::vector<bool> min_cover_set(const SimpleGraph& g) {
  const int n = g.num_vertices;
  std::vector<bool> best(n, true);
  int best_size = n;
  for (int mask = 0; mask < (1 << n); ++mask) {
    const int size = std::popcount(static_cast<unsigned>(mask));
    if (size >= best_size) continue;
    bool covers = true;
    for (const auto& [a, b] : g.edges) {
      if (!(mask >> a & 1) && !(mask >> b & 1)) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    best_size = size;
    for (int v = 0; v < n; ++v) best[v] = mask >> v & 1;
  }
  return best;
}

std::vector<Check> suite_vc_lemma(const Context& ctx) {
  const int max_v = static_cast<int>(ctx.get("max_vertices"));
  std::int64_t graphs = 0, opt_mismatch = 0, witness_mismatch = 0;
  for (int nv = 1; nv <= max_v; ++nv) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < nv; ++a) {
      for (int b = a + 1; b < nv; ++b) all.emplace_back(a, b);
    }
    for (std::int64_t mask = 0; mask < (std::int64_t{1} << all.size()); ++mask) {
      SimpleGraph g;
      g.num_vertices = nv;
      for (std::size_t e = 0; e < all.size(); ++e) {
        if (mask >> e & 1) g.edges.push_back(all[e]);
      }
      const VcReduction red = gen_vc_2pm(g);
      const Money expected = 2 * nv + static_cast<Money>(g.edges.size()) -
                             min_vertex_cover(g);
      if (brute_force_2pm_opt(red.instance).ledger.total != expected) {
        ++opt_mismatch;
      }
      const Ledger w =
          run_allocation(red.instance, vc_witness(red, g, min_cover_set(g)));
      if (w.total != expected) ++witness_mismatch;
      ++graphs;
    }
  }
  return {
      lower_check("graphs", "labeled simple graphs checked", 1,
                  static_cast<double>(graphs), 0),
      count_check("opt-equals-formula", "OPT_2P = 2|V| + |E| - OPT_VC",
                  opt_mismatch),
      count_check("witness-value", "cover witness replays to the formula",
                  witness_mismatch),
  };
}

// ---------------------------------------------------------------------------

struct SatAcc {
  std::int64_t formulas = 0;
  std::int64_t satisfiable = 0;
  std::int64_t iff_violations = 0;
  std::int64_t above_bound = 0;
};

void merge_sat(SatAcc& a, const SatAcc& b) {
  a.formulas += b.formulas;
  a.satisfiable += b.satisfiable;
  a.iff_violations += b.iff_violations;
  a.above_bound += b.above_bound;
}

void check_formula(const SatFormula& f, SatAcc& acc) {
  const Money target =
      static_cast<Money>(f.clauses.size()) + f.num_vars;
  const Money opt = brute_force_2pm_opt(gen_3sat_2pm(f)).ledger.total;
  const bool sat = is_satisfiable(f);
  ++acc.formulas;
  if (sat) ++acc.satisfiable;
  if ((opt == target) != sat) ++acc.iff_violations;
  if (opt > target) ++acc.above_bound;
}

std::vector<std::array<int, 3>> clause_universe(int n) {
  std::vector<std::array<int, 3>> out;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) {
      for (int c = b + 1; c <= n; ++c) {
        for (int s = 0; s < 8; ++s) {
          out.push_back({s & 1 ? -a : a, s & 2 ? -b : b, s & 4 ? -c : c});
        }
      }
    }
  }
  return out;
}

std::vector<Check> suite_sat_reduction(const Context& ctx) {
  const int max_vars = static_cast<int>(ctx.get("max_vars"));
  const int max_clauses = static_cast<int>(ctx.get("max_clauses"));
  const std::int64_t cap = ctx.get("family_cap");
  const std::int64_t extra = ctx.get("unsat_samples");

  // All multisets of clauses, as nondecreasing index sequences.
  std::vector<SatFormula> family;
  bool capped = false;
  for (int n = 3; n <= max_vars && !capped; ++n) {
    const auto universe = clause_universe(n);
    const int u = static_cast<int>(universe.size());
    for (int k = 1; k <= max_clauses && !capped; ++k) {
      std::vector<int> idx(k, 0);
      while (true) {
        SatFormula f;
        f.num_vars = n;
        for (int i : idx) f.clauses.push_back(universe[i]);
        family.push_back(std::move(f));
        if (static_cast<std::int64_t>(family.size()) > cap) {
          capped = true;
          break;
        }
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == u - 1) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int i = pos + 1; i < k; ++i) idx[i] = idx[pos];
      }
    }
  }
  if (capped) {
    // Too large: replace by `cap` uniform samples of (n, k, clauses).
    family.clear();
    for (std::int64_t s = 0; s < cap; ++s) {
      Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(s)));
      SatFormula f;
      f.num_vars = static_cast<int>(rng.between(3, max_vars));
      const auto universe = clause_universe(f.num_vars);
      const int k = static_cast<int>(rng.between(1, max_clauses));
      for (int i = 0; i < k; ++i) {
        f.clauses.push_back(universe[rng.below(universe.size())]);
      }
      family.push_back(std::move(f));
    }
  }

  SatAcc fam;
  chunked(
      static_cast<std::int64_t>(family.size()), ctx.threads, fam,
      [&](std::int64_t i, SatAcc& acc) { check_formula(family[i], acc); },
      merge_sat);

  // Longer formulas, so that unsatisfiable ones are exercised too: the
  // family above can be entirely satisfiable.
  SatAcc wide;
  SatFormula all_signs;
  all_signs.num_vars = 3;
  all_signs.clauses = clause_universe(3);
  check_formula(all_signs, wide);
  chunked(
      extra, ctx.threads, wide,
      [&](std::int64_t s, SatAcc& acc) {
        Rng rng(derive_seed(ctx.seed ^ 0x5a5a5a5a5a5a5a5aULL,
                            static_cast<std::uint64_t>(s)));
        SatFormula f;
        f.num_vars = static_cast<int>(rng.between(3, 4));
        const auto universe = clause_universe(f.num_vars);
        const int k = static_cast<int>(rng.between(5, 10));
        for (int i = 0; i < k; ++i) {
          f.clauses.push_back(universe[rng.below(universe.size())]);
        }
        check_formula(f, acc);
      },
      merge_sat);

  return {
      lower_check("family-size", "formulas in the family", 1,
                  static_cast<double>(fam.formulas), 0),
      count_check("family-iff", "OPT = k + n iff satisfiable",
                  fam.iff_violations),
      count_check("family-bound", "OPT <= k + n", fam.above_bound),
      lower_check("unsat-seen", "unsatisfiable formulas among longer ones", 1,
                  static_cast<double>(wide.formulas - wide.satisfiable), 0),
      count_check("longer-iff", "OPT = k + n iff satisfiable, k <= 10",
                  wide.iff_violations),
      count_check("longer-bound", "OPT <= k + n, k <= 10", wide.above_bound),
  };
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_partition(const Context& ctx) {
  const std::int64_t count = ctx.get("instances");
  static constexpr int kSizes[] = {2, 4, 6};
  static constexpr int kCs[] = {1, 2};
  std::int64_t replay_errors = 0, wrong_total = 0, invalid = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const int n = kSizes[i % 3];
    const int c = kCs[(i / 3) % 2];
    Rng rng(derive_seed(ctx.seed, static_cast<std::uint64_t>(i)));
    // Items 0..n/2-1 form one side before shuffling.
    std::vector<Money> weights;
    Money half = 0;
    for (int j = 0; j < n / 2; ++j) {
      weights.push_back(rng.between(1, 10));
      half += weights.back();
    }
    while (true) {
      std::vector<Money> other;
      Money rest = 0;
      for (int j = 0; j + 1 < n / 2; ++j) {
        other.push_back(rng.between(1, 10));
        rest += other.back();
      }
      if (rest >= half) continue;
      other.push_back(half - rest);
      weights.insert(weights.end(), other.begin(), other.end());
      break;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle(perm, rng);
    std::vector<Money> shuffled(n);
    std::vector<int> subset;
    for (int j = 0; j < n; ++j) {
      shuffled[perm[j]] = weights[j];
      if (j < n / 2) subset.push_back(perm[j]);
    }
    std::sort(subset.begin(), subset.end());

    const Instance inst = gen_partition_2paa(shuffled, c);
    if (!validate_instance(inst).ok()) ++invalid;
    try {
      const Ledger l =
          run_allocation(inst, replay_partition_witness(shuffled, c, subset));
      if (l.total != partition_witness_value(shuffled, c)) ++wrong_total;
    } catch (const Error&) {
      ++replay_errors;
    }
  }
  return {
      count_check("valid-instances", "generated instances validate", invalid),
      count_check("replay-errors", "witness replays without arbiter error",
                  replay_errors),
      count_check("witness-total", "witness totals cW(n^5 + n + 2)",
                  wrong_total),
  };
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_adversary(const Context& ctx) {
  const int m = static_cast<int>(ctx.get("m"));
  const int certify = static_cast<int>(ctx.get("certify_m"));
  std::vector<Check> out;
  for (const char* name : {"greedy", "trivial", "ranking"}) {
    auto alg = make_online_algorithm(name);
    const AdversaryTranscript t = deterministic_adversary(m, *alg, ctx.seed);
    out.push_back(upper_check(
        std::string(name) + "-value", "algorithm value <= 1", 1,
        static_cast<double>(t.algorithm.ledger.total)));
    out.push_back(equal_check(std::string(name) + "-witness",
                              "witness replays to m", m,
                              static_cast<double>(
                                  run_allocation(t.instance, t.witness).total)));
    auto small = make_online_algorithm(name);
    const AdversaryTranscript s =
        deterministic_adversary(certify, *small, ctx.seed);
    out.push_back(equal_check(
        std::string(name) + "-opt", "exact optimum of the realized game is m",
        certify,
        static_cast<double>(brute_force_2pm_opt(s.instance).ledger.total)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<bool> chain_bits(int m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<bool> bits(m - 1);
  for (int i = 0; i + 1 < m; ++i) bits[i] = rng.bit();
  return bits;
}

std::vector<Check> suite_chain_greedy(const Context& ctx) {
  const int m = static_cast<int>(ctx.get("m"));
  const std::int64_t trials = ctx.get("trials");
  const double target = (m + 1) / 2.0;

  auto run = [&](TieBreak tie, bool restricted, std::uint64_t seed) {
    return run_trials(
        [&](std::uint64_t s) -> std::int64_t {
          const ChainInstance ch =
              gen_chain_instance(m, chain_bits(m, s), restricted);
          GreedyAlgorithm alg(tie);
          return run_online(ch.instance, alg, s, ch.start()).ledger.total;
        },
        trials, seed, ctx.threads);
  };
  const TrialStats low = run(TieBreak::kLowestIndex, false, ctx.seed);
  const TrialStats rnd = run(TieBreak::kRandom, false, ctx.seed + trials);
  const TrialStats res = run(TieBreak::kLowestIndex, true, ctx.seed + 2 * trials);

  std::int64_t opt_mismatch = 0;
  const std::int64_t certify = ctx.get("certify");
  for (std::int64_t i = 0; i < certify; ++i) {
    const auto bits = chain_bits(m, derive_seed(ctx.seed, i));
    const Instance inst = gen_chain_instance(m, bits).instance;
    if (brute_force_2pm_opt(inst).ledger.total != m ||
        run_allocation(inst, chain_witness(m, bits)).total != m) {
      ++opt_mismatch;
    }
  }
  return {
      band_check("greedy-mean", "mean within 3 s.e. of (m + 1) / 2", target,
                 low.mean, 3 * low.std_error),
      band_check("greedy-random-tie-mean",
                 "random tie-break: mean within 3 s.e. of (m + 1) / 2", target,
                 rnd.mean, 3 * rnd.std_error),
      band_check("restricted-mean",
                 "restricted chain: mean within 3 s.e. of (m - 1) / 2",
                 target - 1, res.mean, 3 * res.std_error),
      count_check("chain-opt", "offline optimum and witness equal m",
                  opt_mismatch),
  };
}

// ---------------------------------------------------------------------------

BipartiteGraph delete_left(const BipartiteGraph& g, int x) {
  BipartiteGraph out(g.num_left - 1, g.num_right);
  for (int u = 0, w = 0; u < g.num_left; ++u) {
    if (u != x) out.adj[w++] = g.adj[u];
  }
  return out;
}

BipartiteGraph delete_right(const BipartiteGraph& g, int y) {
  BipartiteGraph out(g.num_left, g.num_right - 1);
  for (int u = 0; u < g.num_left; ++u) {
    for (int v : g.adj[u]) {
      if (v != y) out.adj[u].push_back(v > y ? v - 1 : v);
    }
  }
  return out;
}

std::vector<int> drop_index(const std::vector<int>& order, int x) {
  std::vector<int> out;
  for (int i : order) {
    if (i != x) out.push_back(i > x ? i - 1 : i);
  }
  return out;
}

std::vector<Check> suite_duality(const Context& ctx) {
  const std::int64_t triples = ctx.get("triples");
  const std::int64_t deletions = ctx.get("deletions");
  const int max_side = static_cast<int>(ctx.get("max_side"));

  auto draw = [&](std::uint64_t seed, BipartiteGraph& g, std::vector<int>& pi,
                  Ranking& sigma) {
    Rng rng(seed);
    RandomGraphOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, max_side));
    o.num_bidders = static_cast<int>(rng.between(1, max_side));
    o.edge_prob = static_cast<double>(rng.between(1, 9)) / 10.0;
    o.require_min_degree_2 = false;
    g = random_bipartite_graph(o, rng.next());
    pi = make_permutation(rng.next(), o.num_keywords).order;
    sigma = make_permutation(rng.next(), o.num_bidders);
  };

  std::atomic<std::int64_t> unequal{0};
  parallel_for(triples, ctx.threads, [&](std::int64_t i) {
    BipartiteGraph g;
    std::vector<int> pi;
    Ranking sigma;
    draw(derive_seed(ctx.seed, i), g, pi, sigma);
    if (ranking(g, pi, sigma).edges() != ranking_prime(g, pi, sigma).edges()) {
      ++unequal;
    }
  });

  std::atomic<std::int64_t> increased{0};
  parallel_for(deletions, ctx.threads, [&](std::int64_t i) {
    BipartiteGraph g;
    std::vector<int> pi;
    Ranking sigma;
    const std::uint64_t s = derive_seed(ctx.seed + 1, i);
    draw(s, g, pi, sigma);
    Rng rng(derive_seed(s, 1));
    const int before = ranking(g, pi, sigma).size();
    const bool left = g.num_right == 1 ||
                      (g.num_left > 1 && rng.bit());
    int after;
    if (left && g.num_left > 1) {
      const int x = static_cast<int>(rng.below(g.num_left));
      after = ranking(delete_left(g, x), drop_index(pi, x), sigma).size();
    } else if (g.num_right > 1) {
      const int y = static_cast<int>(rng.below(g.num_right));
      after = ranking(delete_right(g, y), pi,
                      Ranking::from_order(drop_index(sigma.order, y)))
                  .size();
    } else {
      after = 0;  // deleting the only vertex on one side empties the graph
    }
    if (after > before) ++increased;
  });

  return {
      count_check("ranking-equals-dual", "Ranking and Ranking' edge sets equal",
                  unequal.load()),
      count_check("deletion-monotone",
                  "deleting one vertex never increases |Ranking|",
                  increased.load()),
  };
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_kcopy_ranking(const Context& ctx) {
  const int n = static_cast<int>(ctx.get("n"));
  const std::int64_t trials = ctx.get("trials");
  const int max_k = static_cast<int>(ctx.get("max_k"));
  RandomGraphOptions o;
  o.num_keywords = n;
  o.num_bidders = n;
  o.edge_prob = static_cast<double>(ctx.get("edge_permille")) / 1000.0;
  o.require_min_degree_2 = false;
  o.planted_matching = true;
  const BipartiteGraph g = random_bipartite_graph(o, ctx.seed);
  const int opt = maximum_bipartite_matching(g).size();

  std::vector<Check> out;
  out.push_back(equal_check("planted-matching", "maximum matching is perfect",
                            n, opt));
  for (int k = 1; k <= max_k; ++k) {
    const auto [h, map] = left_k_copy(g, k);
    const auto pi = identity_order(h.num_left);
    const TrialStats st = run_trials(
        [&](std::uint64_t s) -> std::int64_t {
          return ranking(h, pi, make_permutation(s, n)).size();
        },
        trials, derive_seed(ctx.seed, k), ctx.threads);
    out.push_back(lower_check(
        "k" + std::to_string(k) + "-mean",
        "mean >= k OPT (1 - e^(-1/k)) - 0.05 k n",
        k * opt * (1.0 - std::exp(-1.0 / k)), st.mean, 0.05 * k * n));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_coupling(const Context& ctx) {
  const int size = static_cast<int>(ctx.get("size"));
  const std::int64_t sigmas = ctx.get("sigmas");
  const std::int64_t trials = ctx.get("trials");
  RandomGraphOptions o;
  o.num_keywords = size;
  o.num_bidders = size;
  o.edge_prob = 0.5;
  const Instance inst = gen_random_2pm(o, ctx.seed);
  const BipartiteGraph h = left_k_copy(to_graph(inst), 2).first;
  const auto pi = identity_order(h.num_left);

  std::vector<Check> out;
  std::int64_t invariant_violations = 0;
  for (std::int64_t j = 0; j < sigmas; ++j) {
    const Ranking sigma =
        make_permutation(derive_seed(ctx.seed, 1000 + j), size);
    const Matching x = ranking(h, pi, sigma);
    std::vector<std::atomic<std::int64_t>> matched(size);
    std::atomic<std::int64_t> broken{0};
    const std::uint64_t base = derive_seed(ctx.seed, j);
    parallel_for(trials, ctx.threads, [&](std::int64_t t) {
      const SimulateResult r =
          ranking_simulate(inst, sigma, CoinStream(base + t));
      for (int v = 0; v < size; ++v) {
        const bool in_mr = r.state.matched[v] || r.state.reserved[v];
        if (in_mr != x.bidder_matched(v)) ++broken;
        if (r.state.matched[v]) ++matched[v];
      }
    });
    invariant_violations += broken.load();

    // Largest per-bidder deviation in units of the empirical standard error.
    double worst_z = 0.0;
    bool ok = true;
    for (int v = 0; v < size; ++v) {
      const double f = static_cast<double>(matched[v].load()) / trials;
      const double target = x.bidder_matched(v) ? 0.5 : 0.0;
      const double se = std::sqrt(f * (1.0 - f) / trials);
      const double dev = std::abs(f - target);
      if (se == 0.0) {
        if (dev != 0.0) ok = false;
        continue;
      }
      worst_z = std::max(worst_z, dev / se);
    }
    Check c;
    c.name = "sigma" + std::to_string(j) + "-frequency";
    c.claim = "every bidder's match frequency within 3 s.e. of X_v / 2";
    c.expected = 0;
    c.measured = worst_z;
    c.tolerance = 3;
    c.passed = ok && worst_z <= 3.0;
    out.push_back(c);
  }
  out.push_back(count_check("m-union-r", "v in M or R iff X_v = 1, every trial",
                            invariant_violations));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_ranking_sim(const Context& ctx) {
  const int n = static_cast<int>(ctx.get("n"));
  const std::int64_t trials = ctx.get("trials");
  RandomGraphOptions o;
  o.num_keywords = n;
  o.num_bidders = n;
  o.edge_prob = static_cast<double>(ctx.get("edge_permille")) / 1000.0;
  o.planted_matching = true;
  const Instance inst = gen_random_2pm(o, ctx.seed);
  const int opt = maximum_bipartite_matching(inst).size();

  std::vector<std::int64_t> assigned(trials), profit(trials);
  parallel_for(trials, ctx.threads, [&](std::int64_t t) {
    RankingSimulateAlgorithm alg;
    const SolveResult r = run_online(inst, alg, ctx.seed + t);
    profit[t] = r.ledger.total;
    assigned[t] = std::count_if(r.allocation.begin(), r.allocation.end(),
                                [](const Decision& d) { return !d.is_skip(); });
  });
  TrialAccumulator acc;
  std::int64_t total_assigned = 0, total_profit = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    acc.add(profit[t]);
    total_assigned += assigned[t];
    total_profit += profit[t];
  }
  const TrialStats st = acc.stats();
  const double p = total_assigned == 0
                       ? 0.0
                       : static_cast<double>(total_profit) / total_assigned;
  const double se =
      total_assigned == 0 ? 0.0 : std::sqrt(p * (1 - p) / total_assigned);
  return {
      equal_check("planted-matching", "maximum matching is perfect", n, opt),
      lower_check("mean-profit", "mean profit >= 0.18 * max matching",
                  0.18 * opt, st.mean, 0.0),
      lower_check("paid-fraction",
                  "P(price 1 | assigned) >= 1/2 within 3 s.e.", 0.5, p,
                  3 * se),
  };
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_random_construction(const Context& ctx) {
  const std::int64_t count = ctx.get("instances");
  const std::int64_t trials = ctx.get("trials");
  std::int64_t mean_fail = 0, exact_fail = 0, infeasible = 0, oracle_fail = 0,
               half_fail = 0, trivial = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(ctx.seed, i));
    Random2paaOptions o;
    o.num_keywords = static_cast<int>(rng.between(1, 4));
    o.num_bidders = static_cast<int>(rng.between(2, 4));
    o.max_budget = 10;
    o.bid_prob = 0.7;
    const Instance inst = gen_random_2paa(o, rng.next());
    const Instance proxy = second_price_proxy_bids(inst);
    const FirstPriceResult best = brute_force_1paa_opt(proxy);
    const FirstPriceAllocation fp =
        normalize_prefix_budget(proxy, best.allocation);
    const Money y = first_price_value(proxy, fp);
    if (y == 0) ++trivial;
    if (best.value < brute_force_2paa_opt(inst).ledger.total) ++oracle_fail;

    // Exact expectation over all mark patterns.
    const int nb = inst.num_bidders();
    Money sum = 0;
    for (int mask = 0; mask < (1 << nb); ++mask) {
      std::vector<bool> marks(nb);
      for (int v = 0; v < nb; ++v) marks[v] = mask >> v & 1;
      sum += random_construction(inst, fp, marks).ledger.total;
    }
    // sum / 2^nb >= y / 8
    if (8 * sum < y * (Money{1} << nb)) ++exact_fail;

    std::atomic<std::int64_t> bad{0}, half{0};
    std::vector<std::int64_t> totals(trials, 0);
    parallel_for(trials, ctx.threads, [&](std::int64_t t) {
      try {
        const auto r = random_construction(
            inst, fp, derive_seed(ctx.seed + static_cast<std::uint64_t>(t), i));
        totals[t] = r.ledger.total;
        for (int v = 0; v < nb; ++v) {
          if (!r.marked[v] && 2 * r.bidder_revenue[v] < r.subset_sum[v]) ++half;
        }
      } catch (const Error&) {
        ++bad;
      }
    });
    infeasible += bad.load();
    half_fail += half.load();
    TrialAccumulator acc;
    for (auto x : totals) acc.add(x);
    const TrialStats st = acc.stats();
    const double margin = st.mean - y / 8.0 + 3 * st.std_error;
    worst_margin = std::min(worst_margin, margin);
    if (margin < 0) ++mean_fail;
  }
  return {
      count_check("mean-vs-y8", "Monte Carlo mean >= Y/8 within 3 s.e.",
                  mean_fail),
      count_check("exact-expectation", "mean over all mark patterns >= Y/8",
                  exact_fail),
      count_check("replay", "every sampled allocation replays feasibly",
                  infeasible),
      count_check("unmarked-half", "unmarked bidder earns >= half of S_v's sum",
                  half_fail),
      count_check("oracle-order", "OPT_1P(proxy) >= OPT_2P", oracle_fail),
      lower_check("nontrivial", "instances with Y > 0", 1,
                  static_cast<double>(count - trivial), 0),
  };
}

// ---------------------------------------------------------------------------

std::vector<Check> suite_top_c(const Context& ctx) {
  const std::int64_t count = ctx.get("instances");
  static constexpr int kCs[] = {1, 2, 4};
  std::int64_t violations = 0, precondition = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    Rng rng(derive_seed(ctx.seed, i));
    Random2paaOptions o;
    o.c = kCs[i % 3];
    // The bound exceeds sum s_u when m < c, so m starts at c.
    o.num_keywords = static_cast<int>(rng.between(o.c, 8));
    o.num_bidders = static_cast<int>(rng.between(2, 5));
    o.max_budget = 40;
    o.bid_prob = 0.6;
    const Instance inst = gen_random_2paa(o, rng.next());
    try {
      const Money value = top_c_allocate(inst, o.c).ledger.total;
      const Money bound = second_price_upper_bound(inst);
      if (value * inst.num_keywords() < o.c * bound) ++violations;
    } catch (const Error&) {
      ++precondition;
    }
  }
  return {
      count_check("guarantee", "value >= (c / m) * sum of s_u", violations),
      count_check("precondition", "R_min >= c accepted", precondition),
  };
}

// ---------------------------------------------------------------------------

using SuiteFn = std::vector<Check> (*)(const Context&);

struct Suite {
  const char* name;
  SuiteFn fn;
  VerifyParams defaults;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"fig1", suite_fig1, {}},
      {"reverse-match",
       suite_reverse_match,
       {{"max_keywords", 6},
        {"max_bidders", 6},
        {"exhaustive_limit", 500000},
        {"samples", 100000}}},
      {"vc-lemma", suite_vc_lemma, {{"max_vertices", 5}}},
      {"sat-reduction",
       suite_sat_reduction,
       {{"max_vars", 4},
        {"max_clauses", 4},
        {"family_cap", 100000},
        {"unsat_samples", 2000}}},
      {"partition", suite_partition, {{"instances", 20}}},
      {"adversary", suite_adversary, {{"m", 20}, {"certify_m", 10}}},
      {"chain-greedy",
       suite_chain_greedy,
       {{"m", 10}, {"trials", 100000}, {"certify", 100}}},
      {"duality",
       suite_duality,
       {{"triples", 1000}, {"deletions", 1000}, {"max_side", 12}}},
      {"kcopy-ranking",
       suite_kcopy_ranking,
       {{"n", 100}, {"trials", 2000}, {"max_k", 3}, {"edge_permille", 30}}},
      {"coupling",
       suite_coupling,
       {{"size", 6}, {"sigmas", 10}, {"trials", 100000}}},
      {"ranking-sim",
       suite_ranking_sim,
       {{"n", 100}, {"trials", 2000}, {"edge_permille", 30}}},
      {"random-construction",
       suite_random_construction,
       {{"instances", 50}, {"trials", 100000}}},
      {"top-c", suite_top_c, {{"instances", 100}}},
  };
  return all;
}

const Suite& find_suite(const std::string& name) {
  for (const auto& s : suites()) {
    if (name == s.name) return s;
  }
  throw Error("unknown suite '" + name + "'");
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& s : suites()) out.emplace_back(s.name);
  return out;
}

VerifyParams suite_defaults(const std::string& suite) {
  return find_suite(suite).defaults;
}

VerifyReport verify(const std::string& suite, const VerifyParams& params,
                    std::uint64_t seed, int threads) {
  const Suite& s = find_suite(suite);
  Context ctx;
  ctx.params = s.defaults;
  for (const auto& [k, v] : params) {
    if (!ctx.params.count(k)) {
      throw Error("unknown parameter '" + k + "' for suite '" + suite + "'");
    }
    if (v < 0) throw Error("parameter '" + k + "' must be nonnegative");
    ctx.params[k] = v;
  }
  ctx.seed = seed;
  ctx.threads = threads;

  VerifyReport report;
  report.suite = suite;
  report.seed = seed;
  report.params = ctx.params;
  report.checks = s.fn(ctx);
  return report;
}

}  // namespace gsp
