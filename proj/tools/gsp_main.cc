// gsp: command-line front end.
//
//   gsp gen partition|sat3|vc|chain|random|kcopy ...
//   gsp solve --alg reverse-match|top-c|bf-2pm|bf-2paa|bf-1paa --in FILE
//   gsp simulate --alg greedy|ranking|ranking-sim|trivial --in FILE --trials N
//                [--stats FILE]
//   gsp bridge proxy|randcons ...
//   gsp verify --suite NAME|all [--param key=value ...]
//   gsp bench
//
// Exit status is 1 if any verify check fails, 2 on usage or input errors.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsp/bridge.h"
#include "gsp/generators.h"
#include "gsp/graph.h"
#include "gsp/harness.h"
#include "gsp/io.h"
#include "gsp/offline.h"
#include "gsp/online.h"
#include "gsp/random.h"

namespace {

using namespace gsp;

struct Globals {
  std::uint64_t seed = 1;
  int threads = 1;
  std::string format = "json";
};

void emit(const Json& j, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(out, j);
  }
}

Instance load_instance(const std::string& path) {
  return instance_from_json(read_json_file(path));
}

std::vector<Money> parse_money_list(const std::string& text) {
  std::vector<Money> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const long long v = std::stoll(item, &pos);
    if (pos != item.size()) throw Error("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

std::string stats_text(const TrialStats& s) {
  std::ostringstream os;
  os << "trials     " << s.trials << '\n'
     << "mean       " << s.mean << '\n'
     << "variance   " << s.variance << '\n'
     << "std_error  " << s.std_error << '\n'
     << "min        " << s.min << '\n'
     << "max        " << s.max << '\n';
  return os.str();
}

// --------------------------------------------------------------------------

struct GenArgs {
  std::string out;
  std::string weights;
  int c = 1;
  std::string in;
  std::vector<int> subset;
  int m = 10;
  std::string bits;
  bool restricted = false;
  std::string flavor = "2pm";
  int keywords = 6;
  int bidders = 6;
  double prob = 0.5;
  bool planted = false;
  Money max_budget = 10;
  int k = 2;
  std::string witness_out;
};

void add_gen(CLI::App& app, Globals& g) {
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->require_subcommand(1);
  auto args = std::make_shared<GenArgs>();

  auto* part = gen->add_subcommand("partition", "PARTITION reduction");
  part->add_option("--weights", args->weights, "comma-separated weights")
      ->required();
  part->add_option("--c", args->c, "budget ratio c");
  part->add_option("--subset", args->subset,
                   "0-based indices of one side; emits the witness");
  part->add_option("--witness-out", args->witness_out);
  part->add_option("--out", args->out);
  part->callback([args] {
    const auto w = parse_money_list(args->weights);
    const Instance inst = gen_partition_2paa(w, args->c);
    emit(instance_to_json(inst), args->out);
    if (!args->subset.empty()) {
      const Allocation a = replay_partition_witness(w, args->c, args->subset);
      Json j = allocation_to_json(inst, a);
      j["ledger"] = ledger_to_json(run_allocation(inst, a));
      emit(j, args->witness_out);
    }
  });

  auto* sat = gen->add_subcommand("sat3", "3-SAT reduction from DIMACS");
  sat->add_option("--in", args->in)->required();
  sat->add_option("--out", args->out);
  sat->callback([args] {
    std::ifstream in(args->in);
    if (!in) throw Error("cannot open '" + args->in + "'");
    emit(instance_to_json(gen_3sat_2pm(parse_dimacs(in))), args->out);
  });

  auto* vc = gen->add_subcommand("vc", "vertex cover reduction from edge list");
  vc->add_option("--in", args->in)->required();
  vc->add_option("--out", args->out);
  vc->callback([args] {
    std::ifstream in(args->in);
    if (!in) throw Error("cannot open '" + args->in + "'");
    emit(instance_to_json(gen_vc_2pm(parse_edge_list(in)).instance), args->out);
  });

  auto* chain = gen->add_subcommand("chain", "chain instance");
  chain->add_option("--m", args->m);
  chain->add_option("--bits", args->bits, "string of 0/1, length m-1");
  chain->add_flag("--restricted", args->restricted);
  chain->add_option("--out", args->out);
  chain->callback([args, &g] {
    std::vector<bool> bits;
    if (args->bits.empty()) {
      Rng rng(g.seed);
      for (int i = 0; i + 1 < args->m; ++i) bits.push_back(rng.bit());
    } else {
      for (char ch : args->bits) {
        if (ch != '0' && ch != '1') throw Error("bits must be 0 or 1");
        bits.push_back(ch == '1');
      }
    }
    const ChainInstance ci = gen_chain_instance(args->m, bits, args->restricted);
    Json j = instance_to_json(ci.instance);
    if (args->restricted) {
      j["unavailable"] = Json::array();
      for (int v : ci.unavailable) {
        j["unavailable"].push_back(ci.instance.bidder(v).id);
      }
    }
    emit(j, args->out);
  });

  auto* rnd = gen->add_subcommand("random", "random instance");
  rnd->add_option("--flavor", args->flavor)
      ->check(CLI::IsMember({"2pm", "2paa"}));
  rnd->add_option("--keywords", args->keywords);
  rnd->add_option("--bidders", args->bidders);
  rnd->add_option("--p", args->prob, "edge / bid probability");
  rnd->add_flag("--planted", args->planted, "plant a keyword-perfect matching");
  rnd->add_option("--max-budget", args->max_budget);
  rnd->add_option("--c", args->c);
  rnd->add_option("--out", args->out);
  rnd->callback([args, &g] {
    if (args->flavor == "2pm") {
      RandomGraphOptions o;
      o.num_keywords = args->keywords;
      o.num_bidders = args->bidders;
      o.edge_prob = args->prob;
      o.planted_matching = args->planted;
      emit(instance_to_json(gen_random_2pm(o, g.seed)), args->out);
    } else {
      Random2paaOptions o;
      o.num_keywords = args->keywords;
      o.num_bidders = args->bidders;
      o.max_budget = args->max_budget;
      o.bid_prob = args->prob;
      o.c = args->c;
      emit(instance_to_json(gen_random_2paa(o, g.seed)), args->out);
    }
  });

  auto* kcopy = gen->add_subcommand("kcopy", "left k-copy of an instance");
  kcopy->add_option("--in", args->in)->required();
  kcopy->add_option("--k", args->k);
  kcopy->add_option("--out", args->out);
  kcopy->callback([args] {
    emit(instance_to_json(left_k_copy(load_instance(args->in), args->k)),
         args->out);
  });
}

// --------------------------------------------------------------------------

struct SolveArgs {
  std::string alg;
  std::string in;
  std::string out;
  int c = 1;
};

void add_solve(CLI::App& app) {
  auto args = std::make_shared<SolveArgs>();
  auto* solve = app.add_subcommand("solve", "offline solvers");
  solve->add_option("--alg", args->alg)
      ->required()
      ->check(CLI::IsMember(
          {"reverse-match", "top-c", "bf-2pm", "bf-2paa", "bf-1paa"}));
  solve->add_option("--in", args->in)->required();
  solve->add_option("--out", args->out);
  solve->add_option("--c", args->c);
  solve->callback([args] {
    const Instance inst = load_instance(args->in);
    const auto report = validate_instance(inst);
    if (!report.ok()) throw Error("invalid instance: " + report.violations[0]);
    Json j;
    if (args->alg == "bf-1paa") {
      const FirstPriceResult r = brute_force_1paa_opt(inst);
      Allocation a;
      for (int v : r.allocation.assignment) {
        a.push_back(v == kNone ? Decision::skip() : Decision::assign(v));
      }
      j = allocation_to_json(inst, a);
      j["value"] = r.value;
      emit(j, args->out);
      return;
    }
    SolveResult r;
    if (args->alg == "reverse-match") {
      const auto rm = reverse_match(inst);
      r = {rm.allocation, rm.ledger};
    } else if (args->alg == "top-c") {
      r = top_c_allocate(inst, args->c);
    } else if (args->alg == "bf-2pm") {
      r = brute_force_2pm_opt(inst);
    } else {
      r = brute_force_2paa_opt(inst);
    }
    j = allocation_to_json(inst, r.allocation);
    j["ledger"] = ledger_to_json(r.ledger);
    emit(j, args->out);
  });
}

// --------------------------------------------------------------------------

struct SimArgs {
  std::string alg;
  std::string in;
  std::int64_t trials = 1000;
  std::string stats;
};

void add_simulate(CLI::App& app, Globals& g) {
  auto args = std::make_shared<SimArgs>();
  auto* sim = app.add_subcommand("simulate", "Monte Carlo runs of an online "
                                             "policy");
  sim->add_option("--alg", args->alg)
      ->required()
      ->check(CLI::IsMember({"greedy", "greedy-random", "ranking",
                             "ranking-sim", "trivial", "skip"}));
  sim->add_option("--in", args->in)->required();
  sim->add_option("--trials", args->trials)->check(CLI::PositiveNumber);
  sim->add_option("--stats", args->stats, "also write the statistics JSON");
  sim->callback([args, &g] {
    const Instance inst = load_instance(args->in);
    const TrialStats s = run_trials(online_trial(args->alg, inst),
                                    args->trials, g.seed, g.threads);
    if (!args->stats.empty()) write_json_file(args->stats, stats_to_json(s));
    if (g.format == "text") {
      std::cout << stats_text(s);
    } else {
      Json j = {{"algorithm", args->alg}, {"seed", g.seed}};
      j["stats"] = stats_to_json(s);
      std::cout << j.dump(2) << '\n';
    }
  });
}

// --------------------------------------------------------------------------

struct BridgeArgs {
  std::string in;
  std::string out;
  std::string fp;
  std::int64_t trials = 1000;
};

void add_bridge(CLI::App& app, Globals& g) {
  auto args = std::make_shared<BridgeArgs>();
  auto* bridge = app.add_subcommand("bridge", "first-price / second-price "
                                              "conversion");
  bridge->require_subcommand(1);

  auto* proxy = bridge->add_subcommand("proxy", "proxy-bid instance");
  proxy->add_option("--in", args->in)->required();
  proxy->add_option("--out", args->out);
  proxy->callback([args] {
    emit(instance_to_json(second_price_proxy_bids(load_instance(args->in))),
         args->out);
  });

  auto* rc = bridge->add_subcommand("randcons", "random construction trials");
  rc->add_option("--in", args->in)->required();
  rc->add_option("--fp", args->fp, "first-price allocation of the proxy "
                                   "instance")
      ->required();
  rc->add_option("--trials", args->trials)->check(CLI::PositiveNumber);
  rc->callback([args, &g] {
    const Instance inst = load_instance(args->in);
    const Instance proxy = second_price_proxy_bids(inst);
    const FirstPriceAllocation fp = normalize_prefix_budget(
        proxy, first_price_from_json(proxy, read_json_file(args->fp)));
    const TrialStats s = run_trials(
        [&](std::uint64_t seed) -> std::int64_t {
          return random_construction(inst, fp, seed).ledger.total;
        },
        args->trials, g.seed, g.threads);
    const Money y = first_price_value(proxy, fp);
    if (g.format == "text") {
      std::cout << "first_price_value  " << y << '\n' << stats_text(s);
    } else {
      Json j = {{"first_price_value", y}, {"seed", g.seed}};
      j["stats"] = stats_to_json(s);
      std::cout << j.dump(2) << '\n';
    }
  });
}

// --------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::vector<std::string> params;
  std::string out;
};

int g_exit = 0;

void add_verify(CLI::App& app, Globals& g) {
  auto args = std::make_shared<VerifyArgs>();
  auto* v = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  v->add_option("--suite", args->suite)
      ->required()
      ->check(CLI::IsMember(choices));
  v->add_option("--param", args->params, "suite parameter key=value");
  v->add_option("--out", args->out, "also write the JSON report here");
  v->callback([args, &g] {
    VerifyParams params;
    for (const auto& p : args->params) {
      const auto eq = p.find('=');
      if (eq == std::string::npos) throw Error("--param expects key=value");
      params[p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
    }
    std::vector<std::string> names =
        args->suite == "all" ? suite_names()
                             : std::vector<std::string>{args->suite};
    if (names.size() > 1 && !params.empty()) {
      throw Error("--param needs a single suite");
    }
    Json all = Json::array();
    for (const auto& name : names) {
      const VerifyReport r = verify(name, params, g.seed, g.threads);
      if (!r.passed()) g_exit = 1;
      all.push_back(r.to_json());
      if (g.format == "text") std::cout << r.to_text() << '\n';
    }
    const Json j = names.size() == 1 ? all[0] : all;
    if (g.format != "text") std::cout << j.dump(2) << '\n';
    if (!args->out.empty()) write_json_file(args->out, j);
  });
}

// --------------------------------------------------------------------------

void add_bench(CLI::App& app, Globals& g) {
  auto* b = app.add_subcommand("bench", "time the main solvers");
  b->callback([&g] {
    using Clock = std::chrono::steady_clock;
    Json rows = Json::array();
    auto time = [&](const std::string& what, auto fn) {
      const auto t0 = Clock::now();
      const Money v = fn();
      const double ms =
          std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      rows.push_back({{"task", what}, {"value", v}, {"ms", ms}});
    };
    RandomGraphOptions o;
    o.num_keywords = 2000;
    o.num_bidders = 2000;
    o.edge_prob = 0.003;
    o.planted_matching = true;
    const Instance big = gen_random_2pm(o, g.seed);
    time("reverse-match 2000x2000",
         [&] { return reverse_match(big).ledger.total; });
    time("greedy 2000x2000", [&] { return greedy_2pm(big).ledger.total; });
    time("ranking-sim 2000x2000", [&] {
      RankingSimulateAlgorithm alg;
      return run_online(big, alg, g.seed).ledger.total;
    });
    o.num_keywords = 12;
    o.num_bidders = 12;
    o.edge_prob = 0.3;
    o.planted_matching = false;
    const Instance small = gen_random_2pm(o, g.seed);
    time("bf-2pm 12x12", [&] { return brute_force_2pm_opt(small).ledger.total; });
    if (g.format == "text") {
      for (const auto& r : rows) {
        std::cout << std::left << std::setw(26)
                  << r["task"].get<std::string>() << std::setw(10)
                  << r["value"].get<Money>() << r["ms"].get<double>()
                  << " ms\n";
      }
    } else {
      std::cout << rows.dump(2) << '\n';
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-slot second-price ad auction toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  Globals g;
  app.add_option("--seed", g.seed, "base seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", g.format)
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  add_gen(app, g);
  add_solve(app);
  add_simulate(app, g);
  add_bridge(app, g);
  add_verify(app, g);
  add_bench(app, g);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return g_exit;
}
