#include "gsp/model.h"

#include <algorithm>
#include <numeric>
#include <set>

namespace gsp {

int Instance::add_keyword(std::string id) {
  keywords_.push_back(std::move(id));
  bids_.emplace_back();
  return num_keywords() - 1;
}

int Instance::add_bidder(std::string id, Money budget) {
  bidders_.push_back({std::move(id), budget});
  return num_bidders() - 1;
}

void Instance::set_bid(int keyword, int bidder, Money amount) {
  if (keyword < 0 || keyword >= num_keywords() || bidder < 0 ||
      bidder >= num_bidders()) {
    throw Error("set_bid: index out of range");
  }
  auto& row = bids_[keyword];
  auto it = std::lower_bound(
      row.begin(), row.end(), bidder,
      [](const BidEntry& e, int v) { return e.bidder < v; });
  if (it != row.end() && it->bidder == bidder) {
    it->amount = amount;
  } else {
    row.insert(it, BidEntry{bidder, amount});
  }
}

std::optional<Money> Instance::bid(int u, int v) const {
  const auto& row = bids_.at(u);
  auto it = std::lower_bound(
      row.begin(), row.end(), v,
      [](const BidEntry& e, int w) { return e.bidder < w; });
  if (it == row.end() || it->bidder != v) return std::nullopt;
  return it->amount;
}

int Instance::find_keyword(const std::string& id) const {
  auto it = std::find(keywords_.begin(), keywords_.end(), id);
  return it == keywords_.end() ? kNone
                               : static_cast<int>(it - keywords_.begin());
}

int Instance::find_bidder(const std::string& id) const {
  for (int v = 0; v < num_bidders(); ++v) {
    if (bidders_[v].id == id) return v;
  }
  return kNone;
}

bool operator==(const Bidder& a, const Bidder& b) {
  return a.id == b.id && a.budget == b.budget;
}

bool operator==(const BidEntry& a, const BidEntry& b) {
  return a.bidder == b.bidder && a.amount == b.amount;
}

bool operator==(const Instance& a, const Instance& b) {
  return a.flavor_ == b.flavor_ && a.keywords_ == b.keywords_ &&
         a.bidders_ == b.bidders_ && a.bids_ == b.bids_;
}

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto add = [&report](std::string msg) {
    report.violations.push_back(std::move(msg));
  };

  std::set<std::string> seen;
  for (const auto& id : inst.keyword_ids()) {
    if (!seen.insert(id).second) add("duplicate keyword id '" + id + "'");
  }
  seen.clear();
  for (const auto& b : inst.bidders()) {
    if (!seen.insert(b.id).second) add("duplicate bidder id '" + b.id + "'");
    if (b.budget < 0) add("negative budget for bidder '" + b.id + "'");
  }

  const bool matching = inst.flavor() == Flavor::kMatching;
  if (matching) {
    for (const auto& b : inst.bidders()) {
      if (b.budget != 1) add("budget of bidder '" + b.id + "' is not 1");
    }
  }
  for (int u = 0; u < inst.num_keywords(); ++u) {
    const std::string& kid = inst.keyword_id(u);
    for (const auto& e : inst.bids_on(u)) {
      const Bidder& b = inst.bidder(e.bidder);
      if (e.amount < 0) {
        add("negative bid on keyword '" + kid + "' by '" + b.id + "'");
      }
      if (e.amount > b.budget) {
        add("bid exceeds budget: keyword '" + kid + "', bidder '" + b.id +
            "'");
      }
      if (matching && e.amount != 1) {
        add("bid on keyword '" + kid + "' by '" + b.id + "' is not 1");
      }
    }
    if (matching && inst.degree(u) < 2) {
      add("keyword degree < 2: '" + kid + "'");
    }
  }
  return report;
}

AuctionState initial_state(const Instance& inst) {
  AuctionState s;
  s.remaining.reserve(inst.num_bidders());
  for (const auto& b : inst.bidders()) s.remaining.push_back(b.budget);
  s.matched.assign(inst.num_bidders(), false);
  return s;
}

Money effective_bid(const Instance& inst, const AuctionState& state, int u,
                    int v) {
  if (v < 0 || v >= inst.num_bidders()) throw ArbiterError("no such bid", u);
  auto b = inst.bid(u, v);
  if (!b) throw ArbiterError("no such bid", u);
  if (inst.flavor() == Flavor::kMatching && state.matched[v]) return 0;
  return std::min(*b, state.remaining[v]);
}

Arbiter::Arbiter(const Instance& inst) : Arbiter(inst, initial_state(inst)) {}

Arbiter::Arbiter(const Instance& inst, AuctionState start)
    : inst_(&inst), state_(std::move(start)) {
  if (static_cast<int>(state_.remaining.size()) != inst.num_bidders() ||
      static_cast<int>(state_.matched.size()) != inst.num_bidders()) {
    throw Error("auction state does not match instance");
  }
}

Money Arbiter::quote(const Decision& d) const {
  const int u = state_.clock;
  if (u >= inst_->num_keywords()) {
    throw ArbiterError("no keyword left to allocate", kNone);
  }
  if (d.is_skip()) {
    if (d.second) throw ArbiterError("skip names a second-price bidder", u);
    return 0;
  }
  const Money first_bid = effective_bid(*inst_, state_, u, d.first);
  if (inst_->flavor() == Flavor::kMatching && state_.matched[d.first]) {
    throw ArbiterError("first-price bidder already matched", u);
  }
  if (!d.second) return 0;
  if (*d.second == d.first) {
    throw ArbiterError("first and second-price bidder coincide", u);
  }
  const Money second_bid = effective_bid(*inst_, state_, u, *d.second);
  if (first_bid < second_bid) {
    throw ArbiterError("first-price bidder outbid", u);
  }
  return second_bid;
}

Money Arbiter::apply(const Decision& d) {
  const Money price = quote(d);
  if (!d.is_skip()) {
    state_.remaining[d.first] -= price;
    if (inst_->flavor() == Flavor::kMatching) state_.matched[d.first] = true;
  }
  ++state_.clock;
  ledger_.prices.push_back(price);
  ledger_.total += price;
  return price;
}

Applied apply_decision(const Instance& inst, const AuctionState& state,
                       const Decision& decision) {
  Arbiter arb(inst, state);
  Applied out;
  out.price = arb.apply(decision);
  out.state = arb.state();
  return out;
}

Ledger run_allocation(const Instance& inst, const Allocation& allocation) {
  return run_allocation(inst, allocation, initial_state(inst));
}

Ledger run_allocation(const Instance& inst, const Allocation& allocation,
                      AuctionState start) {
  if (static_cast<int>(allocation.size()) != inst.num_keywords()) {
    throw ArbiterError("allocation has " + std::to_string(allocation.size()) +
                           " decisions for " +
                           std::to_string(inst.num_keywords()) + " keywords",
                       kNone);
  }
  Arbiter arb(inst, std::move(start));
  for (const auto& d : allocation) arb.apply(d);
  return arb.ledger();
}

Rational Rational::make(Money num, Money den) {
  if (den == 0) throw Error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Money g = std::gcd(num, den);
  return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

bool operator==(const Rational& a, const Rational& b) {
  return a.num == b.num && a.den == b.den;
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num) * b.den <
         static_cast<__int128>(b.num) * a.den;
}

Rational r_min(const Instance& inst) {
  std::optional<Rational> best;
  for (int u = 0; u < inst.num_keywords(); ++u) {
    for (const auto& e : inst.bids_on(u)) {
      if (e.amount <= 0) continue;
      Rational r = Rational::make(inst.bidder(e.bidder).budget, e.amount);
      if (!best || r < *best) best = r;
    }
  }
  if (!best) throw Error("R_min undefined: all bids are zero");
  return *best;
}

Money second_highest_bid(const Instance& inst, int u) {
  Money top = -1, second = -1;
  for (const auto& e : inst.bids_on(u)) {
    if (e.amount > top) {
      second = top;
      top = e.amount;
    } else if (e.amount > second) {
      second = e.amount;
    }
  }
  return std::max<Money>(second, 0);
}

Money second_price_upper_bound(const Instance& inst) {
  Money sum = 0;
  for (int u = 0; u < inst.num_keywords(); ++u) {
    sum += second_highest_bid(inst, u);
  }
  return sum;
}

std::string to_string(Flavor flavor) {
  return flavor == Flavor::kMatching ? "2pm" : "2paa";
}

}  // namespace gsp
