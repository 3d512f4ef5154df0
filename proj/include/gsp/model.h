// Instance data model and the exact execution semantics of one-slot
// second-price allocation.
//
// Two flavors share one data model:
//
//   * kAdAuction (2PAA): integer budgets and bids. A keyword assigned to a
//     first-price bidder v1 with second-price bidder v2 realizes the price
//     min(b[u][v2], B[v2](t-1)); v1's budget is reduced by that price.
//
//   * kMatching (2PM): every budget and every present bid is 1. On top of the
//     budget rule, a bidder that has been assigned a keyword is consumed even
//     if it paid nothing. This is what turns the auction into a matching
//     problem: a match earns 1 only if another unmatched neighbor exists.
//
// The arbiter below is the single source of truth for realized prices; every
// solver in this library emits Decisions and lets the arbiter price them.

#ifndef GSP_MODEL_H_
#define GSP_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsp {

using Money = std::int64_t;

inline constexpr int kNone = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the arbiter. `keyword` is the arrival index of the offending
// keyword when known.
class ArbiterError : public Error {
 public:
  ArbiterError(const std::string& what, int keyword)
      : Error(keyword == kNone ? what
                               : "keyword " + std::to_string(keyword) + ": " +
                                     what),
        keyword_(keyword) {}
  int keyword() const { return keyword_; }

 private:
  int keyword_;
};

enum class Flavor { kAdAuction, kMatching };

struct Bidder {
  std::string id;
  Money budget = 0;
};

struct BidEntry {
  int bidder = kNone;
  Money amount = 0;
};

// Keywords and bidders are addressed by dense indices; string ids exist for
// file exchange. Keyword index == arrival position.
class Instance {
 public:
  Instance() = default;
  explicit Instance(Flavor flavor) : flavor_(flavor) {}

  Flavor flavor() const { return flavor_; }
  void set_flavor(Flavor flavor) { flavor_ = flavor; }

  int add_keyword(std::string id);
  int add_bidder(std::string id, Money budget);
  // Inserts or overwrites the bid of `bidder` on `keyword`.
  void set_bid(int keyword, int bidder, Money amount);

  int num_keywords() const { return static_cast<int>(keywords_.size()); }
  int num_bidders() const { return static_cast<int>(bidders_.size()); }
  const std::string& keyword_id(int u) const { return keywords_.at(u); }
  const Bidder& bidder(int v) const { return bidders_.at(v); }
  std::span<const Bidder> bidders() const { return bidders_; }
  std::span<const std::string> keyword_ids() const { return keywords_; }

  // Bids on keyword u, sorted by bidder index.
  std::span<const BidEntry> bids_on(int u) const { return bids_.at(u); }
  std::optional<Money> bid(int u, int v) const;
  int degree(int u) const { return static_cast<int>(bids_.at(u).size()); }

  int find_keyword(const std::string& id) const;
  int find_bidder(const std::string& id) const;

  friend bool operator==(const Instance&, const Instance&);

 private:
  Flavor flavor_ = Flavor::kAdAuction;
  std::vector<std::string> keywords_;
  std::vector<Bidder> bidders_;
  std::vector<std::vector<BidEntry>> bids_;
};

bool operator==(const Bidder& a, const Bidder& b);
bool operator==(const BidEntry& a, const BidEntry& b);

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_instance(const Instance& inst);

// Remaining budgets B_v(t), the 2PM matched set, and the arrival clock.
struct AuctionState {
  std::vector<Money> remaining;
  std::vector<bool> matched;
  int clock = 0;

  friend bool operator==(const AuctionState&, const AuctionState&) = default;
};

AuctionState initial_state(const Instance& inst);

// Skip, or Assign(first, optional second).
struct Decision {
  int first = kNone;
  std::optional<int> second;

  static Decision skip() { return {}; }
  static Decision assign(int first, std::optional<int> second = std::nullopt) {
    return {first, second};
  }
  bool is_skip() const { return first == kNone; }

  friend bool operator==(const Decision&, const Decision&) = default;
};

using Allocation = std::vector<Decision>;

struct Ledger {
  std::vector<Money> prices;
  Money total = 0;

  friend bool operator==(const Ledger&, const Ledger&) = default;
};

struct SolveResult {
  Allocation allocation;
  Ledger ledger;
};

// b_{u,v}(t) = min(b_{u,v}, B_v(t)); zero for a matched bidder in 2PM.
Money effective_bid(const Instance& inst, const AuctionState& state, int u,
                    int v);

// Incremental arbiter over a borrowed instance. Used by every solver and by
// the value-returning helpers below.
class Arbiter {
 public:
  explicit Arbiter(const Instance& inst);
  Arbiter(const Instance& inst, AuctionState start);

  // Prices `decision` for the keyword at state().clock and advances.
  Money apply(const Decision& decision);

  // Price `decision` would realize now, or throws without mutating.
  Money quote(const Decision& decision) const;

  const AuctionState& state() const { return state_; }
  const Ledger& ledger() const { return ledger_; }
  bool done() const { return state_.clock >= inst_->num_keywords(); }

 private:
  const Instance* inst_;
  AuctionState state_;
  Ledger ledger_;
};

struct Applied {
  AuctionState state;
  Money price = 0;
};

Applied apply_decision(const Instance& inst, const AuctionState& state,
                       const Decision& decision);

Ledger run_allocation(const Instance& inst, const Allocation& allocation);
Ledger run_allocation(const Instance& inst, const Allocation& allocation,
                      AuctionState start);

// Exact nonnegative rational, always in lowest terms with den > 0.
struct Rational {
  Money num = 0;
  Money den = 1;

  static Rational make(Money num, Money den);
  double to_double() const { return static_cast<double>(num) / den; }
};

bool operator==(const Rational& a, const Rational& b);
bool operator<(const Rational& a, const Rational& b);
inline bool operator>=(const Rational& a, const Rational& b) {
  return !(a < b);
}

// min over positive bids of B_v / b_{u,v}.
Rational r_min(const Instance& inst);

// s_u: the second-highest original bid on u, 0 with fewer than two bids.
Money second_highest_bid(const Instance& inst, int u);

// sum_u s_u, an upper bound on any allocation's value.
Money second_price_upper_bound(const Instance& inst);

std::string to_string(Flavor flavor);

}  // namespace gsp

#endif  // GSP_MODEL_H_
