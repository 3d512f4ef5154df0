// Deterministic, platform-independent randomness.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded by four successive
// outputs of splitmix64 starting from the 64-bit seed. Bounded integers use
// Lemire's multiply-and-reject method, so draws are exactly uniform. The same
// seed yields the same stream on every platform and compiler.

#ifndef GSP_RANDOM_H_
#define GSP_RANDOM_H_

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace gsp {

std::uint64_t splitmix64(std::uint64_t& state);

// Independent sub-seed for `stream` derived from `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return next(); }
  std::uint64_t next();

  // Uniform on [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  // Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  // One fair bit. Bits are taken least-significant first from 64-bit words.
  bool bit();
  // Bernoulli(p) with 53-bit resolution.
  bool chance(double p);

 private:
  std::array<std::uint64_t, 4> s_;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(items[i - 1], items[j]);
  }
}

// A bidder ranking. order[r] is the bidder at rank r (rank 0 = highest
// priority); rank[v] is its inverse.
struct Ranking {
  std::vector<int> order;
  std::vector<int> rank;

  static Ranking identity(int n);
  static Ranking from_order(std::vector<int> order);
  int size() const { return static_cast<int>(order.size()); }

  friend bool operator==(const Ranking&, const Ranking&) = default;
};

Ranking make_permutation(std::uint64_t seed, int n);

// Fair coin stream. `true` selects the first branch of a two-way choice.
class CoinStream {
 public:
  explicit CoinStream(std::uint64_t seed) : rng_(seed) {}
  // Replays `fixed` and then fails loudly if more coins are requested.
  explicit CoinStream(std::vector<bool> fixed);

  bool next();
  std::size_t consumed() const { return consumed_; }

 private:
  Rng rng_{0};
  std::vector<bool> fixed_;
  bool use_fixed_ = false;
  std::size_t consumed_ = 0;
};

CoinStream make_coins(std::uint64_t seed);

}  // namespace gsp

#endif  // GSP_RANDOM_H_
