#include "gsp/random.h"

#include <numeric>

#include "gsp/model.h"

namespace gsp {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (stream * 0xd1342543de82ef95ULL);
  splitmix64(state);
  return splitmix64(state);
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) word = splitmix64(state);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("Rng::below: zero bound");
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error("Rng::between: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  return lo + static_cast<std::int64_t>(below(span));
}

bool Rng::bit() {
  if (bits_left_ == 0) {
    bits_ = next();
    bits_left_ = 64;
  }
  const bool b = bits_ & 1U;
  bits_ >>= 1;
  --bits_left_;
  return b;
}

bool Rng::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

Ranking Ranking::identity(int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  return from_order(std::move(order));
}

Ranking Ranking::from_order(std::vector<int> order) {
  Ranking r;
  r.rank.assign(order.size(), kNone);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int v = order[i];
    if (v < 0 || v >= static_cast<int>(order.size()) || r.rank[v] != kNone) {
      throw Error("ranking is not a permutation");
    }
    r.rank[v] = static_cast<int>(i);
  }
  r.order = std::move(order);
  return r;
}

Ranking make_permutation(std::uint64_t seed, int n) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle(order, rng);
  return Ranking::from_order(std::move(order));
}

CoinStream::CoinStream(std::vector<bool> fixed)
    : fixed_(std::move(fixed)), use_fixed_(true) {}

bool CoinStream::next() {
  if (use_fixed_) {
    if (consumed_ >= fixed_.size()) throw Error("coin stream exhausted");
    return fixed_[consumed_++];
  }
  ++consumed_;
  return rng_.bit();
}

CoinStream make_coins(std::uint64_t seed) { return CoinStream(seed); }

}  // namespace gsp
