#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace urllc {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
/// Pure function of (counter, key); no hidden state.
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += 0x9E3779B9u;
        key[1] += 0xBB67AE85u;
      }
      const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }
};

/// Maps 64 random bits to a double in the open interval (0, 1): the top 52
/// bits select a cell of width 2^-52 and the draw is its midpoint, so every
/// value is exact and the extremes are 2^-53 and 1 - 2^-53.
constexpr double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Uniform draw number `index` of substream `substream` under `seed`.
/// Counter words 0-1 carry index/2, words 2-3 the substream; the key is the
/// seed. Each Philox block yields two draws.
inline double substream_uniform(std::uint64_t seed, std::uint64_t substream,
                                std::uint64_t index) noexcept {
  const std::uint64_t block = index >> 1;
  const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block),
                                static_cast<std::uint32_t>(block >> 32),
                                static_cast<std::uint32_t>(substream),
                                static_cast<std::uint32_t>(substream >> 32)};
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  const auto out = Philox4x32::generate(ctr, key);
  const std::size_t w = (index & 1) * 2;
  return to_open_unit((std::uint64_t{out[w]} << 32) | out[w + 1]);
}

/// Writes draws 0..count-1 of a substream to out[0], out[stride], ...
/// Same values as substream_uniform, two draws per generator call.
inline void fill_substream_uniforms(std::uint64_t seed, std::uint64_t substream,
                                    std::size_t count, double* out,
                                    std::size_t stride) noexcept {
  const Philox4x32::Key key{static_cast<std::uint32_t>(seed),
                            static_cast<std::uint32_t>(seed >> 32)};
  for (std::size_t j = 0; j < count; j += 2) {
    const std::uint64_t block = j >> 1;
    const Philox4x32::Counter ctr{static_cast<std::uint32_t>(block),
                                  static_cast<std::uint32_t>(block >> 32),
                                  static_cast<std::uint32_t>(substream),
                                  static_cast<std::uint32_t>(substream >> 32)};
    const auto w = Philox4x32::generate(ctr, key);
    out[j * stride] = to_open_unit((std::uint64_t{w[0]} << 32) | w[1]);
    if (j + 1 < count) out[(j + 1) * stride] = to_open_unit((std::uint64_t{w[2]} << 32) | w[3]);
  }
}

/// Sequential view of one substream. Copyable; copies replay the same draws.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t substream) noexcept
      : seed_(seed), substream_(substream) {}

  double uniform() noexcept { return substream_uniform(seed_, substream_, next_++); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t substream() const noexcept { return substream_; }
  std::uint64_t position() const noexcept { return next_; }

 private:
  std::uint64_t seed_;
  std::uint64_t substream_;
  std::uint64_t next_ = 0;
};

}  // namespace urllc
