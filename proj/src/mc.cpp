#include "cipc/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "cipc/detection.hpp"

namespace cipc {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kChunkDraws = 1u << 16;

struct ChunkSums {
  double sum = 0.0;
  double sum_sq = 0.0;
};

// Runs `fn(rng)` n_draws times split into fixed-size chunks, each chunk on
// its own derived stream.  Chunk partial sums are combined in chunk order,
// so the estimate is bit-identical for any thread count.
template <typename PerDraw>
McEstimate run_chunked(const McConfig& mc, PerDraw&& fn) {
  if (mc.n_draws < 1) throw std::invalid_argument("mc: n_draws must be >= 1");
  const std::uint64_t n_chunks = (mc.n_draws + kChunkDraws - 1) / kChunkDraws;
  std::vector<ChunkSums> partial(n_chunks);

  unsigned hw = std::thread::hardware_concurrency();
  unsigned n_threads = mc.threads > 0 ? static_cast<unsigned>(mc.threads)
                                      : (hw > 0 ? hw : 1);
  if (n_threads > n_chunks) n_threads = static_cast<unsigned>(n_chunks);

  std::atomic<std::uint64_t> next_chunk{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      const std::uint64_t begin = c * kChunkDraws;
      const std::uint64_t end = std::min(begin + kChunkDraws, mc.n_draws);
      SplitMix64 rng = derive_stream(mc.seed, mc.stream_id, c);
      ChunkSums sums;
      for (std::uint64_t i = begin; i < end; ++i) {
        const double v = fn(rng);
        sums.sum += v;
        sums.sum_sq += v * v;
      }
      partial[c] = sums;
    }
  };

  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  double sum = 0.0;
  double sum_sq = 0.0;
  for (const ChunkSums& s : partial) {
    sum += s.sum;
    sum_sq += s.sum_sq;
  }
  const double n = static_cast<double>(mc.n_draws);
  const double mean = sum / n;
  double var = sum_sq / n - mean * mean;
  if (var < 0.0) var = 0.0;
  return McEstimate{mean, std::sqrt(var / n), mc.n_draws};
}

}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGolden;
  return mix64(state_);
}

double SplitMix64::next_unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::next_uniform(double hi) { return next_unit() * hi; }

double SplitMix64::next_exponential(double mean) {
  // -mean ln(u) with u strictly inside (0,1), so draws are finite and
  // strictly positive.
  const double u = (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  return -mean * std::log(u);
}

SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t stream_id,
                         std::uint64_t chunk) {
  std::uint64_t s = mix64(seed ^ kGolden);
  s = mix64(s + stream_id * 0xd1342543de82ef95ULL);
  s = mix64(s + chunk * 0xaf251af3b0f025b5ULL);
  return SplitMix64{s};
}

McEstimate simulate_detection(double tau, Hypothesis hyp, double g_bw,
                              const SchemeConfig& cfg, const SystemParams& sys,
                              const McConfig& mc) {
  const bool truncated = cfg.scheme == Scheme::truncated;
  const double g_ab_floor = truncated ? cfg.q / cfg.p_a_max : 0.0;
  return run_chunked(mc, [&](SplitMix64& rng) -> double {
    double t = rng.next_uniform(cfg.p_b_max) * g_bw + sys.sigma2_w;
    if (hyp == Hypothesis::h1) {
      const double g_aw = rng.next_exponential(sys.lambda_aw);
      // Under condition C the truncated g_ab is the floor plus a fresh
      // exponential (memorylessness), which is an exact conditioned draw.
      const double g_ab = g_ab_floor + rng.next_exponential(sys.lambda_ab);
      t += cfg.q * g_aw / g_ab;
    }
    return t > tau ? 1.0 : 0.0;
  });
}

McEstimate simulate_outage(const SchemeConfig& cfg, const SystemParams& sys,
                           const McConfig& mc) {
  validate(cfg, sys);
  const double thr = std::exp2(cfg.rate) - 1.0;
  return run_chunked(mc, [&](SplitMix64& rng) -> double {
    const double p_b = rng.next_uniform(cfg.p_b_max);
    const double g_bb = rng.next_exponential(sys.lambda_bb);
    const double sinr = cfg.q / (sys.phi * p_b * g_bb + sys.sigma2_b);
    return sinr <= thr ? 1.0 : 0.0;  // boundary counts as outage
  });
}

McEstimate simulate_xi_bar(double q, const SchemeConfig& cfg,
                           const SystemParams& sys, const McConfig& mc) {
  SchemeConfig at_q = cfg;
  at_q.q = q;
  // Probe once on the caller's thread: the workers themselves must not
  // throw, so any bad parameters surface here instead.
  (void)xi_star(sys.lambda_bw, at_q, sys);
  return run_chunked(mc, [&](SplitMix64& rng) -> double {
    return xi_star(rng.next_exponential(sys.lambda_bw), at_q, sys);
  });
}

McEstimate simulate_xi_bar_nested(double q, const SchemeConfig& cfg,
                                  const SystemParams& sys, const McConfig& mc,
                                  std::uint64_t inner_draws) {
  if (inner_draws < 1) throw std::invalid_argument("mc: inner_draws must be >= 1");
  SchemeConfig at_q = cfg;
  at_q.q = q;
  const bool truncated = cfg.scheme == Scheme::truncated;
  const double g_ab_floor = truncated ? at_q.q / at_q.p_a_max : 0.0;
  return run_chunked(mc, [&](SplitMix64& rng) -> double {
    const double g_bw = rng.next_exponential(sys.lambda_bw);
    const double nu = at_q.p_b_max * g_bw + sys.sigma2_w;
    // alpha(nu) = 0 because T under H0 never exceeds nu; xi(nu) reduces to
    // the empirical miss rate at the optimal threshold.
    std::uint64_t missed = 0;
    for (std::uint64_t i = 0; i < inner_draws; ++i) {
      const double g_aw = rng.next_exponential(sys.lambda_aw);
      const double g_ab = g_ab_floor + rng.next_exponential(sys.lambda_ab);
      const double t = at_q.q * g_aw / g_ab + rng.next_uniform(at_q.p_b_max) * g_bw +
                       sys.sigma2_w;
      if (t < nu) ++missed;
    }
    return static_cast<double>(missed) / static_cast<double>(inner_draws);
  });
}

}  // namespace cipc
