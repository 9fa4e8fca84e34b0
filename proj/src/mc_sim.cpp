#include "gfbt/mc_sim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "gfbt/philox.hpp"

namespace gfbt {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559006;

inline double u53_open(std::uint64_t bits) {
    // (0, 1]: never 0, so log() below is safe
    return ((bits >> 11) + 1) * 0x1.0p-53;
}

inline double u53_half_open(std::uint64_t bits) {
    return (bits >> 11) * 0x1.0p-53;  // [0, 1)
}

// Fills noise[0..n) with standard normals from the (seed, trial) stream.
// Box-Muller on Philox output: fixed draw count, no rejection.
void fill_noise(std::uint64_t seed, std::uint64_t trial, int n,
                double* noise) {
    for (int t = 0; t < n; t += 2) {
        const auto b = philox4x32(seed, trial, static_cast<std::uint64_t>(t / 2));
        const std::uint64_t ua =
            (static_cast<std::uint64_t>(b[0]) << 32) | b[1];
        const std::uint64_t ub =
            (static_cast<std::uint64_t>(b[2]) << 32) | b[3];
        const double radius = std::sqrt(-2.0 * std::log(u53_open(ua)));
        const double angle = kTwoPi * u53_half_open(ub);
        noise[t] = radius * std::cos(angle);
        if (t + 1 < n) noise[t + 1] = radius * std::sin(angle);
    }
}

// Exhaustive ML decoder against the all-zero transmission. A wrong decision
// happens iff some nonzero codeword c has sum_{t in supp(c)} y_t <= 0.
// Codeword support sums are assembled from per-chunk subset-sum tables so a
// trial costs O(sum 2^chunk + 2^k * chunks) instead of O(2^k * n).
class ExhaustiveDecoder {
public:
    explicit ExhaustiveDecoder(const GeneratorMatrix& g) : n_(g.n()) {
        // chunk layout over the n bit positions
        const int chunk_count = (n_ + kChunkBits - 1) / kChunkBits;
        const int width = (n_ + chunk_count - 1) / chunk_count;
        for (int base = 0; base < n_; base += width) {
            chunk_base_.push_back(base);
            chunk_width_.push_back(std::min(width, n_ - base));
        }
        chunks_ = static_cast<int>(chunk_base_.size());

        // enumerate the nonzero codewords once (Gray-code walk) and record
        // each codeword's per-chunk bit pattern
        const int wpr = g.words_per_row();
        std::vector<std::uint64_t> current(wpr, 0);
        const std::uint64_t total = 1ull << g.k();
        patterns_.reserve((total - 1) * chunks_);
        for (std::uint64_t i = 1; i < total; ++i) {
            const int flip = std::countr_zero(i);
            const std::uint64_t* row = g.row_words(flip);
            for (int w = 0; w < wpr; ++w) current[w] ^= row[w];
            for (int c = 0; c < chunks_; ++c)
                patterns_.push_back(extract_bits(current, chunk_base_[c],
                                                 chunk_width_[c]));
        }
        codewords_ = total - 1;

        std::size_t table_len = 0;
        for (int c = 0; c < chunks_; ++c) table_len += 1ull << chunk_width_[c];
        table_offset_.resize(chunks_);
        std::size_t off = 0;
        for (int c = 0; c < chunks_; ++c) {
            table_offset_[c] = off;
            off += 1ull << chunk_width_[c];
        }
        table_len_ = table_len;
    }

    int n() const { return n_; }
    std::size_t scratch_len() const { return table_len_; }

    // y = received vector; scratch holds the subset-sum tables.
    bool frame_error(const double* y, double* scratch) const {
        for (int c = 0; c < chunks_; ++c) {
            double* table = scratch + table_offset_[c];
            const int base = chunk_base_[c];
            const std::size_t size = 1ull << chunk_width_[c];
            table[0] = 0.0;
            for (std::size_t p = 1; p < size; ++p)
                table[p] = table[p & (p - 1)] +
                           y[base + std::countr_zero(p)];
        }
        const std::uint16_t* pat = patterns_.data();
        for (std::uint64_t cw = 0; cw < codewords_; ++cw, pat += chunks_) {
            double s = 0.0;
            for (int c = 0; c < chunks_; ++c)
                s += scratch[table_offset_[c] + pat[c]];
            if (s <= 0.0) return true;  // ties decode against us
        }
        return false;
    }

private:
    static constexpr int kChunkBits = 11;

    static std::uint16_t extract_bits(const std::vector<std::uint64_t>& words,
                                      int base, int width) {
        std::uint32_t out = 0;
        for (int j = 0; j < width; ++j) {
            const int col = base + j;
            if ((words[col / 64] >> (col % 64)) & 1u) out |= 1u << j;
        }
        return static_cast<std::uint16_t>(out);
    }

    int n_;
    int chunks_ = 0;
    std::uint64_t codewords_ = 0;
    std::vector<int> chunk_base_;
    std::vector<int> chunk_width_;
    std::vector<std::size_t> table_offset_;
    std::size_t table_len_ = 0;
    std::vector<std::uint16_t> patterns_;
};

}  // namespace

MCEstimate simulate_fer(const GeneratorMatrix& g, double sigma,
                        std::uint64_t trials, std::uint64_t seed,
                        int workers) {
    if (g.k() > 16)
        throw std::invalid_argument(
            "simulate_fer: k > 16 exceeds the brute-force ML budget");
    if (trials < 1)
        throw std::invalid_argument("simulate_fer: trials must be >= 1");
    if (!(sigma > 0.0))
        throw std::invalid_argument("simulate_fer: sigma must be > 0");

    const ExhaustiveDecoder decoder(g);
    const int n = g.n();

    if (workers <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        workers = hw ? static_cast<int>(hw) : 1;
    }
    const std::uint64_t per_worker =
        (trials + static_cast<std::uint64_t>(workers) - 1) / workers;

    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int wi = 0; wi < workers; ++wi) {
        pool.emplace_back([&, wi] {
            const std::uint64_t begin = per_worker * wi;
            const std::uint64_t end = std::min(trials, begin + per_worker);
            std::vector<double> y(n);
            std::vector<double> scratch(decoder.scratch_len());
            std::uint64_t errors = 0;
            for (std::uint64_t trial = begin; trial < end; ++trial) {
                fill_noise(seed, trial, n, y.data());
                for (int t = 0; t < n; ++t) y[t] = 1.0 + sigma * y[t];
                if (decoder.frame_error(y.data(), scratch.data())) ++errors;
            }
            partial[wi] = errors;
        });
    }
    for (auto& th : pool) th.join();

    std::uint64_t errors = 0;
    for (const auto e : partial) errors += e;

    MCEstimate est;
    est.trials = trials;
    est.errors = errors;
    est.seed = seed;
    est.fer = static_cast<double>(errors) / static_cast<double>(trials);
    est.ci95_half_width =
        1.96 * std::sqrt(est.fer * (1.0 - est.fer) /
                         static_cast<double>(trials));
    return est;
}

}  // namespace gfbt
