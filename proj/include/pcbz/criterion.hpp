#pragma once

// Predictor selection by two-dimensional image entropy.
//
// A candidate residual is serialized as big-endian bytes, passed through a
// first-byte-only stable rotation sort (an approximation of the BWT that is
// a single counting-sort pass), and scored by the Shannon entropy of its
// overlapping adjacent-byte pairs. The candidate with the lowest score wins.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <span>
#include <type_traits>
#include <vector>

#include "pcbz/core.hpp"
#include "pcbz/parallel.hpp"
#include "pcbz/predictors.hpp"

namespace pcbz {

using ByteString = std::vector<std::uint8_t>;

/// Counts of overlapping 16-bit pairs t = x_i * 256 + x_{i+1}.
struct PairHistogram {
    std::vector<std::uint64_t> counts = std::vector<std::uint64_t>(65536, 0);
    std::uint64_t total = 0;
};

struct EntropyEntry {
    PredictorSpec spec;
    double entropy_bits = 0.0;
};

/// Entries are ordered by encoded predictor byte.
struct EntropyReport {
    std::vector<EntropyEntry> entries;
    PredictorSpec selected;

    double entropy_of(PredictorSpec s) const {
        for (const auto& e : entries)
            if (e.spec == s) return e.entropy_bits;
        throw Error(Errc::invalid_candidate, "predictor not in report");
    }
};

/// Stable sort of all cyclic rotations by their first byte only, emitting
/// the last byte of each rotation. This is not the canonical BWT.
inline ByteString approx_bwt(std::span<const std::uint8_t> s) {
    const std::size_t n = s.size();
    ByteString out(n);
    if (n == 0) return out;
    std::array<std::size_t, 257> start{};
    for (std::uint8_t v : s) ++start[v + 1u];
    for (std::size_t v = 1; v < start.size(); ++v) start[v] += start[v - 1];
    out[start[s[0]]++] = s[n - 1];
    for (std::size_t i = 1; i < n; ++i) out[start[s[i]]++] = s[i - 1];
    return out;
}

inline PairHistogram pair_histogram(std::span<const std::uint8_t> s) {
    PairHistogram h;
    for (std::size_t i = 1; i < s.size(); ++i) ++h.counts[(std::size_t{s[i - 1]} << 8) | s[i]];
    h.total = s.size() < 2 ? 0 : s.size() - 1;
    return h;
}

namespace detail {

template <class CountAt>
double entropy_bits(std::size_t bins, CountAt count_at, std::uint64_t total) {
    if (total == 0) return 0.0;
    // Neumaier-compensated sum: up to 65536 terms of similar size would
    // otherwise drift by ~1e-11.
    const double inv = 1.0 / static_cast<double>(total);
    double sum = 0.0, carry = 0.0;
    for (std::size_t i = 0; i < bins; ++i) {
        const std::uint64_t c = count_at(i);
        if (c == 0) continue;
        const double p = static_cast<double>(c) * inv;
        const double term = -p * std::log2(p);
        const double t = sum + term;
        carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
        sum = t;
    }
    return sum + carry;
}

// Accumulates the pair histogram of approx_bwt(s) without materializing the
// transformed string. Within the bucket of byte v the output lists the
// predecessors of each occurrence of v in order, so only the last emitted
// predecessor per bucket needs to be remembered; pairs spanning two buckets
// are added by finish(). Counter spans hold kPairSlots entries: the first
// 65536 are the histogram, the tail absorbs the first element of each bucket
// so push() needs no branch on it.
inline constexpr std::size_t kPairSlots = 65536 + 256;

// Narrow counters keep the hot table close to L1; a wrap to zero bumps the
// matching 32-bit carry, so slot i holds counts[i] + 2^(8*sizeof(Count)) * carries[i].
template <class Count>
class BwtPairAccumulator {
public:
    explicit BwtPairAccumulator(std::span<Count> counts, std::span<std::uint32_t> carries = {})
        : counts_(counts.data()), carries_(carries.data()) {
        if (counts.size() < kPairSlots || (kNarrow && carries.size() < kPairSlots))
            throw Error(Errc::invalid_argument, "pair accumulator needs kPairSlots counters");
        last_.fill(kUnseen);
    }

    void push(std::uint32_t v, std::uint32_t pred) {
        const std::uint32_t l = last_[v];
        if (l == kUnseen) [[unlikely]]
            first_[v] = static_cast<std::uint8_t>(pred);
        bump(l | pred);
        last_[v] = pred << 8;
    }

    /// Continues this bucket state with a later, adjacent run of the same
    /// sequence that was accumulated into the same counters.
    void join(const BwtPairAccumulator& later) {
        for (int v = 0; v < 256; ++v) {
            if (later.last_[v] == kUnseen) continue;
            if (last_[v] == kUnseen)
                first_[v] = later.first_[v];
            else
                bump(last_[v] | later.first_[v]);
            last_[v] = later.last_[v];
        }
    }

    void finish() {
        int prev = -1;
        for (int v = 0; v < 256; ++v) {
            if (last_[v] == kUnseen) continue;
            if (prev >= 0) bump(last_[prev] | first_[v]);
            prev = v;
        }
    }

private:
    static constexpr bool kNarrow = sizeof(Count) < sizeof(std::uint64_t);
    static constexpr std::uint32_t kUnseen = 65536;

    void bump(std::uint32_t i) {
        if constexpr (kNarrow) {
            if (++counts_[i] == 0) [[unlikely]]
                ++carries_[i];
        } else {
            ++counts_[i];
        }
    }

    Count* counts_;
    std::uint32_t* carries_;
    std::array<std::uint32_t, 256> last_;
    std::array<std::uint8_t, 256> first_{};
};

}  // namespace detail

/// Shannon entropy (bits) of the pair distribution. Non-negative; zero for
/// an empty or single-pair-value histogram.
inline double entropy2d(const PairHistogram& h) {
    return detail::entropy_bits(h.counts.size(), [&](std::size_t i) { return h.counts[i]; }, h.total);
}

/// Big-endian (high byte first), row-major serialization of a frame. The
/// codec stores exactly these bytes.
inline ByteString serialize_frame(const Frame& f) {
    ByteString out(2 * f.size());
    const auto& s = f.samples();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out[2 * i] = static_cast<std::uint8_t>(s[i] >> 8);
        out[2 * i + 1] = static_cast<std::uint8_t>(s[i] & 0xFF);
    }
    return out;
}

inline Frame deserialize_frame(std::span<const std::uint8_t> bytes, std::uint32_t width, std::uint32_t height,
                               LensletGeometry geometry) {
    const std::size_t n = static_cast<std::size_t>(width) * height;
    if (bytes.size() != 2 * n) throw Error(Errc::size_mismatch, "serialized frame has wrong length");
    std::vector<std::uint16_t> s(n);
    for (std::size_t i = 0; i < n; ++i)
        s[i] = static_cast<std::uint16_t>((bytes[2 * i] << 8) | bytes[2 * i + 1]);
    return Frame(width, height, std::move(s), geometry);
}

/// Pair histogram of approx_bwt(bytes), computed in one streaming pass.
inline PairHistogram bwt_pair_histogram(std::span<const std::uint8_t> bytes) {
    PairHistogram h;
    if (bytes.empty()) return h;
    std::vector<std::uint64_t> slots(detail::kPairSlots);
    detail::BwtPairAccumulator<std::uint64_t> acc(slots);
    acc.push(bytes[0], bytes.back());
    for (std::size_t i = 1; i < bytes.size(); ++i) acc.push(bytes[i], bytes[i - 1]);
    acc.finish();
    std::copy_n(slots.begin(), h.counts.size(), h.counts.begin());
    h.total = bytes.size() - 1;
    return h;
}

/// Reusable buffers for candidate_entropy.
struct EntropyScratch {
    std::vector<std::uint8_t> counts = std::vector<std::uint8_t>(detail::kPairSlots);
    std::vector<std::uint32_t> carries = std::vector<std::uint32_t>(detail::kPairSlots);
    ResidualFrame residual;
};

/// entropy2d(bwt_pair_histogram(serialize_frame(residual))) without building
/// the byte string or the transform.
inline double candidate_entropy(const ResidualFrame& residual, EntropyScratch& scratch) {
    auto& counts = scratch.counts;
    auto& carries = scratch.carries;
    std::fill(counts.begin(), counts.end(), std::uint8_t{0});
    std::fill(carries.begin(), carries.end(), 0u);
    detail::BwtPairAccumulator<std::uint8_t> a(counts, carries), b(counts, carries);
    const std::uint16_t* r = residual.samples().data();
    const std::size_t n = residual.size();
    // Two independent halves hide the load-increment-store latency; the
    // first byte's predecessor wraps around to the last byte.
    const std::size_t m = n / 2;
    std::uint32_t prev_a = r[n - 1] & 0xFFu;
    std::uint32_t prev_b = (m > 0 ? r[m - 1] : r[n - 1]) & 0xFFu;
    for (std::size_t i = 0; i < m; ++i) {
        const std::uint32_t x = r[i], y = r[m + i];
        a.push(x >> 8u, prev_a);
        b.push(y >> 8u, prev_b);
        a.push(x & 0xFFu, x >> 8u);
        b.push(y & 0xFFu, y >> 8u);
        prev_a = x & 0xFFu;
        prev_b = y & 0xFFu;
    }
    for (std::size_t i = 2 * m; i < n; ++i) {
        b.push(r[i] >> 8u, prev_b);
        b.push(r[i] & 0xFFu, r[i] >> 8u);
        prev_b = r[i] & 0xFFu;
    }
    a.join(b);
    a.finish();
    return detail::entropy_bits(
        65536, [&](std::size_t i) { return counts[i] + (std::uint64_t{carries[i]} << 8); }, 2 * n - 1);
}

inline double candidate_entropy(const ResidualFrame& residual) {
    EntropyScratch scratch;
    return candidate_entropy(residual, scratch);
}

/// candidate_entropy(predict_frame(frame, intra_id)) using reusable buffers.
inline double candidate_entropy(const Frame& frame, int intra_id, EntropyScratch& scratch) {
    if (intra_id == 0) return candidate_entropy(frame, scratch);
    predict_frame_into(frame, intra_id, scratch.residual);
    return candidate_entropy(scratch.residual, scratch);
}

/// All 13 intra ids, plus their temporal variants when a previous frame is
/// available. Ordered by encoded byte.
inline std::vector<PredictorSpec> default_candidates(bool with_temporal) {
    std::vector<PredictorSpec> c;
    for (int t = 0; t < (with_temporal ? 2 : 1); ++t)
        for (int id = 0; id <= kMaxIntraId; ++id) c.push_back({t == 1, id});
    return c;
}

/// Scores every candidate and picks the minimum entropy, breaking ties by the
/// smaller encoded byte. The result does not depend on `workers` or on the
/// order of `candidates`.
inline EntropyReport select_predictor(const Frame& frame, const Frame* prev,
                                      std::span<const PredictorSpec> candidates, unsigned workers = 1) {
    if (candidates.empty()) throw Error(Errc::invalid_candidate, "candidate set is empty");
    std::vector<PredictorSpec> specs(candidates.begin(), candidates.end());
    for (const auto& c : specs) {
        encode_predictor_spec(c);
        if (c.temporal && prev == nullptr)
            throw Error(Errc::invalid_candidate, "temporal candidate without a previous frame");
    }
    std::sort(specs.begin(), specs.end(), [](PredictorSpec a, PredictorSpec b) {
        return encode_predictor_spec(a) < encode_predictor_spec(b);
    });
    specs.erase(std::unique(specs.begin(), specs.end()), specs.end());

    std::unique_ptr<Frame> delta;
    if (std::any_of(specs.begin(), specs.end(), [](PredictorSpec s) { return s.temporal; }))
        delta = std::make_unique<Frame>(temporal_delta(frame, *prev));

    EntropyReport report;
    report.entries.resize(specs.size());
    const unsigned threads = effective_workers(specs.size(), workers);
    std::vector<EntropyScratch> scratch(threads);
    parallel_for_indexed(specs.size(), threads, [&](std::size_t i, unsigned w) {
        const PredictorSpec s = specs[i];
        report.entries[i] = {s, candidate_entropy(s.temporal ? *delta : frame, s.intra_id, scratch[w])};
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < report.entries.size(); ++i)
        if (report.entries[i].entropy_bits < report.entries[best].entropy_bits) best = i;
    report.selected = report.entries[best].spec;
    return report;
}

inline EntropyReport select_predictor(const Frame& frame, const Frame* prev,
                                      std::initializer_list<PredictorSpec> candidates, unsigned workers = 1) {
    return select_predictor(frame, prev, std::span<const PredictorSpec>(candidates.begin(), candidates.size()),
                            workers);
}

}  // namespace pcbz
