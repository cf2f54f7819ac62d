#pragma once

// Domain types shared by the whole toolkit: lenslet geometry, frames, frame
// stacks, predictor identifiers and the error type.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcbz {

enum class Errc {
    invalid_argument,
    invalid_spec,
    invalid_candidate,
    invalid_record,
    shape_mismatch,
    corrupt_header,
    not_a_container,
    unsupported_version,
    corrupt_container,
    block_decode,
    unsupported_format,
    size_mismatch,
    io,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_argument: return "invalid-argument";
        case Errc::invalid_spec: return "invalid-spec";
        case Errc::invalid_candidate: return "invalid-candidate";
        case Errc::invalid_record: return "invalid-record";
        case Errc::shape_mismatch: return "shape-mismatch";
        case Errc::corrupt_header: return "corrupt-header";
        case Errc::not_a_container: return "not-a-container";
        case Errc::unsupported_version: return "unsupported-version";
        case Errc::corrupt_container: return "corrupt-container";
        case Errc::block_decode: return "block-decode";
        case Errc::unsupported_format: return "unsupported-format";
        case Errc::size_mismatch: return "size-mismatch";
        case Errc::io: return "io";
    }
    return "unknown";
}

/// Where in a container a failure was detected. Unset fields are unknown.
struct ErrorLocation {
    std::optional<std::size_t> frame = std::nullopt;
    std::optional<std::size_t> block = std::nullopt;
    std::optional<std::uint64_t> offset = std::nullopt;
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what, ErrorLocation where = {})
        : std::runtime_error(std::string(errc_name(code)) + ": " + what + describe(where)),
          code_(code), message_(what), where_(where) {}

    Errc code() const noexcept { return code_; }
    /// The description without the error-code prefix and location suffix.
    const std::string& message() const noexcept { return message_; }
    const ErrorLocation& where() const noexcept { return where_; }

    /// True for damaged-data conditions (as opposed to bad input or I/O).
    bool is_corruption() const noexcept {
        return code_ == Errc::corrupt_header || code_ == Errc::corrupt_container ||
               code_ == Errc::block_decode;
    }

private:
    static std::string describe(const ErrorLocation& w) {
        std::string s;
        if (w.frame) s += " [frame " + std::to_string(*w.frame) + "]";
        if (w.block) s += " [block " + std::to_string(*w.block) + "]";
        if (w.offset) s += " [offset " + std::to_string(*w.offset) + "]";
        return s;
    }

    Errc code_;
    std::string message_;
    ErrorLocation where_;
};

/// Microlens-array pitch in sensor pixels. (1,1) makes lenslet-stride
/// neighbors coincide with pixel-adjacent ones.
struct LensletGeometry {
    std::uint32_t pitch_x = 1;
    std::uint32_t pitch_y = 1;

    LensletGeometry() = default;
    LensletGeometry(std::uint32_t px, std::uint32_t py) : pitch_x(px), pitch_y(py) {
        if (px == 0 || py == 0)
            throw Error(Errc::invalid_argument, "lenslet pitch must be >= 1");
    }

    friend bool operator==(const LensletGeometry&, const LensletGeometry&) = default;
};

/// A row-major W x H grid of 16-bit samples. Residual (symbol) images reuse
/// the same layout, see ResidualFrame.
class Frame {
public:
    Frame() = default;

    Frame(std::uint32_t width, std::uint32_t height, LensletGeometry geometry = {})
        : Frame(width, height, std::vector<std::uint16_t>(checked_area(width, height)), geometry) {}

    Frame(std::uint32_t width, std::uint32_t height, std::vector<std::uint16_t> samples,
          LensletGeometry geometry = {})
        : width_(width), height_(height), geometry_(geometry), samples_(std::move(samples)) {
        if (samples_.size() != checked_area(width, height))
            throw Error(Errc::shape_mismatch,
                        "sample count " + std::to_string(samples_.size()) + " != " +
                            std::to_string(width) + "x" + std::to_string(height));
    }

    std::uint32_t width() const noexcept { return width_; }
    std::uint32_t height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const LensletGeometry& geometry() const noexcept { return geometry_; }

    std::uint16_t at(std::uint32_t x, std::uint32_t y) const {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }
    std::uint16_t& at(std::uint32_t x, std::uint32_t y) {
        return samples_[static_cast<std::size_t>(y) * width_ + x];
    }

    const std::vector<std::uint16_t>& samples() const noexcept { return samples_; }
    std::vector<std::uint16_t>& samples() noexcept { return samples_; }

    bool same_shape(const Frame& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_ && geometry_ == o.geometry_;
    }

    friend bool operator==(const Frame&, const Frame&) = default;

private:
    static std::size_t checked_area(std::uint32_t w, std::uint32_t h) {
        if (w == 0 || h == 0) throw Error(Errc::invalid_argument, "frame dimensions must be >= 1");
        return static_cast<std::size_t>(w) * h;
    }

    std::uint32_t width_ = 0;
    std::uint32_t height_ = 0;
    LensletGeometry geometry_;
    std::vector<std::uint16_t> samples_;
};

/// Prediction residuals mapped into [0, 65535]; same shape as its source.
using ResidualFrame = Frame;

/// Non-empty sequence of frames sharing width, height and geometry.
class FrameStack {
public:
    FrameStack() = default;
    explicit FrameStack(std::vector<Frame> frames) : frames_(std::move(frames)) {
        if (frames_.empty()) throw Error(Errc::invalid_argument, "frame stack must be non-empty");
        for (const auto& f : frames_)
            if (!f.same_shape(frames_.front()))
                throw Error(Errc::shape_mismatch, "frames in a stack must share shape and geometry");
    }

    std::size_t size() const noexcept { return frames_.size(); }
    bool empty() const noexcept { return frames_.empty(); }
    const Frame& operator[](std::size_t i) const { return frames_[i]; }
    const Frame& front() const { return frames_.front(); }
    auto begin() const noexcept { return frames_.begin(); }
    auto end() const noexcept { return frames_.end(); }
    const std::vector<Frame>& frames() const noexcept { return frames_; }

    std::uint32_t width() const { return front().width(); }
    std::uint32_t height() const { return front().height(); }
    const LensletGeometry& geometry() const { return front().geometry(); }

    /// Uncompressed payload size at 16 bits per sample.
    std::uint64_t raw_bytes() const {
        return 2ull * width() * height() * frames_.size();
    }

    friend bool operator==(const FrameStack&, const FrameStack&) = default;

private:
    std::vector<Frame> frames_;
};

/// Intra predictor ids: 0 identity, 1-4 base functions on pixel-adjacent
/// neighbors, 5-8 on lenslet-stride neighbors, 9-12 phase-space fusion.
inline constexpr int kMaxIntraId = 12;
inline constexpr int kIntraCount = kMaxIntraId + 1;

struct PredictorSpec {
    bool temporal = false;
    int intra_id = 0;

    friend bool operator==(const PredictorSpec&, const PredictorSpec&) = default;
};

inline std::uint8_t encode_predictor_spec(PredictorSpec spec) {
    if (spec.intra_id < 0 || spec.intra_id > kMaxIntraId)
        throw Error(Errc::invalid_spec, "intra id " + std::to_string(spec.intra_id) + " out of range");
    return static_cast<std::uint8_t>((spec.temporal ? 0x80 : 0x00) | spec.intra_id);
}

inline PredictorSpec decode_predictor_spec(std::uint8_t b) {
    const int id = b & 0x7F;
    if (id > kMaxIntraId)
        throw Error(Errc::corrupt_header, "predictor byte " + std::to_string(b) + " has intra id " +
                                              std::to_string(id));
    return PredictorSpec{(b & 0x80) != 0, id};
}

/// Short human-readable predictor name, e.g. "phase:(A+B)/2" or
/// "temporal+identity".
inline std::string predictor_name(PredictorSpec spec) {
    static const char* const kFunctions[] = {"A+B-C", "A+(B-C)/2", "B+(A-C)/2", "(A+B)/2"};
    static const char* const kNeighbors[] = {"pixel", "lenslet", "phase"};
    encode_predictor_spec(spec);
    std::string name = spec.temporal ? "temporal+" : "";
    if (spec.intra_id == 0) return name + "identity";
    const int k = spec.intra_id - 1;
    return name + kNeighbors[k / 4] + ":" + kFunctions[k % 4];
}

}  // namespace pcbz
