#pragma once

// Image interchange: binary 16-bit PGM (P5, maxval 65535, big-endian) and
// headerless little-endian raw stacks with a key=value sidecar.
//
// A PGM file may hold several images back to back; each becomes one frame.
// PGM carries no lenslet geometry, so callers pass it in.

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "pcbz/core.hpp"

namespace pcbz {

struct SidecarMeta {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t frames = 0;
    std::uint32_t pitch_x = 1;
    std::uint32_t pitch_y = 1;

    friend bool operator==(const SidecarMeta&, const SidecarMeta&) = default;
};

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open " + path.string());
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw Error(Errc::io, "read failed: " + path.string());
    return data;
}

inline void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot create " + path.string());
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error(Errc::io, "write failed: " + path.string());
}

// ---------------------------------------------------------------- PGM

namespace detail {

class PgmParser {
public:
    explicit PgmParser(std::span<const std::uint8_t> d) : d_(d) {}

    bool at_end() {
        skip_space_and_comments();
        return pos_ >= d_.size();
    }

    Frame next(LensletGeometry geometry) {
        skip_space_and_comments();
        if (pos_ + 2 > d_.size() || d_[pos_] != 'P' || d_[pos_ + 1] != '5')
            throw Error(Errc::unsupported_format, "not a binary PGM (P5) image");
        pos_ += 2;
        const std::uint64_t w = number("width");
        const std::uint64_t h = number("height");
        const std::uint64_t maxval = number("maxval");
        if (w == 0 || h == 0 || w > 0xFFFFFFFFu || h > 0xFFFFFFFFu)
            throw Error(Errc::unsupported_format, "bad PGM dimensions");
        if (maxval != 65535)
            throw Error(Errc::unsupported_format, "PGM maxval " + std::to_string(maxval) + " (need 65535)");
        if (pos_ >= d_.size() || !std::isspace(d_[pos_]))
            throw Error(Errc::unsupported_format, "missing whitespace after PGM maxval");
        ++pos_;
        const std::uint64_t n = w * h;
        if (d_.size() - pos_ < 2 * n) throw Error(Errc::unsupported_format, "PGM pixel data truncated");
        std::vector<std::uint16_t> s(n);
        for (std::size_t i = 0; i < n; ++i, pos_ += 2)
            s[i] = static_cast<std::uint16_t>((d_[pos_] << 8) | d_[pos_ + 1]);
        return Frame(static_cast<std::uint32_t>(w), static_cast<std::uint32_t>(h), std::move(s), geometry);
    }

private:
    void skip_space_and_comments() {
        while (pos_ < d_.size()) {
            if (std::isspace(d_[pos_])) {
                ++pos_;
            } else if (d_[pos_] == '#') {
                while (pos_ < d_.size() && d_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::uint64_t number(const char* what) {
        skip_space_and_comments();
        if (pos_ >= d_.size() || !std::isdigit(d_[pos_]))
            throw Error(Errc::unsupported_format, std::string("malformed PGM ") + what);
        std::uint64_t v = 0;
        while (pos_ < d_.size() && std::isdigit(d_[pos_])) {
            v = v * 10 + (d_[pos_++] - '0');
            if (v > 0xFFFFFFFFull) throw Error(Errc::unsupported_format, std::string("PGM ") + what + " too large");
        }
        return v;
    }

    std::span<const std::uint8_t> d_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses every image in a (possibly multi-image) 16-bit PGM buffer.
inline FrameStack decode_pgm(std::span<const std::uint8_t> data, LensletGeometry geometry = {}) {
    detail::PgmParser p(data);
    std::vector<Frame> frames;
    do {
        frames.push_back(p.next(geometry));
    } while (!p.at_end());
    return FrameStack(std::move(frames));
}

inline std::vector<std::uint8_t> encode_pgm(const Frame& frame) {
    const std::string header =
        "P5\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) + "\n65535\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + 2 * frame.size());
    for (std::uint16_t v : frame.samples()) {
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
    return out;
}

inline Frame read_image(const std::filesystem::path& path, LensletGeometry geometry = {}) {
    const auto data = read_file(path);
    detail::PgmParser p(data);
    return p.next(geometry);
}

inline void write_image(const std::filesystem::path& path, const Frame& frame) {
    write_file(path, encode_pgm(frame));
}

inline FrameStack read_pgm_stack(const std::filesystem::path& path, LensletGeometry geometry = {}) {
    return decode_pgm(read_file(path), geometry);
}

/// Writes all frames back to back into one multi-image PGM.
inline void write_pgm_stack(const std::filesystem::path& path, const FrameStack& stack) {
    std::vector<std::uint8_t> out;
    for (const auto& f : stack) {
        auto one = encode_pgm(f);
        out.insert(out.end(), one.begin(), one.end());
    }
    write_file(path, out);
}

// ---------------------------------------------------------------- raw + sidecar

inline std::filesystem::path sidecar_path(const std::filesystem::path& raw) {
    return std::filesystem::path(raw.string() + ".meta");
}

inline std::string format_sidecar(const SidecarMeta& m) {
    std::ostringstream s;
    s << "width=" << m.width << "\nheight=" << m.height << "\nframes=" << m.frames << "\npitch_x=" << m.pitch_x
      << "\npitch_y=" << m.pitch_y << "\n";
    return s.str();
}

inline SidecarMeta parse_sidecar(const std::string& text) {
    std::map<std::string, std::uint32_t> kv;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(Errc::unsupported_format, "sidecar line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string val = line.substr(eq + 1);
        if (key != "width" && key != "height" && key != "frames" && key != "pitch_x" && key != "pitch_y")
            throw Error(Errc::unsupported_format, "unknown sidecar key '" + key + "'");
        if (kv.count(key)) throw Error(Errc::unsupported_format, "duplicate sidecar key '" + key + "'");
        std::uint64_t v = 0;
        if (val.empty() || val.size() > 10) throw Error(Errc::unsupported_format, "bad value for " + key);
        for (char c : val) {
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw Error(Errc::unsupported_format, "bad value for " + key);
            v = v * 10 + (c - '0');
        }
        if (v == 0 || v > 0xFFFFFFFFull) throw Error(Errc::unsupported_format, key + " must be a positive u32");
        kv[key] = static_cast<std::uint32_t>(v);
    }
    if (kv.size() != 5) throw Error(Errc::unsupported_format, "sidecar needs width, height, frames, pitch_x, pitch_y");
    return {kv["width"], kv["height"], kv["frames"], kv["pitch_x"], kv["pitch_y"]};
}

inline FrameStack decode_raw_stack(std::span<const std::uint8_t> raw, const SidecarMeta& m) {
    const std::uint64_t per_frame = static_cast<std::uint64_t>(m.width) * m.height;
    const std::uint64_t expected = 2 * per_frame * m.frames;
    if (raw.size() != expected)
        throw Error(Errc::size_mismatch,
                    "raw data is " + std::to_string(raw.size()) + " bytes, sidecar implies " + std::to_string(expected));
    const LensletGeometry g(m.pitch_x, m.pitch_y);
    std::vector<Frame> frames;
    frames.reserve(m.frames);
    std::size_t pos = 0;
    for (std::uint32_t f = 0; f < m.frames; ++f) {
        std::vector<std::uint16_t> s(per_frame);
        for (auto& v : s) {
            v = static_cast<std::uint16_t>(raw[pos] | (raw[pos + 1] << 8));
            pos += 2;
        }
        frames.emplace_back(m.width, m.height, std::move(s), g);
    }
    return FrameStack(std::move(frames));
}

inline std::vector<std::uint8_t> encode_raw_stack(const FrameStack& stack) {
    std::vector<std::uint8_t> out;
    out.reserve(stack.raw_bytes());
    for (const auto& f : stack)
        for (std::uint16_t v : f.samples()) {
            out.push_back(static_cast<std::uint8_t>(v & 0xFF));
            out.push_back(static_cast<std::uint8_t>(v >> 8));
        }
    return out;
}

inline SidecarMeta sidecar_for(const FrameStack& stack) {
    return {stack.width(), stack.height(), static_cast<std::uint32_t>(stack.size()), stack.geometry().pitch_x,
            stack.geometry().pitch_y};
}

/// Reads `raw` and its sidecar `raw.meta`.
inline FrameStack read_raw_stack(const std::filesystem::path& raw) {
    const auto meta_bytes = read_file(sidecar_path(raw));
    const SidecarMeta m = parse_sidecar(std::string(meta_bytes.begin(), meta_bytes.end()));
    return decode_raw_stack(read_file(raw), m);
}

inline void write_raw_stack(const std::filesystem::path& raw, const FrameStack& stack) {
    write_file(raw, encode_raw_stack(stack));
    const std::string meta = format_sidecar(sidecar_for(stack));
    write_file(sidecar_path(raw), std::span(reinterpret_cast<const std::uint8_t*>(meta.data()), meta.size()));
}

}  // namespace pcbz
