#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace warcast::io {

/// A malformed file whose message carries file and line context.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& path, std::size_t line, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + what) {}
};

/// A file that could not be opened at all (distinct from malformed content).
class FileError : public std::runtime_error {
  public:
    explicit FileError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

}  // namespace detail

/// Split one line on commas into trimmed fields. No quoting: every format
/// in this project is purely numeric apart from names that are forbidden to
/// contain commas.
inline void split_fields(std::string_view line, std::vector<std::string_view>& out) {
    out.clear();
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            out.push_back(detail::trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
}

inline bool parse_i32(std::string_view s, std::int32_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_i64(std::string_view s, std::int64_t& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

inline bool parse_f64(std::string_view s, double& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

/// Shortest decimal representation that round-trips the double exactly;
/// keeps written scores bit-stable across runs and re-reads.
inline std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::logic_error("format_double: buffer too small");
    return std::string(buf, ptr);
}

/// Line-by-line reader over a whole file loaded into memory. Line numbers
/// are 1-based; a trailing newline does not produce an empty final line.
class LineReader {
  public:
    explicit LineReader(const std::string& path) : path_(path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw FileError(path, "cannot open file");
        content_.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        if (in.bad()) throw FileError(path, "read failed");
    }

    const std::string& path() const { return path_; }
    std::size_t line_number() const { return line_; }

    /// Next line (without terminator), or false at end of input.
    bool next(std::string_view& out) {
        if (pos_ >= content_.size()) return false;
        const std::size_t eol = content_.find('\n', pos_);
        const std::size_t end = eol == std::string::npos ? content_.size() : eol;
        out = std::string_view(content_).substr(pos_, end - pos_);
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        pos_ = end + 1;
        ++line_;
        return true;
    }

  private:
    std::string path_;
    std::string content_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

/// Buffered output file; writes go through a single stream and the
/// destructor does not mask errors (call close() to surface them).
class FileWriter {
  public:
    explicit FileWriter(const std::string& path) : path_(path), out_(path, std::ios::binary) {
        if (!out_) throw FileError(path, "cannot open file for writing");
    }

    void write(std::string_view s) { out_.write(s.data(), static_cast<std::streamsize>(s.size())); }

    void close() {
        out_.flush();
        if (!out_) throw FileError(path_, "write failed");
        out_.close();
        if (out_.fail()) throw FileError(path_, "close failed");
    }

  private:
    std::string path_;
    std::ofstream out_;
};

}  // namespace warcast::io
