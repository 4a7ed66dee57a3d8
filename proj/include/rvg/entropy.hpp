#pragma once

#include <cstdint>
#include <istream>
#include <memory>
#include <stdexcept>
#include <vector>

namespace rvg {

/// A replay source ran out of supplied bits.
class SourceExhausted : public std::runtime_error {
public:
    SourceExhausted() : std::runtime_error("bit source exhausted") {}
};

/// Lazy stream of fair random bits. The consumption counter advances by
/// exactly one per next_bit() call. Single-owner, not thread-safe.
class BitSource {
public:
    virtual ~BitSource() = default;

    int next_bit() {
        ++consumed_;
        return generate();
    }
    uint64_t bits_consumed() const { return consumed_; }

protected:
    virtual int generate() = 0;

private:
    uint64_t consumed_ = 0;
};

/// Deterministic pseudorandom bits for a seed; xoshiro256** state seeded
/// via splitmix64, bits served most-significant-first from each 64-bit
/// output word.
class PrngSource final : public BitSource {
public:
    explicit PrngSource(uint64_t seed);

protected:
    int generate() override;

private:
    uint64_t next_word();
    uint64_t state_[4];
    uint64_t word_ = 0;
    int avail_ = 0;
};

/// Serves a fixed bit vector verbatim; throws SourceExhausted past the end.
class ReplaySource final : public BitSource {
public:
    explicit ReplaySource(std::vector<uint8_t> bits);

protected:
    int generate() override;

private:
    std::vector<uint8_t> bits_;
    size_t pos_ = 0;
};

/// Nondeterministic OS-backed bits for the CLI; never used by tests.
class OsSource final : public BitSource {
public:
    OsSource();

protected:
    int generate() override;

private:
    std::unique_ptr<PrngSource> inner_;
};

/// Replay file format: '0'/'1' characters, all whitespace ignored.
std::vector<uint8_t> parse_replay_bits(std::istream& in);

}  // namespace rvg
