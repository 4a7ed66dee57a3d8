#include "rvg/entropy.hpp"

#include <bit>
#include <random>

namespace rvg {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

PrngSource::PrngSource(uint64_t seed) {
    uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

uint64_t PrngSource::next_word() {
    uint64_t* s = state_;
    uint64_t result = std::rotl(s[1] * 5, 7) * 9;
    uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = std::rotl(s[3], 45);
    return result;
}

int PrngSource::generate() {
    if (avail_ == 0) {
        word_ = next_word();
        avail_ = 64;
    }
    --avail_;
    return (word_ >> avail_) & 1;
}

ReplaySource::ReplaySource(std::vector<uint8_t> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw std::invalid_argument("replay stream is empty");
}

int ReplaySource::generate() {
    if (pos_ >= bits_.size()) throw SourceExhausted();
    return bits_[pos_++] & 1;
}

OsSource::OsSource() {
    std::random_device rd;
    uint64_t seed = (static_cast<uint64_t>(rd()) << 32) ^ rd();
    inner_ = std::make_unique<PrngSource>(seed);
}

int OsSource::generate() { return inner_->next_bit(); }

std::vector<uint8_t> parse_replay_bits(std::istream& in) {
    std::vector<uint8_t> bits;
    char c;
    while (in.get(c)) {
        if (c == '0' || c == '1') {
            bits.push_back(static_cast<uint8_t>(c - '0'));
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("replay file: unexpected character");
        }
    }
    return bits;
}

}  // namespace rvg
