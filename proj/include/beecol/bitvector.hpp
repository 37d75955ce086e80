#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace beecol {

// Fixed-length binary decision string. The length is set at construction and
// every element is exactly 0 or 1.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t dim, bool value = false)
        : bits_(dim, value ? std::uint8_t{1} : std::uint8_t{0}) {}

    BitVector(std::initializer_list<int> bits) {
        bits_.reserve(bits.size());
        for (int b : bits) {
            if (b != 0 && b != 1)
                throw std::invalid_argument("BitVector: elements must be 0 or 1");
            bits_.push_back(static_cast<std::uint8_t>(b));
        }
    }

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, bool v) { bits_[i] = v ? 1u : 0u; }
    void flip(std::size_t i) { bits_[i] ^= 1u; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::size_t count_ones() const noexcept {
        std::size_t c = 0;
        for (std::uint8_t b : bits_) c += b;
        return c;
    }

    bool any() const noexcept {
        for (std::uint8_t b : bits_)
            if (b) return true;
        return false;
    }

    std::size_t hamming(const BitVector& other) const {
        if (other.size() != size())
            throw std::invalid_argument("BitVector::hamming: length mismatch");
        std::size_t d = 0;
        for (std::size_t i = 0; i < size(); ++i) d += bits_[i] != other.bits_[i];
        return d;
    }

    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    std::vector<std::uint8_t> bits_;
};

}  // namespace beecol
