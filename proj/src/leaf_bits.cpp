#include "ttc/leaf_bits.hpp"

#include <algorithm>
#include <bit>

namespace ttc {

namespace {

constexpr std::uint64_t low_mask(unsigned n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

unsigned select_in_word(std::uint64_t word, std::uint64_t j) {
    for (std::uint64_t k = 1; k < j; ++k) word &= word - 1;
    return static_cast<unsigned>(std::countr_zero(word));
}

std::vector<std::uint64_t>& scratch_positions() {
    thread_local std::vector<std::uint64_t> buf;
    buf.clear();
    return buf;
}

}  // namespace

// ---------------------------------------------------------------------------
// DenseLeaf

DenseLeaf DenseLeaf::zeros(size_type n) {
    DenseLeaf leaf;
    leaf.words_.assign((n + 63) / 64, 0);
    leaf.len_ = n;
    return leaf;
}

DenseLeaf DenseLeaf::from_string(std::string_view bits) {
    DenseLeaf leaf;
    for (char c : bits) leaf.append_bits(c == '1' ? 1 : 0, 1);
    return leaf;
}

bool DenseLeaf::access(size_type pos) const {
    require(pos < len_, "DenseLeaf::access: position out of range");
    return (words_[pos >> 6] >> (pos & 63)) & 1;
}

DenseLeaf::size_type DenseLeaf::rank(size_type n) const {
    require(n <= len_, "DenseLeaf::rank: position out of range");
    size_type count = 0;
    const size_type full = n >> 6;
    for (size_type w = 0; w < full; ++w) count += std::popcount(words_[w]);
    if (n & 63) count += std::popcount(words_[full] & low_mask(n & 63));
    return count;
}

DenseLeaf::size_type DenseLeaf::select(size_type j) const {
    require(j >= 1 && j <= ones_, "DenseLeaf::select: rank out of range");
    for (size_type w = 0;; ++w) {
        const auto c = static_cast<size_type>(std::popcount(words_[w]));
        if (c >= j) return w * 64 + select_in_word(words_[w], j);
        j -= c;
    }
}

int DenseLeaf::set(size_type pos, bool bit) {
    require(pos < len_, "DenseLeaf::set: position out of range");
    std::uint64_t& w = words_[pos >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (pos & 63);
    const bool old = (w & mask) != 0;
    if (old == bit) return 0;
    if (bit) {
        w |= mask;
        ++ones_;
        return 1;
    }
    w &= ~mask;
    --ones_;
    return -1;
}

void DenseLeaf::insert(size_type pos, std::uint64_t word, unsigned nbits) {
    require(pos <= len_, "DenseLeaf::insert: position out of range");
    require(nbits <= 64, "DenseLeaf::insert: at most 64 bits per call");
    if (pos == len_) {
        append_bits(word, nbits);
        return;
    }
    DenseLeaf tail;
    tail.append_range(*this, pos, len_);
    truncate(pos);
    append_bits(word, nbits);
    append_range(tail, 0, tail.len_);
}

bool DenseLeaf::remove(size_type pos) {
    const bool bit = access(pos);
    DenseLeaf tail;
    tail.append_range(*this, pos + 1, len_);
    truncate(pos);
    append_range(tail, 0, tail.len_);
    return bit;
}

DenseLeaf DenseLeaf::split_off(size_type at) {
    require(at <= len_, "DenseLeaf::split_off: position out of range");
    DenseLeaf right;
    right.words_.reserve((len_ - at + 63) / 64);
    right.append_range(*this, at, len_);
    truncate(at);
    return right;
}

void DenseLeaf::append(const DenseLeaf& other) {
    words_.reserve((len_ + other.len_ + 63) / 64);
    append_range(other, 0, other.len_);
}

std::string DenseLeaf::to_string() const {
    std::string out;
    out.reserve(len_);
    for (size_type i = 0; i < len_; ++i) out.push_back(access(i) ? '1' : '0');
    return out;
}

std::string DenseLeaf::check() const {
    if (words_.size() != (len_ + 63) / 64) return "dense leaf: word count does not match length";
    size_type count = 0;
    for (auto w : words_) count += std::popcount(w);
    if (count != ones_) return "dense leaf: cached ones differ from popcount";
    if ((len_ & 63) && (words_.back() & ~low_mask(len_ & 63)))
        return "dense leaf: bits set past the end";
    return {};
}

std::uint64_t DenseLeaf::get_bits(size_type pos, unsigned n) const {
    if (n == 0) return 0;
    const size_type w = pos >> 6;
    const unsigned off = pos & 63;
    std::uint64_t v = words_[w] >> off;
    if (off + n > 64) v |= words_[w + 1] << (64 - off);
    return v & low_mask(n);
}

void DenseLeaf::append_bits(std::uint64_t value, unsigned n) {
    if (n == 0) return;
    value &= low_mask(n);
    const unsigned off = len_ & 63;
    if (off == 0) {
        words_.push_back(value);
    } else {
        words_.back() |= value << off;
        if (off + n > 64) words_.push_back(value >> (64 - off));
    }
    len_ += n;
    ones_ += std::popcount(value);
}

void DenseLeaf::append_range(const DenseLeaf& src, size_type from, size_type to) {
    while (from < to) {
        const auto n = static_cast<unsigned>(std::min<size_type>(64, to - from));
        append_bits(src.get_bits(from, n), n);
        from += n;
    }
}

void DenseLeaf::truncate(size_type n) {
    ones_ = rank(n);
    words_.resize((n + 63) / 64);
    if (n & 63) words_.back() &= low_mask(n & 63);
    len_ = n;
}

// ---------------------------------------------------------------------------
// SparseLeaf

SparseLeaf SparseLeaf::zeros(size_type n) {
    SparseLeaf leaf;
    leaf.len_ = n;
    return leaf;
}

SparseLeaf SparseLeaf::from_string(std::string_view bits) {
    std::vector<size_type> positions;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') positions.push_back(i);
    SparseLeaf leaf;
    leaf.len_ = bits.size();
    leaf.encode(positions);
    return leaf;
}

std::uint64_t SparseLeaf::gap(std::size_t i) const {
    const std::uint64_t bit = static_cast<std::uint64_t>(i) * width_;
    const std::size_t w = bit >> 6;
    const unsigned off = bit & 63;
    std::uint64_t v = packed_[w] >> off;
    if (off + width_ > 64) v |= packed_[w + 1] << (64 - off);
    return v & low_mask(width_);
}

void SparseLeaf::decode(std::vector<size_type>& positions) const {
    positions.reserve(ones_ + 1);
    for_each_one([&](size_type p) {
        positions.push_back(p);
        return true;
    });
}

void SparseLeaf::encode(const std::vector<size_type>& positions) {
    ones_ = static_cast<std::uint32_t>(positions.size());
    size_type max_gap = 0;
    size_type prev = 0;
    for (auto p : positions) {
        max_gap = std::max(max_gap, p - prev);
        prev = p;
    }
    width_ = static_cast<std::uint8_t>(std::max(1, static_cast<int>(std::bit_width(max_gap))));
    const std::size_t words = (static_cast<std::size_t>(ones_) * width_ + 63) / 64;
    packed_.assign(words, 0);
    if (packed_.capacity() > 2 * words + 2) packed_.shrink_to_fit();
    prev = 0;
    std::uint64_t bit = 0;
    for (auto p : positions) {
        const std::uint64_t g = p - prev;
        prev = p;
        const std::size_t w = bit >> 6;
        const unsigned off = bit & 63;
        packed_[w] |= g << off;
        if (off + width_ > 64) packed_[w + 1] |= g >> (64 - off);
        bit += width_;
    }
}

std::vector<SparseLeaf::size_type> SparseLeaf::gaps() const {
    std::vector<size_type> out;
    out.reserve(ones_);
    for (std::size_t i = 0; i < ones_; ++i) out.push_back(gap(i));
    return out;
}

bool SparseLeaf::access(size_type pos) const {
    require(pos < len_, "SparseLeaf::access: position out of range");
    bool found = false;
    for_each_one([&](size_type p) {
        found = p == pos;
        return p < pos;
    });
    return found;
}

SparseLeaf::size_type SparseLeaf::rank(size_type n) const {
    require(n <= len_, "SparseLeaf::rank: position out of range");
    size_type count = 0;
    for_each_one([&](size_type p) {
        if (p >= n) return false;
        ++count;
        return true;
    });
    return count;
}

SparseLeaf::size_type SparseLeaf::select(size_type j) const {
    require(j >= 1 && j <= ones_, "SparseLeaf::select: rank out of range");
    size_type pos = 0;
    for (std::size_t i = 0; i < j; ++i) pos += gap(i);
    return pos;
}

int SparseLeaf::set(size_type pos, bool bit) {
    require(pos < len_, "SparseLeaf::set: position out of range");
    auto& positions = scratch_positions();
    decode(positions);
    auto it = std::lower_bound(positions.begin(), positions.end(), pos);
    const bool old = it != positions.end() && *it == pos;
    if (old == bit) return 0;
    if (bit)
        positions.insert(it, pos);
    else
        positions.erase(it);
    encode(positions);
    return bit ? 1 : -1;
}

void SparseLeaf::insert(size_type pos, std::uint64_t word, unsigned nbits) {
    require(pos <= len_, "SparseLeaf::insert: position out of range");
    require(nbits <= 64, "SparseLeaf::insert: at most 64 bits per call");
    word &= low_mask(nbits);
    if (word == 0 && pos == len_) {
        len_ += nbits;
        return;
    }
    auto& positions = scratch_positions();
    decode(positions);
    auto it = std::lower_bound(positions.begin(), positions.end(), pos);
    for (auto p = it; p != positions.end(); ++p) *p += nbits;
    std::vector<size_type> fresh;
    for (unsigned k = 0; k < nbits; ++k)
        if ((word >> k) & 1) fresh.push_back(pos + k);
    positions.insert(it, fresh.begin(), fresh.end());
    len_ += nbits;
    encode(positions);
}

bool SparseLeaf::remove(size_type pos) {
    require(pos < len_, "SparseLeaf::remove: position out of range");
    auto& positions = scratch_positions();
    decode(positions);
    auto it = std::lower_bound(positions.begin(), positions.end(), pos);
    const bool bit = it != positions.end() && *it == pos;
    if (bit) it = positions.erase(it);
    for (auto p = it; p != positions.end(); ++p) *p -= 1;
    --len_;
    encode(positions);
    return bit;
}

SparseLeaf SparseLeaf::split_off(size_type at) {
    require(at <= len_, "SparseLeaf::split_off: position out of range");
    auto& positions = scratch_positions();
    decode(positions);
    auto it = std::lower_bound(positions.begin(), positions.end(), at);
    std::vector<size_type> right_positions;
    right_positions.reserve(positions.end() - it);
    for (auto p = it; p != positions.end(); ++p) right_positions.push_back(*p - at);
    positions.erase(it, positions.end());

    SparseLeaf right;
    right.len_ = len_ - at;
    right.encode(right_positions);
    len_ = at;
    encode(positions);
    return right;
}

SparseLeaf SparseLeaf::split_half() {
    if (ones_ == 0) return split_off((len_ + 1) / 2);
    const size_type keep = (ones_ + 1) / 2;
    return split_off(select(keep) + 1);
}

void SparseLeaf::append(const SparseLeaf& other) {
    auto& positions = scratch_positions();
    decode(positions);
    other.for_each_one([&](size_type p) {
        positions.push_back(p + len_);
        return true;
    });
    len_ += other.len_;
    encode(positions);
}

std::string SparseLeaf::to_string() const {
    std::string out(len_, '0');
    for_each_one([&](size_type p) {
        out[p] = '1';
        return true;
    });
    return out;
}

std::string SparseLeaf::check() const {
    if (packed_.size() != (static_cast<std::size_t>(ones_) * width_ + 63) / 64)
        return "sparse leaf: packed size does not match ones * width";
    size_type pos = 0;
    for (std::size_t i = 0; i < ones_; ++i) {
        const auto g = gap(i);
        if (i > 0 && g == 0) return "sparse leaf: zero gap after the first one";
        pos += g;
    }
    if (ones_ > 0 && pos >= len_) return "sparse leaf: a one lies past the end";
    return {};
}

}  // namespace ttc
