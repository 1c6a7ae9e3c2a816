#pragma once
// Position-to-bitstring encodings for walk registers: two hand-crafted
// 4-bit layouts with a parity marker bit (table1/table2), the Hamming-weight
// unary-counter encoding, and a naive thermometer layout.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace qwalk {

struct OutOfDomain : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct UnmappedBitString : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-width bit pattern; bit 0 is the leftmost character of the string
// form, matching qubit 1 of a register read top to bottom.
struct Bits {
  int width = 0;
  unsigned value = 0;

  Bits() = default;
  Bits(int w, unsigned v) : width(w), value(v) {
    if (w < 0 || w > 16) throw std::invalid_argument("bit width out of range");
    if (w < 16 && v >= (1u << w)) throw std::invalid_argument("value exceeds width");
  }

  static Bits from_string(std::string_view s) {
    Bits b;
    b.width = static_cast<int>(s.size());
    if (b.width > 16) throw std::invalid_argument("bit width out of range");
    for (char c : s) {
      if (c != '0' && c != '1') throw std::invalid_argument("bit string must be binary");
      b.value = (b.value << 1) | static_cast<unsigned>(c - '0');
    }
    return b;
  }

  int bit(int i) const {
    if (i < 0 || i >= width) throw std::out_of_range("bit index");
    return static_cast<int>((value >> (width - 1 - i)) & 1u);
  }

  int weight() const { return __builtin_popcount(value); }

  std::string str() const {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int i = 0; i < width; ++i) s[static_cast<std::size_t>(i)] = bit(i) ? '1' : '0';
    return s;
  }

  friend bool operator==(const Bits& a, const Bits& b) {
    return a.width == b.width && a.value == b.value;
  }
  friend bool operator<(const Bits& a, const Bits& b) {
    return a.width != b.width ? a.width < b.width : a.value < b.value;
  }
};

enum class EncodingName { Table1, Table2, Hamming, Naive };

inline std::string to_string(EncodingName n) {
  switch (n) {
    case EncodingName::Table1: return "table1";
    case EncodingName::Table2: return "table2";
    case EncodingName::Hamming: return "hamming";
    case EncodingName::Naive: return "naive";
  }
  throw std::logic_error("unknown encoding name");
}

inline EncodingName parse_encoding_name(std::string_view s) {
  if (s == "table1") return EncodingName::Table1;
  if (s == "table2") return EncodingName::Table2;
  if (s == "hamming") return EncodingName::Hamming;
  if (s == "naive") return EncodingName::Naive;
  throw std::invalid_argument("unknown encoding: " + std::string(s));
}

struct EncodingRow {
  long long x = 0;
  Bits bits;        // canonical pattern for x
  int class_size = 1;  // number of patterns decoding to x (1 when injective)
};

class Encoding {
 public:
  Encoding(EncodingName name, int width, bool injective,
           std::vector<EncodingRow> rows)
      : name_(name), width_(width), injective_(injective), rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(),
              [](const EncodingRow& a, const EncodingRow& b) { return a.x < b.x; });
    for (const auto& r : rows_) {
      forward_[r.x] = r.bits;
      if (injective_) inverse_[r.bits.value] = r.x;
    }
  }

  EncodingName name() const { return name_; }
  int width() const { return width_; }
  bool injective() const { return injective_; }
  const std::vector<EncodingRow>& rows() const { return rows_; }
  long long min_x() const { return rows_.front().x; }
  long long max_x() const { return rows_.back().x; }

  bool contains(long long x) const { return forward_.count(x) != 0; }

  Bits encode(long long x) const {
    auto it = forward_.find(x);
    if (it == forward_.end()) {
      throw OutOfDomain("position " + std::to_string(x) + " not encodable by " +
                        to_string(name_));
    }
    return it->second;
  }

  long long decode(const Bits& b) const {
    if (b.width != width_) throw UnmappedBitString("pattern width mismatch");
    if (!injective_) return b.weight();  // Hamming: weight is the position
    auto it = inverse_.find(b.value);
    if (it == inverse_.end()) {
      throw UnmappedBitString("pattern " + b.str() + " decodes to no position in " +
                              to_string(name_));
    }
    return it->second;
  }

  bool decodes(const Bits& b) const {
    if (b.width != width_) return false;
    if (!injective_) return b.weight() <= max_x();
    return inverse_.count(b.value) != 0;
  }

  // True when the last bit of every pattern equals the position's parity.
  bool parity_marker() const {
    for (const auto& r : rows_) {
      if (r.bits.bit(width_ - 1) != static_cast<int>(((r.x % 2) + 2) % 2)) return false;
    }
    return true;
  }

  // True when every even position e with e+1 in the domain shares its first
  // width-1 bits with e+1 (together with the parity marker this makes the
  // neighbour shift a prefix permutation plus a final bit flip).
  bool prefix_paired() const {
    if (!parity_marker()) return false;
    const unsigned prefix_mask = ~1u;
    for (const auto& r : rows_) {
      if (((r.x % 2) + 2) % 2 != 0) continue;
      if (!contains(r.x + 1)) continue;
      if ((r.bits.value & prefix_mask) != (encode(r.x + 1).value & prefix_mask))
        return false;
    }
    return true;
  }

 private:
  EncodingName name_;
  int width_;
  bool injective_;
  std::vector<EncodingRow> rows_;
  std::map<long long, Bits> forward_;
  std::map<unsigned, long long> inverse_;
};

namespace detail {

inline Encoding build_fixed(EncodingName name,
                            const std::vector<std::pair<long long, const char*>>& t) {
  std::vector<EncodingRow> rows;
  rows.reserve(t.size());
  for (const auto& [x, s] : t) rows.push_back({x, Bits::from_string(s), 1});
  return Encoding(name, 4, true, std::move(rows));
}

inline int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline Encoding build_hamming() {
  std::vector<EncodingRow> rows;
  for (int w = 0; w <= 4; ++w) {
    // canonical pattern: the smallest 4-bit value with weight w
    rows.push_back({w, Bits(4, (1u << w) - 1u), binomial(4, w)});
  }
  return Encoding(EncodingName::Hamming, 4, false, std::move(rows));
}

}  // namespace detail

inline const Encoding& encoding(EncodingName name) {
  static const Encoding table1 = detail::build_fixed(
      EncodingName::Table1,
      {{0, "0000"}, {1, "0001"}, {-1, "0011"}, {2, "0110"}, {-2, "0010"},
       {3, "0111"}, {-3, "0101"}, {4, "1100"}, {-4, "0100"}, {5, "1101"},
       {-5, "1111"}, {6, "1010"}, {-6, "1110"}, {7, "1011"}, {-7, "1001"}});
  static const Encoding table2 = detail::build_fixed(
      EncodingName::Table2,
      {{0, "0000"}, {1, "0001"}, {-1, "0111"}, {2, "0010"}, {-2, "0110"},
       {3, "0011"}, {-3, "0101"}, {4, "1100"}, {-4, "0100"}, {5, "1101"},
       {-5, "1011"}, {6, "1110"}, {-6, "1010"}, {7, "1111"}, {-7, "1001"}});
  static const Encoding hamming = detail::build_hamming();
  static const Encoding naive = detail::build_fixed(
      EncodingName::Naive,
      {{0, "0000"}, {1, "1000"}, {2, "1100"}, {3, "1110"}, {4, "1111"},
       {5, "0111"}, {6, "1011"}});
  switch (name) {
    case EncodingName::Table1: return table1;
    case EncodingName::Table2: return table2;
    case EncodingName::Hamming: return hamming;
    case EncodingName::Naive: return naive;
  }
  throw std::logic_error("unknown encoding name");
}

// Stable JSON form of an encoding table (rows sorted by position).
inline nlohmann::json encoding_to_json(const Encoding& e) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : e.rows()) {
    rows.push_back({{"x", r.x}, {"bits", r.bits.str()}, {"class_size", r.class_size}});
  }
  return nlohmann::json{{"name", to_string(e.name())},
                        {"width", e.width()},
                        {"injective", e.injective()},
                        {"rows", rows}};
}

inline std::string serialize_encoding(const Encoding& e) {
  return encoding_to_json(e).dump();
}

}  // namespace qwalk
