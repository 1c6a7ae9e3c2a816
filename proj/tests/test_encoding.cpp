// Encoding tables frozen as golden serializations plus structural properties.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "qwalk/encoding.hpp"

using qwalk::Bits;
using qwalk::Encoding;
using qwalk::EncodingName;

namespace {

const char* kGoldenTable1 =
    R"({"injective":true,"name":"table1","rows":[{"bits":"1001","class_size":1,"x":-7},{"bits":"1110","class_size":1,"x":-6},{"bits":"1111","class_size":1,"x":-5},{"bits":"0100","class_size":1,"x":-4},{"bits":"0101","class_size":1,"x":-3},{"bits":"0010","class_size":1,"x":-2},{"bits":"0011","class_size":1,"x":-1},{"bits":"0000","class_size":1,"x":0},{"bits":"0001","class_size":1,"x":1},{"bits":"0110","class_size":1,"x":2},{"bits":"0111","class_size":1,"x":3},{"bits":"1100","class_size":1,"x":4},{"bits":"1101","class_size":1,"x":5},{"bits":"1010","class_size":1,"x":6},{"bits":"1011","class_size":1,"x":7}],"width":4})";

const char* kGoldenTable2 =
    R"({"injective":true,"name":"table2","rows":[{"bits":"1001","class_size":1,"x":-7},{"bits":"1010","class_size":1,"x":-6},{"bits":"1011","class_size":1,"x":-5},{"bits":"0100","class_size":1,"x":-4},{"bits":"0101","class_size":1,"x":-3},{"bits":"0110","class_size":1,"x":-2},{"bits":"0111","class_size":1,"x":-1},{"bits":"0000","class_size":1,"x":0},{"bits":"0001","class_size":1,"x":1},{"bits":"0010","class_size":1,"x":2},{"bits":"0011","class_size":1,"x":3},{"bits":"1100","class_size":1,"x":4},{"bits":"1101","class_size":1,"x":5},{"bits":"1110","class_size":1,"x":6},{"bits":"1111","class_size":1,"x":7}],"width":4})";

const char* kGoldenHamming =
    R"({"injective":false,"name":"hamming","rows":[{"bits":"0000","class_size":1,"x":0},{"bits":"0001","class_size":4,"x":1},{"bits":"0011","class_size":6,"x":2},{"bits":"0111","class_size":4,"x":3},{"bits":"1111","class_size":1,"x":4}],"width":4})";

const char* kGoldenNaive =
    R"({"injective":true,"name":"naive","rows":[{"bits":"0000","class_size":1,"x":0},{"bits":"1000","class_size":1,"x":1},{"bits":"1100","class_size":1,"x":2},{"bits":"1110","class_size":1,"x":3},{"bits":"1111","class_size":1,"x":4},{"bits":"0111","class_size":1,"x":5},{"bits":"1011","class_size":1,"x":6}],"width":4})";

}  // namespace

TEST_CASE("bit pattern basics", "[encoding]") {
  const Bits b = Bits::from_string("0110");
  CHECK(b.width == 4);
  CHECK(b.value == 6u);
  CHECK(b.bit(0) == 0);
  CHECK(b.bit(1) == 1);
  CHECK(b.bit(2) == 1);
  CHECK(b.bit(3) == 0);
  CHECK(b.weight() == 2);
  CHECK(b.str() == "0110");
  CHECK(b == Bits(4, 6));
  CHECK(Bits(4, 5) < Bits(4, 6));
  CHECK(Bits(3, 7) < Bits(4, 0));
  CHECK_THROWS_AS(Bits(4, 16), std::invalid_argument);
  CHECK_THROWS_AS(Bits::from_string("01x0"), std::invalid_argument);
  CHECK_THROWS_AS(b.bit(4), std::out_of_range);
}

TEST_CASE("golden serializations", "[encoding]") {
  CHECK(qwalk::serialize_encoding(qwalk::encoding(EncodingName::Table1)) ==
        kGoldenTable1);
  CHECK(qwalk::serialize_encoding(qwalk::encoding(EncodingName::Table2)) ==
        kGoldenTable2);
  CHECK(qwalk::serialize_encoding(qwalk::encoding(EncodingName::Hamming)) ==
        kGoldenHamming);
  CHECK(qwalk::serialize_encoding(qwalk::encoding(EncodingName::Naive)) ==
        kGoldenNaive);
}

TEST_CASE("name round trip", "[encoding]") {
  for (const auto n : {EncodingName::Table1, EncodingName::Table2,
                       EncodingName::Hamming, EncodingName::Naive}) {
    CHECK(qwalk::parse_encoding_name(qwalk::to_string(n)) == n);
  }
  CHECK_THROWS_AS(qwalk::parse_encoding_name("tablezero"), std::invalid_argument);
}

TEST_CASE("encode-decode round trips and domains", "[encoding]") {
  for (const auto n : {EncodingName::Table1, EncodingName::Table2,
                       EncodingName::Naive}) {
    const Encoding& e = qwalk::encoding(n);
    REQUIRE(e.injective());
    std::set<unsigned> seen;
    for (const auto& r : e.rows()) {
      CHECK(e.encode(r.x) == r.bits);
      CHECK(e.decode(r.bits) == r.x);
      CHECK(e.decodes(r.bits));
      CHECK(seen.insert(r.bits.value).second);  // patterns pairwise distinct
    }
    CHECK_THROWS_AS(e.encode(e.max_x() + 1), qwalk::OutOfDomain);
    CHECK_THROWS_AS(e.encode(e.min_x() - 1), qwalk::OutOfDomain);
  }

  // Both 15-row tables leave exactly the pattern 1000 unmapped.
  for (const auto n : {EncodingName::Table1, EncodingName::Table2}) {
    const Encoding& e = qwalk::encoding(n);
    int unmapped = 0;
    for (unsigned v = 0; v < 16; ++v) {
      if (!e.decodes(Bits(4, v))) {
        ++unmapped;
        CHECK(Bits(4, v).str() == "1000");
        CHECK_THROWS_AS(e.decode(Bits(4, v)), qwalk::UnmappedBitString);
      }
    }
    CHECK(unmapped == 1);
    CHECK_THROWS_AS(e.decode(Bits(3, 0)), qwalk::UnmappedBitString);
  }
}

TEST_CASE("weight-counter encoding decodes every pattern by weight",
          "[encoding]") {
  const Encoding& e = qwalk::encoding(EncodingName::Hamming);
  CHECK_FALSE(e.injective());
  CHECK(e.min_x() == 0);
  CHECK(e.max_x() == 4);

  int census[5] = {0, 0, 0, 0, 0};
  for (unsigned v = 0; v < 16; ++v) {
    const Bits b(4, v);
    REQUIRE(e.decodes(b));
    const long long x = e.decode(b);
    CHECK(x == b.weight());
    ++census[static_cast<int>(x)];
  }
  CHECK(census[0] == 1);
  CHECK(census[1] == 4);
  CHECK(census[2] == 6);
  CHECK(census[3] == 4);
  CHECK(census[4] == 1);

  for (const auto& r : e.rows()) {
    CHECK(r.class_size == census[static_cast<int>(r.x)]);
    CHECK(r.bits == Bits(4, (1u << r.x) - 1u));  // smallest value per weight
  }
  CHECK_THROWS_AS(e.encode(5), qwalk::OutOfDomain);
  CHECK_THROWS_AS(e.encode(-1), qwalk::OutOfDomain);
}

TEST_CASE("marker and prefix structure", "[encoding]") {
  CHECK(qwalk::encoding(EncodingName::Table1).parity_marker());
  CHECK(qwalk::encoding(EncodingName::Table2).parity_marker());
  CHECK_FALSE(qwalk::encoding(EncodingName::Hamming).parity_marker());
  CHECK_FALSE(qwalk::encoding(EncodingName::Naive).parity_marker());

  CHECK(qwalk::encoding(EncodingName::Table1).prefix_paired());
  CHECK(qwalk::encoding(EncodingName::Table2).prefix_paired());
  CHECK_FALSE(qwalk::encoding(EncodingName::Hamming).prefix_paired());
  CHECK_FALSE(qwalk::encoding(EncodingName::Naive).prefix_paired());
}
