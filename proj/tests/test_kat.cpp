#include <gtest/gtest.h>

#include <sstream>

#include "bea1/kat.hpp"
#include "test_util.hpp"

using namespace bea1;

TEST(Kat, GeneratedRecordsVerify) {
    const auto records = generate_kat(25, 7);
    ASSERT_EQ(records.size(), 25u);
    EXPECT_FALSE(verify_kat(records).has_value());
    EXPECT_EQ(records, generate_kat(25, 7));
    EXPECT_NE(records, generate_kat(25, 8));
}

TEST(Kat, RoundTripThroughText) {
    const auto records = generate_kat(10, 3);
    std::ostringstream os;
    write_kat(os, records, "comment");
    EXPECT_EQ(os.str().rfind("# comment\n\nKEY=", 0), 0u);
    EXPECT_EQ(parse_kat(os.str()), records);
}

TEST(Kat, CorruptionIsLocated) {
    auto records = generate_kat(10, 4);
    records[6].ct.bundles[3] = records[6].ct.bundles[3] ^ Bundle(0x100);
    ASSERT_EQ(verify_kat(records), std::optional<std::size_t>(6));
}

TEST(Kat, ParseErrorsNameTheLine) {
    try {
        parse_kat("KEY=000000000000000000000000000000\nPT=00000000000000000000\nCT=0000000000000000000G\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    EXPECT_THROW(parse_kat("KEY=000000000000000000000000000000\n\n"), ParseError);
    EXPECT_THROW(parse_kat("IV=00000000000000000000\n"), ParseError);
    EXPECT_THROW(parse_kat("garbage\n"), ParseError);
}

TEST(Kat, PinnedFileVerifies) {
    const auto records = parse_kat(test::read_text(test::test_data("kat_100.txt")));
    ASSERT_EQ(records.size(), 100u);
    EXPECT_FALSE(verify_kat(records).has_value());
    // The pinned file is the seed-1 generator output.
    EXPECT_EQ(records, generate_kat(100, 1));
    EXPECT_EQ(to_hex(records[0].key), "2248B7381559FA57884C91E8A16E39");
    EXPECT_EQ(to_hex(records[0].ct), "20283FDC153AA4F04CAB");
}
