#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "qpovm/channel_spec.hpp"
#include "qpovm/errors.hpp"

using namespace qpovm;

TEST_CASE("every documented spec form parses") {
    const ChannelFamily rtn =
        parse_channel_spec(R"({"kind":"rtn","a":0.6,"gamma_rate":0.1})");
    CHECK(rtn.kind() == ChannelKind::rtn);
    CHECK(rtn.params().at("a") == doctest::Approx(0.6));
    CHECK(rtn.params().at("gamma_rate") == doctest::Approx(0.1));
    // nu = gamma_rate * t and a_tau = a / (2 gamma_rate).
    CHECK(rtn.kernel_at(0.0) == doctest::Approx(1.0));
    CHECK(rtn.kernel_at(3.0) == doctest::Approx(rtn_kernel(0.3, 3.0)).epsilon(1e-14));

    CHECK(parse_channel_spec(R"({"kind":"pd","lambda":0.3})").kind() ==
          ChannelKind::pd);
    CHECK(parse_channel_spec(R"({"kind":"depolarizing","q":0.2})").kind() ==
          ChannelKind::depolarizing);
    CHECK(parse_channel_spec(R"({"kind":"ad","gamma":0.36})").kind() ==
          ChannelKind::ad);
    CHECK(parse_channel_spec(R"({"kind":"ad_memory","R":5.0})").kind() ==
          ChannelKind::ad_memory);
    const ChannelFamily gad =
        parse_channel_spec(R"({"kind":"gad","p":0.7,"gamma":0.25})");
    CHECK(gad.kind() == ChannelKind::gad);
    CHECK(gad.params().at("p") == doctest::Approx(0.7));
}

TEST_CASE("strict validation") {
    CHECK_THROWS_AS(parse_channel_spec("not json"), SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec("[1,2]"), SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"a":0.6})"), SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"kind":"noise"})"), SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"kind":"pd"})"), SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"kind":"pd","lambda":"x"})"),
                    SpecParseError);
    // Unknown keys are rejected, not ignored.
    CHECK_THROWS_AS(parse_channel_spec(R"({"kind":"pd","lambda":0.3,"t":1})"),
                    SpecParseError);
    CHECK_THROWS_AS(parse_channel_spec(R"({"kind":"ad","gamma":1.5})"),
                    SpecParseError);
}

TEST_CASE("file loading and round trip") {
    const std::string path = "qpovm_spec_test.json";
    {
        std::ofstream out(path);
        out << R"({"kind":"gad","p":0.7,"gamma":0.25})";
    }
    const ChannelFamily family = parse_channel_spec_file(path);
    CHECK(family.kind() == ChannelKind::gad);
    std::remove(path.c_str());

    const ChannelFamily again = parse_channel_spec(channel_spec_to_json(family));
    CHECK(again.kind() == family.kind());
    CHECK(again.params() == family.params());

    CHECK_THROWS_AS(parse_channel_spec_file("missing-file.json"), SpecParseError);
}
