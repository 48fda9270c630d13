#include "doctest.h"
#include "json.hpp"
#include "liftlab/catalog.hpp"
#include "liftlab/protocol.hpp"
#include "liftlab/schema.hpp"
#include "test_helpers.hpp"

using namespace liftlab;
using namespace liftlab::testing;
using nlohmann::json;

TEST_CASE("truth-table JSON round trip and errors") {
    auto f = parse_function_spec("readonce:AND(x1,OR(x2,NOT(x3)))");
    auto back = function_from_json_text(function_to_json_text(f));
    CHECK(back == f);

    CHECK_THROWS_AS(function_from_json_text("{"), ParseError);
    CHECK_THROWS_AS(function_from_json_text(R"({"coords": [1,2]})"), ParseError);
    // Wrong table length.
    CHECK_THROWS_AS(function_from_json_text(R"({"coords": [1,2], "values": [1,-1]})"),
                    DomainError);
}

TEST_CASE("protocol JSON: rounds form and partition form agree") {
    // One row round splitting on the low bit, b = 1, n = 2.
    json rounds_doc{
        {"n", 2},
        {"b", 1},
        {"c", 1},
        {"rounds",
         json::array({json{{"speaker", "row"},
                           {"table", json{{"", json::array({0, 1, 0, 1})}}}}})}};
    auto p = protocol_from_json_text(rounds_doc.dump());
    auto parts = transcript_partition(p);

    json part_doc{{"n", 2}, {"b", 1}, {"partition", json::object()}};
    for (const auto& [m, rect] : parts)
        part_doc["partition"][m] = json{{"rows", rect.rows}, {"cols", rect.cols}};
    auto p2 = protocol_from_json_text(part_doc.dump());
    auto parts2 = transcript_partition(p2);
    for (const auto& [m, rect] : parts) {
        CHECK(parts2.at(m).rows == rect.rows);
        CHECK(parts2.at(m).cols == rect.cols);
    }

    CHECK_THROWS_AS(protocol_from_json_text("not json"), ParseError);
    CHECK_THROWS_AS(protocol_from_json_text(R"({"n": 2})"), ParseError);
    // Wrong table size.
    json bad = rounds_doc;
    bad["rounds"][0]["table"][""] = json::array({0, 1});
    CHECK_THROWS_AS(protocol_from_json_text(bad.dump()), ParseError);
    // First speaker must be the row player.
    json badspeaker = rounds_doc;
    badspeaker["rounds"][0]["speaker"] = "col";
    CHECK_THROWS_AS(protocol_from_json_text(badspeaker.dump()), DomainError);
}

TEST_CASE("schema validator: types, required keys, enums, extras") {
    json schema = R"({
      "type": "object",
      "required": ["a", "b"],
      "additionalProperties": false,
      "properties": {
        "a": {"type": "integer"},
        "b": {"type": "array", "items": {"type": "number"}},
        "c": {"enum": ["x", "y"]}
      }
    })"_json;
    CHECK(validate_schema(R"({"a": 1, "b": [1.5, 2]})"_json, schema).empty());
    CHECK(!validate_schema(R"({"a": 1})"_json, schema).empty());
    CHECK(!validate_schema(R"({"a": "no", "b": []})"_json, schema).empty());
    CHECK(!validate_schema(R"({"a": 1, "b": ["s"]})"_json, schema).empty());
    CHECK(!validate_schema(R"({"a": 1, "b": [], "c": "z"})"_json, schema).empty());
    CHECK(!validate_schema(R"({"a": 1, "b": [], "zz": 0})"_json, schema).empty());
    CHECK(validate_schema(R"({"a": 1, "b": [], "c": "x"})"_json, schema).empty());
}
