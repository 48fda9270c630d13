#pragma once

#include <string>

#include "json.hpp"

namespace liftlab {

/// Validates a document against the JSON Schema subset used by the shipped
/// schema files: type, properties, required, items, enum, additionalProperties,
/// patternProperties (fixed-alphabet keys only). Returns "" on success or the
/// first failure path.
inline std::string validate_schema(const nlohmann::json& doc, const nlohmann::json& schema,
                                   const std::string& path = "$") {
    using nlohmann::json;
    if (schema.contains("enum")) {
        for (const auto& v : schema.at("enum"))
            if (v == doc) return "";
        return path + ": value not in enum";
    }
    if (schema.contains("type")) {
        const std::string type = schema.at("type").get<std::string>();
        bool ok = (type == "object" && doc.is_object()) ||
                  (type == "array" && doc.is_array()) ||
                  (type == "string" && doc.is_string()) ||
                  (type == "integer" && doc.is_number_integer()) ||
                  (type == "number" && doc.is_number()) ||
                  (type == "boolean" && doc.is_boolean()) || (type == "null" && doc.is_null());
        if (!ok) return path + ": expected type " + type;
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema.at("required"))
                if (!doc.contains(key.get<std::string>()))
                    return path + ": missing required key " + key.get<std::string>();
        const json props = schema.value("properties", json::object());
        for (const auto& [key, value] : doc.items()) {
            if (props.contains(key)) {
                std::string err = validate_schema(value, props.at(key), path + "." + key);
                if (!err.empty()) return err;
            } else if (schema.contains("patternProperties")) {
                // Single catch-all pattern is enough for our formats.
                const auto& pp = *schema.at("patternProperties").begin();
                std::string err = validate_schema(value, pp, path + "." + key);
                if (!err.empty()) return err;
            } else if (schema.value("additionalProperties", json(true)) == json(false)) {
                return path + ": unexpected key " + key;
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            std::string err =
                validate_schema(doc[i], schema.at("items"), path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    }
    return "";
}

}  // namespace liftlab
