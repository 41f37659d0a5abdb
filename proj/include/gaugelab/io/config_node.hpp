#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>  // nlohmann/json (vendored)

#include "gaugelab/core/errors.hpp"
#include "gaugelab/core/vec3.hpp"

namespace gaugelab::io {

/// Read-only view of a JSON config value that remembers its dotted path, so
/// schema errors name the offending field (e.g. "particle.m").
class ConfigNode {
public:
    ConfigNode(const nlohmann::json& node, std::string path) : node_(&node), path_(std::move(path)) {}

    const std::string& path() const { return path_; }
    const nlohmann::json& raw() const { return *node_; }

    [[noreturn]] void fail(const std::string& msg) const { throw UsageError((path_.empty() ? "<root>" : path_) + ": " + msg); }

    std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    bool has(const std::string& key) const { return node_->is_object() && node_->contains(key); }

    ConfigNode at(const std::string& key) const {
        require_object();
        if (!node_->contains(key)) throw UsageError(child_path(key) + ": required field is missing");
        return {(*node_)[key], child_path(key)};
    }

    std::optional<ConfigNode> maybe(const std::string& key) const {
        if (!has(key)) return std::nullopt;
        return ConfigNode{(*node_)[key], child_path(key)};
    }

    ConfigNode at(std::size_t index) const {
        if (!node_->is_array() || index >= node_->size()) fail("index " + std::to_string(index) + " out of range");
        return {(*node_)[index], path_ + "[" + std::to_string(index) + "]"};
    }

    std::size_t size() const {
        if (!node_->is_array()) fail("expected an array");
        return node_->size();
    }

    void require_object() const {
        if (!node_->is_object()) fail("expected an object");
    }

    /// Rejects keys outside `allowed`.
    void expect_keys(std::initializer_list<const char*> allowed) const {
        require_object();
        for (auto it = node_->begin(); it != node_->end(); ++it) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || it.key() == a;
            if (!ok) throw UsageError(child_path(it.key()) + ": unknown field");
        }
    }

    double number() const {
        if (!node_->is_number()) fail("expected a number");
        const double v = node_->get<double>();
        if (!std::isfinite(v)) fail("expected a finite number");
        return v;
    }

    std::int64_t integer() const {
        if (!node_->is_number_integer()) fail("expected an integer");
        return node_->get<std::int64_t>();
    }

    bool boolean() const {
        if (!node_->is_boolean()) fail("expected true or false");
        return node_->get<bool>();
    }

    std::string string() const {
        if (!node_->is_string()) fail("expected a string");
        return node_->get<std::string>();
    }

    Vec3 vec3() const {
        if (!node_->is_array() || node_->size() != 3) fail("expected an array of 3 numbers");
        return {at(std::size_t{0}).number(), at(std::size_t{1}).number(), at(std::size_t{2}).number()};
    }

    std::vector<double> numbers() const {
        std::vector<double> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i).number());
        return out;
    }

    double number_or(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }
    std::int64_t integer_or(const std::string& key, std::int64_t fallback) const { return has(key) ? at(key).integer() : fallback; }
    bool boolean_or(const std::string& key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }
    std::string string_or(const std::string& key, std::string fallback) const { return has(key) ? at(key).string() : fallback; }
    Vec3 vec3_or(const std::string& key, Vec3 fallback) const { return has(key) ? at(key).vec3() : fallback; }

    double positive(const std::string& key) const {
        const double v = at(key).number();
        if (!(v > 0.0)) throw UsageError(child_path(key) + ": must be positive");
        return v;
    }
    double positive_or(const std::string& key, double fallback) const { return has(key) ? positive(key) : fallback; }

private:
    const nlohmann::json* node_;
    std::string path_;
};

}  // namespace gaugelab::io
