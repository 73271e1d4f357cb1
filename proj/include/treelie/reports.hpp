#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "treelie/abelian.hpp"
#include "treelie/nilpotent.hpp"
#include "treelie/tree_groups.hpp"

namespace treelie::reports {

inline constexpr const char* kEngineVersion = "0.1.0";

using nlohmann::json;

json to_json(const abelian::GroupReport& r);
json to_json(const abelian::HomCertificate& c);
json to_json(const tree_groups::CompareReport& r);
json to_json(const tree_groups::TopSequenceReport& r);
json group_summary(const abelian::PresentedAbelianGroup& g);
json lie_coords_json(const std::map<std::string, zlin::Int>& coords);
json quasi_json(const lie::QuasiElement& e);
json tensor_json(const tree_groups::TensorElement& e);
json artin_json(const nilpotent::ArtinAutomorphism& a, int johnson,
                const nilpotent::MilnorInvariant& mil);
json clasper_json(const nilpotent::ClasperEvaluation& ev);

// FNV-1a over the compact dump; stable across runs for identical configs.
std::string config_hash(const json& config);

std::optional<json> cache_lookup(const std::string& dir, const std::string& key);
void cache_store(const std::string& dir, const std::string& key, const json& report);

}  // namespace treelie::reports
