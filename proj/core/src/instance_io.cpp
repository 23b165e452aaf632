#include "rpsp/instance_io.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rpsp/error.hpp"

namespace rpsp {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
    for (const auto& item : object.items()) {
        if (!allowed.count(item.key())) {
            throw Error(ErrorKind::Parse, "unknown key '" + item.key() + "' in " + where);
        }
    }
}

WeightedSet parse_set(const json& node, const std::string& where) {
    if (!node.is_object()) throw Error(ErrorKind::Parse, where + " must be an object");
    reject_unknown_keys(node, {"members", "weight"}, where);
    if (!node.contains("members") || !node.at("members").is_array()) {
        throw Error(ErrorKind::Parse, where + " needs a \"members\" array");
    }
    if (!node.contains("weight") || !node.at("weight").is_number()) {
        throw Error(ErrorKind::Parse, where + " needs a numeric \"weight\"");
    }
    std::vector<Player> members;
    for (const auto& m : node.at("members")) {
        if (!m.is_number_integer()) throw Error(ErrorKind::Parse, where + ": members must be integers");
        members.push_back(m.get<int>());
    }
    return make_set(std::move(members), node.at("weight").get<double>());
}

std::vector<WeightedSet> parse_sets(const json& root, const char* key) {
    std::vector<WeightedSet> sets;
    if (!root.contains(key)) return sets;
    const auto& array = root.at(key);
    if (!array.is_array()) throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must be an array");
    for (std::size_t i = 0; i < array.size(); ++i) {
        sets.push_back(parse_set(array[i], std::string(key) + "[" + std::to_string(i) + "]"));
    }
    return sets;
}

json sets_to_json(const std::vector<WeightedSet>& sets) {
    json array = json::array();
    for (const auto& s : sets) array.push_back({{"members", s.members}, {"weight", s.weight}});
    return array;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, e.what());
    }
}

}  // namespace

Instance parse_instance(const std::string& text) {
    const json root = parse_json(text);
    if (!root.is_object()) throw Error(ErrorKind::Parse, "instance must be a JSON object");
    reject_unknown_keys(root, {"n", "mode", "reward_sets", "penalty_sets"}, "instance");
    if (!root.contains("n") || !root.at("n").is_number_integer()) {
        throw Error(ErrorKind::Parse, "instance needs an integer \"n\"");
    }
    if (!root.contains("mode") || !root.at("mode").is_string()) {
        throw Error(ErrorKind::Parse, "instance needs an explicit \"mode\"");
    }
    Instance instance;
    instance.n = root.at("n").get<int>();
    instance.mode = parse_mode(root.at("mode").get<std::string>());
    instance.reward_sets = parse_sets(root, "reward_sets");
    instance.penalty_sets = parse_sets(root, "penalty_sets");
    return instance;
}

std::string instance_to_json(const Instance& instance, int indent) {
    json root;
    root["n"] = instance.n;
    root["mode"] = std::string(to_string(instance.mode));
    root["reward_sets"] = sets_to_json(instance.reward_sets);
    root["penalty_sets"] = sets_to_json(instance.penalty_sets);
    return root.dump(indent) + (indent >= 0 ? "\n" : "");
}

std::string instance_digest(const Instance& instance) {
    const std::string canonical = instance_to_json(instance, -1);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char c : canonical) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << hash;
    return out.str();
}

ClaimedSelection parse_selection(const std::string& text) {
    const json root = parse_json(text);
    if (!root.is_object()) throw Error(ErrorKind::Parse, "selection must be a JSON object");
    const char* key = root.contains("members") ? "members" : "selection";
    if (!root.contains(key) || !root.at(key).is_array()) {
        throw Error(ErrorKind::Parse, "selection needs a \"members\" (or \"selection\") array");
    }
    ClaimedSelection claim;
    for (const auto& m : root.at(key)) {
        if (!m.is_number_integer()) throw Error(ErrorKind::Parse, "selection members must be integers");
        claim.members.push_back(m.get<int>());
    }
    if (root.contains("value")) {
        if (!root.at("value").is_number()) throw Error(ErrorKind::Parse, "\"value\" must be numeric");
        claim.value = root.at("value").get<double>();
    }
    return claim;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Parse, "cannot write '" + path + "'");
    out << text;
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_text_file(path)); }

void write_instance_file(const Instance& instance, const std::string& path) {
    write_text_file(path, instance_to_json(instance));
}

ClaimedSelection read_selection_file(const std::string& path) {
    return parse_selection(read_text_file(path));
}

}  // namespace rpsp
