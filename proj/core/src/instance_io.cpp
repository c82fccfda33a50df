#include "tlo/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace tlo {

using detail::as_array;
using detail::as_int;
using detail::as_string;
using detail::child;
using detail::element;
using detail::expect_object;
using detail::json;
using detail::ordered_json;
using detail::schema_error;

namespace {

ContainerLength parse_teu(const json& j, const std::string& path) {
    const auto v = as_int(j, path);
    if (v == 1) return ContainerLength::TwentyFoot;
    if (v == 2) return ContainerLength::FortyFoot;
    schema_error(path, "teu must be 1 or 2");
}

}  // namespace

Instance load_instance(std::string_view content) {
    const json doc = detail::parse_document(content);
    expect_object(doc, "",
                  {"alpha", "train_max_weight", "max_tiers", "containers", "stacks", "wagons"});

    InstanceData data;
    data.rehandle_unit_cost = as_int(doc["alpha"], "alpha");
    data.train_max_weight = as_int(doc["train_max_weight"], "train_max_weight");
    const auto tiers = as_int(doc["max_tiers"], "max_tiers");
    if (tiers < 1 || tiers > 1'000'000) schema_error("max_tiers", "out of range");
    data.max_tiers = static_cast<int>(tiers);

    const auto& containers = as_array(doc["containers"], "containers");
    for (std::size_t i = 0; i < containers.size(); ++i) {
        const std::string path = element("containers", i);
        const json& c = containers[i];
        expect_object(c, path, {"id", "teu", "weight", "value"});
        data.containers.push_back(Container{
            as_string(c["id"], child(path, "id")),
            parse_teu(c["teu"], child(path, "teu")),
            as_int(c["weight"], child(path, "weight")),
            as_int(c["value"], child(path, "value")),
        });
    }

    const auto& stacks = as_array(doc["stacks"], "stacks");
    for (std::size_t k = 0; k < stacks.size(); ++k) {
        const std::string path = element("stacks", k);
        std::vector<std::string> ids;
        for (std::size_t l = 0; l < as_array(stacks[k], path).size(); ++l) {
            ids.push_back(as_string(stacks[k][l], element(path, l)));
        }
        data.stacks.push_back(std::move(ids));
    }

    const auto& wagons = as_array(doc["wagons"], "wagons");
    for (std::size_t w = 0; w < wagons.size(); ++w) {
        const std::string path = element("wagons", w);
        const json& jw = wagons[w];
        expect_object(jw, path, {"id", "max_weight", "slots", "configs"});
        Wagon wagon;
        wagon.id = as_string(jw["id"], child(path, "id"));
        wagon.max_weight = as_int(jw["max_weight"], child(path, "max_weight"));
        const std::string slots_path = child(path, "slots");
        const auto& slots = as_array(jw["slots"], slots_path);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const std::string sp = element(slots_path, s);
            expect_object(slots[s], sp, {"teu"});
            wagon.slots.push_back(Slot{parse_teu(slots[s]["teu"], child(sp, "teu"))});
        }
        const std::string configs_path = child(path, "configs");
        const auto& configs = as_array(jw["configs"], configs_path);
        for (std::size_t b = 0; b < configs.size(); ++b) {
            const std::string cp = element(configs_path, b);
            WeightConfig config;
            for (std::size_t s = 0; s < as_array(configs[b], cp).size(); ++s) {
                config.per_slot_max.push_back(as_int(configs[b][s], element(cp, s)));
            }
            wagon.configs.push_back(std::move(config));
        }
        data.wagons.push_back(std::move(wagon));
    }

    return Instance(std::move(data));
}

std::string serialize_instance(const Instance& instance) {
    const InstanceData& data = instance.data();
    ordered_json doc;
    doc["alpha"] = data.rehandle_unit_cost;
    doc["train_max_weight"] = data.train_max_weight;
    doc["max_tiers"] = data.max_tiers;

    ordered_json containers = ordered_json::array();
    for (const auto& c : data.containers) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["teu"] = teu(c.length);
        jc["weight"] = c.weight;
        jc["value"] = c.value;
        containers.push_back(std::move(jc));
    }
    doc["containers"] = std::move(containers);

    ordered_json stacks = ordered_json::array();
    for (const auto& stack : data.stacks) stacks.push_back(stack);
    doc["stacks"] = std::move(stacks);

    ordered_json wagons = ordered_json::array();
    for (const auto& w : data.wagons) {
        ordered_json jw;
        jw["id"] = w.id;
        jw["max_weight"] = w.max_weight;
        ordered_json slots = ordered_json::array();
        for (const auto& s : w.slots) slots.push_back(ordered_json{{"teu", teu(s.length)}});
        jw["slots"] = std::move(slots);
        ordered_json configs = ordered_json::array();
        for (const auto& b : w.configs) configs.push_back(b.per_slot_max);
        jw["configs"] = std::move(configs);
        wagons.push_back(std::move(jw));
    }
    doc["wagons"] = std::move(wagons);

    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw Error("failed writing '" + path.string() + "'");
    }
}

}  // namespace tlo
