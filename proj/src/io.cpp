#include "eqpath/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eqpath::io {

using json = nlohmann::ordered_json;

std::string serialize_instance(const Instance& inst) {
  json doc;
  doc["kind"] = inst.kind() == ItemKind::Goods ? "goods" : "chores";
  doc["m"] = inst.num_goods();
  doc["agents"] = json::array();
  for (const Agent& a : inst.agents()) {
    json entry;
    entry["name"] = a.name;
    if (a.valuation.is_additive()) {
      entry["additive"] = a.valuation.per_good_values();
    } else {
      json rows = json::array();
      for (int l = 1; l <= inst.num_goods(); ++l) {
        json row = json::array();
        for (int r = l; r <= inst.num_goods(); ++r) row.push_back(a.valuation.interval({l, r}));
        rows.push_back(std::move(row));
      }
      entry["interval_table"] = std::move(rows);
    }
    doc["agents"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Error::Code::ParseError, std::string("instance is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("kind") || !doc.contains("m") || !doc.contains("agents"))
      fail(Error::Code::ParseError, "instance document needs kind, m, and agents");
    const std::string kind_text = doc["kind"].get<std::string>();
    ItemKind kind;
    if (kind_text == "goods")
      kind = ItemKind::Goods;
    else if (kind_text == "chores")
      kind = ItemKind::Chores;
    else
      fail(Error::Code::ParseError, "kind must be 'goods' or 'chores'");
    const int m = doc["m"].get<int>();

    std::vector<Agent> agents;
    for (const json& entry : doc["agents"]) {
      const std::string name = entry.at("name").get<std::string>();
      if (entry.contains("additive")) {
        std::vector<Value> values = entry["additive"].get<std::vector<Value>>();
        if (static_cast<int>(values.size()) != m)
          fail(Error::Code::ParseError, "agent " + name + " must list exactly m values");
        agents.push_back({name, Valuation::additive(std::move(values))});
      } else if (entry.contains("interval_table")) {
        std::vector<std::vector<Value>> rows =
            entry["interval_table"].get<std::vector<std::vector<Value>>>();
        agents.push_back({name, Valuation::interval_table(m, std::move(rows))});
      } else {
        fail(Error::Code::ParseError, "agent " + name + " needs 'additive' or 'interval_table'");
      }
    }
    return Instance(kind, m, std::move(agents));
  } catch (const json::exception& e) {
    fail(Error::Code::ParseError, std::string("malformed instance document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Error::Code::InvalidInstance)
      fail(Error::Code::ParseError, std::string("invalid instance: ") + e.what());
    throw;
  }
}

std::string serialize_allocation(const Instance& inst, const Allocation& alloc) {
  json doc;
  doc["order"] = json::array();
  for (int pos = 0; pos < alloc.order.size(); ++pos)
    doc["order"].push_back(inst.agent(alloc.order.at(pos)).name);
  doc["bundles"] = json::object();
  for (int pos = 0; pos < alloc.order.size(); ++pos) {
    const int agent = alloc.order.at(pos);
    const Bundle& b = alloc.bundles[agent];
    if (b)
      doc["bundles"][inst.agent(agent).name] = {b->lo, b->hi};
    else
      doc["bundles"][inst.agent(agent).name] = json::array();
  }
  return doc.dump(2) + "\n";
}

Allocation parse_allocation(const std::string& text, const Instance& inst) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    fail(Error::Code::ParseError, std::string("allocation is not valid JSON: ") + e.what());
  }
  try {
    Allocation alloc;
    alloc.bundles.assign(inst.num_agents(), std::nullopt);
    if (!doc.contains("order") || !doc.contains("bundles"))
      fail(Error::Code::ParseError, "allocation document needs order and bundles");
    for (const json& name : doc["order"]) {
      int agent = inst.agent_index(name.get<std::string>());
      if (agent < 0)
        fail(Error::Code::ParseError, "unknown agent '" + name.get<std::string>() + "' in order");
      alloc.order.agents.push_back(agent);
    }
    alloc.order.validate(inst.num_agents());
    for (const auto& [name, entry] : doc["bundles"].items()) {
      int agent = inst.agent_index(name);
      if (agent < 0) fail(Error::Code::ParseError, "unknown agent '" + name + "' in bundles");
      if (entry.empty()) continue;
      if (!entry.is_array() || entry.size() != 2)
        fail(Error::Code::ParseError, "bundle for '" + name + "' must be [] or [lo, hi]");
      alloc.bundles[agent] = Interval{entry[0].get<int>(), entry[1].get<int>()};
    }
    return alloc;
  } catch (const json::exception& e) {
    fail(Error::Code::ParseError, std::string("malformed allocation document: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Error::Code::UnknownAgent)
      fail(Error::Code::ParseError, std::string("invalid allocation: ") + e.what());
    throw;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Error::Code::ParseError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Error::Code::ParseError, "cannot write " + path);
  out << content;
}

}  // namespace eqpath::io
