#include "gsp/io.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace gsp {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

Money money_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer() || v.get<Money>() < 0) {
    throw Error(std::string("field '") + key +
                "' must be a nonnegative integer");
  }
  return v.get<Money>();
}

int bidder_index(const Instance& inst, const Json& id) {
  if (!id.is_string()) throw Error("bidder id must be a string");
  const int v = inst.find_bidder(id.get<std::string>());
  if (v == kNone) throw Error("unknown bidder '" + id.get<std::string>() + "'");
  return v;
}

}  // namespace

Json instance_to_json(const Instance& inst) {
  Json j;
  j["flavor"] = to_string(inst.flavor());
  j["keywords"] = Json::array();
  for (const auto& id : inst.keyword_ids()) j["keywords"].push_back(id);
  j["bidders"] = Json::array();
  for (const auto& b : inst.bidders()) {
    j["bidders"].push_back({{"id", b.id}, {"budget", b.budget}});
  }
  j["bids"] = Json::array();
  for (int u = 0; u < inst.num_keywords(); ++u) {
    for (const auto& e : inst.bids_on(u)) {
      j["bids"].push_back({{"keyword", inst.keyword_id(u)},
                           {"bidder", inst.bidder(e.bidder).id},
                           {"amount", e.amount}});
    }
  }
  return j;
}

Instance instance_from_json(const Json& j) {
  const std::string flavor = field(j, "flavor").get<std::string>();
  Instance inst;
  if (flavor == "2paa") {
    inst.set_flavor(Flavor::kAdAuction);
  } else if (flavor == "2pm") {
    inst.set_flavor(Flavor::kMatching);
  } else {
    throw Error("unknown flavor '" + flavor + "'");
  }
  for (const auto& k : field(j, "keywords")) {
    if (!k.is_string()) throw Error("keyword id must be a string");
    inst.add_keyword(k.get<std::string>());
  }
  for (const auto& b : field(j, "bidders")) {
    const Json& id = field(b, "id");
    if (!id.is_string()) throw Error("bidder id must be a string");
    inst.add_bidder(id.get<std::string>(), money_field(b, "budget"));
  }
  for (const auto& bid : field(j, "bids")) {
    const Json& kid = field(bid, "keyword");
    if (!kid.is_string()) throw Error("keyword id must be a string");
    const int u = inst.find_keyword(kid.get<std::string>());
    if (u == kNone) {
      throw Error("unknown keyword '" + kid.get<std::string>() + "'");
    }
    const int v = bidder_index(inst, field(bid, "bidder"));
    if (inst.bid(u, v)) {
      throw Error("duplicate bid for keyword '" + kid.get<std::string>() + "'");
    }
    inst.set_bid(u, v, money_field(bid, "amount"));
  }
  return inst;
}

Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  Json decisions = Json::array();
  for (const auto& d : alloc) {
    if (d.is_skip()) {
      decisions.push_back({{"skip", true}});
      continue;
    }
    Json e;
    e["first"] = inst.bidder(d.first).id;
    if (d.second) e["second"] = inst.bidder(*d.second).id;
    decisions.push_back(std::move(e));
  }
  return {{"decisions", std::move(decisions)}};
}

Allocation allocation_from_json(const Instance& inst, const Json& j) {
  Allocation alloc;
  for (const auto& d : field(j, "decisions")) {
    if (d.contains("skip") && d.at("skip") == true) {
      alloc.push_back(Decision::skip());
      continue;
    }
    Decision dec = Decision::assign(bidder_index(inst, field(d, "first")));
    if (d.contains("second")) dec.second = bidder_index(inst, d.at("second"));
    alloc.push_back(dec);
  }
  return alloc;
}

Json ledger_to_json(const Ledger& ledger) {
  return {{"prices", ledger.prices}, {"total", ledger.total}};
}

FirstPriceAllocation first_price_from_json(const Instance& inst,
                                           const Json& j) {
  FirstPriceAllocation f;
  for (const auto& d : allocation_from_json(inst, j)) {
    f.assignment.push_back(d.first);
  }
  return f;
}

SatFormula parse_dimacs(std::istream& in) {
  SatFormula formula;
  int declared_clauses = -1;
  std::vector<int> current;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> formula.num_vars >> declared_clauses) || fmt != "cnf") {
        throw Error("malformed DIMACS problem line");
      }
      continue;
    }
    std::istringstream all(line);
    int lit;
    while (all >> lit) {
      if (lit == 0) {
        if (current.size() != 3) {
          throw Error("clause with " + std::to_string(current.size()) +
                      " literals; exactly 3 are required");
        }
        formula.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
      } else {
        current.push_back(lit);
      }
    }
  }
  if (!current.empty()) throw Error("unterminated clause");
  if (declared_clauses >= 0 &&
      declared_clauses != static_cast<int>(formula.clauses.size())) {
    throw Error("clause count does not match the DIMACS header");
  }
  validate_formula(formula);
  return formula;
}

void write_dimacs(std::ostream& out, const SatFormula& formula) {
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const auto& c : formula.clauses) {
    out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  }
}

SimpleGraph parse_edge_list(std::istream& in) {
  std::string text, line;
  while (std::getline(in, line)) {
    text += line.substr(0, line.find('#'));
    text += '\n';
  }
  std::istringstream ts(text);
  SimpleGraph g;
  if (!(ts >> g.num_vertices)) throw Error("edge list: missing vertex count");
  int a, b;
  while (ts >> a) {
    if (!(ts >> b)) throw Error("edge list: dangling endpoint");
    g.edges.emplace_back(a, b);
  }
  if (!ts.eof()) throw Error("edge list: unexpected token");
  validate_simple_graph(g);
  return g;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("'" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace gsp
