// File formats.
//
// Instance (JSON):
//   {"flavor": "2paa" | "2pm",
//    "keywords": ["u1", ...],                       // arrival order
//    "bidders": [{"id": "v1", "budget": 6}, ...],
//    "bids": [{"keyword": "u1", "bidder": "v1", "amount": 4}, ...]}
//
// Allocation (JSON), one entry per keyword in arrival order:
//   {"decisions": [{"skip": true} | {"first": "v1", "second": "v2"} |
//                  {"first": "v1"}, ...]}
//
// Ledger (JSON): {"prices": [3, 3], "total": 6}
//
// SAT input is DIMACS CNF with exactly three literals per clause. Graphs are
// edge-list text: the first number is the vertex count, followed by pairs of
// 0-based endpoints; '#' starts a comment.

#ifndef GSP_IO_H_
#define GSP_IO_H_

#include <iosfwd>
#include <string>

#include "gsp/generators.h"
#include "gsp/model.h"
#include "gsp/offline.h"
#include "json.hpp"

namespace gsp {

using Json = nlohmann::ordered_json;

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

Json allocation_to_json(const Instance& inst, const Allocation& alloc);
Allocation allocation_from_json(const Instance& inst, const Json& j);

Json ledger_to_json(const Ledger& ledger);

// Reads an allocation file as a first-price allocation: "first" is the
// allocated bidder, "second" is ignored.
FirstPriceAllocation first_price_from_json(const Instance& inst, const Json& j);

SatFormula parse_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const SatFormula& formula);

SimpleGraph parse_edge_list(std::istream& in);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace gsp

#endif  // GSP_IO_H_
