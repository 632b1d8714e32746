#pragma once

// Text and JSON forms of the domain values.
//
//   tree        [2,1,3]   []   null   compact digits 514632 (0-based if a 0 occurs: 01234 = [1,2,3,4,5])
//   bracketing  ((*.*).*) ; a group of three or more items folds to the left, ((*.*)*.*) = (((*.*).*).*)
//   noduled     [5,1,4,6,3,2] u{3} g{5,6}   or   (514632,{3},{5,6})
//   braid       t1 t2' t3   (apostrophe = inverse; "e" is the empty word)
//   permutation cycles, e.g. (13452) or (1 3)(2 4)
//
// JSON records carry "version": 1 at top level when written by to_json.

#include <string>

#include "json.hpp"
#include "recouple/braids.hpp"
#include "recouple/nodules.hpp"
#include "recouple/recouplings.hpp"
#include "recouple/trees.hpp"

namespace recouple {

using Json = nlohmann::json;

/// All parsers throw ParseError; values that parse but are invalid throw their own error codes.
CouplingTree parse_tree(const std::string& text);
Bracketing parse_bracketing(const std::string& text);
/// A tree literal or a bracketing literal (taken to its representative).
CouplingTree parse_tree_or_bracketing(const std::string& text);
NoduledTree parse_noduled(const std::string& text);
BraidWord parse_braid(const std::string& text, std::size_t strands);
Permutation parse_permutation(const std::string& text, std::size_t n);
std::vector<unsigned> parse_objects(const std::string& text);

Json to_json(const CouplingTree& t);
Json to_json(const NoduledTree& nt);
Json to_json(const BraidWord& w);
Json to_json(const Recoupling& r);
Json to_json(const std::vector<Reattachment>& factorization);
Json to_json(const NoduledPrimitive& p);

CouplingTree tree_from_json(const Json& j);
NoduledTree noduled_from_json(const Json& j);
BraidWord braid_from_json(const Json& j);
Recoupling recoupling_from_json(const Json& j);
/// Accepts a JSON record or a text literal held in a JSON string.
CouplingTree tree_from_any(const Json& j);

}  // namespace recouple
