// serialize.hpp
// JSON interchange used by the command-line tool.
//
//   matrix    [[[re, im], ...], ...]                  (row major)
//   vector    [[re, im], ...]
//   state     {"dims": [m, n], "amplitudes": vector}
//   ensemble  {"kind": "explicit", "states": [state...], "priors": [...]}
//             or a descriptor: {"kind": "bell", "n": 3, "subset": [[shift, phase]...]},
//             {"kind": "random_me_triple", "n": 3, "seed": 7}, {"kind": "simdiag", "u": matrix},
//             {"kind": "product_basis", "m": 2, "n": 2}, {"kind": "random_pair", "m": 2, "n": 3, "seed": 1}
//   protocol  {"dims": [m, n], "root": node}; node {"actor": "alice"|"bob", "povm": [matrix...],
//             "children": [node | {"guess": i}...]}
//   one-way   {"alice_basis": matrix, "dim_b": n, "bob_discriminators": [[{"label": i, "vector": vector}...]...]}
//
// Guess labels are zero-based indices into the ensemble's state list.

#pragma once

#include <optional>
#include <utility>

#include <json.hpp>

#include "locc/bounds.hpp"
#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"
#include "locc/qstate.hpp"

namespace locc {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json state_to_json(const BipartiteState& s);
BipartiteState state_from_json(const Json& j);

Json ensemble_to_json(const StateEnsemble& e);
// Accepts every ensemble descriptor kind, including "explicit".
StateEnsemble ensemble_from_json(const Json& j);

Json protocol_to_json(const LoccProtocol& p);
Json one_way_to_json(const OneWayProtocolSpec& spec);
OneWayProtocolSpec one_way_from_json(const Json& j);

// Accepts a protocol tree, a bare node (dimensions then come from `dims`), a one-way
// spec, an object wrapping any of these under "protocol", or a descriptor:
//   {"kind": "standard_bell", "n": 3, "subset": [[shift, phase]...]}
//   {"kind": "discard", "inner": protocol, "kept": [..], "k": 4}
//   {"kind": "two_state", "ensemble": ensemble, "pair": [i, j]}
//   {"kind": "blind", "dims": [m, n], "label": 0}
LoccProtocol protocol_from_json(const Json& j,
                                std::optional<std::pair<std::size_t, std::size_t>> dims = std::nullopt);

Json evaluation_to_json(const ProtocolEvaluation& e);
Json bounds_to_json(const BoundsReport& r);

} // namespace locc
