// serialize.cpp

#include "locc/serialize.hpp"

#include <string>

namespace locc {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw DomainError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

std::size_t size_field(const Json& j, const char* key)
{
    const Json& v = field(j, key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw DomainError(std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Complex complex_from_json(const Json& j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw DomainError("complex numbers are encoded as [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z)
{
    return Json::array({z.real(), z.imag()});
}

std::pair<std::size_t, std::size_t> dims_from_json(const Json& j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
        throw DomainError("\"dims\" must be [m, n]");
    }
    return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

std::vector<BellLabel> bell_labels_from_json(const Json& j)
{
    std::vector<BellLabel> labels;
    for (const auto& item : j) {
        if (!item.is_array() || item.size() != 2) {
            throw DomainError("Bell labels are encoded as [shift, phase]");
        }
        labels.push_back({item[0].get<std::size_t>(), item[1].get<std::size_t>()});
    }
    return labels;
}

ProtocolChild child_from_json(const Json& j)
{
    if (j.contains("guess")) {
        return Guess{size_field(j, "guess")};
    }
    const std::string actor = field(j, "actor").get<std::string>();
    Party party;
    if (actor == "alice") {
        party = Party::Alice;
    } else if (actor == "bob") {
        party = Party::Bob;
    } else {
        throw DomainError("actor must be \"alice\" or \"bob\", got \"" + actor + "\"");
    }
    std::vector<ComplexMatrix> elements;
    for (const auto& m : field(j, "povm")) {
        elements.push_back(matrix_from_json(m));
    }
    std::vector<ProtocolChild> children;
    for (const auto& c : field(j, "children")) {
        children.push_back(child_from_json(c));
    }
    return make_node(party, Povm(std::move(elements)), std::move(children));
}

Json child_to_json(const ProtocolChild& child)
{
    if (const auto* g = std::get_if<Guess>(&child)) {
        return Json{{"guess", g->label}};
    }
    const auto& node = *std::get<std::shared_ptr<const ProtocolNode>>(child);
    Json povm = Json::array();
    for (const auto& e : node.povm.elements()) {
        povm.push_back(matrix_to_json(e));
    }
    Json children = Json::array();
    for (const auto& c : node.children) {
        children.push_back(child_to_json(c));
    }
    return Json{{"actor", to_string(node.actor)}, {"povm", povm}, {"children", children}};
}

} // namespace

Json matrix_to_json(const ComplexMatrix& m)
{
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw DomainError("matrices are encoded as a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw DomainError("matrix rows must all have the same length");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(i, c) = complex_from_json(j[i][c]);
        }
    }
    return m;
}

Json vector_to_json(const ComplexVector& v)
{
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(complex_to_json(v(i)));
    }
    return out;
}

ComplexVector vector_from_json(const Json& j)
{
    if (!j.is_array()) {
        throw DomainError("vectors are encoded as an array of [re, im]");
    }
    ComplexVector v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(i) = complex_from_json(j[i]);
    }
    return v;
}

Json state_to_json(const BipartiteState& s)
{
    return Json{{"dims", {s.dim_a(), s.dim_b()}}, {"amplitudes", vector_to_json(s.amplitudes())}};
}

BipartiteState state_from_json(const Json& j)
{
    const auto [m, n] = dims_from_json(field(j, "dims"));
    return BipartiteState(m, n, vector_from_json(field(j, "amplitudes")));
}

Json ensemble_to_json(const StateEnsemble& e)
{
    Json states = Json::array();
    for (const auto& s : e.states()) {
        states.push_back(state_to_json(s));
    }
    return Json{{"kind", "explicit"}, {"states", states}, {"priors", e.priors()}};
}

StateEnsemble ensemble_from_json(const Json& j)
{
    try {
        const std::string kind = field(j, "kind").get<std::string>();
        if (kind == "explicit") {
            std::vector<BipartiteState> states;
            for (const auto& s : field(j, "states")) {
                states.push_back(state_from_json(s));
            }
            if (j.contains("priors")) {
                return StateEnsemble(std::move(states), j.at("priors").get<std::vector<double>>());
            }
            return StateEnsemble(std::move(states));
        }
        if (kind == "bell") {
            const std::size_t n = size_field(j, "n");
            if (j.contains("subset")) {
                return bell_states(n, bell_labels_from_json(j.at("subset")));
            }
            return bell_basis(n);
        }
        if (kind == "random_me_triple") {
            return random_orthogonal_me_triple(size_field(j, "n"), field(j, "seed").get<std::uint64_t>());
        }
        if (kind == "simdiag") {
            return simultaneously_diagonal_ensemble(matrix_from_json(field(j, "u")));
        }
        if (kind == "product_basis") {
            return computational_product_basis(size_field(j, "m"), size_field(j, "n"));
        }
        if (kind == "random_pair") {
            return random_orthogonal_pair(size_field(j, "m"), size_field(j, "n"), field(j, "seed").get<std::uint64_t>());
        }
        throw DomainError("unknown ensemble kind \"" + kind + "\"");
    } catch (const Json::exception& ex) {
        throw DomainError(std::string("malformed ensemble descriptor: ") + ex.what());
    }
}

Json protocol_to_json(const LoccProtocol& p)
{
    return Json{{"dims", {p.dim_a(), p.dim_b()}}, {"root", child_to_json(p.root())}};
}

Json one_way_to_json(const OneWayProtocolSpec& spec)
{
    Json groups = Json::array();
    for (const auto& group : spec.bob_discriminators) {
        Json g = Json::array();
        for (const auto& lv : group) {
            g.push_back(Json{{"label", lv.label}, {"vector", vector_to_json(lv.vector)}});
        }
        groups.push_back(std::move(g));
    }
    return Json{{"alice_basis", matrix_to_json(spec.alice_basis)}, {"dim_b", spec.dim_b}, {"bob_discriminators", groups}};
}

OneWayProtocolSpec one_way_from_json(const Json& j)
{
    OneWayProtocolSpec spec;
    spec.alice_basis = matrix_from_json(field(j, "alice_basis"));
    for (const auto& group : field(j, "bob_discriminators")) {
        std::vector<LabeledVector> g;
        for (const auto& lv : group) {
            g.push_back({size_field(lv, "label"), vector_from_json(field(lv, "vector"))});
        }
        spec.bob_discriminators.push_back(std::move(g));
    }
    if (j.contains("dim_b")) {
        spec.dim_b = size_field(j, "dim_b");
    } else {
        for (const auto& g : spec.bob_discriminators) {
            if (!g.empty()) {
                spec.dim_b = static_cast<std::size_t>(g.front().vector.size());
                break;
            }
        }
    }
    return spec;
}

LoccProtocol protocol_from_json(const Json& j, std::optional<std::pair<std::size_t, std::size_t>> dims)
{
    try {
        if (!j.is_object()) {
            throw DomainError("protocol must be a JSON object");
        }
        if (j.contains("protocol")) {
            return protocol_from_json(j.at("protocol"), dims);
        }
        if (j.contains("alice_basis")) {
            return to_protocol(one_way_from_json(j));
        }
        if (j.contains("kind")) {
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "standard_bell") {
                const std::size_t n = size_field(j, "n");
                if (j.contains("subset")) {
                    return standard_bell_protocol(n, bell_labels_from_json(j.at("subset")));
                }
                std::vector<BellLabel> all;
                for (std::size_t s = 0; s < n; ++s) {
                    for (std::size_t p = 0; p < n; ++p) {
                        all.push_back({s, p});
                    }
                }
                return standard_bell_protocol(n, all);
            }
            if (kind == "discard") {
                const LoccProtocol inner = protocol_from_json(field(j, "inner"), dims);
                return discard_protocol(inner, field(j, "kept").get<std::vector<std::size_t>>(), size_field(j, "k"));
            }
            if (kind == "two_state") {
                const StateEnsemble e = ensemble_from_json(field(j, "ensemble"));
                const auto pair = field(j, "pair").get<std::vector<std::size_t>>();
                if (pair.size() != 2 || pair[0] >= e.size() || pair[1] >= e.size()) {
                    throw DomainError("\"pair\" must name two states of the ensemble");
                }
                return two_state_protocol(e.state(pair[0]), e.state(pair[1]));
            }
            if (kind == "blind") {
                const auto [m, n] = dims_from_json(field(j, "dims"));
                return blind_guess_protocol(m, n, size_field(j, "label"));
            }
            throw DomainError("unknown protocol kind \"" + kind + "\"");
        }
        if (j.contains("root")) {
            const auto d = dims_from_json(field(j, "dims"));
            return LoccProtocol(d.first, d.second, child_from_json(j.at("root")));
        }
        if (j.contains("actor") || j.contains("guess")) {
            if (!dims) {
                throw DomainError("bare protocol node needs dimensions from the ensemble");
            }
            return LoccProtocol(dims->first, dims->second, child_from_json(j));
        }
        throw DomainError("unrecognized protocol JSON");
    } catch (const Json::exception& ex) {
        throw DomainError(std::string("malformed protocol: ") + ex.what());
    }
}

Json evaluation_to_json(const ProtocolEvaluation& e)
{
    Json table = Json::array();
    for (const auto& row : e.joint_table) {
        table.push_back(Json{{"state", row.state},
                             {"leaf", row.leaf},
                             {"path", row.path},
                             {"guess", row.guess},
                             {"probability", row.probability}});
    }
    return Json{{"success_probability", e.success_probability},
                {"mutual_information_bits", e.mutual_information_bits},
                {"leaf_count", e.leaf_count},
                {"state_mass", e.state_mass},
                {"joint_table", table}};
}

Json bounds_to_json(const BoundsReport& r)
{
    auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back(Json{{"name", w.name}, {"value", w.value}, {"description", w.description}});
    }
    Json out{{"k", r.k},
             {"m", r.m},
             {"n", r.n},
             {"lambda_max", r.lambda_max},
             {"f_lower", r.f_lower},
             {"f_upper", r.f_upper},
             {"fme_lower", opt(r.fme_lower)},
             {"fme_upper", opt(r.fme_upper)},
             {"schmidt_upper", r.schmidt_upper},
             {"bob_unitary_upper", opt(r.bob_unitary_upper)},
             {"entropy_upper_bits", r.entropy_upper_bits},
             {"g_lower_bits", opt(r.g_lower_bits)},
             {"g_upper_bits", opt(r.g_upper_bits)},
             {"verdict", to_string(r.verdict)},
             {"witnesses", witnesses}};
    out["perfect_protocol_source"] = r.perfect_protocol_source ? Json(*r.perfect_protocol_source) : Json(nullptr);
    return out;
}

} // namespace locc
