// protocol.cpp

#include "locc/protocol.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>

namespace locc {

std::string to_string(Party p)
{
    return p == Party::Alice ? "alice" : "bob";
}

// ---------------------------------------------------------------------------
// Povm

Povm::Povm(std::vector<ComplexMatrix> elements, double tol) : elements_(std::move(elements))
{
    if (elements_.empty()) {
        throw PreconditionError("Povm: at least one element is required");
    }
    const auto cols = elements_.front().cols();
    for (const auto& e : elements_) {
        if (e.cols() != cols || e.rows() == 0 || cols == 0) {
            throw DomainError("Povm: all elements must act on the same nonempty input space");
        }
    }
    const double defect = completeness_defect();
    if (!(defect <= tol)) {
        throw PreconditionError("Povm: elements are not complete (max |sum K^dagger K - I| = " +
                                std::to_string(defect) + ")");
    }
}

Povm Povm::identity(std::size_t dim)
{
    return Povm({ComplexMatrix::Identity(dim, dim)});
}

Povm Povm::projective(const ComplexMatrix& basis)
{
    std::vector<ComplexMatrix> elements;
    elements.reserve(basis.cols());
    for (Eigen::Index x = 0; x < basis.cols(); ++x) {
        elements.push_back(basis.col(x) * basis.col(x).adjoint());
    }
    return Povm(std::move(elements));
}

double Povm::completeness_defect() const
{
    const auto dim = elements_.front().cols();
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (const auto& e : elements_) {
        total += e.adjoint() * e;
    }
    return (total - ComplexMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Tree construction and validation

ProtocolChild make_node(Party actor, Povm povm, std::vector<ProtocolChild> children)
{
    if (children.size() != povm.size()) {
        throw DomainError("make_node: " + std::to_string(children.size()) + " children for " +
                          std::to_string(povm.size()) + " POVM outcomes");
    }
    return std::make_shared<const ProtocolNode>(ProtocolNode{actor, std::move(povm), std::move(children)});
}

namespace {

const ProtocolNode* as_node(const ProtocolChild& child)
{
    if (const auto* p = std::get_if<std::shared_ptr<const ProtocolNode>>(&child)) {
        if (!*p) {
            throw DomainError("LoccProtocol: null node");
        }
        return p->get();
    }
    return nullptr;
}

void validate(const ProtocolChild& child, std::size_t da, std::size_t db, std::optional<Party> parent)
{
    const ProtocolNode* node = as_node(child);
    if (!node) {
        return;
    }
    if (parent && *parent == node->actor) {
        throw DomainError("LoccProtocol: actors must alternate along every path (" + to_string(node->actor) +
                          " follows " + to_string(*parent) + ")");
    }
    if (node->children.size() != node->povm.size()) {
        throw DomainError("LoccProtocol: node has " + std::to_string(node->children.size()) + " children for " +
                          std::to_string(node->povm.size()) + " outcomes");
    }
    const std::size_t expected = node->actor == Party::Alice ? da : db;
    if (node->povm.input_dim() != expected) {
        throw DomainError("LoccProtocol: " + to_string(node->actor) + " POVM acts on dimension " +
                          std::to_string(node->povm.input_dim()) + ", expected " + std::to_string(expected));
    }
    for (std::size_t i = 0; i < node->children.size(); ++i) {
        const auto out = static_cast<std::size_t>(node->povm.element(i).rows());
        if (node->actor == Party::Alice) {
            validate(node->children[i], out, db, node->actor);
        } else {
            validate(node->children[i], da, out, node->actor);
        }
    }
}

template <typename Visit>
void for_each_leaf(const ProtocolChild& child, std::vector<std::size_t>& path, Visit&& visit)
{
    if (const ProtocolNode* node = as_node(child)) {
        for (std::size_t i = 0; i < node->children.size(); ++i) {
            path.push_back(i);
            for_each_leaf(node->children[i], path, visit);
            path.pop_back();
        }
    } else {
        visit(std::get<Guess>(child), path);
    }
}

std::size_t depth_of(const ProtocolChild& child)
{
    const ProtocolNode* node = as_node(child);
    if (!node) {
        return 0;
    }
    std::size_t deepest = 0;
    for (const auto& c : node->children) {
        deepest = std::max(deepest, depth_of(c));
    }
    return deepest + 1;
}

ComplexMatrix apply(Party actor, const ComplexMatrix& k, const ComplexMatrix& b)
{
    return actor == Party::Alice ? ComplexMatrix(b * k.transpose()) : ComplexMatrix(k * b);
}

} // namespace

LoccProtocol::LoccProtocol(std::size_t dim_a, std::size_t dim_b, ProtocolChild root)
    : dim_a_(dim_a), dim_b_(dim_b), root_(std::move(root))
{
    if (dim_a == 0 || dim_b == 0) {
        throw DomainError("LoccProtocol: dimensions must be positive");
    }
    validate(root_, dim_a_, dim_b_, std::nullopt);
}

std::size_t LoccProtocol::depth() const
{
    return depth_of(root_);
}

std::size_t LoccProtocol::leaf_count() const
{
    std::size_t count = 0;
    std::vector<std::size_t> path;
    for_each_leaf(root_, path, [&](const Guess&, const std::vector<std::size_t>&) { ++count; });
    return count;
}

std::size_t LoccProtocol::max_label() const
{
    std::size_t best = 0;
    std::vector<std::size_t> path;
    for_each_leaf(root_, path, [&](const Guess& g, const std::vector<std::size_t>&) { best = std::max(best, g.label); });
    return best;
}

// ---------------------------------------------------------------------------
// Evaluation

double ProtocolEvaluation::mutual_information_nats() const
{
    return mutual_information_bits * std::numbers::ln2;
}

double ProtocolEvaluation::table_mass() const
{
    double total = 0.0;
    for (const auto& e : joint_table) {
        total += e.probability;
    }
    return total;
}

namespace {

void check_compatible(const LoccProtocol& protocol, const StateEnsemble& ensemble)
{
    if (protocol.dim_a() != ensemble.dim_a() || protocol.dim_b() != ensemble.dim_b()) {
        throw DomainError("protocol dimensions (" + std::to_string(protocol.dim_a()) + "," +
                          std::to_string(protocol.dim_b()) + ") do not match ensemble (" +
                          std::to_string(ensemble.dim_a()) + "," + std::to_string(ensemble.dim_b()) + ")");
    }
    if (protocol.max_label() >= ensemble.size()) {
        throw DomainError("protocol guesses label " + std::to_string(protocol.max_label()) + " but ensemble has " +
                          std::to_string(ensemble.size()) + " states");
    }
}

void accumulate(const ProtocolChild& child, const ComplexMatrix& b, double scale, std::vector<double>& leaf_mass,
                std::size_t& leaf)
{
    if (const ProtocolNode* node = as_node(child)) {
        for (std::size_t i = 0; i < node->children.size(); ++i) {
            accumulate(node->children[i], apply(node->actor, node->povm.element(i), b), scale, leaf_mass, leaf);
        }
    } else {
        leaf_mass[leaf++] = b.squaredNorm() * scale;
    }
}

} // namespace

ProtocolEvaluation evaluate(const LoccProtocol& protocol, const StateEnsemble& ensemble)
{
    check_compatible(protocol, ensemble);

    struct LeafInfo {
        std::vector<std::size_t> path;
        std::size_t guess;
    };
    std::vector<LeafInfo> leaves;
    {
        std::vector<std::size_t> path;
        for_each_leaf(protocol.root(), path,
                      [&](const Guess& g, const std::vector<std::size_t>& p) { leaves.push_back({p, g.label}); });
    }

    ProtocolEvaluation out;
    out.leaf_count = leaves.size();
    const std::size_t k = ensemble.size();
    const double scale = 1.0 / static_cast<double>(ensemble.dim_a());

    std::vector<double> leaf_marginal(leaves.size(), 0.0);
    for (std::size_t v = 0; v < k; ++v) {
        std::vector<double> mass(leaves.size(), 0.0);
        std::size_t leaf = 0;
        accumulate(protocol.root(), ensemble.state(v).b_matrix(), scale, mass, leaf);

        double total = 0.0;
        const double prior = ensemble.priors()[v];
        for (std::size_t y = 0; y < leaves.size(); ++y) {
            total += mass[y];
            const double joint = prior * mass[y];
            if (leaves[y].guess == v) {
                out.success_probability += joint;
            }
            if (joint >= ProtocolEvaluation::prune_threshold) {
                out.joint_table.push_back({v, y, leaves[y].path, leaves[y].guess, joint});
                leaf_marginal[y] += joint;
            }
        }
        out.state_mass.push_back(total);
    }

    std::vector<double> state_marginal(k, 0.0);
    for (const auto& e : out.joint_table) {
        state_marginal[e.state] += e.probability;
    }
    double mi = 0.0;
    for (const auto& e : out.joint_table) {
        mi += e.probability * std::log2(e.probability / (state_marginal[e.state] * leaf_marginal[e.leaf]));
    }
    out.mutual_information_bits = std::max(0.0, mi);
    return out;
}

// ---------------------------------------------------------------------------
// Sampling

double SimulationResult::standard_error(double p) const
{
    if (trials == 0) {
        return 0.0;
    }
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

SimulationResult simulate(const LoccProtocol& protocol, const StateEnsemble& ensemble, std::size_t trials,
                          std::uint64_t seed)
{
    if (trials == 0) {
        throw DomainError("simulate: trials must be at least 1");
    }
    check_compatible(protocol, ensemble);

    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick_state(ensemble.priors().begin(), ensemble.priors().end());
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    SimulationResult out;
    out.trials = trials;
    std::vector<ComplexMatrix> branches;
    std::vector<double> weights;
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t v = pick_state(rng);
        ComplexMatrix b = ensemble.state(v).b_matrix();
        const ProtocolChild* current = &protocol.root();
        while (const ProtocolNode* node = as_node(*current)) {
            branches.clear();
            weights.clear();
            double total = 0.0;
            for (const auto& k : node->povm.elements()) {
                branches.push_back(apply(node->actor, k, b));
                weights.push_back(branches.back().squaredNorm());
                total += weights.back();
            }
            double r = unit(rng) * total;
            std::size_t chosen = weights.size() - 1;
            for (std::size_t i = 0; i < weights.size(); ++i) {
                if (weights[i] <= 0.0) {
                    continue;
                }
                if (r < weights[i]) {
                    chosen = i;
                    break;
                }
                r -= weights[i];
            }
            while (weights[chosen] <= 0.0 && chosen > 0) {
                --chosen;
            }
            b = branches[chosen] / std::sqrt(weights[chosen]);
            current = &node->children[chosen];
        }
        if (std::get<Guess>(*current).label == v) {
            ++out.successes;
        }
    }
    out.rate = static_cast<double>(out.successes) / static_cast<double>(trials);
    return out;
}

// ---------------------------------------------------------------------------
// One-way protocols

double max_bob_overlap(const OneWayProtocolSpec& spec)
{
    double worst = 0.0;
    for (const auto& group : spec.bob_discriminators) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                worst = std::max(worst, std::abs(group[i].vector.dot(group[j].vector)));
            }
        }
    }
    return worst;
}

LabeledPovm discriminating_povm(const std::vector<LabeledVector>& vectors, std::size_t dim, std::size_t fallback_label)
{
    std::vector<ComplexVector> basis;
    std::vector<std::size_t> labels;
    for (const auto& lv : vectors) {
        if (static_cast<std::size_t>(lv.vector.size()) != dim) {
            throw DomainError("discriminating_povm: vector dimension mismatch");
        }
        ComplexVector r = lv.vector;
        for (const auto& q : basis) {
            r -= q.dot(r) * q;
        }
        const double norm = r.norm();
        if (norm < 1e-6) {
            continue;
        }
        basis.push_back(r / norm);
        labels.push_back(lv.label);
    }
    std::vector<ComplexMatrix> elements;
    ComplexMatrix rest = ComplexMatrix::Identity(dim, dim);
    for (const auto& q : basis) {
        elements.push_back(q * q.adjoint());
        rest -= elements.back();
    }
    if (basis.size() < dim) {
        elements.push_back(rest);
        labels.push_back(labels.empty() ? fallback_label : *std::min_element(labels.begin(), labels.end()));
    }
    return {Povm(std::move(elements)), std::move(labels)};
}

OneWayProtocolSpec one_way_spec(const ComplexMatrix& u, const StateEnsemble& ensemble)
{
    if (static_cast<std::size_t>(u.rows()) != ensemble.dim_a() || u.rows() != u.cols()) {
        throw DomainError("one_way_spec: Alice basis must be dim_a x dim_a");
    }
    OneWayProtocolSpec spec;
    spec.alice_basis = u.conjugate();
    spec.dim_b = ensemble.dim_b();
    for (Eigen::Index x = 0; x < u.cols(); ++x) {
        std::vector<LabeledVector> group;
        for (std::size_t i = 0; i < ensemble.size(); ++i) {
            const ComplexVector v = ensemble.state(i).b_matrix() * u.col(x);
            const double norm = v.norm();
            if (norm > 1e-12) {
                group.push_back({i, v / norm});
            }
        }
        spec.bob_discriminators.push_back(std::move(group));
    }
    return spec;
}

LoccProtocol to_protocol(const OneWayProtocolSpec& spec)
{
    const auto m = static_cast<std::size_t>(spec.alice_basis.rows());
    if (spec.alice_basis.cols() != spec.alice_basis.rows() || m == 0) {
        throw DomainError("to_protocol: Alice basis must be square");
    }
    if (!is_unitary(spec.alice_basis, tol::structural)) {
        throw PreconditionError("to_protocol: Alice basis is not unitary within 1e-10");
    }
    if (spec.bob_discriminators.size() != m) {
        throw DomainError("to_protocol: need one Bob discriminator per Alice outcome");
    }
    if (spec.dim_b == 0) {
        throw DomainError("to_protocol: Bob dimension must be positive");
    }
    std::vector<ProtocolChild> children;
    for (const auto& group : spec.bob_discriminators) {
        LabeledPovm bob = discriminating_povm(group, spec.dim_b);
        std::vector<ProtocolChild> leaves;
        for (std::size_t label : bob.labels) {
            leaves.emplace_back(Guess{label});
        }
        children.push_back(make_node(Party::Bob, std::move(bob.povm), std::move(leaves)));
    }
    return LoccProtocol(m, spec.dim_b, make_node(Party::Alice, Povm::projective(spec.alice_basis), std::move(children)));
}

// ---------------------------------------------------------------------------
// Named protocols

LoccProtocol blind_guess_protocol(std::size_t dim_a, std::size_t dim_b, std::size_t label)
{
    return LoccProtocol(dim_a, dim_b, Guess{label});
}

LoccProtocol standard_bell_protocol(std::size_t n, const std::vector<BellLabel>& subset)
{
    if (n < 2) {
        throw DomainError("standard_bell_protocol: n must be at least 2");
    }
    if (subset.empty()) {
        throw DomainError("standard_bell_protocol: subset must be nonempty");
    }
    for (const auto& l : subset) {
        if (l.shift >= n || l.phase >= n) {
            throw DomainError("standard_bell_protocol: label out of range");
        }
    }
    auto guess_for_shift = [&](std::size_t shift) {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < subset.size(); ++i) {
            if (subset[i].shift == shift && (!best || subset[i].phase < subset[*best].phase)) {
                best = i;
            }
        }
        return best.value_or(0);
    };
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    std::vector<ProtocolChild> alice_children;
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<ProtocolChild> leaves;
        for (std::size_t b = 0; b < n; ++b) {
            leaves.emplace_back(Guess{guess_for_shift((a + n - b) % n)});
        }
        alice_children.push_back(make_node(Party::Bob, Povm::projective(id), std::move(leaves)));
    }
    return LoccProtocol(n, n, make_node(Party::Alice, Povm::projective(id), std::move(alice_children)));
}

namespace {

ProtocolChild relabel(const ProtocolChild& child, const std::function<std::size_t(std::size_t)>& map)
{
    if (const ProtocolNode* node = as_node(child)) {
        std::vector<ProtocolChild> children;
        for (const auto& c : node->children) {
            children.push_back(relabel(c, map));
        }
        return make_node(node->actor, node->povm, std::move(children));
    }
    return Guess{map(std::get<Guess>(child).label)};
}

ProtocolChild pad(const ProtocolChild& child, Party next, std::size_t da, std::size_t db)
{
    if (const ProtocolNode* node = as_node(child)) {
        std::vector<ProtocolChild> children;
        for (std::size_t i = 0; i < node->children.size(); ++i) {
            const auto out = static_cast<std::size_t>(node->povm.element(i).rows());
            children.push_back(node->actor == Party::Alice ? pad(node->children[i], Party::Bob, out, db)
                                                           : pad(node->children[i], Party::Alice, da, out));
        }
        return make_node(node->actor, node->povm, std::move(children));
    }
    return make_node(next, Povm::identity(next == Party::Alice ? da : db), {child});
}

} // namespace

LoccProtocol discard_protocol(const LoccProtocol& inner, const std::vector<std::size_t>& kept, std::size_t k)
{
    if (kept.empty()) {
        throw DomainError("discard_protocol: kept list is empty");
    }
    for (std::size_t i = 0; i < kept.size(); ++i) {
        if (kept[i] >= k) {
            throw DomainError("discard_protocol: kept label out of range");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (kept[i] == kept[j]) {
                throw DomainError("discard_protocol: kept labels must be distinct");
            }
        }
    }
    if (inner.max_label() >= kept.size()) {
        throw DomainError("discard_protocol: inner protocol guesses beyond the kept list");
    }
    return LoccProtocol(inner.dim_a(), inner.dim_b(),
                        relabel(inner.root(), [&](std::size_t label) { return kept[label]; }));
}

LoccProtocol pad_with_identity_rounds(const LoccProtocol& protocol)
{
    return LoccProtocol(protocol.dim_a(), protocol.dim_b(),
                        pad(protocol.root(), Party::Alice, protocol.dim_a(), protocol.dim_b()));
}

// ---------------------------------------------------------------------------
// Two orthogonal states

namespace {

// Unit vector in span{w1, w2} (orthonormal) whose expectation under M is `target`,
// which must lie on the segment between the expectations of w1 and w2. The
// numerical range of the compression to the plane is an ellipse containing that
// segment; we pick the relative phase so the curve theta -> v(theta) stays on the
// line through both end points and then bisect along it.
ComplexVector steer_in_plane(const ComplexMatrix& m, const ComplexVector& w1, const ComplexVector& w2, Complex target)
{
    const Complex z1 = w1.dot(m * w1);
    const Complex z2 = w2.dot(m * w2);
    const double length = std::abs(z2 - z1);
    if (length < 1e-300 || std::abs(target - z1) <= 1e-16 * (1.0 + std::abs(z1))) {
        return w1;
    }
    const Complex dir = (z2 - z1) / length;
    const Complex n12 = w1.dot(m * w2);
    const Complex n21 = w2.dot(m * w1);
    auto cross = [&](double phi) { return std::polar(1.0, phi) * n12 + std::polar(1.0, -phi) * n21; };
    auto off_line = [&](double phi) { return (cross(phi) * std::conj(dir)).imag(); };

    double phi = 0.0;
    const double h0 = off_line(0.0);
    if (h0 != 0.0) {
        double lo = 0.0;
        double hi = std::numbers::pi;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if ((off_line(mid) > 0.0) == (h0 > 0.0)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        phi = 0.5 * (lo + hi);
    }
    const double along = (cross(phi) * std::conj(dir)).real();
    const double goal = std::clamp(((target - z1) * std::conj(dir)).real(), 0.0, length);
    auto position = [&](double theta) {
        const double s = std::sin(theta);
        const double c = std::cos(theta);
        return s * s * length + s * c * along;
    };
    double lo = 0.0;
    double hi = std::numbers::pi / 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (position(mid) < goal) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double theta = 0.5 * (lo + hi);
    return std::cos(theta) * w1 + std::polar(std::sin(theta), phi) * w2;
}

// Unit vector v with v^dagger M v = 0 for a traceless square M.
ComplexVector isotropic_vector(const ComplexMatrix& m)
{
    const auto d = m.rows();
    const ComplexVector diag = m.diagonal();
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    auto unit = [&](Eigen::Index j) { return ComplexVector(ComplexVector::Unit(d, j)); };

    Eigen::Index smallest = 0;
    for (Eigen::Index j = 1; j < d; ++j) {
        if (std::abs(diag(j)) < std::abs(diag(smallest))) {
            smallest = j;
        }
    }
    if (std::abs(diag(smallest)) <= 1e-15 * scale) {
        return unit(smallest);
    }

    // Zero is the mean of the diagonal, so it lies in a triangle (or on a segment)
    // spanned by diagonal entries.
    auto cross2 = [](Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); };
    double best_margin = -std::numeric_limits<double>::infinity();
    std::array<Eigen::Index, 3> tri{0, 0, 0};
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = a + 1; b < d; ++b) {
            for (Eigen::Index c = b + 1; c < d; ++c) {
                const double area = cross2(diag(b) - diag(a), diag(c) - diag(a));
                if (std::abs(area) <= 1e-13 * scale * scale) {
                    continue;
                }
                const double la = cross2(diag(b), diag(c)) / area;
                const double lb = cross2(diag(c), diag(a)) / area;
                const double lc = cross2(diag(a), diag(b)) / area;
                const double margin = std::min({la, lb, lc});
                if (margin > best_margin) {
                    best_margin = margin;
                    tri = {a, b, c};
                }
            }
        }
    }
    if (best_margin >= -1e-12) {
        const Complex da = diag(tri[0]);
        const Complex db = diag(tri[1]);
        const Complex dc = diag(tri[2]);
        // Point p on [da, db] collinear with 0 and dc: da + s (db - da) = -t dc.
        const Complex e = db - da;
        const double det = cross2(e, dc);
        const double s = std::clamp(cross2(-da, dc) / det, 0.0, 1.0);
        const Complex p = da + s * e;
        const ComplexVector v = steer_in_plane(m, unit(tri[0]), unit(tri[1]), p);
        return steer_in_plane(m, v, unit(tri[2]), Complex(0.0, 0.0));
    }

    // All diagonal entries (nearly) collinear: find a segment straddling zero.
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index sa = 0;
    Eigen::Index sb = 1;
    for (Eigen::Index a = 0; a < d; ++a) {
        for (Eigen::Index b = a + 1; b < d; ++b) {
            const Complex e = diag(b) - diag(a);
            const double len2 = std::norm(e);
            if (len2 == 0.0) {
                continue;
            }
            const double s = std::clamp((-diag(a) * std::conj(e)).real() / len2, 0.0, 1.0);
            const double dist = std::abs(diag(a) + s * e);
            if (dist < best) {
                best = dist;
                sa = a;
                sb = b;
            }
        }
    }
    return steer_in_plane(m, unit(sa), unit(sb), Complex(0.0, 0.0));
}

} // namespace

ComplexMatrix zero_diagonal_basis(const ComplexMatrix& m)
{
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DomainError("zero_diagonal_basis: matrix must be square and nonempty");
    }
    const auto d = m.rows();
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    if (std::abs(m.trace()) > 1e-9 * scale * static_cast<double>(d)) {
        throw PreconditionError("zero_diagonal_basis: matrix is not traceless");
    }
    if (d == 1 || m.diagonal().cwiseAbs().maxCoeff() <= 1e-15 * scale) {
        return ComplexMatrix::Identity(d, d);
    }
    const ComplexVector w = isotropic_vector(m);

    ComplexMatrix seed = ComplexMatrix::Identity(d, d);
    seed.col(0) = w;
    Eigen::HouseholderQR<ComplexMatrix> qr(seed);
    const ComplexMatrix q = qr.householderQ();
    const ComplexMatrix rest = q.rightCols(d - 1);
    const ComplexMatrix inner = zero_diagonal_basis(ComplexMatrix(rest.adjoint() * m * rest));

    ComplexMatrix basis(d, d);
    basis.col(0) = w;
    basis.rightCols(d - 1) = rest * inner;
    return basis;
}

LoccProtocol two_state_protocol(const BipartiteState& first, const BipartiteState& second)
{
    if (first.dim_a() != second.dim_a() || first.dim_b() != second.dim_b()) {
        throw DomainError("two_state_protocol: dimension mismatch");
    }
    if (std::abs(inner_product(first, second)) > tol::structural) {
        throw PreconditionError("two_state_protocol: states are not orthogonal within 1e-10");
    }
    const ComplexMatrix overlap = first.b_matrix().adjoint() * second.b_matrix();
    const ComplexMatrix basis = zero_diagonal_basis(overlap);
    const double defect = (basis.adjoint() * overlap * basis).diagonal().cwiseAbs().maxCoeff();
    if (defect > 1e-9 * (1.0 + overlap.cwiseAbs().maxCoeff())) {
        throw NumericalError("two_state_protocol: failed to zero the diagonal (defect " + std::to_string(defect) + ")");
    }
    const StateEnsemble pair({first, second});
    return to_protocol(one_way_spec(basis, pair));
}

// ---------------------------------------------------------------------------
// Product states

namespace {

struct LocalFactors {
    ComplexVector alice;
    ComplexVector bob;
};

std::optional<ProtocolChild> product_split(const std::vector<LocalFactors>& factors, Party first, std::size_t dim_first,
                                           std::size_t dim_second)
{
    auto mine = [&](std::size_t i) -> const ComplexVector& {
        return first == Party::Alice ? factors[i].alice : factors[i].bob;
    };
    auto theirs = [&](std::size_t i) -> const ComplexVector& {
        return first == Party::Alice ? factors[i].bob : factors[i].alice;
    };
    constexpr double same = 1.0 - 1e-9;
    constexpr double orth = 1e-9;

    std::vector<ComplexVector> reps;
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        bool placed = false;
        for (std::size_t g = 0; g < reps.size(); ++g) {
            const double ov = std::abs(reps[g].dot(mine(i)));
            if (ov >= same) {
                groups[g].push_back(i);
                placed = true;
                break;
            }
            if (ov > orth) {
                return std::nullopt;
            }
        }
        if (!placed) {
            reps.push_back(mine(i));
            groups.push_back({i});
        }
    }
    for (const auto& group : groups) {
        for (std::size_t a = 0; a < group.size(); ++a) {
            for (std::size_t b = a + 1; b < group.size(); ++b) {
                if (std::abs(theirs(group[a]).dot(theirs(group[b]))) > orth) {
                    return std::nullopt;
                }
            }
        }
    }

    // Complete the representatives to an orthonormal basis of the first party's space.
    std::vector<ComplexVector> basis;
    for (const auto& r : reps) {
        ComplexVector v = r;
        for (const auto& q : basis) {
            v -= q.dot(v) * q;
        }
        basis.push_back(v.normalized());
    }
    for (std::size_t j = 0; j < dim_first && basis.size() < dim_first; ++j) {
        ComplexVector v = ComplexVector::Unit(dim_first, j);
        for (const auto& q : basis) {
            v -= q.dot(v) * q;
        }
        if (v.norm() > 1e-6) {
            basis.push_back(v.normalized());
        }
    }
    ComplexMatrix u(dim_first, dim_first);
    for (std::size_t j = 0; j < dim_first; ++j) {
        u.col(j) = basis[j];
    }

    std::vector<ProtocolChild> children;
    for (std::size_t x = 0; x < dim_first; ++x) {
        std::vector<LabeledVector> labeled;
        if (x < groups.size()) {
            for (std::size_t i : groups[x]) {
                labeled.push_back({i, theirs(i)});
            }
        }
        LabeledPovm second = discriminating_povm(labeled, dim_second);
        std::vector<ProtocolChild> leaves;
        for (std::size_t label : second.labels) {
            leaves.emplace_back(Guess{label});
        }
        children.push_back(make_node(other(first), std::move(second.povm), std::move(leaves)));
    }
    return make_node(first, Povm::projective(u), std::move(children));
}

} // namespace

std::optional<LoccProtocol> product_state_protocol(const StateEnsemble& ensemble)
{
    std::vector<LocalFactors> factors;
    for (const auto& s : ensemble.states()) {
        const SchmidtDecomposition sd = schmidt(s);
        if (sd.max_coefficient() < 1.0 - tol::structural) {
            return std::nullopt;
        }
        factors.push_back({sd.left_vectors.col(0), sd.right_vectors.col(0)});
    }
    const std::size_t m = ensemble.dim_a();
    const std::size_t n = ensemble.dim_b();
    if (auto root = product_split(factors, Party::Alice, m, n)) {
        return LoccProtocol(m, n, *root);
    }
    if (auto root = product_split(factors, Party::Bob, n, m)) {
        return LoccProtocol(m, n, *root);
    }
    return std::nullopt;
}

} // namespace locc
