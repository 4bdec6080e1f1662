#include "dilhom/coding.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace dilhom {

void address_check(const Address& addr, std::int64_t N) {
    if (addr.empty) return;
    for (size_t j = 0; j < addr.tail.size(); ++j) {
        int d = addr.tail[j];
        std::int64_t hi = j == 0 ? N - 1 : N;
        if (d < 1 || d > hi)
            throw std::invalid_argument("address: digit " + std::to_string(j + 1) + " out of range");
    }
}

static std::int64_t digit_at(const Address& a, int i) {
    return i == 0 ? a.mu0 : a.tail[static_cast<size_t>(i - 1)];
}

int address_eta(const Address& mu, const Address& nu) {
    if (mu.empty || nu.empty) throw std::invalid_argument("address_eta: empty address");
    int common = std::min(mu.depth(), nu.depth());
    for (int i = 0; i < common; ++i)
        if (digit_at(mu, i) != digit_at(nu, i)) return i;
    throw precision_exhausted("address_eta: addresses agree through the stored depths");
}

ExactDistance address_distance(const Address& mu, const Address& nu, double a, double b) {
    if (mu == nu) return ExactDistance::zero();
    if (mu.empty) return ExactDistance::geo(a, b, nu.mu0);
    if (nu.empty) return ExactDistance::geo(a, b, mu.mu0);
    int eta = address_eta(mu, nu); // depth-exhausted propagates
    if (eta == 0) return ExactDistance::geo(a, b, std::max(mu.mu0, nu.mu0));
    return ExactDistance::geo(a, b, mu.mu0 - eta + 1);
}

// ---------------------------------------------------------------------------
// Ball trees.
// ---------------------------------------------------------------------------

namespace {

struct GeoFamily {
    double a, b;
};

GeoFamily check_exact_ultrametric(const DistanceMatrix& m) {
    const std::int64_t n = m.n_points;
    GeoFamily fam{0, 0};
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            const auto& d = m.at(i, j);
            if (d.is_zero())
                throw std::invalid_argument("ball tree: duplicate points (zero distance) at " +
                                            std::to_string(i) + "," + std::to_string(j));
            if (d.kind != ExactDistance::Kind::Geo)
                throw std::invalid_argument("ball tree: distances must be exact Geo values");
            if (fam.b == 0)
                fam = {d.a, d.b};
            else if (d.a != fam.a || d.b != fam.b)
                throw std::invalid_argument("ball tree: mixed Geo families");
        }
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j)
            for (std::int64_t k = j + 1; k < n; ++k) {
                std::int64_t ij = m.at(i, j).k, jk = m.at(j, k).k, ik = m.at(i, k).k;
                if (ik > std::max(ij, jk) || ij > std::max(ik, jk) || jk > std::max(ij, ik))
                    throw invariant_violation("ball tree: non-ultrametric triple (" + std::to_string(i) +
                                              "," + std::to_string(j) + "," + std::to_string(k) + ")");
            }
    return fam;
}

// Partition members into balls of radius exponent `level`; equivalence
// classes ordered by least member index.
std::vector<std::vector<int>> split_at_level(const DistanceMatrix& m, const std::vector<int>& members,
                                             std::int64_t level) {
    std::vector<std::vector<int>> groups;
    for (int p : members) {
        bool placed = false;
        for (auto& g : groups)
            if (m.at(g.front(), p).k <= level) {
                g.push_back(p);
                placed = true;
                break;
            }
        if (!placed) groups.push_back({p});
    }
    // members are scanned in ascending order, so groups are already ordered
    // by their least element
    return groups;
}

BallNode build_ball(const DistanceMatrix& m, std::vector<int> members, std::int64_t level,
                    int branch_index) {
    BallNode node;
    node.center = members.front();
    node.level = level;
    node.branch_index = branch_index;
    node.points = std::move(members);
    if (node.points.size() == 1) return node;
    auto groups = split_at_level(m, node.points, level - 1);
    int q = 1;
    for (auto& g : groups) node.children.push_back(build_ball(m, std::move(g), level - 1, q++));
    return node;
}

} // namespace

BallTree build_ball_tree(const DistanceMatrix& m, int root) {
    if (m.n_points < 1) throw std::invalid_argument("ball tree: empty sample");
    if (root < 0 || root >= m.n_points) throw std::invalid_argument("ball tree: root index out of range");
    BallTree tree;
    tree.root = root;
    if (m.n_points == 1) {
        tree.a = 1;
        tree.b = 2;
        return tree;
    }
    GeoFamily fam = check_exact_ultrametric(m);
    tree.a = fam.a;
    tree.b = fam.b;

    // realized sphere levels around the root, descending
    std::vector<std::int64_t> levels;
    for (std::int64_t i = 0; i < m.n_points; ++i)
        if (i != root) levels.push_back(m.at(root, i).k);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    for (std::int64_t ell : levels) {
        BallNode sphere;
        sphere.center = root;
        sphere.level = ell;
        sphere.branch_index = 0;
        for (std::int64_t i = 0; i < m.n_points; ++i)
            if (i != root && m.at(root, i).k == ell) sphere.points.push_back(static_cast<int>(i));
        auto groups = split_at_level(m, sphere.points, ell - 1);
        int q = 1;
        for (auto& g : groups) sphere.children.push_back(build_ball(m, std::move(g), ell - 1, q++));
        tree.spheres.push_back(std::move(sphere));
    }
    return tree;
}

static void collect_addresses(const BallNode& node, Address prefix, std::vector<Address>& out) {
    if (node.children.empty()) {
        out[static_cast<size_t>(node.points.front())] = prefix;
        return;
    }
    for (const auto& child : node.children) {
        Address next = prefix;
        next.tail.push_back(child.branch_index);
        collect_addresses(child, std::move(next), out);
    }
}

std::vector<Address> encode_points(const BallTree& tree) {
    std::vector<Address> out(static_cast<size_t>(0));
    std::int64_t n = 0;
    for (const auto& s : tree.spheres) n += static_cast<std::int64_t>(s.points.size());
    out.assign(static_cast<size_t>(n + 1), Address{});
    out[static_cast<size_t>(tree.root)] = Address{}; // empty
    for (const auto& sphere : tree.spheres) {
        for (const auto& child : sphere.children) {
            Address prefix;
            prefix.empty = false;
            prefix.mu0 = sphere.level;
            prefix.tail.push_back(child.branch_index);
            collect_addresses(child, std::move(prefix), out);
        }
    }
    return out;
}

CodingReport verify_coding(const DistanceMatrix& m, const std::vector<Address>& addrs, double a,
                           double b) {
    CodingReport rep;
    const std::int64_t n = m.n_points;
    if (static_cast<std::int64_t>(addrs.size()) != n)
        throw std::invalid_argument("verify_coding: address count mismatch");
    for (std::int64_t i = 0; i < n; ++i)
        for (std::int64_t j = i + 1; j < n; ++j) {
            ++rep.pairs_checked;
            auto D = address_distance(addrs[static_cast<size_t>(i)], addrs[static_cast<size_t>(j)], a, b);
            if (!exact_eq(D, m.at(i, j)))
                rep.violations.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Canonical coding of F_{n,a,b}.
// ---------------------------------------------------------------------------

static std::int64_t packed_coeff(const Space& space, const FieldPoint& x, std::int64_t exponent) {
    std::int64_t packed = 0, radix = 1;
    for (size_t s = 0; s < space.factors.size(); ++s) {
        packed += ff_index(space.factors[s], x.factors[s].coeff_at(exponent)) * radix;
        radix *= space.factors[s].order();
    }
    return packed;
}

Address canonical_encode(const Space& space, const Point& x, int digits) {
    if (space.type() != 1) throw std::invalid_argument("canonical_encode: type 1 space required");
    const auto* fx = std::get_if<FieldPoint>(&x);
    if (!fx) throw std::invalid_argument("canonical_encode: field point required");
    if (digits < 1) throw std::invalid_argument("canonical_encode: digits >= 1 required");

    bool all_zero = true;
    std::int64_t v = 0;
    bool have = false;
    for (const auto& s : fx->factors) {
        Valuation val = ls_valuation(s);
        if (val.infinite) continue;
        all_zero = false;
        if (!have || val.value < v) {
            v = val.value;
            have = true;
        }
    }
    if (all_zero) return Address{};

    Address addr;
    addr.empty = false;
    addr.mu0 = -v;
    for (int j = 1; j <= digits; ++j) {
        std::int64_t packed = packed_coeff(space, *fx, v + j - 1);
        addr.tail.push_back(static_cast<int>(j == 1 ? packed : packed + 1));
    }
    return addr;
}

Point canonical_decode(const Space& space, const Address& addr, int digits) {
    if (space.type() != 1) throw std::invalid_argument("canonical_decode: type 1 space required");
    address_check(addr, space.as1().n);
    if (addr.empty) return space_origin(space);
    std::int64_t window = std::max<std::int64_t>(digits, static_cast<std::int64_t>(addr.tail.size()));
    std::int64_t v = -addr.mu0;
    FieldPoint fp;
    for (const auto& f : space.factors) {
        LaurentSeries s;
        s.spec = f;
        s.v0 = v;
        s.coeffs.assign(static_cast<size_t>(window), ff_zero(f));
        fp.factors.push_back(std::move(s));
    }
    for (size_t j = 0; j < addr.tail.size(); ++j) {
        std::int64_t packed = j == 0 ? addr.tail[j] : addr.tail[j] - 1;
        for (size_t s = 0; s < space.factors.size(); ++s) {
            std::int64_t q = space.factors[s].order();
            fp.factors[s].coeffs[j] = ff_unindex(space.factors[s], packed % q);
            packed /= q;
        }
    }
    return fp;
}

} // namespace dilhom
