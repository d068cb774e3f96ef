#include "atcalc/domains.hpp"

#include <stdexcept>

namespace atc {

Rational region_euler_measure(const Region& r) {
    return Rational(r.chi) - Rational(std::int64_t(r.corners.size()), 4);
}

Rational euler_measure(const HeegaardDiagram& d, const Domain& dom) {
    Rational e;
    for (auto& [id, c] : dom.coeff) {
        const Region& r = d.region(id);
        e += Rational(c) * region_euler_measure(r);
    }
    return e;
}

Rational point_measure(const HeegaardDiagram& d, const Domain& dom,
                       const std::string& point_id) {
    const auto& p = d.point(point_id);
    Rational m;
    for (int q = 0; q < 4; ++q)
        m += Rational(dom.at(p.quad[std::size_t(q)]), 4);
    return m;
}

Rational generator_measure(const HeegaardDiagram& d, const Domain& dom,
                           const Generator& g) {
    Rational m;
    for (int pi : g.pt)
        m += point_measure(d, dom, d.points[std::size_t(pi)].id);
    return m;
}

namespace {

/* coefficient of point p in the alpha boundary chain of a unit of region R:
   +1 per NW/SE quadrant of p lying in R, -1 per NE/SW */
std::int64_t alpha_corner_sign(Quadrant q) {
    return (q == Quadrant::NW || q == Quadrant::SE) ? 1 : -1;
}

} // namespace

IntMat point_chain_matrix(const HeegaardDiagram& d) {
    IntMat m(d.points.size(), IntVec(d.regions.size(), 0));
    for (std::size_t i = 0; i < d.points.size(); ++i)
        for (int q = 0; q < 4; ++q) {
            int rj = d.region_index.at(d.points[i].quad[std::size_t(q)]);
            m[i][std::size_t(rj)] += alpha_corner_sign(Quadrant(q));
        }
    return m;
}

PointChain domain_boundary(const HeegaardDiagram& d, const Domain& dom,
                           CurveKind kind) {
    PointChain out;
    for (auto& p : d.points) {
        std::int64_t c = 0;
        for (int q = 0; q < 4; ++q)
            c += alpha_corner_sign(Quadrant(q)) * dom.at(p.quad[std::size_t(q)]);
        if (kind == CurveKind::beta) c = -c;
        if (c != 0) out[p.id] = c;
    }
    return out;
}

PointChain generator_chain(const HeegaardDiagram& d, const Generator& g) {
    PointChain out;
    for (int pi : g.pt)
        out[d.points[std::size_t(pi)].id] += 1;
    return out;
}

namespace {

Domain domain_from_vec(const HeegaardDiagram& d, const IntVec& v) {
    Domain dom;
    for (std::size_t j = 0; j < v.size(); ++j)
        if (v[j] != 0) dom.coeff[d.regions[j].id] = v[j];
    return dom;
}

} // namespace

std::optional<ConnectingDomains> connecting_domains(const HeegaardDiagram& d,
                                                    const Generator& x,
                                                    const Generator& y) {
    IntMat m = point_chain_matrix(d);
    IntVec rhs(d.points.size(), 0);
    for (int pi : y.pt) rhs[std::size_t(pi)] += 1;
    for (int pi : x.pt) rhs[std::size_t(pi)] -= 1;
    auto sol = int_solve(m, rhs);
    if (!sol) return std::nullopt;
    ConnectingDomains out;
    out.particular = domain_from_vec(d, sol->particular);
    for (auto& k : sol->kernel)
        out.periodic_basis.push_back(domain_from_vec(d, k));
    return out;
}

std::vector<Domain> periodic_domains(const HeegaardDiagram& d) {
    std::vector<Domain> out;
    for (auto& k : int_kernel(point_chain_matrix(d)))
        out.push_back(domain_from_vec(d, k));
    return out;
}

bool check_admissible(const HeegaardDiagram& d) {
    /* periodic domains supported away from boundary and basepoint regions */
    std::vector<std::size_t> allowed;
    for (std::size_t j = 0; j < d.regions.size(); ++j)
        if (!d.regions[j].on_boundary && d.regions[j].basepoints == 0)
            allowed.push_back(j);
    IntMat full = point_chain_matrix(d);
    IntMat m(d.points.size(), IntVec(allowed.size(), 0));
    for (std::size_t i = 0; i < d.points.size(); ++i)
        for (std::size_t j = 0; j < allowed.size(); ++j)
            m[i][j] = full[i][allowed[j]];
    return !lattice_has_nonneg_nonzero(int_kernel(m));
}

namespace {

void require_connecting(const HeegaardDiagram& d, const Domain& dom,
                        const Generator& x, const Generator& y) {
    PointChain want = generator_chain(d, y);
    for (auto& [id, c] : generator_chain(d, x)) {
        want[id] -= c;
        if (want[id] == 0) want.erase(id);
    }
    if (domain_boundary(d, dom, CurveKind::alpha) != want)
        throw std::invalid_argument("domain does not connect the given generators");
}

} // namespace

Rational maslov_index(const HeegaardDiagram& d, const Domain& dom,
                      const Generator& x, const Generator& y) {
    require_connecting(d, dom, x, y);
    return euler_measure(d, dom) + generator_measure(d, dom, x) +
           generator_measure(d, dom, y);
}

std::int64_t j_plus_general(const HeegaardDiagram& d, const Domain& dom,
                            const Generator& x, const Generator& y) {
    require_connecting(d, dom, x, y);
    for (auto& [id, c] : dom.coeff)
        if (c != 0 && d.region(id).on_boundary)
            throw std::invalid_argument("domain touches the suture at region \"" + id + "\"");
    Rational v = generator_measure(d, dom, x) + generator_measure(d, dom, y) -
                 euler_measure(d, dom) +
                 Rational(cycle_count(d, x) - cycle_count(d, y));
    if (!v.is_integer())
        throw std::domain_error("J+ is not an integer for this domain");
    return v.num;
}

} // namespace atc
