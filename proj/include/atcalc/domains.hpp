#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "atcalc/diagram.hpp"
#include "atcalc/intlin.hpp"
#include "atcalc/rational.hpp"

namespace atc {

/* Sparse integer combination of regions. */
struct Domain {
    std::map<std::string, std::int64_t> coeff;

    std::int64_t at(const std::string& region) const {
        auto it = coeff.find(region);
        return it == coeff.end() ? 0 : it->second;
    }
    bool operator==(const Domain& o) const { return coeff == o.coeff; }
};

/* Signed 0-chain of intersection points, collapsed by point. */
using PointChain = std::map<std::string, std::int64_t>;

enum class CurveKind { alpha, beta };

Rational region_euler_measure(const Region& r);
Rational euler_measure(const HeegaardDiagram& d, const Domain& dom);
Rational point_measure(const HeegaardDiagram& d, const Domain& dom,
                       const std::string& point_id);
Rational generator_measure(const HeegaardDiagram& d, const Domain& dom,
                           const Generator& g); /* n_x(D) */

PointChain domain_boundary(const HeegaardDiagram& d, const Domain& dom,
                           CurveKind kind);

/* Chain of the generator's points with coefficient +1 each. */
PointChain generator_chain(const HeegaardDiagram& d, const Generator& g);

struct ConnectingDomains {
    Domain particular;
    std::vector<Domain> periodic_basis;
};

/* Domains leading from x to y: alpha boundary chain equals y - x.
   The first argument is the source generator. */
std::optional<ConnectingDomains> connecting_domains(const HeegaardDiagram& d,
                                                    const Generator& x,
                                                    const Generator& y);

/* Lattice basis of domains with empty alpha- and beta-boundary. */
std::vector<Domain> periodic_domains(const HeegaardDiagram& d);

bool check_admissible(const HeegaardDiagram& d);

/* e(D) + n_x(D) + n_y(D); requires D to lead from x to y. */
Rational maslov_index(const HeegaardDiagram& d, const Domain& dom,
                      const Generator& x, const Generator& y);

/* n_x + n_y - e + |x| - |y|; requires D from x to y, not touching the
   suture (zero on on_boundary regions). */
std::int64_t j_plus_general(const HeegaardDiagram& d, const Domain& dom,
                            const Generator& x, const Generator& y);

/* Internal: rows = points (id order), cols = regions (input order); entry =
   coefficient of the point in the alpha boundary of the region. */
IntMat point_chain_matrix(const HeegaardDiagram& d);

} // namespace atc
