#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "theonlab/density_calc.hpp"
#include "theonlab/theon.hpp"

namespace theonlab {

// Built-in theon constructors.
Theon qr_hypergraphon(int k, double p);                           // x_{[k]} < p
Theon qr_colored_hypergraphon(int k, const std::vector<Rat>& p);  // interval partition of x_{[k]}
Theon skew_graphon(double p);                                     // frac(x_1 + x_2 + x_12) < p
Theon linear_order_theon();                                       // x_{1} < x_{2}
Theon qr_tournamon(int k);                                        // x_{[k]} < 1/2 <-> sgn(sigma_x) = 1
Theon np_tournamon(int k, double p);                              // x_{[k]} < p <-> sgn(sigma_x) = 1
Theon np_tournamon_order(int k, double p);                        // N^{p,<}: tournament aligned with its order factor
Theon dev_not_uinduce(int k, double p);
Theon independence_not_disc(int k, int ell, double p);
Theon independence_disc_adversary(int k, int ell, double p);      // aligned Disc coupling
Theon dev_coloring_coupling(int k, double p, int low_color);      // Dev theon + half-interval 2-coloring

// `name:params` lookup, e.g. "qr-tournamon:k=2", "skew-graphon:p=0.3",
// "qr-colored-hypergraphon:k=2,c=2,p=3/10+7/10". "@file.json" loads a custom
// expression file; "theta-qr:table=FILE,p=..." builds from an action table.
Theon make_theon(const std::string& spec);

Theory make_theory(const std::string& spec); // "graph", "hypergraph:k=3", ...

Theon theon_from_json(const nlohmann::json& j);
nlohmann::json theon_to_json(const Theon& t);

Interpretation make_interpretation(const std::string& spec); // "alternation:ell=1", ...

struct RegisteredPair {
    std::string name;
    Interpretation interpretation;
    Theon theon;
};
// (interpretation, theon) pairs whose two evaluation paths must agree
// exactly on shared theta.
std::vector<RegisteredPair> registered_pairs();

nlohmann::json catalog_json(); // names + parameter signatures of everything addressable
std::string catalog_text();

} // namespace theonlab
