#include "theonlab/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace theonlab {

namespace {

std::uint32_t full_mask(int k) { return (1u << k) - 1; }

TheonExpr tournament_expr(int k, double p) {
    return TheonExpr::equiv(TheonExpr::thresh(full_mask(k), Cmp::Lt, p), TheonExpr::sign());
}

} // namespace

Theon qr_hypergraphon(int k, double p) {
    Theon t;
    t.name = (k == 2 ? "qr-graphon:p=" : "qr-hypergraphon:k=" + std::to_string(k) + ",p=") + std::to_string(p);
    t.theory = theory_hypergraph(k);
    t.peons.push_back(TheonExpr::thresh(full_mask(k), Cmp::Lt, p));
    t.declared_rank = k;
    t.declared_independence = k - 1;
    t.validate();
    return t;
}

Theon qr_colored_hypergraphon(int k, const std::vector<Rat>& p) {
    std::vector<std::string> names;
    for (size_t i = 1; i <= p.size(); ++i) names.push_back("E" + std::to_string(i));
    ActionTable at = ActionTable::trivial(k, std::move(names));
    at.validate_probabilities(p);
    // trivial action: the sigma_x dispatch collapses to a plain interval
    // partition of the top coordinate
    Theon t;
    t.name = "qr-colored-hypergraphon:k=" + std::to_string(k) + ",c=" + std::to_string(p.size());
    t.theory = theory_of_action(at);
    t.theory.name = t.name;
    t.dims = 1;
    Rat acc(0);
    std::vector<double> cum(p.size() + 1, 0.0);
    for (size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cum[i + 1] = rat_double(acc);
    }
    for (size_t i = 0; i < p.size(); ++i) {
        std::vector<TheonExpr> kids;
        if (i > 0) kids.push_back(TheonExpr::thresh(full_mask(k), Cmp::Ge, cum[i]));
        kids.push_back(TheonExpr::thresh(full_mask(k), Cmp::Lt, cum[i + 1]));
        t.peons.push_back(TheonExpr::conj(std::move(kids)));
    }
    t.declared_rank = k;
    t.declared_independence = k - 1;
    t.validate();
    return t;
}

Theon skew_graphon(double p) {
    Theon t;
    t.name = "skew-graphon:p=" + std::to_string(p);
    t.theory = theory_graph();
    t.peons.push_back(TheonExpr::sum_mod({{0b01, 0}, {0b10, 0}, {0b11, 0}}, p));
    t.declared_rank = 2;
    // representation reads first-order coordinates; 0-independent only
    t.declared_independence = 0;
    t.validate();
    return t;
}

Theon linear_order_theon() {
    Theon t;
    t.name = "linear-order";
    t.theory = theory_linear_order();
    t.peons.push_back(TheonExpr::coord_lt(0b01, 0b10));
    t.declared_rank = 1;
    t.declared_independence = 0;
    t.validate();
    return t;
}

Theon qr_tournamon(int k) {
    Theon t;
    t.name = "qr-tournamon:k=" + std::to_string(k);
    t.theory = theory_tournament(k);
    t.peons.push_back(tournament_expr(k, 0.5));
    t.declared_rank = k;
    t.declared_independence = 0;
    t.validate();
    return t;
}

Theon np_tournamon(int k, double p) {
    Theon t;
    t.name = "np-tournamon:k=" + std::to_string(k) + ",p=" + std::to_string(p);
    t.theory = theory_tournament(k);
    t.peons.push_back(tournament_expr(k, p));
    t.declared_rank = k;
    t.declared_independence = 0;
    t.validate();
    return t;
}

Theon np_tournamon_order(int k, double p) {
    Theon t;
    t.name = "np-tournamon-order:k=" + std::to_string(k) + ",p=" + std::to_string(p);
    t.theory = union_theory(theory_tournament(k), theory_linear_order());
    t.theory.name = t.name;
    t.peons.push_back(tournament_expr(k, p));
    t.peons.push_back(TheonExpr::coord_lt(0b01, 0b10));
    t.coupling_blocks = {1, 1};
    t.declared_rank = k;
    t.validate();
    return t;
}

Theon dev_not_uinduce(int k, double p) {
    if (k < 2) throw std::invalid_argument("dev-not-uinduce: k must be >= 2");
    Theon t;
    t.name = "dev-not-uinduce:k=" + std::to_string(k) + ",p=" + std::to_string(p);
    t.theory = theory_hypergraph(k);
    std::vector<TheonExpr> low, high;
    low.push_back(TheonExpr::min_first(Cmp::Lt, 0.5));
    low.push_back(TheonExpr::thresh(full_mask(k), Cmp::Lt, p));
    high.push_back(TheonExpr::min_first(Cmp::Ge, 0.5));
    if (k >= 3) {
        // sum of the facet coordinates mod 1; the free facet has order >= 2
        std::vector<std::pair<std::uint32_t, int>> facets;
        for (int v = 0; v < k; ++v) facets.emplace_back(full_mask(k) & ~(1u << v), 0);
        high.push_back(TheonExpr::sum_mod(std::move(facets), p));
    } else {
        // k = 2: the facets are first-order and collide with the branch
        // indicator, so the mod-sum loses the constant conditional; use a
        // zero-row-margin checkerboard modulation of the top threshold
        // instead: x_{12} < p + (p/2)*chi, chi = +1 on matching quarter
        // halves of [1/2,1)^2 and -1 otherwise. Row averages stay p, so the
        // edge event is independent of each first-order coordinate, while
        // the all-high conditional graphon has triangle density p^3+(p/2)^3.
        const double eps = p / 2;
        auto cell = [&](std::uint32_t v, bool upper) {
            return upper ? TheonExpr::thresh(v, Cmp::Ge, 0.75) : TheonExpr::thresh(v, Cmp::Lt, 0.75);
        };
        std::vector<TheonExpr> cells;
        for (bool u1 : {false, true})
            for (bool u2 : {false, true}) {
                std::vector<TheonExpr> kids;
                kids.push_back(cell(0b01, u1));
                kids.push_back(cell(0b10, u2));
                kids.push_back(TheonExpr::thresh(full_mask(k), Cmp::Lt, u1 == u2 ? p + eps : p - eps));
                cells.push_back(TheonExpr::conj(std::move(kids)));
            }
        high.push_back(TheonExpr::disj(std::move(cells)));
    }
    std::vector<TheonExpr> branches;
    branches.push_back(TheonExpr::conj(std::move(low)));
    branches.push_back(TheonExpr::conj(std::move(high)));
    t.peons.push_back(TheonExpr::disj(std::move(branches)));
    t.declared_rank = k;
    t.validate();
    return t;
}

Theon independence_not_disc(int k, int ell, double p) {
    if (ell < 1 || ell >= k) throw std::invalid_argument("independence-not-disc: need 1 <= ell < k");
    Theon t;
    t.name = "independence-not-disc:k=" + std::to_string(k) + ",ell=" + std::to_string(ell) + ",p=" + std::to_string(p);
    t.theory = theory_hypergraph(k);
    std::vector<TheonExpr> kids;
    for (std::uint32_t mask = 1; mask <= full_mask(k); ++mask)
        if (std::popcount(mask) == ell + 1) kids.push_back(TheonExpr::thresh(mask, Cmp::Lt, p));
    t.peons.push_back(TheonExpr::conj(std::move(kids)));
    t.declared_rank = ell + 1;
    t.declared_independence = ell;
    t.validate();
    return t;
}

Theon independence_disc_adversary(int k, int ell, double p) {
    Theon base = independence_not_disc(k, ell, p);
    Theon t;
    t.name = "independence-disc-adversary:k=" + std::to_string(k) + ",ell=" + std::to_string(ell) + ",p=" + std::to_string(p);
    Theory aux = pure_theory(Signature{{{"P1", ell + 1}}}, "antichain");
    t.theory = union_theory(base.theory, aux);
    t.theory.name = t.name;
    t.peons = base.peons;
    // aligned with the edge peon on the same factor
    t.peons.push_back(TheonExpr::thresh(full_mask(ell + 1), Cmp::Ge, p));
    t.coupling_blocks = {1, 1};
    t.validate();
    return t;
}

Theon dev_coloring_coupling(int k, double p, int low_color) {
    if (low_color != 1 && low_color != 2) throw std::invalid_argument("dev_coloring_coupling: low_color must be 1 or 2");
    Theon base = dev_not_uinduce(k, p);
    Theon t;
    t.name = "dev-coloring:k=" + std::to_string(k) + ",p=" + std::to_string(p) + ",low=" + std::to_string(low_color);
    t.theory = union_theory(base.theory, theory_coloring(2));
    t.theory.name = t.name;
    t.peons = base.peons;
    TheonExpr low_half = TheonExpr::thresh(0b1, Cmp::Lt, 0.5);
    TheonExpr high_half = TheonExpr::thresh(0b1, Cmp::Ge, 0.5);
    if (low_color == 1) {
        t.peons.push_back(low_half);
        t.peons.push_back(high_half);
    } else {
        t.peons.push_back(high_half);
        t.peons.push_back(low_half);
    }
    t.coupling_blocks = {1, 2};
    t.validate();
    return t;
}

namespace {

struct Params {
    std::map<std::string, std::string> kv;

    bool has(const std::string& k) const { return kv.count(k) > 0; }
    std::string str(const std::string& k) const {
        auto it = kv.find(k);
        if (it == kv.end()) throw std::invalid_argument("missing parameter '" + k + "'");
        return it->second;
    }
    int integer(const std::string& k) const { return std::stoi(str(k)); }
    int integer(const std::string& k, int dflt) const { return has(k) ? integer(k) : dflt; }
    double real(const std::string& k) const { return rat_double(parse_rat(str(k))); }
    std::vector<Rat> rat_vector(const std::string& k) const {
        std::vector<Rat> out;
        std::stringstream ss(str(k));
        std::string item;
        while (std::getline(ss, item, '+')) out.push_back(parse_rat(item));
        return out;
    }
};

std::pair<std::string, Params> split_spec(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    Params params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("bad parameter '" + item + "' in '" + spec + "'");
            params.kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    return {name, params};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace

Theon make_theon(const std::string& spec) {
    if (!spec.empty() && spec[0] == '@') {
        auto j = nlohmann::json::parse(read_file(spec.substr(1)));
        return theon_from_json(j);
    }
    auto [name, params] = split_spec(spec);
    if (name == "qr-graphon") return qr_hypergraphon(2, params.real("p"));
    if (name == "qr-hypergraphon") return qr_hypergraphon(params.integer("k"), params.real("p"));
    if (name == "qr-colored-hypergraphon") {
        auto p = params.rat_vector("p");
        if (params.has("c") && params.integer("c") != (int)p.size())
            throw std::invalid_argument("qr-colored-hypergraphon: c does not match the length of p");
        return qr_colored_hypergraphon(params.integer("k"), p);
    }
    if (name == "skew-graphon") return skew_graphon(params.real("p"));
    if (name == "linear-order") return linear_order_theon();
    if (name == "qr-tournamon") return qr_tournamon(params.integer("k", 2));
    if (name == "np-tournamon") return np_tournamon(params.integer("k", 2), params.real("p"));
    if (name == "np-tournamon-order") return np_tournamon_order(params.integer("k", 2), params.real("p"));
    if (name == "dev-not-uinduce") return dev_not_uinduce(params.integer("k"), params.real("p"));
    if (name == "independence-not-disc")
        return independence_not_disc(params.integer("k"), params.integer("ell"), params.real("p"));
    if (name == "independence-disc-adversary")
        return independence_disc_adversary(params.integer("k"), params.integer("ell"), params.real("p"));
    if (name == "dev-coloring")
        return dev_coloring_coupling(params.integer("k"), params.real("p"), params.integer("low", 1));
    if (name == "theta-qr") {
        auto j = nlohmann::json::parse(read_file(params.str("table")));
        ActionTable at = ActionTable::from_json(j);
        std::vector<Rat> p;
        if (params.has("p"))
            p = params.rat_vector("p");
        else if (j.contains("p"))
            for (const auto& q : j.at("p")) p.push_back(parse_rat(q.get<std::string>()));
        else
            throw std::invalid_argument("theta-qr: probabilities required (p= or the table's 'p' field)");
        return theta_qr_theon(at, p);
    }
    throw std::invalid_argument("unknown theon '" + name + "' (see `theonlab list`)");
}

Theory make_theory(const std::string& spec) {
    auto [name, params] = split_spec(spec);
    if (name == "graph") return theory_graph();
    if (name == "hypergraph") return theory_hypergraph(params.integer("k"));
    if (name == "linear-order") return theory_linear_order();
    if (name == "coloring") return theory_coloring(params.integer("c"));
    if (name == "tournament") return theory_tournament(params.integer("k", 2));
    throw std::invalid_argument("unknown theory '" + name + "'");
}

Theon theon_from_json(const nlohmann::json& j) {
    Theon t;
    t.name = j.value("name", std::string("custom"));
    t.theory = make_theory(j.at("theory").get<std::string>());
    t.dims = j.value("dims", 1);
    t.peons.resize(t.theory.sig.preds.size(), TheonExpr::constant(false));
    for (const auto& [pred, expr] : j.at("peons").items()) {
        int p = t.theory.sig.index_of(pred);
        if (p < 0) throw std::invalid_argument("theon file: unknown predicate '" + pred + "'");
        t.peons[p] = expr_from_json(expr);
    }
    if (j.contains("rank")) t.declared_rank = j.at("rank").get<int>();
    if (j.contains("independence")) t.declared_independence = j.at("independence").get<int>();
    t.validate();
    return t;
}

nlohmann::json theon_to_json(const Theon& t) {
    nlohmann::json peons = nlohmann::json::object();
    for (size_t p = 0; p < t.peons.size(); ++p) peons[t.theory.sig.preds[p].name] = expr_to_json(t.peons[p]);
    nlohmann::json j{{"name", t.name}, {"theory", t.theory.name}, {"dims", t.dims}, {"peons", peons}};
    if (t.declared_rank) j["rank"] = *t.declared_rank;
    if (t.declared_independence) j["independence"] = *t.declared_independence;
    return j;
}

Interpretation make_interpretation(const std::string& spec) {
    auto [name, params] = split_spec(spec);
    if (name == "alternation") return alternation_interpretation(params.integer("ell", 1));
    if (name == "arc-orientation") return arc_orientation_interpretation(params.integer("ell", 1));
    if (name == "complement") return complement_interpretation(params.integer("k", 2));
    if (name == "identity") return identity_interpretation(make_theory(params.str("theory")));
    throw std::invalid_argument("unknown interpretation '" + name + "'");
}

std::vector<RegisteredPair> registered_pairs() {
    std::vector<RegisteredPair> out;
    out.push_back({"alternation-on-qr-tournamon", alternation_interpretation(1), qr_tournamon(2)});
    out.push_back({"alternation-on-np-tournamon", alternation_interpretation(1), np_tournamon(2, 0.3)});
    {
        Theon coupling = independent_coupling({qr_hypergraphon(2, 0.3), linear_order_theon()});
        out.push_back({"arc-orientation-on-graphon-order", arc_orientation_interpretation(1), coupling});
        out.push_back({"erase-graph-factor", coupling_erasing_interpretation(coupling, 0), coupling});
        out.push_back({"erase-order-factor", coupling_erasing_interpretation(coupling, 1), coupling});
    }
    out.push_back({"complement-on-qr-graphon", complement_interpretation(2), qr_hypergraphon(2, 0.5)});
    out.push_back({"identity-on-skew-graphon", identity_interpretation(theory_graph()), skew_graphon(0.3)});
    out.push_back({"alternation-order-on-np",
                   union_interpretation(alternation_interpretation(1), identity_interpretation(theory_linear_order())),
                   np_tournamon_order(2, 0.3)});
    return out;
}

nlohmann::json catalog_json() {
    nlohmann::json j;
    j["theons"] = nlohmann::json::array({
        {{"name", "qr-graphon"}, {"params", "p"}},
        {{"name", "qr-hypergraphon"}, {"params", "k,p"}},
        {{"name", "qr-colored-hypergraphon"}, {"params", "k,p=p1+p2+...(,c)"}},
        {{"name", "skew-graphon"}, {"params", "p"}},
        {{"name", "linear-order"}, {"params", ""}},
        {{"name", "qr-tournamon"}, {"params", "k"}},
        {{"name", "np-tournamon"}, {"params", "k,p"}},
        {{"name", "np-tournamon-order"}, {"params", "k,p"}},
        {{"name", "dev-not-uinduce"}, {"params", "k,p"}},
        {{"name", "independence-not-disc"}, {"params", "k,ell,p"}},
        {{"name", "independence-disc-adversary"}, {"params", "k,ell,p"}},
        {{"name", "dev-coloring"}, {"params", "k,p(,low)"}},
        {{"name", "theta-qr"}, {"params", "table=FILE(,p)"}},
        {{"name", "@FILE.json"}, {"params", "custom expression file"}},
    });
    j["theories"] = nlohmann::json::array({
        {{"name", "graph"}, {"params", ""}},
        {{"name", "hypergraph"}, {"params", "k"}},
        {{"name", "linear-order"}, {"params", ""}},
        {{"name", "coloring"}, {"params", "c"}},
        {{"name", "tournament"}, {"params", "k"}},
    });
    j["interpretations"] = nlohmann::json::array({
        {{"name", "alternation"}, {"params", "ell"}},
        {{"name", "arc-orientation"}, {"params", "ell"}},
        {{"name", "complement"}, {"params", "k"}},
        {{"name", "identity"}, {"params", "theory"}},
    });
    j["properties"] = nlohmann::json::array(
        {"independence", "rank", "weak-independence", "locality", "clique-disc", "disc", "coupleability"});
    j["experiments"] = nlohmann::json::array({
        {{"name", "sep-ucouple-independence"}, {"params", "--ell L"}},
        {{"name", "sep-uinduce-ucouple"}, {"params", "--ell L --p P"}},
        {{"name", "sep-dev-uinduce"}, {"params", "--k K --p P"}},
        {{"name", "sep-independence-disc"}, {"params", "--k K --ell L --p P"}},
        {{"name", "sep-uinduce-ucouple-order"}, {"params", ""}},
        {{"name", "alternating-census"}, {"params", "--k K"}},
        {{"name", "self-coupling"}, {"params", "--theon NAME"}},
    });
    return j;
}

std::string catalog_text() {
    auto j = catalog_json();
    std::ostringstream os;
    for (const auto& section : {"theons", "theories", "interpretations", "experiments"}) {
        os << section << ":\n";
        for (const auto& item : j[section])
            os << "  " << item["name"].get<std::string>()
               << (item["params"].get<std::string>().empty() ? "" : "  [" + item["params"].get<std::string>() + "]") << "\n";
    }
    os << "properties:\n";
    for (const auto& p : j["properties"]) os << "  " << p.get<std::string>() << "\n";
    return os.str();
}

} // namespace theonlab
