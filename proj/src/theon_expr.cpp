#include "theonlab/theon_expr.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace theonlab {

bool cmp_apply(Cmp c, double a, double b) {
    switch (c) {
        case Cmp::Lt: return a < b;
        case Cmp::Le: return a <= b;
        case Cmp::Gt: return a > b;
        case Cmp::Ge: return a >= b;
    }
    return false;
}

std::string cmp_str(Cmp c) {
    switch (c) {
        case Cmp::Lt: return "<";
        case Cmp::Le: return "<=";
        case Cmp::Gt: return ">";
        case Cmp::Ge: return ">=";
    }
    return "?";
}

Cmp cmp_parse(const std::string& s) {
    if (s == "<") return Cmp::Lt;
    if (s == "<=") return Cmp::Le;
    if (s == ">") return Cmp::Gt;
    if (s == ">=") return Cmp::Ge;
    throw std::invalid_argument("bad comparison op: '" + s + "'");
}

TheonExpr TheonExpr::constant(bool v) {
    TheonExpr e;
    e.kind = Kind::Const;
    e.value = v;
    return e;
}

TheonExpr TheonExpr::thresh(std::uint32_t set, Cmp cmp, double c, int factor) {
    TheonExpr e;
    e.kind = Kind::Thresh;
    e.set_a = set;
    e.cmp = cmp;
    e.c = c;
    e.factor = factor;
    return e;
}

TheonExpr TheonExpr::coord_lt(std::uint32_t a, std::uint32_t b, int factor) {
    TheonExpr e;
    e.kind = Kind::CoordLt;
    e.set_a = a;
    e.set_b = b;
    e.factor = factor;
    return e;
}

TheonExpr TheonExpr::sum_mod(std::vector<std::pair<std::uint32_t, int>> terms, double c) {
    TheonExpr e;
    e.kind = Kind::SumMod;
    e.terms = std::move(terms);
    e.c = c;
    return e;
}

TheonExpr TheonExpr::min_first(Cmp cmp, double c, int factor) {
    TheonExpr e;
    e.kind = Kind::MinFirst;
    e.cmp = cmp;
    e.c = c;
    e.factor = factor;
    return e;
}

TheonExpr TheonExpr::sign(int factor) {
    TheonExpr e;
    e.kind = Kind::Sign;
    e.factor = factor;
    return e;
}

TheonExpr TheonExpr::negation(TheonExpr arg) {
    TheonExpr e;
    e.kind = Kind::Not;
    e.kids.push_back(std::move(arg));
    return e;
}

TheonExpr TheonExpr::conj(std::vector<TheonExpr> kids) {
    if (kids.empty()) return constant(true);
    if (kids.size() == 1) return std::move(kids[0]);
    TheonExpr e;
    e.kind = Kind::And;
    e.kids = std::move(kids);
    return e;
}

TheonExpr TheonExpr::disj(std::vector<TheonExpr> kids) {
    if (kids.empty()) return constant(false);
    if (kids.size() == 1) return std::move(kids[0]);
    TheonExpr e;
    e.kind = Kind::Or;
    e.kids = std::move(kids);
    return e;
}

TheonExpr TheonExpr::equiv(TheonExpr a, TheonExpr b) {
    std::vector<TheonExpr> both, neither;
    both.push_back(a);
    both.push_back(b);
    neither.push_back(negation(std::move(a)));
    neither.push_back(negation(std::move(b)));
    std::vector<TheonExpr> kids;
    kids.push_back(conj(std::move(both)));
    kids.push_back(conj(std::move(neither)));
    return disj(std::move(kids));
}

TheonExpr TheonExpr::factor_proj(int offset, TheonExpr arg) {
    TheonExpr e;
    e.kind = Kind::FactorProj;
    e.factor = offset;
    e.kids.push_back(std::move(arg));
    return e;
}

TheonExpr TheonExpr::sub_point(std::vector<int> tuple, TheonExpr arg) {
    TheonExpr e;
    e.kind = Kind::SubPoint;
    e.tuple = std::move(tuple);
    e.kids.push_back(std::move(arg));
    return e;
}

int TheonExpr::max_position() const {
    auto top_bit = [](std::uint32_t m) { return m ? 32 - std::countl_zero(m) : 0; };
    int m = 0;
    switch (kind) {
        case Kind::Thresh: m = top_bit(set_a); break;
        case Kind::CoordLt: m = std::max(top_bit(set_a), top_bit(set_b)); break;
        case Kind::SumMod:
            for (const auto& [mask, f] : terms) m = std::max(m, top_bit(mask));
            break;
        case Kind::SubPoint:
            for (int v : tuple) m = std::max(m, v);
            return m; // positions inside the subtree are relative to `tuple`
        default: break;
    }
    for (const auto& k : kids) m = std::max(m, k.max_position());
    return m;
}

int TheonExpr::max_factor() const {
    int m = 0;
    switch (kind) {
        case Kind::Thresh:
        case Kind::CoordLt:
        case Kind::MinFirst:
        case Kind::Sign:
            m = factor;
            break;
        case Kind::SumMod:
            for (const auto& [mask, f] : terms) m = std::max(m, f);
            break;
        default: break;
    }
    for (const auto& k : kids) m = std::max(m, k.max_factor());
    if (kind == Kind::FactorProj) m += factor;
    return m;
}

namespace {

// position mask -> vertex mask through the tuple binding
inline std::uint32_t vertex_mask(std::uint32_t pos_mask, const Vertex* tuple) {
    std::uint32_t out = 0;
    while (pos_mask) {
        int i = std::countr_zero(pos_mask);
        out |= 1u << (tuple[i] - 1);
        pos_mask &= pos_mask - 1;
    }
    return out;
}

struct Ctx {
    const Point& pt;
    const Vertex* tuple;
    int arity;
    int factor_base;
};

bool eval_rec(const TheonExpr& e, const Ctx& c);

bool eval_sign(const Ctx& c) {
    // parity of the permutation sorting the first-order coordinates in
    // position order; +1 <-> even
    int inv = 0;
    for (int i = 0; i < c.arity; ++i) {
        const double xi = c.pt.coord(1u << (c.tuple[i] - 1), c.factor_base);
        for (int j = i + 1; j < c.arity; ++j) {
            const double xj = c.pt.coord(1u << (c.tuple[j] - 1), c.factor_base);
            if (xi > xj) ++inv; // ties count as in order (index order)
        }
    }
    return inv % 2 == 0;
}

bool eval_rec(const TheonExpr& e, const Ctx& c) {
    switch (e.kind) {
        case TheonExpr::Kind::Const:
            return e.value;
        case TheonExpr::Kind::Thresh:
            return cmp_apply(e.cmp, c.pt.coord(vertex_mask(e.set_a, c.tuple), c.factor_base + e.factor), e.c);
        case TheonExpr::Kind::CoordLt:
            return c.pt.coord(vertex_mask(e.set_a, c.tuple), c.factor_base + e.factor) <
                   c.pt.coord(vertex_mask(e.set_b, c.tuple), c.factor_base + e.factor);
        case TheonExpr::Kind::SumMod: {
            double s = 0;
            for (const auto& [mask, f] : e.terms) s += c.pt.coord(vertex_mask(mask, c.tuple), c.factor_base + f);
            return s - std::floor(s) < e.c;
        }
        case TheonExpr::Kind::MinFirst: {
            double m = 1.0;
            for (int i = 0; i < c.arity; ++i)
                m = std::min(m, c.pt.coord(1u << (c.tuple[i] - 1), c.factor_base + e.factor));
            return cmp_apply(e.cmp, m, e.c);
        }
        case TheonExpr::Kind::Sign: {
            Ctx cc{c.pt, c.tuple, c.arity, c.factor_base + e.factor};
            return eval_sign(cc);
        }
        case TheonExpr::Kind::Not:
            return !eval_rec(e.kids[0], c);
        case TheonExpr::Kind::And:
            for (const auto& k : e.kids)
                if (!eval_rec(k, c)) return false;
            return true;
        case TheonExpr::Kind::Or:
            for (const auto& k : e.kids)
                if (eval_rec(k, c)) return true;
            return false;
        case TheonExpr::Kind::FactorProj: {
            Ctx cc{c.pt, c.tuple, c.arity, c.factor_base + e.factor};
            return eval_rec(e.kids[0], cc);
        }
        case TheonExpr::Kind::SubPoint: {
            Vertex sub[32];
            for (size_t i = 0; i < e.tuple.size(); ++i) sub[i] = c.tuple[e.tuple[i] - 1];
            Ctx cc{c.pt, sub, (int)e.tuple.size(), c.factor_base};
            return eval_rec(e.kids[0], cc);
        }
    }
    return false;
}

std::vector<int> mask_to_set(std::uint32_t mask) {
    std::vector<int> out;
    while (mask) {
        out.push_back(std::countr_zero(mask) + 1);
        mask &= mask - 1;
    }
    return out;
}

std::uint32_t set_to_mask(const std::vector<int>& set) {
    std::uint32_t m = 0;
    for (int v : set) {
        if (v < 1 || v > 31) throw std::invalid_argument("position out of range in theon expression");
        m |= 1u << (v - 1);
    }
    if (m == 0) throw std::invalid_argument("theon expression references an empty subset");
    return m;
}

} // namespace

bool eval_expr(const TheonExpr& e, const Point& pt, const Vertex* tuple, int arity, int factor_base) {
    Ctx c{pt, tuple, arity, factor_base};
    return eval_rec(e, c);
}

nlohmann::json expr_to_json(const TheonExpr& e) {
    using nlohmann::json;
    json j;
    switch (e.kind) {
        case TheonExpr::Kind::Const:
            j = {{"op", "const"}, {"value", e.value}};
            break;
        case TheonExpr::Kind::Thresh:
            j = {{"op", "thresh"}, {"set", mask_to_set(e.set_a)}, {"cmp", cmp_str(e.cmp)}, {"c", e.c}, {"factor", e.factor}};
            break;
        case TheonExpr::Kind::CoordLt:
            j = {{"op", "coordlt"}, {"a", mask_to_set(e.set_a)}, {"b", mask_to_set(e.set_b)}, {"factor", e.factor}};
            break;
        case TheonExpr::Kind::SumMod: {
            json terms = json::array();
            for (const auto& [mask, f] : e.terms) terms.push_back({{"set", mask_to_set(mask)}, {"factor", f}});
            j = {{"op", "summod"}, {"terms", terms}, {"c", e.c}};
            break;
        }
        case TheonExpr::Kind::MinFirst:
            j = {{"op", "minfirst"}, {"cmp", cmp_str(e.cmp)}, {"c", e.c}, {"factor", e.factor}};
            break;
        case TheonExpr::Kind::Sign:
            j = {{"op", "sign"}, {"factor", e.factor}};
            break;
        case TheonExpr::Kind::Not:
            j = {{"op", "not"}, {"arg", expr_to_json(e.kids[0])}};
            break;
        case TheonExpr::Kind::And:
        case TheonExpr::Kind::Or: {
            json kids = nlohmann::json::array();
            for (const auto& k : e.kids) kids.push_back(expr_to_json(k));
            j = {{"op", e.kind == TheonExpr::Kind::And ? "and" : "or"}, {"args", kids}};
            break;
        }
        case TheonExpr::Kind::FactorProj:
            j = {{"op", "factor"}, {"offset", e.factor}, {"arg", expr_to_json(e.kids[0])}};
            break;
        case TheonExpr::Kind::SubPoint:
            j = {{"op", "sub"}, {"tuple", e.tuple}, {"arg", expr_to_json(e.kids[0])}};
            break;
    }
    return j;
}

TheonExpr expr_from_json(const nlohmann::json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "const") return TheonExpr::constant(j.at("value").get<bool>());
    if (op == "thresh")
        return TheonExpr::thresh(set_to_mask(j.at("set").get<std::vector<int>>()), cmp_parse(j.at("cmp").get<std::string>()),
                                 j.at("c").get<double>(), j.value("factor", 0));
    if (op == "coordlt")
        return TheonExpr::coord_lt(set_to_mask(j.at("a").get<std::vector<int>>()), set_to_mask(j.at("b").get<std::vector<int>>()),
                                   j.value("factor", 0));
    if (op == "summod") {
        std::vector<std::pair<std::uint32_t, int>> terms;
        for (const auto& t : j.at("terms")) terms.emplace_back(set_to_mask(t.at("set").get<std::vector<int>>()), t.value("factor", 0));
        return TheonExpr::sum_mod(std::move(terms), j.at("c").get<double>());
    }
    if (op == "minfirst") return TheonExpr::min_first(cmp_parse(j.at("cmp").get<std::string>()), j.at("c").get<double>(), j.value("factor", 0));
    if (op == "sign") return TheonExpr::sign(j.value("factor", 0));
    if (op == "not") return TheonExpr::negation(expr_from_json(j.at("arg")));
    if (op == "and" || op == "or") {
        std::vector<TheonExpr> kids;
        for (const auto& k : j.at("args")) kids.push_back(expr_from_json(k));
        if (kids.empty()) return TheonExpr::constant(op == "and");
        if (kids.size() == 1) return std::move(kids[0]);
        TheonExpr e;
        e.kind = op == "and" ? TheonExpr::Kind::And : TheonExpr::Kind::Or;
        e.kids = std::move(kids);
        return e;
    }
    if (op == "factor") return TheonExpr::factor_proj(j.at("offset").get<int>(), expr_from_json(j.at("arg")));
    if (op == "sub") return TheonExpr::sub_point(j.at("tuple").get<std::vector<int>>(), expr_from_json(j.at("arg")));
    throw std::invalid_argument("unknown theon expression op: '" + op + "'");
}

} // namespace theonlab
