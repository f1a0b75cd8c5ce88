#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "theonlab/point.hpp"

namespace theonlab {

enum class Cmp { Lt, Le, Gt, Ge };

bool cmp_apply(Cmp c, double a, double b);
std::string cmp_str(Cmp c);
Cmp cmp_parse(const std::string& s);

// Boolean combinator tree over primitive tests at a point of E_k. Subsets
// are position masks over [k] (bit i-1 = position i); factors are relative
// to the enclosing FactorProj offsets, so couplings of couplings compose.
struct TheonExpr {
    enum class Kind {
        Const,      // fixed truth value
        Thresh,     // x_A[factor] cmp c
        CoordLt,    // x_A[factor] < x_B[factor]
        SumMod,     // frac(sum of x_A[f] over terms) < c
        MinFirst,   // min over first-order coordinates of [k], cmp c
        Sign,       // sgn(sigma_x) = 1 for the first-order coordinates of [k]
        Not,
        And,
        Or,
        FactorProj, // evaluate subtree with factor indices shifted by `factor`
        SubPoint,   // evaluate subtree at the sub-point projected along `tuple`
    };

    Kind kind = Kind::Const;
    bool value = false;
    std::uint32_t set_a = 0, set_b = 0;
    Cmp cmp = Cmp::Lt;
    double c = 0.0;
    int factor = 0; // factor index, or offset for FactorProj
    std::vector<std::pair<std::uint32_t, int>> terms; // SumMod: (mask, factor)
    std::vector<int> tuple;                           // SubPoint positions, 1-based
    std::vector<TheonExpr> kids;

    static TheonExpr constant(bool v);
    static TheonExpr thresh(std::uint32_t set, Cmp cmp, double c, int factor = 0);
    static TheonExpr coord_lt(std::uint32_t a, std::uint32_t b, int factor = 0);
    static TheonExpr sum_mod(std::vector<std::pair<std::uint32_t, int>> terms, double c);
    static TheonExpr min_first(Cmp cmp, double c, int factor = 0);
    static TheonExpr sign(int factor = 0);
    static TheonExpr negation(TheonExpr e);
    static TheonExpr conj(std::vector<TheonExpr> kids);
    static TheonExpr disj(std::vector<TheonExpr> kids);
    static TheonExpr equiv(TheonExpr a, TheonExpr b);
    static TheonExpr factor_proj(int offset, TheonExpr e);
    static TheonExpr sub_point(std::vector<int> tuple, TheonExpr e);

    // largest position referenced (arity lower bound), max factor index used
    int max_position() const;
    int max_factor() const;
};

// Membership of the tuple-projected point: positions map through `tuple`
// (tuple[i-1] = vertex bound to position i); `arity` is the length of the
// tuple (Sign and MinFirst range over all of [arity], referenced or not).
// Ties in Sign break by position index; measure-zero under sampling.
bool eval_expr(const TheonExpr& e, const Point& pt, const Vertex* tuple, int arity, int factor_base = 0);

nlohmann::json expr_to_json(const TheonExpr& e);
TheonExpr expr_from_json(const nlohmann::json& j);

} // namespace theonlab
