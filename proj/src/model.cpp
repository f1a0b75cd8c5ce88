#include "theonlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "theonlab/theory.hpp"

namespace theonlab {

int Signature::index_of(const std::string& name) const {
    for (size_t i = 0; i < preds.size(); ++i)
        if (preds[i].name == name) return (int)i;
    return -1;
}

int Signature::max_arity() const {
    int m = 0;
    for (const auto& p : preds) m = std::max(m, p.arity);
    return m;
}

void Signature::validate() const {
    std::set<std::string> names;
    for (const auto& p : preds) {
        if (p.arity < 1) throw std::invalid_argument("predicate arity must be >= 1: " + p.name);
        if (!names.insert(p.name).second) throw std::invalid_argument("duplicate predicate name: " + p.name);
    }
}

Model Model::empty(const Signature& sig, int n) {
    Model m;
    m.n = n;
    m.sig = sig;
    m.rels.resize(sig.preds.size());
    return m;
}

bool Model::has(int pred, const Tuple& t) const {
    const auto& r = rels[pred];
    return std::binary_search(r.begin(), r.end(), t);
}

void Model::add(int pred, Tuple t) {
    if ((int)t.size() != sig.preds[pred].arity) throw std::invalid_argument("tuple arity mismatch for " + sig.preds[pred].name);
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 1 || t[i] > n) throw std::invalid_argument("vertex out of range");
        for (size_t j = i + 1; j < t.size(); ++j)
            if (t[i] == t[j]) throw std::invalid_argument("tuple entries must be pairwise distinct");
    }
    auto& r = rels[pred];
    auto it = std::lower_bound(r.begin(), r.end(), t);
    if (it == r.end() || *it != t) r.insert(it, std::move(t));
}

void Model::normalize() {
    for (auto& r : rels) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
    }
}

Model relabel(const Model& m, const Perm& perm) {
    Model out = Model::empty(m.sig, m.n);
    for (size_t p = 0; p < m.rels.size(); ++p) {
        auto& r = out.rels[p];
        r.reserve(m.rels[p].size());
        for (const auto& t : m.rels[p]) {
            Tuple u(t.size());
            for (size_t i = 0; i < t.size(); ++i) u[i] = perm[t[i] - 1];
            r.push_back(std::move(u));
        }
        std::sort(r.begin(), r.end());
    }
    return out;
}

Model induced_submodel(const Model& host, const std::vector<Vertex>& verts) {
    Model out = Model::empty(host.sig, (int)verts.size());
    std::vector<int> rank(host.n + 1, 0); // vertex -> position in verts, 1-based; 0 = absent
    for (size_t i = 0; i < verts.size(); ++i) rank[verts[i]] = (int)i + 1;
    for (size_t p = 0; p < host.rels.size(); ++p) {
        auto& r = out.rels[p];
        for (const auto& t : host.rels[p]) {
            Tuple u(t.size());
            bool inside = true;
            for (size_t i = 0; i < t.size(); ++i) {
                u[i] = rank[t[i]];
                if (u[i] == 0) { inside = false; break; }
            }
            if (inside) r.push_back(std::move(u));
        }
        std::sort(r.begin(), r.end());
    }
    return out;
}

namespace {

template <class Fn>
void for_each_perm(int n, Fn&& fn) {
    Perm perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        fn(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

} // namespace

Model canonical_form(const Model& m) {
    Model best = relabel(m, [&] { Perm id(m.n); std::iota(id.begin(), id.end(), 1); return id; }());
    for_each_perm(m.n, [&](const Perm& perm) {
        Model cand = relabel(m, perm);
        if (cand.rels < best.rels) best = std::move(cand);
    });
    return best;
}

std::uint64_t automorphism_count(const Model& m) {
    std::uint64_t count = 0;
    for_each_perm(m.n, [&](const Perm& perm) {
        if (relabel(m, perm).rels == m.rels) ++count;
    });
    return count;
}

Rat labeled_weight(const Model& m) {
    return Rat((long)automorphism_count(m)) / factorial((unsigned)m.n);
}

std::optional<Perm> isomorphic(const Model& a, const Model& b) {
    if (a.n != b.n || !(a.sig == b.sig)) return std::nullopt;
    for (size_t p = 0; p < a.rels.size(); ++p)
        if (a.rels[p].size() != b.rels[p].size()) return std::nullopt;
    std::optional<Perm> witness;
    for_each_perm(a.n, [&](const Perm& perm) {
        if (witness) return;
        if (relabel(a, perm).rels == b.rels) witness = perm;
    });
    return witness;
}

Rat induced_density(const Model& m, const Model& host) {
    if (m.n > host.n) return Rat(0);
    const Model target = canonical_form(m);
    long hits = 0, total = 0;
    std::vector<Vertex> verts(m.n);
    // iterate over m.n-subsets of [host.n]
    std::vector<int> idx(m.n);
    std::iota(idx.begin(), idx.end(), 1);
    while (true) {
        for (int i = 0; i < m.n; ++i) verts[i] = idx[i];
        ++total;
        if (canonical_form(induced_submodel(host, verts)).rels == target.rels) ++hits;
        int i = m.n - 1;
        while (i >= 0 && idx[i] == host.n - (m.n - 1 - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m.n; ++j) idx[j] = idx[j - 1] + 1;
    }
    return Rat(hits) / Rat(total);
}

EnumerationBudgetError::EnumerationBudgetError(double space)
    : std::runtime_error("enumeration search space " + std::to_string(space) + " exceeds budget"), search_space(space) {}

namespace {

std::vector<Tuple> injective_tuples(int n, int k) {
    std::vector<Tuple> out;
    Tuple cur(k);
    std::vector<bool> used(n + 1, false);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == k) { out.push_back(cur); return; }
        for (Vertex v = 1; v <= n; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur[pos] = v;
            rec(pos + 1);
            used[v] = false;
        }
    };
    if (k <= n) rec(0);
    return out;
}

} // namespace

std::vector<IsoClass> enumerate_models(const Theory& t, int n, double budget) {
    t.sig.validate();
    std::vector<std::vector<Tuple>> slots;
    double space = 1.0;
    for (const auto& p : t.sig.preds) {
        slots.push_back(injective_tuples(n, p.arity));
        space *= std::pow(2.0, (double)slots.back().size());
        if (space > budget) throw EnumerationBudgetError(space);
    }

    std::set<std::vector<std::vector<Tuple>>> seen; // canonical relation sets
    std::vector<IsoClass> out;

    Model m = Model::empty(t.sig, n);
    std::function<void(size_t)> rec = [&](size_t p) {
        if (p == slots.size()) {
            if (!check_axioms(t, m).empty()) return;
            Model canon = canonical_form(m);
            if (seen.insert(canon.rels).second) out.push_back({canon, automorphism_count(canon)});
            return;
        }
        const auto& tuples = slots[p];
        const size_t count = tuples.size();
        for (std::uint64_t bits = 0; bits < (1ULL << count); ++bits) {
            auto& r = m.rels[p];
            r.clear();
            for (size_t i = 0; i < count; ++i)
                if (bits >> i & 1) r.push_back(tuples[i]);
            rec(p + 1);
        }
        m.rels[p].clear();
    };
    rec(0);

    std::sort(out.begin(), out.end(), [](const IsoClass& a, const IsoClass& b) {
        return relation_bytes(a.rep) < relation_bytes(b.rep);
    });
    return out;
}

std::vector<Model> enumerate_tournaments(int k, int n) {
    const Signature sig{{{"E", k}}};
    // k-subsets of [n] in lex order, each with its two alternating tuple classes
    std::vector<std::vector<Tuple>> even_class, odd_class;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    auto tuple_classes = [&](const std::vector<int>& set) {
        Tuple base(set.begin(), set.end());
        std::vector<Tuple> even, odd;
        Tuple t = base;
        std::sort(t.begin(), t.end());
        do {
            // parity of t as a rearrangement of base (base sorted ascending)
            int inv = 0;
            for (size_t i = 0; i < t.size(); ++i)
                for (size_t j = i + 1; j < t.size(); ++j)
                    if (t[i] > t[j]) ++inv;
            (inv % 2 == 0 ? even : odd).push_back(t);
        } while (std::next_permutation(t.begin(), t.end()));
        even_class.push_back(std::move(even));
        odd_class.push_back(std::move(odd));
    };
    if (k <= n) {
        while (true) {
            tuple_classes(idx);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - (k - 1 - i)) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    const size_t sets = even_class.size();
    if (sets >= 63) throw EnumerationBudgetError(std::pow(2.0, (double)sets));
    std::vector<Model> out;
    out.reserve(1ULL << sets);
    for (std::uint64_t bits = 0; bits < (1ULL << sets); ++bits) {
        Model m = Model::empty(sig, n);
        auto& r = m.rels[0];
        for (size_t s = 0; s < sets; ++s) {
            const auto& cls = (bits >> s & 1) ? odd_class[s] : even_class[s];
            r.insert(r.end(), cls.begin(), cls.end());
        }
        std::sort(r.begin(), r.end());
        out.push_back(std::move(m));
    }
    return out;
}

std::string serialize_model(const Model& m) {
    std::ostringstream os;
    os << "n=" << m.n << "\n";
    for (size_t p = 0; p < m.sig.preds.size(); ++p) {
        os << m.sig.preds[p].name << ":";
        bool first = true;
        for (const auto& t : m.rels[p]) {
            os << (first ? " " : ";") << "(";
            for (size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
            os << ")";
            first = false;
        }
        os << "\n";
    }
    return os.str();
}

std::string relation_bytes(const Model& m) {
    std::string s = serialize_model(m);
    return s.substr(s.find('\n') + 1);
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

} // namespace

Model parse_model(const std::string& text, const Signature& sig) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("model file: empty");
    size_t i = 0;
    skip_ws(line, i);
    if (line.compare(i, 2, "n=") != 0) throw std::invalid_argument("model file: expected 'n=<int>' on line 1");
    int n = std::stoi(line.substr(i + 2));
    Model m = Model::empty(sig, n);
    std::vector<bool> seen(sig.preds.size(), false);
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        i = 0;
        skip_ws(line, i);
        if (i == line.size()) continue;
        size_t colon = line.find(':', i);
        if (colon == std::string::npos) throw std::invalid_argument("model file line " + std::to_string(lineno) + ": expected 'P: tuples'");
        std::string name = line.substr(i, colon - i);
        while (!name.empty() && (name.back() == ' ' || name.back() == '\t')) name.pop_back();
        int p = sig.index_of(name);
        if (p < 0) throw std::invalid_argument("model file line " + std::to_string(lineno) + ": unknown predicate '" + name + "'");
        if (seen[p]) throw std::invalid_argument("model file line " + std::to_string(lineno) + ": duplicate predicate '" + name + "'");
        seen[p] = true;
        i = colon + 1;
        while (true) {
            skip_ws(line, i);
            if (i == line.size()) break;
            if (line[i] != '(') throw std::invalid_argument("model file line " + std::to_string(lineno) + ": expected '(' at column " + std::to_string(i + 1));
            ++i;
            Tuple t;
            while (true) {
                skip_ws(line, i);
                size_t j = i;
                while (j < line.size() && isdigit((unsigned char)line[j])) ++j;
                if (j == i) throw std::invalid_argument("model file line " + std::to_string(lineno) + ": expected vertex at column " + std::to_string(i + 1));
                t.push_back(std::stoi(line.substr(i, j - i)));
                i = j;
                skip_ws(line, i);
                if (i < line.size() && line[i] == ',') { ++i; continue; }
                if (i < line.size() && line[i] == ')') { ++i; break; }
                throw std::invalid_argument("model file line " + std::to_string(lineno) + ": expected ',' or ')' at column " + std::to_string(i + 1));
            }
            m.add(p, std::move(t));
            skip_ws(line, i);
            if (i < line.size() && line[i] == ';') { ++i; continue; }
        }
    }
    return m;
}

} // namespace theonlab
