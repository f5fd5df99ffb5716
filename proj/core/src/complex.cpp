#include "locdet/complex.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace locdet {

const std::vector<Simplex> Complex::kNoFaces;

Complex Complex::from_facets(const std::vector<std::vector<VertexId>>& facets) {
    std::vector<Simplex> sorted;
    sorted.reserve(facets.size());
    for (const auto& f : facets) {
        if (f.empty()) throw std::invalid_argument("from_facets: empty facet entry");
        Simplex s(f);
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("from_facets: duplicate vertex within a facet");
        if (s.front() < 0)
            throw std::invalid_argument("from_facets: negative vertex label");
        sorted.push_back(std::move(s));
    }
    // Keep only inclusion-maximal faces.
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    Complex K;
    for (const auto& s : sorted) {
        bool maximal = true;
        for (const auto& t : sorted) {
            if (t.size() > s.size() &&
                std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                maximal = false;
                break;
            }
        }
        if (maximal) K.facets_.push_back(s);
    }
    K.build_faces();
    return K;
}

void Complex::build_faces() {
    std::set<VertexId> verts;
    for (const auto& f : facets_)
        for (VertexId v : f) verts.insert(v);
    vertices_.assign(verts.begin(), verts.end());

    for (const auto& f : facets_) {
        const int k = static_cast<int>(f.size());
        // All nonempty subsets.
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            Simplex s;
            for (int b = 0; b < k; ++b)
                if (mask & (1u << b)) s.push_back(f[b]);
            face_set_.insert(std::move(s));
        }
    }
    faces_by_dim_.assign(dim() + 1, {});
    for (const auto& s : face_set_)
        faces_by_dim_[s.size() - 1].push_back(s);
}

int Complex::dim() const {
    int d = -1;
    for (const auto& f : facets_) d = std::max(d, simplex_dim(f));
    return d;
}

const std::vector<Simplex>& Complex::faces(int d) const {
    if (d < 0 || d >= static_cast<int>(faces_by_dim_.size())) return kNoFaces;
    return faces_by_dim_[d];
}

std::vector<Simplex> Complex::all_faces() const {
    return {face_set_.begin(), face_set_.end()};
}

bool Complex::contains(const Simplex& s) const {
    if (s.empty()) return true;
    return face_set_.count(s) > 0;
}

bool Complex::has_vertex(VertexId v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

FVector Complex::f_vector() const {
    std::vector<long long> counts(dim() + 2, 0);
    counts[0] = 1;
    for (int d = 0; d <= dim(); ++d)
        counts[d + 1] = static_cast<long long>(faces(d).size());
    return FVector(counts);
}

long long Complex::euler_characteristic() const {
    if (empty()) throw std::invalid_argument("euler_characteristic: empty complex");
    long long chi = 0;
    for (int d = 0; d <= dim(); ++d) {
        const long long fd = static_cast<long long>(faces(d).size());
        chi += (d % 2 == 0) ? fd : -fd;
    }
    return chi;
}

Complex Complex::link(VertexId v) const {
    if (!has_vertex(v)) throw std::invalid_argument("link: not a vertex");
    std::vector<std::vector<VertexId>> lk;
    for (const auto& f : facets_) {
        if (!std::binary_search(f.begin(), f.end(), v)) continue;
        Simplex rest;
        for (VertexId u : f)
            if (u != v) rest.push_back(u);
        if (!rest.empty()) lk.push_back(std::move(rest));
    }
    if (lk.empty()) return Complex();
    return from_facets(lk);
}

Complex Complex::star(VertexId v) const {
    if (!has_vertex(v)) throw std::invalid_argument("star: not a vertex");
    std::vector<std::vector<VertexId>> st;
    for (const auto& f : facets_)
        if (std::binary_search(f.begin(), f.end(), v)) st.push_back(f);
    return from_facets(st);
}

Complex join(const Complex& K, const Complex& L) {
    if (K.empty()) {
        if (L.empty()) return Complex();
        return Complex::from_facets(
            std::vector<std::vector<VertexId>>(L.facets().begin(), L.facets().end()));
    }
    if (L.empty())
        return Complex::from_facets(
            std::vector<std::vector<VertexId>>(K.facets().begin(), K.facets().end()));
    const VertexId shift = K.vertices().back() + 1;
    std::vector<std::vector<VertexId>> facets;
    for (const auto& f : K.facets()) {
        for (const auto& g : L.facets()) {
            std::vector<VertexId> u(f);
            for (VertexId v : g) u.push_back(v + shift);
            facets.push_back(std::move(u));
        }
    }
    return Complex::from_facets(facets);
}

namespace {

std::map<VertexId, std::set<VertexId>> skeleton_adjacency(const Complex& K) {
    std::map<VertexId, std::set<VertexId>> adj;
    for (VertexId v : K.vertices()) adj[v];
    for (const auto& e : K.faces(1)) {
        adj[e[0]].insert(e[1]);
        adj[e[1]].insert(e[0]);
    }
    return adj;
}

// Extends a face-spanning clique by larger-labeled common neighbors; fails on
// the first clique that is not a face.
bool flag_extend(const Complex& K, const std::map<VertexId, std::set<VertexId>>& adj,
                 Simplex& clique, const std::set<VertexId>& candidates) {
    for (VertexId v : candidates) {
        clique.push_back(v);
        Simplex sorted(clique);
        std::sort(sorted.begin(), sorted.end());
        if (!K.contains(sorted)) {
            clique.pop_back();
            return false;
        }
        std::set<VertexId> next;
        for (VertexId u : candidates)
            if (u > v && adj.at(v).count(u)) next.insert(u);
        if (!flag_extend(K, adj, clique, next)) {
            clique.pop_back();
            return false;
        }
        clique.pop_back();
    }
    return true;
}

}  // namespace

bool is_flag(const Complex& K) {
    if (K.empty()) return true;
    const auto adj = skeleton_adjacency(K);
    for (VertexId v : K.vertices()) {
        Simplex clique{v};
        std::set<VertexId> candidates;
        for (VertexId u : adj.at(v))
            if (u > v) candidates.insert(u);
        if (!flag_extend(K, adj, clique, candidates)) return false;
    }
    return true;
}

bool is_pseudomanifold(const Complex& K, int n, bool strict) {
    if (n < 1) throw std::invalid_argument("is_pseudomanifold: n must be >= 1");
    if (K.empty()) return false;
    for (const auto& f : K.facets())
        if (simplex_dim(f) != n) return false;
    // Every ridge in exactly two facets.
    std::map<Simplex, int> ridge_count;
    for (const auto& f : K.facets()) {
        for (std::size_t drop = 0; drop < f.size(); ++drop) {
            Simplex r;
            for (std::size_t k = 0; k < f.size(); ++k)
                if (k != drop) r.push_back(f[k]);
            ++ridge_count[r];
        }
    }
    for (const auto& [r, c] : ridge_count)
        if (c != 2) return false;
    if (strict) {
        // Facet-ridge graph connectivity.
        std::map<Simplex, std::vector<int>> by_ridge;
        const auto& facets = K.facets();
        for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi) {
            const auto& f = facets[fi];
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Simplex r;
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (k != drop) r.push_back(f[k]);
                by_ridge[r].push_back(fi);
            }
        }
        std::vector<char> seen(facets.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int fi = q.front();
            q.pop();
            const auto& f = facets[fi];
            for (std::size_t drop = 0; drop < f.size(); ++drop) {
                Simplex r;
                for (std::size_t k = 0; k < f.size(); ++k)
                    if (k != drop) r.push_back(f[k]);
                for (int gj : by_ridge[r])
                    if (!seen[gj]) {
                        seen[gj] = 1;
                        q.push(gj);
                    }
            }
        }
        for (char s : seen)
            if (!s) return false;
    }
    return true;
}

namespace {

// Iteratively refined per-vertex invariants: face counts per dimension,
// refined once by sorted neighbor invariants.
std::vector<std::vector<long long>> vertex_signatures(const Complex& K) {
    const auto& verts = K.vertices();
    const int nv = static_cast<int>(verts.size());
    std::map<VertexId, int> index;
    for (int k = 0; k < nv; ++k) index[verts[k]] = k;

    std::vector<std::vector<long long>> sig(nv);
    for (int k = 0; k < nv; ++k) {
        std::vector<long long> counts(K.dim() + 1, 0);
        for (int d = 0; d <= K.dim(); ++d)
            for (const auto& s : K.faces(d))
                if (std::binary_search(s.begin(), s.end(), verts[k])) ++counts[d];
        sig[k] = std::move(counts);
    }

    const auto adj = skeleton_adjacency(K);
    std::vector<std::vector<long long>> refined(nv);
    for (int k = 0; k < nv; ++k) {
        std::vector<std::vector<long long>> neigh;
        for (VertexId u : adj.at(verts[k])) neigh.push_back(sig[index[u]]);
        std::sort(neigh.begin(), neigh.end());
        refined[k] = sig[k];
        for (const auto& ns : neigh) {
            refined[k].push_back(-1);
            refined[k].insert(refined[k].end(), ns.begin(), ns.end());
        }
    }
    return refined;
}

struct CanonContext {
    int nv = 0;
    std::vector<Simplex> facet_idx;          // facets as vertex-index lists
    std::vector<std::vector<int>> at_vertex; // facets containing each vertex index
    std::vector<int> class_of;               // vertex index -> class id
    std::vector<int> class_of_label;         // label position -> class id
};

CanonContext make_context(const Complex& K) {
    CanonContext ctx;
    const auto& verts = K.vertices();
    ctx.nv = static_cast<int>(verts.size());
    std::map<VertexId, int> index;
    for (int k = 0; k < ctx.nv; ++k) index[verts[k]] = k;
    for (const auto& f : K.facets()) {
        Simplex fi;
        for (VertexId v : f) fi.push_back(index[v]);
        ctx.facet_idx.push_back(fi);
    }
    ctx.at_vertex.assign(ctx.nv, {});
    for (int t = 0; t < static_cast<int>(ctx.facet_idx.size()); ++t)
        for (int v : ctx.facet_idx[t]) ctx.at_vertex[v].push_back(t);

    auto sigs = vertex_signatures(K);
    std::vector<std::vector<long long>> uniq(sigs);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    ctx.class_of.resize(ctx.nv);
    std::vector<int> class_size(uniq.size(), 0);
    for (int k = 0; k < ctx.nv; ++k) {
        int c = static_cast<int>(
            std::lower_bound(uniq.begin(), uniq.end(), sigs[k]) - uniq.begin());
        ctx.class_of[k] = c;
        ++class_size[c];
    }
    for (int c = 0; c < static_cast<int>(uniq.size()); ++c)
        for (int k = 0; k < class_size[c]; ++k) ctx.class_of_label.push_back(c);
    return ctx;
}

class CanonSearch {
public:
    explicit CanonSearch(const CanonContext& ctx) : ctx_(ctx) {
        label_.assign(ctx.nv, -1);
        used_.assign(ctx.nv, 0);
        facet_left_.resize(ctx.facet_idx.size());
        for (std::size_t t = 0; t < ctx.facet_idx.size(); ++t)
            facet_left_[t] = static_cast<int>(ctx.facet_idx[t].size());
    }

    std::vector<int> run() {
        dfs(0);
        return best_;
    }

private:
    const CanonContext& ctx_;
    std::vector<int> label_;       // vertex index -> assigned label
    std::vector<char> used_;
    std::vector<int> facet_left_;  // unplaced vertices per facet
    std::vector<int> enc_;
    std::vector<int> best_;
    std::vector<int> best_label_;
    std::vector<int> placed_;      // vertices in placement order
    std::vector<std::vector<int>> autos_;  // discovered automorphisms
    bool have_best_ = false;

    // cur > best-prefix means this branch cannot become the minimum.
    bool prunable() const {
        if (!have_best_) return false;
        const std::size_t len = std::min(enc_.size(), best_.size());
        for (std::size_t k = 0; k < len; ++k) {
            if (enc_[k] < best_[k]) return false;
            if (enc_[k] > best_[k]) return true;
        }
        return false;
    }

    // Two labelings with equal encodings differ by an automorphism; siblings
    // equivalent under one that fixes the placed prefix explore identical
    // subtrees and are skipped.
    bool sibling_pruned(int v, const std::vector<char>& tried) const {
        for (const auto& sigma : autos_) {
            if (!tried[sigma[v]] || sigma[v] == v) continue;
            bool fixes = true;
            for (int w : placed_)
                if (sigma[w] != w) {
                    fixes = false;
                    break;
                }
            if (fixes) return true;
        }
        return false;
    }

    void dfs(int depth) {
        if (depth == ctx_.nv) {
            if (!have_best_ || enc_ < best_) {
                best_ = enc_;
                best_label_ = label_;
                have_best_ = true;
            } else if (enc_ == best_) {
                // sigma = best_label^{-1} o label is an automorphism.
                std::vector<int> by_label(ctx_.nv), sigma(ctx_.nv);
                for (int u = 0; u < ctx_.nv; ++u) by_label[best_label_[u]] = u;
                for (int u = 0; u < ctx_.nv; ++u) sigma[u] = by_label[label_[u]];
                autos_.push_back(std::move(sigma));
            }
            return;
        }
        const int want_class = ctx_.class_of_label[depth];
        std::vector<char> tried(ctx_.nv, 0);
        for (int v = 0; v < ctx_.nv; ++v) {
            if (used_[v] || ctx_.class_of[v] != want_class) continue;
            if (sibling_pruned(v, tried)) continue;
            tried[v] = 1;
            const std::size_t enc_mark = enc_.size();
            used_[v] = 1;
            label_[v] = depth;
            std::vector<Simplex> completed;
            for (int t : ctx_.at_vertex[v]) {
                if (--facet_left_[t] == 0) {
                    Simplex lab;
                    for (int u : ctx_.facet_idx[t]) lab.push_back(label_[u]);
                    std::sort(lab.begin(), lab.end());
                    completed.push_back(std::move(lab));
                }
            }
            std::sort(completed.begin(), completed.end());
            for (const auto& f : completed) {
                enc_.push_back(static_cast<int>(f.size()));
                enc_.insert(enc_.end(), f.begin(), f.end());
            }
            enc_.push_back(-1);
            placed_.push_back(v);

            if (!prunable()) dfs(depth + 1);

            placed_.pop_back();
            enc_.resize(enc_mark);
            for (int t : ctx_.at_vertex[v]) ++facet_left_[t];
            label_[v] = -1;
            used_[v] = 0;
        }
    }
};

}  // namespace

std::string canonical_key(const Complex& K) {
    if (K.empty()) return "e";
    const CanonContext ctx = make_context(K);
    const std::vector<int> enc = CanonSearch(ctx).run();
    std::string key;
    key.reserve(enc.size() * 3);
    for (int x : enc) {
        key += std::to_string(x);
        key += ',';
    }
    return key;
}

namespace {

class IsoSearch {
public:
    IsoSearch(const Complex& K, const Complex& L) : K_(K), L_(L) {}

    bool run() {
        if (K_.vertices().size() != L_.vertices().size()) return false;
        if (K_.facets().size() != L_.facets().size()) return false;
        if (!(K_.f_vector() == L_.f_vector())) return false;

        sig_k_ = vertex_signatures(K_);
        sig_l_ = vertex_signatures(L_);
        auto sk = sig_k_;
        auto sl = sig_l_;
        std::sort(sk.begin(), sk.end());
        std::sort(sl.begin(), sl.end());
        if (sk != sl) return false;

        nv_ = static_cast<int>(K_.vertices().size());
        adj_k_ = adjacency_matrix(K_);
        adj_l_ = adjacency_matrix(L_);
        map_.assign(nv_, -1);
        used_.assign(nv_, 0);
        return dfs(0);
    }

private:
    const Complex& K_;
    const Complex& L_;
    int nv_ = 0;
    std::vector<std::vector<long long>> sig_k_, sig_l_;
    std::vector<std::vector<char>> adj_k_, adj_l_;
    std::vector<int> map_;
    std::vector<char> used_;

    static std::vector<std::vector<char>> adjacency_matrix(const Complex& C) {
        const auto& verts = C.vertices();
        const int n = static_cast<int>(verts.size());
        std::map<VertexId, int> index;
        for (int k = 0; k < n; ++k) index[verts[k]] = k;
        std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
        for (const auto& e : C.faces(1)) {
            adj[index[e[0]]][index[e[1]]] = 1;
            adj[index[e[1]]][index[e[0]]] = 1;
        }
        return adj;
    }

    bool faces_match() const {
        std::vector<Simplex> mapped;
        const auto& vk = K_.vertices();
        const auto& vl = L_.vertices();
        std::map<VertexId, int> index;
        for (int k = 0; k < nv_; ++k) index[vk[k]] = k;
        for (const auto& f : K_.facets()) {
            Simplex g;
            for (VertexId v : f) g.push_back(vl[map_[index[v]]]);
            std::sort(g.begin(), g.end());
            mapped.push_back(std::move(g));
        }
        std::sort(mapped.begin(), mapped.end());
        std::vector<Simplex> target(L_.facets());
        std::sort(target.begin(), target.end());
        return mapped == target;
    }

    bool dfs(int k) {
        if (k == nv_) return faces_match();
        for (int x = 0; x < nv_; ++x) {
            if (used_[x] || sig_k_[k] != sig_l_[x]) continue;
            bool ok = true;
            for (int j = 0; j < k; ++j)
                if (adj_k_[k][j] != adj_l_[x][map_[j]]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            map_[k] = x;
            used_[x] = 1;
            if (dfs(k + 1)) return true;
            used_[x] = 0;
            map_[k] = -1;
        }
        return false;
    }
};

}  // namespace

bool are_isomorphic(const Complex& K, const Complex& L) {
    if (K.empty() || L.empty()) return K.empty() && L.empty();
    return IsoSearch(K, L).run();
}

Complex stellar_subdivide(const Complex& K, const Simplex& face) {
    Simplex f(face);
    std::sort(f.begin(), f.end());
    if (!K.contains(f) || f.empty())
        throw std::invalid_argument("stellar_subdivide: face not in complex");
    if (simplex_dim(f) < 1)
        throw std::invalid_argument("stellar_subdivide: face dimension must be >= 1");
    const VertexId w = K.vertices().back() + 1;
    std::vector<std::vector<VertexId>> facets;
    for (const auto& g : K.facets()) {
        if (!std::includes(g.begin(), g.end(), f.begin(), f.end())) {
            facets.push_back(g);
            continue;
        }
        for (VertexId drop : f) {
            std::vector<VertexId> h;
            for (VertexId v : g)
                if (v != drop) h.push_back(v);
            h.push_back(w);
            facets.push_back(std::move(h));
        }
    }
    return Complex::from_facets(facets);
}

}  // namespace locdet
