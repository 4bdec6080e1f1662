#include "dilhom/clique.hpp"

#include <algorithm>
#include <stdexcept>

namespace dilhom {

namespace {

struct Solver {
    const std::vector<std::vector<char>>& adj;
    int best = 0;
    int target = -1; // stop as soon as a clique of this size is found (-1: maximize)
    bool found = false;

    explicit Solver(const std::vector<std::vector<char>>& a) : adj(a) {}

    // greedy colouring upper bound; candidates come back ordered by colour
    int colour_bound(std::vector<int>& cand, std::vector<int>& colours) {
        colours.assign(cand.size(), 0);
        std::vector<int> order;
        order.reserve(cand.size());
        int ncol = 0;
        std::vector<std::vector<int>> classes;
        for (int v : cand) {
            int c = 0;
            for (; c < ncol; ++c) {
                bool clash = false;
                for (int u : classes[static_cast<size_t>(c)])
                    if (adj[static_cast<size_t>(v)][static_cast<size_t>(u)]) {
                        clash = true;
                        break;
                    }
                if (!clash) break;
            }
            if (c == ncol) {
                classes.emplace_back();
                ++ncol;
            }
            classes[static_cast<size_t>(c)].push_back(v);
        }
        std::vector<int> reordered;
        std::vector<int> recol;
        for (int c = 0; c < ncol; ++c)
            for (int v : classes[static_cast<size_t>(c)]) {
                reordered.push_back(v);
                recol.push_back(c + 1);
            }
        cand = std::move(reordered);
        colours = std::move(recol);
        return ncol;
    }

    void expand(std::vector<int>& cur, std::vector<int> cand) {
        if (found) return;
        if (cand.empty()) {
            int sz = static_cast<int>(cur.size());
            if (target >= 0) {
                if (sz >= target) found = true;
            } else if (sz > best) {
                best = sz;
            }
            return;
        }
        std::vector<int> colours;
        colour_bound(cand, colours);
        for (int i = static_cast<int>(cand.size()) - 1; i >= 0; --i) {
            int bound = static_cast<int>(cur.size()) + colours[static_cast<size_t>(i)];
            int goal = target >= 0 ? target : best + 1;
            if (bound < goal) return;
            int v = cand[static_cast<size_t>(i)];
            std::vector<int> next;
            for (int j = 0; j < i; ++j)
                if (adj[static_cast<size_t>(v)][static_cast<size_t>(cand[static_cast<size_t>(j)])])
                    next.push_back(cand[static_cast<size_t>(j)]);
            cur.push_back(v);
            if (target >= 0 && static_cast<int>(cur.size()) >= target) found = true;
            if (!found) expand(cur, std::move(next));
            cur.pop_back();
            if (found) return;
        }
    }
};

int max_clique_size(const std::vector<std::vector<char>>& adj, const std::vector<int>& verts) {
    Solver s(adj);
    std::vector<int> cur;
    s.expand(cur, verts);
    return s.best;
}

bool has_clique_of(const std::vector<std::vector<char>>& adj, const std::vector<int>& verts,
                   int need) {
    if (need <= 0) return true;
    Solver s(adj);
    s.target = need;
    std::vector<int> cur;
    s.expand(cur, verts);
    return s.found;
}

} // namespace

std::vector<int> max_clique(const std::vector<std::vector<char>>& adj) {
    const int n = static_cast<int>(adj.size());
    if (n == 0) throw std::invalid_argument("max_clique: empty graph");
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;
    int omega = max_clique_size(adj, all);

    // lexicographically least witness: grow the prefix greedily, testing
    // completability at each step
    std::vector<int> clique;
    std::vector<int> cand = all;
    while (static_cast<int>(clique.size()) < omega) {
        bool advanced = false;
        for (int v : cand) {
            std::vector<int> rest;
            for (int u : cand)
                if (u > v && adj[static_cast<size_t>(v)][static_cast<size_t>(u)]) rest.push_back(u);
            if (has_clique_of(adj, rest, omega - static_cast<int>(clique.size()) - 1)) {
                clique.push_back(v);
                cand = std::move(rest);
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::logic_error("max_clique: failed to extend a feasible prefix");
    }
    return clique;
}

} // namespace dilhom
