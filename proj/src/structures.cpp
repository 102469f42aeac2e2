#include "autostruct/structures.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

namespace autostruct {

FiniteStructure FiniteStructure::graph(int n, const std::set<std::pair<int, int>>& edges) {
    FiniteStructure s;
    s.size = n;
    Rel e{"E", 2, {}};
    for (const auto& [x, y] : edges) e.tuples.insert({x, y});
    s.relations.push_back(std::move(e));
    return s;
}

bool same_vocabulary(const FiniteStructure& a, const FiniteStructure& b) {
    if (a.relations.size() != b.relations.size()) return false;
    for (size_t i = 0; i < a.relations.size(); ++i)
        if (a.relations[i].name != b.relations[i].name ||
            a.relations[i].arity != b.relations[i].arity)
            return false;
    return true;
}

namespace {

using Position = std::vector<std::pair<int, int>>; // sorted pairs (a, b)

// functional, injective, and relation-preserving both ways
bool partial_iso(const FiniteStructure& a, const FiniteStructure& b, const Position& pos) {
    if (pos.empty()) return true;
    for (size_t i = 0; i < pos.size(); ++i)
        for (size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i].first == pos[j].first && pos[i].second != pos[j].second) return false;
            if (pos[i].first != pos[j].first && pos[i].second == pos[j].second) return false;
        }
    for (size_t r = 0; r < a.relations.size(); ++r) {
        int ar = a.relations[r].arity;
        std::vector<size_t> idx(static_cast<size_t>(ar), 0);
        while (true) {
            std::vector<int> ta(static_cast<size_t>(ar)), tb(static_cast<size_t>(ar));
            for (int k = 0; k < ar; ++k) {
                ta[static_cast<size_t>(k)] = pos[idx[static_cast<size_t>(k)]].first;
                tb[static_cast<size_t>(k)] = pos[idx[static_cast<size_t>(k)]].second;
            }
            if (a.holds(r, ta) != b.holds(r, tb)) return false;
            int k = ar - 1;
            while (k >= 0 && ++idx[static_cast<size_t>(k)] == pos.size()) {
                idx[static_cast<size_t>(k)] = 0;
                --k;
            }
            if (k < 0) break;
        }
    }
    return true;
}

Position normalize(Position pos) {
    std::sort(pos.begin(), pos.end());
    pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
    return pos;
}

struct EfGame {
    const FiniteStructure& a;
    const FiniteStructure& b;
    int bound;
    std::map<std::pair<Position, int>, bool> memo;

    bool equiv(Position pos, int level) {
        pos = normalize(std::move(pos));
        if (!partial_iso(a, b, pos)) return false;
        if (level == 0) return true;
        auto key = std::make_pair(pos, level);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second; // levels strictly decrease, no cycles
        bool ok = forth(pos, level) && back(pos, level);
        memo.emplace(std::move(key), ok);
        return ok;
    }

    // spoiler picks a set C of at most `bound` elements of a; duplicator
    // answers with images in b
    bool forth(const Position& pos, int level) {
        std::vector<int> candidates;
        for (int x = 0; x < a.size; ++x) candidates.push_back(x);
        std::vector<int> chosen;
        return forth_sets(pos, level, candidates, 0, chosen);
    }

    bool forth_sets(const Position& pos, int level, const std::vector<int>& cand, size_t i,
                    std::vector<int>& chosen) {
        if (static_cast<int>(chosen.size()) <= bound && !chosen.empty()) {
            if (!answer(pos, level, chosen, 0, pos, true)) return false;
        }
        if (i == cand.size() || static_cast<int>(chosen.size()) == bound) return true;
        for (size_t j = i; j < cand.size(); ++j) {
            chosen.push_back(cand[j]);
            bool ok = forth_sets(pos, level, cand, j + 1, chosen);
            chosen.pop_back();
            if (!ok) return false;
        }
        return true;
    }

    bool back(const Position& pos, int level) {
        std::vector<int> candidates;
        for (int y = 0; y < b.size; ++y) candidates.push_back(y);
        std::vector<int> chosen;
        return back_sets(pos, level, candidates, 0, chosen);
    }

    bool back_sets(const Position& pos, int level, const std::vector<int>& cand, size_t i,
                   std::vector<int>& chosen) {
        if (static_cast<int>(chosen.size()) <= bound && !chosen.empty()) {
            if (!answer(pos, level, chosen, 0, pos, false)) return false;
        }
        if (i == cand.size() || static_cast<int>(chosen.size()) == bound) return true;
        for (size_t j = i; j < cand.size(); ++j) {
            chosen.push_back(cand[j]);
            bool ok = back_sets(pos, level, cand, j + 1, chosen);
            chosen.pop_back();
            if (!ok) return false;
        }
        return true;
    }

    // duplicator searches an assignment for the chosen move set
    bool answer(const Position& pos, int level, const std::vector<int>& move, size_t k,
                Position acc, bool forward) {
        if (k == move.size()) return equiv(std::move(acc), level - 1);
        int range = forward ? b.size : a.size;
        for (int img = 0; img < range; ++img) {
            Position next = acc;
            if (forward)
                next.emplace_back(move[k], img);
            else
                next.emplace_back(img, move[k]);
            // prune early on quantifier-free violations
            if (!partial_iso(a, b, normalize(next))) continue;
            if (answer(pos, level, move, k + 1, std::move(next), forward)) return true;
        }
        return false;
    }
};

void injective_tuples(int n, int len, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::vector<bool> used(static_cast<size_t>(n), false);
    std::function<void()> rec = [&]() {
        if (static_cast<int>(cur.size()) == len) {
            out.push_back(cur);
            return;
        }
        for (int x = 0; x < n; ++x) {
            if (used[static_cast<size_t>(x)]) continue;
            used[static_cast<size_t>(x)] = true;
            cur.push_back(x);
            rec();
            cur.pop_back();
            used[static_cast<size_t>(x)] = false;
        }
    };
    rec();
}

} // namespace

bool back_and_forth_bounded(const FiniteStructure& a, const FiniteStructure& b,
                            const std::vector<int>& atuple, const std::vector<int>& btuple,
                            int level, int bound) {
    if (atuple.size() != btuple.size()) throw std::invalid_argument("tuple lengths differ");
    if (!same_vocabulary(a, b)) throw std::invalid_argument("vocabulary mismatch");
    Position pos;
    for (size_t i = 0; i < atuple.size(); ++i) pos.emplace_back(atuple[i], btuple[i]);
    EfGame game{a, b, bound, {}};
    return game.equiv(std::move(pos), level);
}

bool back_and_forth(const FiniteStructure& a, const FiniteStructure& b,
                    const std::vector<int>& atuple, const std::vector<int>& btuple, int level) {
    return back_and_forth_bounded(a, b, atuple, btuple, level, std::max(a.size, b.size));
}

bool tuple_isomorphic(const FiniteStructure& a, const std::vector<int>& atuple,
                      const std::vector<int>& btuple) {
    if (a.size > 9) throw std::invalid_argument("structure too large for permutation search");
    if (atuple.size() != btuple.size()) throw std::invalid_argument("tuple lengths differ");
    std::vector<int> perm(static_cast<size_t>(a.size));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (size_t i = 0; i < atuple.size() && ok; ++i)
            ok = perm[static_cast<size_t>(atuple[i])] == btuple[i];
        for (size_t r = 0; r < a.relations.size() && ok; ++r)
            for (const auto& t : a.relations[r].tuples) {
                std::vector<int> im(t.size());
                for (size_t k = 0; k < t.size(); ++k) im[k] = perm[static_cast<size_t>(t[k])];
                if (!a.holds(r, im)) {
                    ok = false;
                    break;
                }
            }
        // bijection preserving R into R is an automorphism on finite sets
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

int scott_rank_tuple(const FiniteStructure& a, const std::vector<int>& tuple) {
    std::vector<std::vector<int>> others;
    injective_tuples(a.size, static_cast<int>(tuple.size()), others);
    int rank = 0;
    for (const auto& b : others) {
        if (tuple_isomorphic(a, tuple, b)) continue;
        // least beta with tuple and b inequivalent
        int beta = 0;
        while (back_and_forth(a, a, tuple, b, beta)) {
            ++beta;
            if (beta > a.size + 1)
                throw std::logic_error("back-and-forth failed to separate non-isomorphic tuples");
        }
        rank = std::max(rank, beta);
    }
    return rank;
}

int scott_rank_finite(const FiniteStructure& a, int tuple_cap) {
    if (a.size > 7) throw std::invalid_argument("structure too large for exact Scott rank");
    if (tuple_cap < 0) tuple_cap = a.size;
    int best = 0;
    for (int len = 0; len <= tuple_cap; ++len) {
        std::vector<std::vector<int>> tuples;
        injective_tuples(a.size, len, tuples);
        for (const auto& t : tuples) best = std::max(best, scott_rank_tuple(a, t));
    }
    return best + 1;
}

std::set<int> neighborhood(const FiniteStructure& a, const std::vector<int>& tuple, int n,
                           const std::string& rel) {
    size_t r = 0;
    bool found = false;
    for (size_t i = 0; i < a.relations.size(); ++i)
        if (a.relations[i].name == rel && a.relations[i].arity == 2) {
            r = i;
            found = true;
        }
    if (!found) throw std::invalid_argument("no binary relation named " + rel);
    std::set<int> ball(tuple.begin(), tuple.end());
    for (int step = 0; step < n; ++step) {
        std::set<int> next = ball;
        for (const auto& t : a.relations[r].tuples) {
            if (ball.count(t[0])) next.insert(t[1]);
            if (ball.count(t[1])) next.insert(t[0]);
        }
        if (next == ball) break;
        ball = std::move(next);
    }
    return ball;
}

} // namespace autostruct
