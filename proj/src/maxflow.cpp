#include "stackfilt/maxflow.hpp"

#include <limits>
#include <queue>

namespace stackfilt {

int MaxFlow::add_edge(int from, int to, uint64_t capacity) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, capacity});
    edges_.push_back({from, 0});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
}

bool MaxFlow::bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    std::queue<int> q;
    level_[source] = 0;
    q.push(source);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int id : adj_[v]) {
            const Edge& e = edges_[id];
            if (e.capacity > 0 && level_[e.to] < 0) {
                level_[e.to] = level_[v] + 1;
                q.push(e.to);
            }
        }
    }
    return level_[sink] >= 0;
}

uint64_t MaxFlow::dfs(int v, int sink, uint64_t pushed) {
    if (v == sink) return pushed;
    for (size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
        const int id = adj_[v][i];
        Edge& e = edges_[id];
        if (e.capacity > 0 && level_[e.to] == level_[v] + 1) {
            const uint64_t got = dfs(e.to, sink, std::min(pushed, e.capacity));
            if (got > 0) {
                e.capacity -= got;
                edges_[id ^ 1].capacity += got;
                return got;
            }
        }
    }
    return 0;
}

uint64_t MaxFlow::solve(int source, int sink) {
    uint64_t flow = 0;
    while (bfs(source, sink)) {
        iter_.assign(adj_.size(), 0);
        while (uint64_t pushed = dfs(source, sink, std::numeric_limits<uint64_t>::max()))
            flow += pushed;
    }
    return flow;
}

std::vector<uint8_t> MaxFlow::min_cut_source_side(int source) const {
    std::vector<uint8_t> side(adj_.size(), 0);
    std::queue<int> q;
    side[source] = 1;
    q.push(source);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int id : adj_[v]) {
            const Edge& e = edges_[id];
            if (e.capacity > 0 && !side[e.to]) {
                side[e.to] = 1;
                q.push(e.to);
            }
        }
    }
    return side;
}

}  // namespace stackfilt
