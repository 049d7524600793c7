#ifndef STACKFILT_MAXFLOW_HPP
#define STACKFILT_MAXFLOW_HPP

#include <cstdint>
#include <vector>

namespace stackfilt {

/// Dinic max-flow on a small dense graph. Used to solve the monotone
/// truth-table fitting problem as a minimum s-t cut; sized for graphs of
/// a few thousand nodes.
class MaxFlow {
public:
    explicit MaxFlow(int node_count)
        : adj_(node_count) {}

    int add_edge(int from, int to, uint64_t capacity);

    uint64_t solve(int source, int sink);

    /// After solve(): nodes reachable from the source in the residual
    /// graph. This is the unique minimal source side over all min cuts.
    std::vector<uint8_t> min_cut_source_side(int source) const;

private:
    struct Edge {
        int to;
        uint64_t capacity;
    };
    bool bfs(int source, int sink);
    uint64_t dfs(int v, int sink, uint64_t pushed);

    std::vector<std::vector<int>> adj_;
    std::vector<Edge> edges_;
    std::vector<int> level_;
    std::vector<size_t> iter_;
};

}  // namespace stackfilt

#endif
