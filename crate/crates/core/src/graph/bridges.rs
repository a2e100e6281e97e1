use super::{Edge, Graph};

/// Edges lying on at least one cycle, in canonical order.
///
/// Iterative low-link DFS: tree edge `(p, v)` is a bridge iff
/// `low[v] > disc[p]`. Every other edge is in the union of any cycle basis.
pub fn non_bridge_edges(g: &Graph) -> Vec<Edge> {
    let n = g.n();
    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, idx) = *top;
            if let Some(&w) = g.neighbors(v).get(idx) {
                top.2 += 1;
                if w == parent {
                    continue;
                }
                if disc[w] == UNSEEN {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] > disc[parent] {
                        bridges.push(Edge::new(parent, v));
                    }
                }
            }
        }
    }

    bridges.sort_unstable();
    g.edges()
        .filter(|e| bridges.binary_search(e).is_err())
        .collect()
}
