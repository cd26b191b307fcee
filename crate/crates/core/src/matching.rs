//! Bipartite maximum matching (Hopcroft-Karp) and the padded feasibility
//! check used by the eps-matching decision.

use std::collections::VecDeque;

/// Maximum matching size of the bipartite graph with `left` vertices and
/// adjacency `adj[l] -> right indices`.
pub fn max_matching(left: usize, right: usize, adj: &[Vec<usize>]) -> usize {
    assert_eq!(adj.len(), left);
    const NIL: usize = usize::MAX;
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;

    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        let mut found_free = false;
        for l in 0..left {
            if match_l[l] == NIL {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NIL;
            }
        }
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let l2 = match_r[r];
                if l2 == NIL {
                    found_free = true;
                } else if dist[l2] == NIL {
                    dist[l2] = dist[l] + 1;
                    queue.push_back(l2);
                }
            }
        }
        if !found_free {
            break;
        }
        fn dfs(
            l: usize,
            adj: &[Vec<usize>],
            match_l: &mut [usize],
            match_r: &mut [usize],
            dist: &mut [usize],
        ) -> bool {
            for &r in &adj[l] {
                let l2 = match_r[r];
                if l2 == NIL
                    || (dist[l2] == dist[l].wrapping_add(1)
                        && dfs(l2, adj, match_l, match_r, dist))
                {
                    match_l[l] = r;
                    match_r[r] = l;
                    return true;
                }
            }
            dist[l] = NIL;
            false
        }
        for l in 0..left {
            if match_l[l] == NIL && dfs(l, adj, &mut match_l, &mut match_r, &mut dist) {
                size += 1;
            }
        }
    }
    size
}

/// Is there a matching in the bipartite graph (edges over `n_a` x `n_b`
/// vertices) that covers every vertex not marked optional?
///
/// Each optional vertex gets a private dummy partner on the opposite side and
/// dummies pair freely among themselves, so feasibility becomes a perfect
/// matching on the padded square graph.
pub fn covering_matching_exists(
    n_a: usize,
    n_b: usize,
    edge: impl Fn(usize, usize) -> bool,
    optional_a: &[bool],
    optional_b: &[bool],
) -> bool {
    assert_eq!(optional_a.len(), n_a);
    assert_eq!(optional_b.len(), n_b);
    // left = A vertices then dummies for B; right = B vertices then dummies for A
    let left = n_a + n_b;
    let right = n_b + n_a;
    let mut adj = vec![Vec::new(); left];
    for a in 0..n_a {
        for b in 0..n_b {
            if edge(a, b) {
                adj[a].push(b);
            }
        }
        if optional_a[a] {
            adj[a].push(n_b + a);
        }
    }
    for b in 0..n_b {
        if optional_b[b] {
            adj[n_a + b].push(b);
        }
        for a in 0..n_a {
            adj[n_a + b].push(n_b + a); // dummy-dummy edges
        }
    }
    max_matching(left, right, &adj) == left
}
