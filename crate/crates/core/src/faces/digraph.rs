use alloc::vec;
use alloc::vec::Vec;

use crate::arrangement::Arrangement;
use crate::faces::Face;
use crate::{Error, Result};

/// Directed graph on `0..n` stored as an adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    adj: Vec<Vec<bool>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { adj: vec![vec![false; n]; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Digraph::new(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i][j] = true;
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| (0..n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j)))
    }

    /// Strong components (Kosaraju), sources of the condensation first.
    pub fn strong_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut visited = vec![false; n];
        let mut finish = Vec::with_capacity(n);
        for v in 0..n {
            if !visited[v] {
                self.finish_order(v, &mut visited, &mut finish);
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for &v in finish.iter().rev() {
            if comp[v] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = Vec::new();
            self.collect_reverse(v, id, &mut comp, &mut members);
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    fn finish_order(&self, v: usize, visited: &mut [bool], finish: &mut Vec<usize>) {
        visited[v] = true;
        for u in 0..self.n() {
            if self.adj[v][u] && !visited[u] {
                self.finish_order(u, visited, finish);
            }
        }
        finish.push(v);
    }

    fn collect_reverse(&self, v: usize, id: usize, comp: &mut [usize], members: &mut Vec<usize>) {
        comp[v] = id;
        members.push(v);
        for u in 0..self.n() {
            if self.adj[u][v] && comp[u] == usize::MAX {
                self.collect_reverse(u, id, comp, members);
            }
        }
    }
}

/// A face digraph with its strong components listed so that every edge
/// between two components points from the earlier to the later one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDigraph {
    pub graph: Digraph,
    pub components: Vec<Vec<usize>>,
}

impl FaceDigraph {
    pub fn level(&self) -> usize {
        self.components.len()
    }
}

/// Edge `i → j` iff `x_i − x_j ≥ a_ij^(1)`, edge `j → i` iff
/// `x_i − x_j ≤ a_ij^(m)`, evaluated at the face witness.
pub fn face_digraph(a: &Arrangement, face: &Face) -> Result<Digraph> {
    let spec = a.deformed_braid_spec().ok_or(Error::NotDeformedBraid)?;
    let x = face.witness();
    let mut g = Digraph::new(spec.n());
    for (&(i, j), offsets) in spec.offsets() {
        let diff = &x[i] - &x[j];
        if diff >= offsets[0] {
            g.add_edge(i, j);
        }
        if diff <= *offsets.last().unwrap() {
            g.add_edge(j, i);
        }
    }
    Ok(g)
}

/// Orders the strong components; fails unless every pair of distinct
/// components is joined by edges in one direction only.
pub fn order_components(graph: Digraph) -> Result<FaceDigraph> {
    let components = graph.strong_components();
    for (p, earlier) in components.iter().enumerate() {
        for later in &components[p + 1..] {
            for &i in earlier {
                for &j in later {
                    if !graph.has_edge(i, j) || graph.has_edge(j, i) {
                        return Err(Error::CondensationNotTournament);
                    }
                }
            }
        }
    }
    Ok(FaceDigraph { graph, components })
}

/// Number of strong components of the face digraph.
pub fn level_by_components(a: &Arrangement, face: &Face) -> Result<usize> {
    Ok(order_components(face_digraph(a, face)?)?.level())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_orders() {
        let g = order_components(Digraph::from_edges(2, &[(0, 1)])).unwrap();
        assert_eq!(g.components, vec![vec![0], vec![1]]);
        let g = order_components(Digraph::from_edges(2, &[(0, 1), (1, 0)])).unwrap();
        assert_eq!(g.components, vec![vec![0, 1]]);
        let g = order_components(Digraph::from_edges(2, &[(1, 0)])).unwrap();
        assert_eq!(g.components, vec![vec![1], vec![0]]);
    }

    #[test]
    fn non_tournament_condensation_is_rejected() {
        // 0 and 2 are not joined at all
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(order_components(g), Err(Error::CondensationNotTournament));
    }

    #[test]
    fn components_follow_cycles() {
        let g = Digraph::from_edges(4, &[(0, 1), (1, 0), (0, 2), (1, 2), (2, 3), (3, 2), (0, 3), (1, 3)]);
        let ordered = order_components(g).unwrap();
        assert_eq!(ordered.components, vec![vec![0, 1], vec![2, 3]]);
    }
}
