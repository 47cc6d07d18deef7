//! Orbits of a group given by generators on a ball of the building.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::{act, ProjElement, VertexClass};
use crate::error::{Error, Result};
use crate::group::{stabilizer_in_finite, GroupDescriptor};

/// The vertices within distance `radius` of `center`, in BFS order.
#[derive(Clone, Debug)]
pub struct Ball {
    pub radius: u32,
    pub vertices: Vec<VertexClass>,
    pub dist: Vec<u32>,
    pub index: HashMap<VertexClass, usize>,
    /// Neighbors inside the ball.
    pub adj: Vec<Vec<usize>>,
}

impl Ball {
    pub fn new(center: &VertexClass, radius: u32) -> Ball {
        let mut vertices = vec![center.clone()];
        let mut dist = vec![0];
        let mut index = HashMap::from([(center.clone(), 0)]);
        let mut all_nbrs: Vec<Vec<VertexClass>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let ns = vertices[i].neighbors();
            if dist[i] < radius {
                for n in &ns {
                    if !index.contains_key(n) {
                        index.insert(n.clone(), vertices.len());
                        vertices.push(n.clone());
                        dist.push(dist[i] + 1);
                        queue.push_back(vertices.len() - 1);
                    }
                }
            }
            if all_nbrs.len() <= i {
                all_nbrs.resize(i + 1, Vec::new());
            }
            all_nbrs[i] = ns;
        }
        let adj = all_nbrs
            .iter()
            .map(|ns| {
                let mut v: Vec<usize> = ns.iter().filter_map(|n| index.get(n).copied()).collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ball { radius, vertices, dist, index, adj }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, ns) in self.adj.iter().enumerate() {
            for &j in ns {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (i, j) in self.edges() {
            for &k in &self.adj[j] {
                if k > j && self.adj[i].binary_search(&k).is_ok() {
                    out.push((i, j, k));
                }
            }
        }
        out
    }
}

/// Result of merging ball vertices, edges and triangles along generator
/// moves that stay inside the ball.
#[derive(Clone, Debug)]
pub struct OrbitSearch {
    pub ball: Ball,
    pub trusted_radius: u32,
    vertex_uf: UnionFind<usize>,
    edges: Vec<(usize, usize)>,
    edge_uf: UnionFind<usize>,
    triangles: Vec<(usize, usize, usize)>,
    triangle_uf: UnionFind<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub orbit_reps: Vec<VertexClass>,
    pub stabilizer_orders: Vec<usize>,
    pub stabilizers: Vec<GroupDescriptor>,
    pub explored_radius: u32,
    pub trusted_radius: u32,
    pub vertex_orbits: usize,
    pub edge_orbits: usize,
    pub triangle_orbits: usize,
}

/// Explores the ball of `radius` around `start` and merges everything
/// related by a generator or its inverse. Only the ball of radius
/// `radius − 1` is trusted: orbits may still merge through the boundary.
pub fn orbit_bfs(generators: &[ProjElement], start: &VertexClass, radius: u32, precision: u32) -> Result<OrbitSearch> {
    if radius < 1 {
        return Err(Error::Invalid("radius must be at least 1".into()));
    }
    let ball = Ball::new(start, radius);
    let n = ball.len();
    let mut moves: Vec<ProjElement> = Vec::new();
    for g in generators {
        moves.push(g.clone());
        moves.push(g.inverse());
    }
    // images[m][i] = index of moves[m]·vertices[i], if inside the ball
    let mut images: Vec<Vec<Option<usize>>> = Vec::with_capacity(moves.len());
    for g in &moves {
        let row = ball
            .vertices
            .iter()
            .map(|v| act(g, v, precision).map(|w| ball.index.get(&w).copied()))
            .collect::<Result<Vec<_>>>()?;
        images.push(row);
    }

    let mut vertex_uf = UnionFind::new(n);
    for row in &images {
        for (i, img) in row.iter().enumerate() {
            if let Some(j) = img {
                vertex_uf.union(i, *j);
            }
        }
    }

    let edges = ball.edges();
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut edge_uf = UnionFind::new(edges.len());
    for row in &images {
        for (k, &(a, b)) in edges.iter().enumerate() {
            if let (Some(x), Some(y)) = (row[a], row[b]) {
                if let Some(&k2) = edge_index.get(&(x.min(y), x.max(y))) {
                    edge_uf.union(k, k2);
                }
            }
        }
    }

    let triangles = ball.triangles();
    let tri_index: HashMap<(usize, usize, usize), usize> = triangles.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let mut triangle_uf = UnionFind::new(triangles.len());
    for row in &images {
        for (k, &(a, b, c)) in triangles.iter().enumerate() {
            if let (Some(x), Some(y), Some(z)) = (row[a], row[b], row[c]) {
                let mut t = [x, y, z];
                t.sort_unstable();
                if let Some(&k2) = tri_index.get(&(t[0], t[1], t[2])) {
                    triangle_uf.union(k, k2);
                }
            }
        }
    }

    Ok(OrbitSearch { ball, trusted_radius: radius - 1, vertex_uf, edges, edge_uf, triangles, triangle_uf })
}

impl OrbitSearch {
    fn trusted(&self, i: usize) -> bool {
        self.ball.dist[i] <= self.trusted_radius
    }

    pub fn vertex_root(&self, i: usize) -> usize {
        self.vertex_uf.find(i)
    }

    /// One representative per orbit meeting the trusted ball: the vertex of
    /// the orbit closest to the start, in BFS order.
    pub fn vertex_reps(&self) -> Vec<usize> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for i in 0..self.ball.len() {
            if self.trusted(i) && seen.insert(self.vertex_uf.find(i)) {
                reps.push(i);
            }
        }
        reps
    }

    pub fn same_orbit(&self, u: &VertexClass, w: &VertexClass) -> Option<bool> {
        let a = *self.ball.index.get(u)?;
        let b = *self.ball.index.get(w)?;
        Some(self.vertex_uf.equiv(a, b))
    }

    pub fn edge_orbits(&self) -> usize {
        let roots: BTreeSet<usize> = (0..self.edges.len())
            .filter(|&k| self.trusted(self.edges[k].0) && self.trusted(self.edges[k].1))
            .map(|k| self.edge_uf.find(k))
            .collect();
        roots.len()
    }

    pub fn triangle_orbits(&self) -> usize {
        let roots: BTreeSet<usize> = (0..self.triangles.len())
            .filter(|&k| {
                let (a, b, c) = self.triangles[k];
                self.trusted(a) && self.trusted(b) && self.trusted(c)
            })
            .map(|k| self.triangle_uf.find(k))
            .collect();
        roots.len()
    }

    /// Summary table; stabilizers of the representatives are taken inside
    /// the finite group `finite` when one is given.
    pub fn table(&self, finite: Option<&[ProjElement]>, precision: u32) -> Result<OrbitTable> {
        let reps: Vec<VertexClass> = self.vertex_reps().into_iter().map(|i| self.ball.vertices[i].clone()).collect();
        let mut stabilizers = Vec::new();
        if let Some(group) = finite {
            for r in &reps {
                stabilizers.push(stabilizer_in_finite(group, r, precision)?);
            }
        }
        Ok(OrbitTable {
            stabilizer_orders: stabilizers.iter().map(|s| s.order).collect(),
            stabilizers,
            vertex_orbits: reps.len(),
            orbit_reps: reps,
            explored_radius: self.ball.radius,
            trusted_radius: self.trusted_radius,
            edge_orbits: self.edge_orbits(),
            triangle_orbits: self.triangle_orbits(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientEdge {
    pub from: usize,
    pub to: usize,
    pub multiplicity: usize,
}

/// Orbit-collapsed adjacency: one node per vertex orbit, and for each
/// representative the number of its neighbors in each orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientGraph {
    pub nodes: Vec<VertexClass>,
    pub edges: Vec<QuotientEdge>,
}

pub fn quotient_graph(search: &OrbitSearch) -> Result<QuotientGraph> {
    if search.trusted_radius < 1 {
        return Err(Error::Invalid("the trusted ball has no edges; use radius at least 2".into()));
    }
    let reps = search.vertex_reps();
    let node_of: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(k, &i)| (search.vertex_root(i), k)).collect();
    let mut edges = Vec::new();
    for (k, &i) in reps.iter().enumerate() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &j in &search.ball.adj[i] {
            if let Some(&t) = node_of.get(&search.vertex_root(j)) {
                *counts.entry(t).or_default() += 1;
            }
        }
        for (to, multiplicity) in counts {
            edges.push(QuotientEdge { from: k, to, multiplicity });
        }
    }
    Ok(QuotientGraph { nodes: reps.iter().map(|&i| search.ball.vertices[i].clone()).collect(), edges })
}

impl QuotientGraph {
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for (k, v) in self.nodes.iter().enumerate() {
            s.push_str(&format!("  n{k} [label=\"{v}\"];\n"));
        }
        for e in &self.edges {
            if e.from <= e.to {
                s.push_str(&format!("  n{} -- n{} [label=\"{}\"];\n", e.from, e.to, e.multiplicity));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::DEFAULT_PRECISION;

    fn d() -> VertexClass {
        VertexClass::from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap()
    }

    #[test]
    fn ball_sizes() {
        let b = Ball::new(&d(), 2);
        assert_eq!(b.dist.iter().filter(|&&x| x == 1).count(), 14);
        // Adjacency inside the ball is symmetric.
        for (i, ns) in b.adj.iter().enumerate() {
            for &j in ns {
                assert!(b.adj[j].contains(&i));
            }
        }
        // Each edge at the center lies on 3 triangles.
        let center_tris = b.triangles().iter().filter(|t| t.0 == 0).count();
        assert_eq!(center_tris, 21);
    }

    #[test]
    fn no_generators_means_singleton_orbits() {
        let s = orbit_bfs(&[], &d(), 2, DEFAULT_PRECISION).unwrap();
        assert_eq!(s.vertex_reps().len(), 15);
        let t = s.table(None, DEFAULT_PRECISION).unwrap();
        assert_eq!(t.vertex_orbits, 15);
        assert!(quotient_graph(&s).is_ok());
        let s1 = orbit_bfs(&[], &d(), 1, DEFAULT_PRECISION).unwrap();
        assert!(quotient_graph(&s1).is_err());
    }
}
