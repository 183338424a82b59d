use std::collections::BTreeMap;

use crate::GcsError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub label: String,
    pub frozen: bool,
    /// d_i; 1 everywhere except special vertices
    pub mult: u32,
}

/// Directed multigraph on vertices 0..len with multiplicities. Edge counts
/// are kept in a map keyed by (from, to); zero counts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GQuiver {
    vertices: Vec<Vertex>,
    edges: BTreeMap<(usize, usize), u32>,
}

impl GQuiver {
    pub fn new() -> GQuiver {
        GQuiver::default()
    }

    pub fn add_vertex(&mut self, label: impl Into<String>, frozen: bool, mult: u32) -> usize {
        self.vertices.push(Vertex {
            label: label.into(),
            frozen,
            mult: mult.max(1),
        });
        self.vertices.len() - 1
    }

    /// Add `count` parallel edges i → j.
    pub fn add_edges(&mut self, i: usize, j: usize, count: u32) {
        assert!(i < self.len() && j < self.len() && i != j, "bad edge {i} -> {j}");
        if count > 0 {
            *self.edges.entry((i, j)).or_insert(0) += count;
        }
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        self.add_edges(i, j, 1);
    }

    pub fn remove_edges(&mut self, i: usize, j: usize) {
        self.edges.remove(&(i, j));
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.label == label)
    }

    pub fn is_frozen(&self, i: usize) -> bool {
        self.vertices[i].frozen
    }

    pub fn mult(&self, i: usize) -> u32 {
        self.vertices[i].mult
    }

    /// b_ij: number of edges i → j.
    pub fn b(&self, i: usize, j: usize) -> u32 {
        self.edges.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.edges.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn out_edges(&self, k: usize) -> Vec<(usize, u32)> {
        self.edges().filter(|e| e.0 == k).map(|e| (e.1, e.2)).collect()
    }

    pub fn in_edges(&self, k: usize) -> Vec<(usize, u32)> {
        self.edges().filter(|e| e.1 == k).map(|e| (e.0, e.2)).collect()
    }

    pub fn degree(&self, k: usize) -> u32 {
        self.edges().filter(|e| e.0 == k || e.1 == k).map(|e| e.2).sum()
    }

    pub fn is_isolated(&self, k: usize) -> bool {
        self.degree(k) == 0
    }

    pub fn frozen_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.frozen).count()
    }

    pub fn isolated(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.is_isolated(k)).collect()
    }

    /// Vertices with d_i > 1.
    pub fn special(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.vertices[k].mult > 1).collect()
    }

    /// No oriented 2-cycles outside frozen-frozen pairs.
    pub fn has_two_cycles(&self) -> bool {
        self.edges.keys().any(|&(i, j)| {
            i < j && self.b(j, i) > 0 && !(self.is_frozen(i) && self.is_frozen(j))
        })
    }

    pub fn check_mutable(&self, k: usize) -> Result<(), GcsError> {
        match self.vertices.get(k) {
            None => Err(GcsError::UnknownVertex(k)),
            Some(v) if v.frozen => Err(GcsError::NotMutable(k)),
            Some(_) => Ok(()),
        }
    }

    /// Mutation at k. A path i → k → j adds b_ik·b_kj·m edges i → j, where
    /// m is d_k between mutable vertices, d_j when i is frozen and d_i when
    /// j is frozen; nothing is added between two frozen vertices. Edges at k
    /// are then reversed and opposite pairs cancelled.
    pub fn mutate(&self, k: usize) -> Result<GQuiver, GcsError> {
        self.check_mutable(k)?;
        let mut q = self.clone();
        for (i, bik) in self.in_edges(k) {
            for (j, bkj) in self.out_edges(k) {
                if i == j {
                    continue;
                }
                let m = match (self.is_frozen(i), self.is_frozen(j)) {
                    (false, false) => self.mult(k),
                    (true, false) => self.mult(j),
                    (false, true) => self.mult(i),
                    (true, true) => continue,
                };
                q.add_edges(i, j, bik * bkj * m);
            }
        }
        let at_k: Vec<(usize, usize, u32)> =
            q.edges().filter(|e| e.0 == k || e.1 == k).collect();
        for (i, j, c) in at_k {
            q.edges.remove(&(i, j));
            q.edges.insert((j, i), c);
        }
        q.cancel_two_cycles();
        Ok(q)
    }

    fn cancel_two_cycles(&mut self) {
        let pairs: Vec<(usize, usize)> = self
            .edges
            .keys()
            .filter(|&&(i, j)| i < j)
            .copied()
            .collect();
        for (i, j) in pairs {
            if self.is_frozen(i) && self.is_frozen(j) {
                continue;
            }
            let (f, r) = (self.b(i, j), self.b(j, i));
            let m = f.min(r);
            if m == 0 {
                continue;
            }
            for (key, left) in [((i, j), f - m), ((j, i), r - m)] {
                if left == 0 {
                    self.edges.remove(&key);
                } else {
                    self.edges.insert(key, left);
                }
            }
        }
    }

    /// The same quiver with vertex v renamed perm[v]. Labels travel with the
    /// vertices.
    pub fn relabel(&self, perm: &[usize]) -> GQuiver {
        let mut vertices = self.vertices.clone();
        for (v, &p) in perm.iter().enumerate() {
            vertices[p] = self.vertices[v].clone();
        }
        GQuiver {
            vertices,
            edges: self
                .edges
                .iter()
                .map(|(&(i, j), &c)| ((perm[i], perm[j]), c))
                .collect(),
        }
    }

    /// Equal as multigraphs with frozen flags and multiplicities, ignoring
    /// labels.
    pub fn same_shape(&self, o: &GQuiver) -> bool {
        self.edges == o.edges
            && self.len() == o.len()
            && self
                .vertices
                .iter()
                .zip(&o.vertices)
                .all(|(a, b)| a.frozen == b.frozen && a.mult == b.mult)
    }
}
