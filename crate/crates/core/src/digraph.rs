//! The level-`m` weighted digraph `Γ^m_ε` of a circular sequence, built
//! vertex by vertex, and its component census.
//!
//! Vertex `x_{i,t}` stands for the `i`-th Witt digit (`0 ≤ i < m`) of the
//! coordinate at position `t` of an orbit. An edge `x_{i,t} → x_{j,t+1}` of
//! weight `w = j - i` records the relation `source^{p^{w+1}} = target`. Some
//! vertices are forced to vanish ("zero marks"); a zero spreads along the
//! whole linear component containing it.
//!
//! This module is the brute-force side of the formula/oracle pair; it does not
//! use anything from [`crate::circseq`] beyond the sequence type.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::circseq::CircularSeq;
use crate::error::Error;
use crate::Result;

/// A digit variable `x_{digit, position}`; `position` is 0-based here and
/// printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub digit: usize,
    pub position: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.digit, self.position + 1)
    }
}

/// The two-column digraph `Γ^m_{ε_t, ε_{t+1}}`: zero marks on the left
/// (position `t`) and right (position `t+1`) columns, and edges
/// `(source digit, target digit, weight)` from left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairGraph {
    pub left_zeros: Vec<usize>,
    pub right_zeros: Vec<usize>,
    pub edges: Vec<(usize, usize, i64)>,
}

/// Component census of a digraph after zero propagation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ComponentStats {
    /// `ℓ`: linear components without a zero vertex.
    pub free_linear: u64,
    /// `c`: circular components.
    pub circular: u64,
    /// `w`: total number of edges over all circular components.
    pub circular_edges: u64,
    /// Linear components that were forced to zero.
    pub zero_linear: u64,
}

impl core::ops::AddAssign for ComponentStats {
    fn add_assign(&mut self, rhs: Self) {
        self.free_linear += rhs.free_linear;
        self.circular += rhs.circular;
        self.circular_edges += rhs.circular_edges;
        self.zero_linear += rhs.zero_linear;
    }
}

/// Pair digraph from the single congruence shared by all eleven cases.
///
/// With `α = max(ε_t, 0)` and `β = max(0, -ε_{t+1})` the relation reads
/// `p^α σ(x_t) ≡ p^β x_{t+1} (mod p^m)`. Comparing Witt digits: left digits
/// below `min(β, m) - α` vanish, right digits below `min(α, m) - β` vanish,
/// and `x_{i,t} → x_{i+α-β, t+1}` for `max(0, β-α) ≤ i ≤ m-1-α`.
pub fn pair_edges(eps_t: i64, eps_next: i64, m: usize) -> PairGraph {
    let m = m as i64;
    let alpha = eps_t.max(0);
    let beta = (-eps_next).max(0);
    let left_zeros = (0..beta.min(m) - alpha).map(|l| l as usize).collect();
    let right_zeros = (0..alpha.min(m) - beta).map(|l| l as usize).collect();
    let lo = (beta - alpha).max(0);
    let hi = m - 1 - alpha;
    let edges = (lo..=hi)
        .map(|i| (i as usize, (i + alpha - beta) as usize, alpha - beta))
        .collect();
    PairGraph {
        left_zeros,
        right_zeros,
        edges,
    }
}

/// Which of the eleven disjoint regions `S_{1,m}, .., S_{11,m}` of `Z²`
/// contains `(x, y) = (ε_t, ε_{t+1})`.
pub fn pair_case(x: i64, y: i64, m: usize) -> u8 {
    let m = m as i64;
    let regions: [(u8, bool); 11] = [
        (1, 0 < x && x == -y && x < m),
        (2, x <= 0 && 0 <= y),
        (3, 0 <= x && x < -y && -y < m),
        (4, 0 <= x && x < m && m <= -y),
        (5, 0 <= -y && -y < x && x < m),
        (6, 0 <= -y && -y < m && m <= x),
        (7, x >= m && y <= -m),
        (8, x < 0 && 0 < -y && -y < m),
        (9, x < 0 && 0 < m && m <= -y),
        (10, 0 < x && x < m && y > 0),
        (11, x >= m && y > 0),
    ];
    let mut hits = regions.iter().filter(|(_, inside)| *inside);
    let (case, _) = *hits.next().expect("the eleven regions cover Z^2");
    debug_assert!(hits.next().is_none(), "the eleven regions are disjoint");
    case
}

/// Literal case-by-case transcription of the eleven pair digraphs, kept as a
/// reference for [`pair_edges`].
pub fn pair_edges_case_table(eps_t: i64, eps_next: i64, m: usize) -> PairGraph {
    let (x, y) = (eps_t, eps_next);
    let mi = m as i64;
    let range = |from: i64, to_inclusive: i64| -> Vec<usize> {
        (from..=to_inclusive).map(|v| v as usize).collect()
    };
    let mut g = PairGraph::default();
    match pair_case(x, y, m) {
        1 => {
            // x_{k,t}^p = x_{k,t+1} for k = 0 .. m-ε_t-1
            g.edges = (0..=mi - x - 1).map(|k| (k as usize, k as usize, 0)).collect();
        }
        2 => {
            g.edges = (0..mi).map(|k| (k as usize, k as usize, 0)).collect();
        }
        3 => {
            // x_{0,t} = .. = x_{-ε_{t+1}-ε_t-1,t} = 0,
            // x_{-ε_{t+1}-ε_t+k,t} → x_{k,t+1} up to source m-ε_t-1
            g.left_zeros = range(0, -y - x - 1);
            g.edges = (0..=mi + y - 1)
                .map(|k| ((-y - x + k) as usize, k as usize, x + y))
                .collect();
        }
        4 => {
            g.left_zeros = range(0, mi - x - 1);
        }
        5 => {
            // x_{0,t+1} = .. = x_{ε_t+ε_{t+1}-1,t+1} = 0,
            // x_{k,t} → x_{ε_t+ε_{t+1}+k,t+1} for k = 0 .. m-ε_t-1
            g.right_zeros = range(0, x + y - 1);
            g.edges = (0..=mi - x - 1)
                .map(|k| (k as usize, (x + y + k) as usize, x + y))
                .collect();
        }
        6 => {
            g.right_zeros = range(0, mi + y - 1);
        }
        7 => {}
        8 => {
            // x_{0,t} = .. = x_{-ε_{t+1}-1,t} = 0,
            // x_{-ε_{t+1}+k,t} → x_{k,t+1} for k = 0 .. m+ε_{t+1}-1
            g.left_zeros = range(0, -y - 1);
            g.edges = (0..=mi + y - 1)
                .map(|k| ((-y + k) as usize, k as usize, y))
                .collect();
        }
        9 => {
            g.left_zeros = range(0, mi - 1);
        }
        10 => {
            // x_{0,t+1} = .. = x_{ε_t-1,t+1} = 0,
            // x_{k,t} → x_{ε_t+k,t+1} for k = 0 .. m-ε_t-1
            g.right_zeros = range(0, x - 1);
            g.edges = (0..=mi - x - 1)
                .map(|k| (k as usize, (x + k) as usize, x))
                .collect();
        }
        11 => {
            g.right_zeros = range(0, mi - 1);
        }
        _ => unreachable!(),
    }
    g
}

/// `Γ^m_ε` with dense storage: vertex `x_{i,t}` lives at index `t·m + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelDigraph {
    positions: usize,
    levels: usize,
    zero: Vec<bool>,
    succ: Vec<Option<(usize, i64)>>,
    pred: Vec<Option<usize>>,
}

struct Component {
    vertices: Vec<usize>,
    cyclic: bool,
}

impl LevelDigraph {
    /// Builds `Γ^m_ε`. For `s ≥ 2` this is the union of the pair digraphs of
    /// all cyclically consecutive entries; for `s = 1` it is `m` weight-0
    /// self-loops when `ε_1 = 0` and `m` isolated zero vertices otherwise.
    pub fn build(seq: &CircularSeq, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroLevel);
        }
        let s = seq.len();
        let n = s * m;
        let mut g = LevelDigraph {
            positions: s,
            levels: m,
            zero: vec![false; n],
            succ: vec![None; n],
            pred: vec![None; n],
        };
        let eps = seq.entries();
        if s == 1 {
            for i in 0..m {
                if eps[0] == 0 {
                    g.add_edge(i, i, 0)?;
                } else {
                    g.zero[i] = true;
                }
            }
            return Ok(g);
        }
        for t in 0..s {
            let next = (t + 1) % s;
            let pair = pair_edges(eps[t], eps[next], m);
            for l in pair.left_zeros {
                g.zero[t * m + l] = true;
            }
            for l in pair.right_zeros {
                g.zero[next * m + l] = true;
            }
            for (i, j, w) in pair.edges {
                g.add_edge(t * m + i, next * m + j, w)?;
            }
        }
        Ok(g)
    }

    fn add_edge(&mut self, from: usize, to: usize, weight: i64) -> Result<()> {
        if self.succ[from].is_some() {
            let v = self.vertex(from);
            return Err(Error::DegreeOverflow {
                digit: v.digit,
                position: v.position + 1,
                direction: "out",
            });
        }
        if self.pred[to].is_some() {
            let v = self.vertex(to);
            return Err(Error::DegreeOverflow {
                digit: v.digit,
                position: v.position + 1,
                direction: "in",
            });
        }
        self.succ[from] = Some((to, weight));
        self.pred[to] = Some(from);
        Ok(())
    }

    fn vertex(&self, index: usize) -> Vertex {
        Vertex {
            digit: index % self.levels,
            position: index / self.levels,
        }
    }

    fn index(&self, v: Vertex) -> usize {
        v.position * self.levels + v.digit
    }

    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn vertex_count(&self) -> usize {
        self.zero.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().flatten().count()
    }

    pub fn zero_count(&self) -> usize {
        self.zero.iter().filter(|&&z| z).count()
    }

    pub fn is_zero(&self, v: Vertex) -> bool {
        self.zero[self.index(v)]
    }

    /// All vertices, position-major.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(|k| self.vertex(k))
    }

    /// All edges as `(source, target, weight)`, ordered by source.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .filter_map(|(k, e)| e.map(|(to, w)| (self.vertex(k), self.vertex(to), w)))
    }

    fn components(&self) -> Vec<Component> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            // Walk back to the head of the path, or all the way round a cycle.
            let mut head = v;
            let mut cyclic = false;
            while let Some(p) = self.pred[head] {
                if p == v {
                    cyclic = true;
                    break;
                }
                head = p;
            }
            if cyclic {
                head = v;
            }
            let mut vertices = Vec::new();
            let mut cur = head;
            loop {
                seen[cur] = true;
                vertices.push(cur);
                match self.succ[cur] {
                    Some((next, _)) if next != head => cur = next,
                    _ => break,
                }
            }
            out.push(Component { vertices, cyclic });
        }
        out
    }

    /// Spreads every zero mark over its whole (undirected) component. A mark
    /// on a circular component means the construction is broken.
    pub fn propagate_zeros(mut self) -> Result<Self> {
        for comp in self.components() {
            let marked = comp.vertices.iter().find(|&&k| self.zero[k]).copied();
            let Some(k) = marked else { continue };
            if comp.cyclic {
                let v = self.vertex(k);
                return Err(Error::ZeroOnCycle {
                    digit: v.digit,
                    position: v.position + 1,
                });
            }
            for &k in &comp.vertices {
                self.zero[k] = true;
            }
        }
        Ok(self)
    }

    /// Counts free linear, zero linear and circular components. Expects zero
    /// marks to be propagated already.
    pub fn classify_components(&self) -> ComponentStats {
        let mut stats = ComponentStats::default();
        for comp in self.components() {
            if comp.cyclic {
                stats.circular += 1;
                stats.circular_edges += comp.vertices.len() as u64;
            } else if comp.vertices.iter().any(|&k| self.zero[k]) {
                stats.zero_linear += 1;
            } else {
                stats.free_linear += 1;
            }
        }
        stats
    }

    /// Graphviz rendering: one node `"i:t"` per vertex (zero vertices filled),
    /// one weighted arc per edge.
    pub fn write_dot<W: fmt::Write>(&self, name: &str, out: &mut W) -> fmt::Result {
        writeln!(out, "digraph \"{name}\" {{")?;
        for v in self.vertices() {
            if self.is_zero(v) {
                writeln!(out, "  \"{v}\" [zero=true, style=filled, fillcolor=gray];")?;
            } else {
                writeln!(out, "  \"{v}\";")?;
            }
        }
        for (a, b, w) in self.edges() {
            writeln!(out, "  \"{a}\" -> \"{b}\" [w={w}, label=\"{w}\"];")?;
        }
        writeln!(out, "}}")
    }
}

/// Build, propagate zeros, classify: the oracle `(ℓ, c, w)` for `Γ^m_ε`.
pub fn oracle_counts(seq: &CircularSeq, m: usize) -> Result<ComponentStats> {
    Ok(LevelDigraph::build(seq, m)?
        .propagate_zeros()?
        .classify_components())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(v: &[i64]) -> CircularSeq {
        CircularSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pair_edges_examples() {
        let g = pair_edges(3, -3, 5);
        assert!(g.left_zeros.is_empty() && g.right_zeros.is_empty());
        assert_eq!(g.edges, vec![(0, 0, 0), (1, 1, 0)]);

        let g = pair_edges(0, 0, 3);
        assert!(g.left_zeros.is_empty() && g.right_zeros.is_empty());
        assert_eq!(g.edges, vec![(0, 0, 0), (1, 1, 0), (2, 2, 0)]);

        for m in 1..6 {
            let mi = m as i64;
            assert_eq!(pair_edges(mi, -mi, m), PairGraph::default());
        }
    }

    #[test]
    fn case_table_examples() {
        assert_eq!(pair_case(1, -1, 2), 1);
        assert_eq!(pair_edges_case_table(1, -1, 2).edges, vec![(0, 0, 0)]);

        assert_eq!(pair_case(-1, -2, 3), 8);
        let g = pair_edges_case_table(-1, -2, 3);
        assert_eq!(g.left_zeros, vec![0, 1]);
        assert_eq!(g.edges, vec![(2, 0, -2)]);

        assert_eq!(pair_case(2, 1, 3), 10);
        let g = pair_edges_case_table(2, 1, 3);
        assert_eq!(g.right_zeros, vec![0, 1]);
        assert_eq!(g.edges, vec![(0, 2, 2)]);
    }

    #[test]
    fn every_case_is_reachable() {
        let m = 4;
        let mut hit = [false; 12];
        for x in -7..=7 {
            for y in -7..=7 {
                hit[pair_case(x, y, m) as usize] = true;
            }
        }
        assert!(hit[1..].iter().all(|&h| h));
    }

    #[test]
    fn singleton_orbits() {
        let g = LevelDigraph::build(&seq(&[0]), 4).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.zero_count(), 0);
        assert!(g.edges().all(|(a, b, w)| a == b && w == 0));

        let g = LevelDigraph::build(&seq(&[2]), 3).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.zero_count(), 3);
        let again = g.clone().propagate_zeros().unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn two_position_graph_shares_columns() {
        let g = LevelDigraph::build(&seq(&[3, -3]), 5).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.zero_count(), 0);
        let p = g.clone().propagate_zeros().unwrap();
        assert_eq!(p, g);
        let stats = p.classify_components();
        assert_eq!(
            stats,
            ComponentStats {
                free_linear: 3,
                circular: 2,
                circular_edges: 4,
                zero_linear: 0
            }
        );
    }

    #[test]
    fn zeros_spread_along_paths() {
        let g = LevelDigraph::build(&seq(&[1, 1]), 2).unwrap();
        assert!(g.zero_count() < 4);
        let g = g.propagate_zeros().unwrap();
        assert_eq!(g.zero_count(), 4);
        let stats = g.classify_components();
        assert_eq!(stats.free_linear + stats.circular, 0);
    }

    #[test]
    fn oracle_examples() {
        let s = oracle_counts(&seq(&[0]), 4).unwrap();
        assert_eq!((s.free_linear, s.circular, s.circular_edges), (0, 4, 4));
        let s = oracle_counts(&seq(&[3, 0, -1, -2]), 5).unwrap();
        assert_eq!((s.free_linear, s.circular, s.circular_edges), (3, 2, 8));
        let s = oracle_counts(&seq(&[1, 1, 1, 0, -1, -1, -1]), 5).unwrap();
        assert_eq!((s.free_linear, s.circular), (3, 2));
        let s = oracle_counts(&seq(&[-1, 1]), 1).unwrap();
        assert_eq!((s.free_linear, s.circular), (1, 0));
        let s = oracle_counts(&seq(&[0, 0]), 2).unwrap();
        assert_eq!((s.free_linear, s.circular, s.circular_edges), (0, 2, 4));
    }

    #[test]
    fn zero_level_is_rejected() {
        assert_eq!(LevelDigraph::build(&seq(&[0]), 0), Err(Error::ZeroLevel));
    }

    #[test]
    fn dot_dump_lists_vertices_and_arcs() {
        let g = LevelDigraph::build(&seq(&[1, -1]), 2).unwrap();
        let mut s = alloc::string::String::new();
        g.write_dot("orbit", &mut s).unwrap();
        assert!(s.starts_with("digraph \"orbit\" {"));
        assert!(s.contains("\"0:1\" -> \"0:2\" [w=0, label=\"0\"];"));
        assert_eq!(s.matches("->").count(), g.edge_count());
    }
}
