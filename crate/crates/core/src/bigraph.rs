//! Bipartite graphs, independent sets and their associated spanning subgraphs.
//!
//! Vertices are numbered as in the literature: `U_1 = {1..m}`, `U_2 = {m+1..m+n}`.

use crate::bits::Bits;
use crate::lattice::{MVector, NVector, QuotientContext};
use crate::linalg::{self, Int};
use crate::{Error, Result};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

pub const MAX_VERTICES: usize = 63;

/// A set of vertices; bit `v` stands for vertex `v`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// Vertices `lo..=hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        if hi < lo {
            return Self::EMPTY;
        }
        let upper = if hi >= 63 { u64::MAX } else { (1u64 << (hi + 1)) - 1 };
        VertexSet(upper & !((1u64 << lo) - 1))
    }

    pub fn single(v: usize) -> Self {
        VertexSet(1 << v)
    }

    #[inline]
    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    #[inline]
    pub fn inter(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    #[inline]
    pub fn minus(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut w = self.0;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(t)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        if v.iter().any(|&x| x > MAX_VERTICES) {
            return Err(serde::de::Error::custom("vertex out of range"));
        }
        Ok(v.into_iter().collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    /// Sorted lexicographically; edge index = position.
    edges: Vec<(usize, usize)>,
    adj: Vec<VertexSet>,
    connected: bool,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    m: usize,
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl Serialize for BipartiteGraph {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson { m: self.m, n: self.n, edges: self.edges.iter().map(|&(i, j)| [i, j]).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let g = GraphJson::deserialize(d)?;
        let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
        BipartiteGraph::new(g.m, g.n, &edges).map_err(serde::de::Error::custom)
    }
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Parse("both vertex classes must be nonempty".into()));
        }
        if m + n > MAX_VERTICES {
            return Err(Error::VertexOutOfRange(m + n));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        let mut adj = vec![VertexSet::EMPTY; m + n + 1];
        for &(i, j) in edges {
            if !(1..=m).contains(&i) || !(m + 1..=m + n).contains(&j) {
                return Err(Error::InvalidEdge(i, j));
            }
            if adj[i].contains(j) {
                return Err(Error::DuplicateEdge(i, j));
            }
            adj[i].insert(j);
            adj[j].insert(i);
            sorted.push((i, j));
        }
        sorted.sort_unstable();
        let mut g = BipartiteGraph { m, n, edges: sorted, adj, connected: false };
        g.connected = g.induced_connected(g.all_vertices());
        Ok(g)
    }

    pub fn complete(m: usize, n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..=m).flat_map(|i| (m + 1..=m + n).map(move |j| (i, j))).collect();
        Self::new(m, n, &edges).expect("complete graph is valid")
    }

    /// `K_{m,n}` with every edge between `c1 ⊆ U_1` and `c2 ⊆ U_2` removed.
    pub fn complete_minus(m: usize, n: usize, c1: VertexSet, c2: VertexSet) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..=m)
            .flat_map(|i| (m + 1..=m + n).map(move |j| (i, j)))
            .filter(|&(i, j)| !(c1.contains(i) && c2.contains(j)))
            .collect();
        Self::new(m, n, &edges)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    /// First line `m n`, then one `i j` pair per line. Blank lines and lines
    /// starting with `#` are skipped.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let parse_pair = |l: &str| -> Result<(usize, usize)> {
            let mut it = l.split_whitespace().map(|t| t.parse::<usize>().map_err(|e| Error::Parse(format!("{l:?}: {e}"))));
            match (it.next(), it.next(), it.next()) {
                (Some(a), Some(b), None) => Ok((a?, b?)),
                _ => Err(Error::Parse(format!("expected two integers, got {l:?}"))),
            }
        };
        let (m, n) = parse_pair(lines.next().ok_or_else(|| Error::Parse("empty input".into()))?)?;
        let edges = lines.map(parse_pair).collect::<Result<Vec<_>>>()?;
        Self::new(m, n, &edges)
    }

    /// JSON when the input starts with `{`, text otherwise.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_text(s)
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        self.edges.binary_search(&(i, j)).ok()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i).is_some_and(|a| a.contains(j))
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn ctx(&self) -> QuotientContext {
        QuotientContext::graph(self.m, self.n)
    }

    pub fn left(&self) -> VertexSet {
        VertexSet::range(1, self.m)
    }

    pub fn right(&self) -> VertexSet {
        VertexSet::range(self.m + 1, self.m + self.n)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::range(1, self.m + self.n)
    }

    pub fn adjacency(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    fn check(&self, s: VertexSet) -> Result<()> {
        match s.minus(self.all_vertices()).min() {
            Some(v) => Err(Error::VertexOutOfRange(v)),
            None => Ok(()),
        }
    }

    pub fn neighbor_set(&self, s: VertexSet) -> Result<VertexSet> {
        self.check(s)?;
        Ok(self.neighbors(s))
    }

    #[inline]
    pub(crate) fn neighbors(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::EMPTY, |acc, v| acc.union(self.adj[v]))
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        self.neighbors(s).inter(s).is_empty()
    }

    /// Whether the induced subgraph `G[s]` is connected. The empty set is not.
    pub fn induced_connected(&self, s: VertexSet) -> bool {
        let Some(start) = s.min() else { return false };
        let mut seen = VertexSet::single(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighbors(frontier).inter(s).minus(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen == s
    }

    pub fn full_subgraph(&self) -> SpanningSubgraph<'_> {
        SpanningSubgraph { parent: self, kept: Bits::full(self.edges.len()) }
    }

    pub fn subgraph(&self, kept: Bits) -> SpanningSubgraph<'_> {
        SpanningSubgraph { parent: self, kept }
    }

    /// Edges with both endpoints in `x` or both in `y`.
    pub(crate) fn edges_within(&self, x: VertexSet, y: VertexSet) -> Bits {
        let mut b = Bits::new(self.edges.len());
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            if (x.contains(i) && x.contains(j)) || (y.contains(i) && y.contains(j)) {
                b.insert(k);
            }
        }
        b
    }

    pub fn associated_subgraph(&self, a: &IndependentSet) -> Result<SpanningSubgraph<'_>> {
        if !self.is_independent(a.vertices()) {
            return Err(Error::NotIndependent);
        }
        Ok(self.subgraph(self.associated_mask(a)))
    }

    pub(crate) fn associated_mask(&self, a: &IndependentSet) -> Bits {
        let (u1, u2) = (self.left(), self.right());
        let (x, y) = match a.kind {
            SetKind::OneSidedLeft => {
                let na = self.neighbors(a.a1);
                (a.a1.union(na), u1.minus(a.a1).union(u2.minus(na)))
            }
            SetKind::OneSidedRight => {
                let na = self.neighbors(a.a2);
                (a.a2.union(na), u2.minus(a.a2).union(u1.minus(na)))
            }
            SetKind::TwoSided => (a.a1.union(self.neighbors(a.a1)), a.a2.union(self.neighbors(a.a2))),
        };
        self.edges_within(x, y)
    }

    pub fn intersection_subgraph(&self, sets: &[IndependentSet]) -> Result<SpanningSubgraph<'_>> {
        let mut kept = Bits::full(self.edges.len());
        for a in sets {
            if !self.is_independent(a.vertices()) {
                return Err(Error::NotIndependent);
            }
            kept.and_assign(&self.associated_mask(a));
        }
        Ok(self.subgraph(kept))
    }

    /// The equalities `N(A_2) = U_1∖A_1` and `A_2 = U_2∖N(A_1)`.
    pub fn is_maximal_two_sided(&self, a: &IndependentSet) -> bool {
        a.kind == SetKind::TwoSided
            && self.neighbors(a.a2) == self.left().minus(a.a1)
            && a.a2 == self.right().minus(self.neighbors(a.a1))
    }

    /// Set-maximality checked vertex by vertex.
    pub fn is_maximal_independent(&self, s: VertexSet) -> bool {
        self.is_independent(s)
            && self.all_vertices().minus(s).iter().all(|v| !self.adj[v].inter(s).is_empty())
    }

    pub fn enumerate_first_independent_sets(&self) -> Result<Vec<FirstIndependentSet>> {
        if !self.connected {
            return Err(Error::Disconnected);
        }
        let (u1, u2) = (self.left(), self.right());
        let mut out = Vec::new();
        for u in 1..=self.m {
            let a = u1.minus(VertexSet::single(u));
            if !a.is_empty() && self.neighbors(a) == u2 {
                out.push(IndependentSet { a1: a, a2: VertexSet::EMPTY, kind: SetKind::OneSidedLeft });
            }
        }
        for v in self.m + 1..=self.m + self.n {
            let a = u2.minus(VertexSet::single(v));
            if !a.is_empty() && self.neighbors(a) == u1 {
                out.push(IndependentSet { a1: VertexSet::EMPTY, a2: a, kind: SetKind::OneSidedRight });
            }
        }
        out.retain(|a| self.subgraph(self.associated_mask(a)).component_count() == 2);

        let mut two_sided = Vec::new();
        let (small, other, small_lo) = if self.m <= self.n { (u1, u2, 1) } else { (u2, u1, self.m + 1) };
        let k = small.len();
        for mask in 1..(1u64 << k) - 1 {
            let s = VertexSet(mask << small_lo);
            let t = other.minus(self.neighbors(s));
            if t.is_empty() || self.neighbors(t) != small.minus(s) {
                continue;
            }
            let (a1, a2) = if small_lo == 1 { (s, t) } else { (t, s) };
            let a = IndependentSet { a1, a2, kind: SetKind::TwoSided };
            if self.subgraph(self.associated_mask(&a)).component_count() == 2 {
                two_sided.push(a);
            }
        }
        two_sided.sort_by_key(|a| a.vertices().to_vec());
        out.extend(two_sided);
        Ok(out.into_iter().map(|base| FirstIndependentSet { base }).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetKind {
    OneSidedLeft,
    OneSidedRight,
    TwoSided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndependentSet {
    pub a1: VertexSet,
    pub a2: VertexSet,
    pub kind: SetKind,
}

impl IndependentSet {
    pub fn new(g: &BipartiteGraph, vertices: VertexSet) -> Result<Self> {
        g.check(vertices)?;
        if vertices.is_empty() || !g.is_independent(vertices) {
            return Err(Error::NotIndependent);
        }
        let (a1, a2) = (vertices.inter(g.left()), vertices.inter(g.right()));
        let kind = match (a1.is_empty(), a2.is_empty()) {
            (false, true) => SetKind::OneSidedLeft,
            (true, false) => SetKind::OneSidedRight,
            _ => SetKind::TwoSided,
        };
        Ok(IndependentSet { a1, a2, kind })
    }

    pub fn from_vertices(g: &BipartiteGraph, vertices: &[usize]) -> Result<Self> {
        if let Some(&v) = vertices.iter().find(|&&v| v == 0 || v > g.m + g.n) {
            return Err(Error::VertexOutOfRange(v));
        }
        Self::new(g, vertices.iter().copied().collect())
    }

    pub fn vertices(&self) -> VertexSet {
        self.a1.union(self.a2)
    }

    pub fn is_one_sided(&self) -> bool {
        self.kind != SetKind::TwoSided
    }
}

impl fmt::Display for IndependentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |s: VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            SetKind::OneSidedLeft => write!(f, "{{{}}}", side(self.a1)),
            SetKind::OneSidedRight => write!(f, "{{{}}}", side(self.a2)),
            SetKind::TwoSided => write!(f, "{{{}}}⊔{{{}}}", side(self.a1), side(self.a2)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FirstIndependentSet {
    pub base: IndependentSet,
}

impl FirstIndependentSet {
    /// Validates membership in `I_G^(1)` against the enumeration.
    pub fn new(g: &BipartiteGraph, base: IndependentSet) -> Result<Self> {
        let all = g.enumerate_first_independent_sets()?;
        all.into_iter().find(|f| f.base == base).ok_or(Error::NotFirstIndependent)
    }

    /// The primitive generator of the extremal ray named by this set, in `N`.
    pub fn ray(&self, g: &BipartiteGraph) -> NVector {
        let ctx = g.ctx();
        let (m, n) = (g.m, g.n);
        let mut raw = vec![Int::from(0); m + n];
        match self.base.kind {
            SetKind::OneSidedLeft => {
                let u = g.left().minus(self.base.a1).min().expect("one vertex missing");
                raw[u - 1] = Int::from(1);
            }
            SetKind::OneSidedRight => {
                let v = g.right().minus(self.base.a2).min().expect("one vertex missing");
                raw[v - 1] = Int::from(1);
            }
            SetKind::TwoSided => {
                for i in g.left().minus(self.base.a1).iter() {
                    raw[i - 1] = Int::from(1);
                }
                for j in self.base.a2.iter() {
                    raw[j - 1] = Int::from(-1);
                }
            }
        }
        let mut v = NVector::new(raw, ctx).expect("length matches");
        linalg::make_primitive(&mut v.coords);
        v
    }
}

impl fmt::Display for FirstIndependentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.base.fmt(f)
    }
}

#[derive(Clone, Debug)]
pub struct SpanningSubgraph<'g> {
    pub parent: &'g BipartiteGraph,
    pub kept: Bits,
}

impl<'g> SpanningSubgraph<'g> {
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.kept.iter().map(|k| self.parent.edges[k]).collect()
    }

    /// Partition of all `m+n` vertices, ordered by least vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let total = self.parent.m + self.parent.n;
        let mut uf = UnionFind::new(total + 1);
        for k in self.kept.iter() {
            let (i, j) = self.parent.edges[k];
            uf.union(i, j);
        }
        let mut by_root: Vec<VertexSet> = vec![VertexSet::EMPTY; total + 1];
        for v in 1..=total {
            by_root[uf.find(v)].insert(v);
        }
        let mut parts: Vec<VertexSet> = by_root.into_iter().filter(|s| !s.is_empty()).collect();
        parts.sort_by_key(|s| VertexSet::min(*s));
        parts
    }

    pub fn component_count(&self) -> usize {
        let total = self.parent.m + self.parent.n;
        let mut uf = UnionFind::new(total + 1);
        let mut count = total;
        for k in self.kept.iter() {
            let (i, j) = self.parent.edges[k];
            if uf.union(i, j) {
                count -= 1;
            }
        }
        count
    }

    pub fn degree_sequence(&self) -> MVector {
        let deg = self.degrees();
        MVector::from_i64(&deg, self.parent.ctx()).expect("bipartite degree sums balance")
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut deg = vec![0i64; self.parent.m + self.parent.n];
        for k in self.kept.iter() {
            let (i, j) = self.parent.edges[k];
            deg[i - 1] += 1;
            deg[j - 1] += 1;
        }
        deg
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns whether the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    pub fn square_minus_edge() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, &[(1, 4), (2, 3), (2, 4)]).unwrap()
    }

    pub fn k44_minus_star() -> BipartiteGraph {
        BipartiteGraph::complete_minus(4, 4, [1, 2, 3].into_iter().collect(), VertexSet::single(5)).unwrap()
    }

    pub fn two_sided_pair_graph() -> BipartiteGraph {
        let e = [(1, 8), (2, 7), (3, 5), (3, 6), (3, 7), (3, 8), (4, 5), (4, 6), (4, 7), (4, 8)];
        BipartiteGraph::new(4, 4, &e).unwrap()
    }

    fn vs(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn set(g: &BipartiteGraph, v: &[usize]) -> IndependentSet {
        IndependentSet::from_vertices(g, v).unwrap()
    }

    #[test]
    fn neighbor_sets() {
        assert_eq!(square_minus_edge().neighbor_set(vs(&[2])).unwrap(), vs(&[3, 4]));
        assert_eq!(k44_minus_star().neighbor_set(vs(&[1, 2, 3])).unwrap(), vs(&[6, 7, 8]));
        let g = BipartiteGraph::complete(3, 4);
        assert_eq!(g.neighbor_set(g.left()).unwrap(), g.right());
        assert_eq!(square_minus_edge().neighbor_set(vs(&[9])), Err(Error::VertexOutOfRange(9)));
    }

    #[test]
    fn component_examples() {
        let g = k44_minus_star();
        let h = g.associated_subgraph(&set(&g, &[1, 2, 3, 5])).unwrap();
        assert_eq!(h.connected_components(), vec![vs(&[1, 2, 3, 6, 7, 8]), vs(&[4, 5])]);
        assert_eq!(h.degree_sequence().coords, linalg::int_vec(&[3, 3, 3, 1, 1, 3, 3, 3]));

        let g = two_sided_pair_graph();
        let h = g.associated_subgraph(&set(&g, &[1, 2, 5, 6])).unwrap();
        assert_eq!(h.component_count(), 3);
        assert_eq!(g.full_subgraph().component_count(), 1);
    }

    #[test]
    fn associated_subgraph_examples() {
        let g = square_minus_edge();
        let h = g.associated_subgraph(&set(&g, &[1, 3])).unwrap();
        assert_eq!(h.edges(), vec![(1, 4), (2, 3)]);
        assert_eq!(h.connected_components(), vec![vs(&[1, 4]), vs(&[2, 3])]);
        let whole = g.associated_subgraph(&set(&g, &[1, 2])).unwrap();
        assert_eq!(whole.edges(), g.edges().to_vec());
        let whole = g.associated_subgraph(&set(&g, &[3, 4])).unwrap();
        assert_eq!(whole.edges(), g.edges().to_vec());
        assert!(IndependentSet::from_vertices(&g, &[1, 4]).is_err());
    }

    #[test]
    fn intersection_examples() {
        let g = two_sided_pair_graph();
        let s = [set(&g, &[1, 2, 4]), set(&g, &[1, 2, 3])];
        let h = g.intersection_subgraph(&s).unwrap();
        assert_eq!(h.edges(), vec![(1, 8), (2, 7)]);
        assert_eq!(h.component_count(), 6);
        assert_eq!(h.degrees(), vec![1, 1, 0, 0, 0, 0, 1, 1]);

        let a = set(&g, &[1, 2, 5, 6]);
        let single = g.intersection_subgraph(&[a]).unwrap();
        assert_eq!(single.kept, g.associated_subgraph(&a).unwrap().kept);

        let fis = g.enumerate_first_independent_sets().unwrap();
        let two: Vec<IndependentSet> = fis.iter().filter(|f| f.base.kind == SetKind::TwoSided).map(|f| f.base).collect();
        assert_eq!(two.len(), 2);
        let both = g.intersection_subgraph(&two).unwrap();
        assert_eq!(both.kept, single.kept);
    }

    #[test]
    fn perfect_matching_degrees() {
        let g = BipartiteGraph::new(2, 2, &[(1, 3), (2, 4)]).unwrap();
        assert_eq!(g.full_subgraph().degrees(), vec![1, 1, 1, 1]);
        assert!(!g.is_connected());
        assert_eq!(g.enumerate_first_independent_sets(), Err(Error::Disconnected));
    }

    #[test]
    fn maximality_examples() {
        let g = k44_minus_star();
        assert!(g.is_maximal_two_sided(&set(&g, &[1, 2, 3, 5])));
        let g = square_minus_edge();
        assert!(g.is_maximal_two_sided(&set(&g, &[1, 3])));
        let g = BipartiteGraph::complete(3, 3);
        for mask in 1u64..(1 << 6) {
            let s = VertexSet(mask << 1);
            if let Ok(a) = IndependentSet::new(&g, s) {
                assert!(!g.is_maximal_two_sided(&a));
            }
        }
    }

    #[test]
    fn first_independent_set_examples() {
        let g = square_minus_edge();
        let fis = g.enumerate_first_independent_sets().unwrap();
        let shown: Vec<String> = fis.iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, vec!["{2}", "{4}", "{1}⊔{3}"]);
        let rays: Vec<Vec<Int>> = fis.iter().map(|f| f.ray(&g).coords).collect();
        assert_eq!(rays, vec![linalg::int_vec(&[1, 0, 0, 0]), linalg::int_vec(&[0, 0, 1, 0]), linalg::int_vec(&[0, 1, -1, 0])]);

        for (m, n) in [(2, 2), (2, 3), (3, 4), (1, 3)] {
            let g = BipartiteGraph::complete(m, n);
            let fis = g.enumerate_first_independent_sets().unwrap();
            let expected = if m == 1 { n } else { m + n };
            assert_eq!(fis.len(), expected, "K_{m},{n}");
            assert!(fis.iter().all(|f| f.base.is_one_sided()));
        }

        let g = two_sided_pair_graph();
        let fis = g.enumerate_first_independent_sets().unwrap();
        assert_eq!(fis.len(), 8);
        let shown: Vec<String> = fis.iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, vec!["{2,3,4}", "{1,3,4}", "{1,2,4}", "{1,2,3}", "{6,7,8}", "{5,7,8}", "{1}⊔{5,6,7}", "{2}⊔{5,6,8}"]);
    }

    #[test]
    fn removed_star_ray() {
        let g = k44_minus_star();
        let fis = g.enumerate_first_independent_sets().unwrap();
        let two: Vec<_> = fis.iter().filter(|f| f.base.kind == SetKind::TwoSided).collect();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].to_string(), "{1,2,3}⊔{5}");
        // e_4 - f_1
        assert_eq!(two[0].ray(&g).coords, linalg::int_vec(&[0, 0, 0, 1, -1, 0, 0, 0]));
    }

    #[test]
    fn parsers() {
        let g = BipartiteGraph::from_text("2 2\n1 4\n2 3\n2 4\n").unwrap();
        assert_eq!(g, square_minus_edge());
        let j = g.to_json();
        assert_eq!(j, r#"{"m":2,"n":2,"edges":[[1,4],[2,3],[2,4]]}"#);
        assert_eq!(BipartiteGraph::parse(&j).unwrap(), g);
        assert_eq!(BipartiteGraph::from_text("2 2\n1 4\n1 4\n"), Err(Error::DuplicateEdge(1, 4)));
        assert_eq!(BipartiteGraph::from_text("2 2\n1 2\n"), Err(Error::InvalidEdge(1, 2)));
        assert!(matches!(BipartiteGraph::from_json(r#"{"m":2,"n":2,"edges":[[1,5]]}"#), Err(Error::Parse(_))));
        assert!(matches!(BipartiteGraph::from_text("2 x"), Err(Error::Parse(_))));
    }

    pub fn arb_graph(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
        (1..=max_side, 1..=max_side)
            .prop_flat_map(|(m, n)| (Just(m), Just(n), proptest::collection::vec(any::<bool>(), m * n)))
            .prop_map(|(m, n, keep)| {
                let edges: Vec<(usize, usize)> = (0..m * n)
                    .filter(|&k| keep[k])
                    .map(|k| (k / n + 1, m + k % n + 1))
                    .collect();
                BipartiteGraph::new(m, n, &edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn independent_sets_avoid_their_neighbors(g in arb_graph(5), mask in any::<u64>()) {
            let s = VertexSet(mask << 1).inter(g.all_vertices());
            if let Ok(a) = IndependentSet::new(&g, s) {
                prop_assert!(a.vertices().inter(g.neighbors(a.vertices())).is_empty());
                let h = g.associated_subgraph(&a).unwrap();
                let comps = h.connected_components();
                prop_assert_eq!(comps.iter().map(|c| c.len()).sum::<usize>(), g.m() + g.n());
                prop_assert_eq!(comps.len(), h.component_count());
                let d = h.degrees();
                prop_assert_eq!(d[..g.m()].iter().sum::<i64>(), d[g.m()..].iter().sum::<i64>());
            }
        }

        #[test]
        fn prop37_equalities_match_maximality(g in arb_graph(5), mask in any::<u64>()) {
            prop_assume!(g.is_connected());
            let s = VertexSet(mask << 1).inter(g.all_vertices());
            if let Ok(a) = IndependentSet::new(&g, s) {
                if a.kind == SetKind::TwoSided {
                    prop_assert_eq!(g.is_maximal_two_sided(&a), g.is_maximal_independent(s));
                }
            }
        }

        #[test]
        fn intersection_laws(g in arb_graph(4), m1 in any::<u64>(), m2 in any::<u64>()) {
            let pick = |mask: u64| IndependentSet::new(&g, VertexSet(mask << 1).inter(g.all_vertices())).ok();
            if let (Some(a), Some(b)) = (pick(m1), pick(m2)) {
                let ab = g.intersection_subgraph(&[a, b]).unwrap().kept;
                let ba = g.intersection_subgraph(&[b, a]).unwrap().kept;
                let aab = g.intersection_subgraph(&[a, a, b]).unwrap().kept;
                let only_a = g.intersection_subgraph(&[a]).unwrap().kept;
                prop_assert_eq!(&ab, &ba);
                prop_assert_eq!(&ab, &aab);
                prop_assert!(ab.is_subset(&only_a));
            }
        }

        #[test]
        fn maximal_two_sided_halves_agree(g in arb_graph(5)) {
            prop_assume!(g.is_connected());
            for f in g.enumerate_first_independent_sets().unwrap() {
                if f.base.kind == SetKind::TwoSided {
                    let (a1, a2) = (f.base.a1, f.base.a2);
                    let (u1, u2) = (g.left(), g.right());
                    let lhs = g.edges_within(a1.union(g.neighbors(a1)), VertexSet::EMPTY);
                    let rhs = g.edges_within(u1.minus(g.neighbors(a2)).union(u2.minus(a2)), VertexSet::EMPTY);
                    prop_assert_eq!(lhs, rhs);
                    let lhs = g.edges_within(u1.minus(a1).union(u2.minus(g.neighbors(a1))), VertexSet::EMPTY);
                    let rhs = g.edges_within(a2.union(g.neighbors(a2)), VertexSet::EMPTY);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
