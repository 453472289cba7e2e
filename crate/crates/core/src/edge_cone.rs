//! The edge cone `σ_G`, its dual, and the graph-theoretic face machinery.
//!
//! Primal ray `i` is the ray of first independent set `i`; primal facet `e` is
//! the dual generator of edge `e`. Ray `i` lies on facet `e` exactly when edge
//! `e` survives in `G{A_i}`, so every face computation reduces to edge masks.

use crate::bigraph::{BipartiteGraph, FirstIndependentSet, IndependentSet, SetKind, VertexSet};
use crate::bits::Bits;
use crate::lattice::{self, MVector, NVector, QuotientContext};
use crate::linalg::{self, Int, IntVec};
use crate::oracle::{self, Cone, FaceDescriptor, Side};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Debug)]
pub struct EdgeConePair {
    pub graph: BipartiteGraph,
    pub dual_cone: Cone,
    pub primal_cone: Cone,
    pub fis: Vec<FirstIndependentSet>,
    masks: Vec<Bits>,
}

/// The three kinds of first independent set, by their distinguished vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Member {
    A(usize),
    B(usize),
    C(VertexSet, VertexSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairShape {
    AA,
    AB,
    AC,
    BB,
    BC,
    CC,
}

/// Relative position of two two-sided sets `C`, `C'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CcType {
    /// One contains the other on the left side.
    I,
    /// Disjoint on both sides.
    Ii,
    /// Meet on the left only.
    Iii,
    /// Meet on the right only.
    Iv,
    /// Meet on both sides without nesting.
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClass {
    pub members: [usize; 2],
    pub shape: PairShape,
    pub cc_type: Option<CcType>,
    pub is_two_face: bool,
}

/// Construction pattern of a non-simplicial 3-face, named by the composition of
/// its four generating sets (`A` left one-sided, `B` right one-sided, `C`
/// two-sided). Mirror images under swapping the vertex classes share a tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    /// `(A, A', B, C)` with `C = (A∩A') ⊔ {b}`.
    SameSidePairOppositeSingle,
    /// `(A, A', C, C')` with `C_1 ⊔ C'_1 = A∩A'` and `C_2 ⊔ C'_2 = U_2`.
    SameSidePairTwoSidedPair,
    /// `(A, B, C, C')` where `(A, B)` spans a 2-face.
    OppositePairAdjacent,
    /// `(A, B, C, C')` with `C_1 ⊔ C'_1 = A` and `C_2 ⊔ C'_2 = B`.
    OppositePairSplit,
    /// `(A, C, C', C'')` with `(C, C')` meeting on the side of `A`.
    OneSidedAlignedCrossing,
    /// `(B, C, C', C'')` with `(C, C')` meeting on the side opposite to `B`.
    OneSidedOpposedCrossing,
    /// Four two-sided sets whose diagonals meet on one side each.
    CrossingPairs,
    /// Four two-sided sets with one nested and one interleaved diagonal.
    NestedInterleaved,
    /// `(A, A', B, B')`: the cone of a `K_{2,2}` component, here the whole cone.
    OneSidedSquare,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("tag serializes");
        f.write_str(s.as_str().expect("unit variant"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSimplicial3Face {
    /// Indices into the first independent sets, ascending.
    pub four_rays: Vec<usize>,
    pub case_tag: Option<CaseTag>,
}

/// Minimal face of a set of rays computed from the graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpan {
    pub dim: usize,
    pub rays: Vec<usize>,
    pub edges: Bits,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothnessReport {
    pub two_faces: Vec<([usize; 2], bool)>,
    pub smooth: bool,
}

fn edge_generator(g: &BipartiteGraph, i: usize, j: usize) -> IntVec {
    let mut v = vec![Int::from(0); g.m() + g.n()];
    v[i - 1] = Int::from(1);
    v[j - 1] = Int::from(1);
    g.ctx().m_reduce(&v).expect("edge generators lie in M")
}

/// `σ_G^∨` generated by `e^i + f^j` over the edges; any graph, connected or not.
pub fn dual_edge_cone(g: &BipartiteGraph) -> Result<Cone> {
    let gens: Vec<IntVec> = g.edges().iter().map(|&(i, j)| edge_generator(g, i, j)).collect();
    Cone::from_generators(g.ctx(), Side::M, &gens)
}

pub fn build_edge_cone(g: &BipartiteGraph) -> Result<EdgeConePair> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let ctx = g.ctx();
    let gens: Vec<IntVec> = g.edges().iter().map(|&(i, j)| edge_generator(g, i, j)).collect();
    let dual = Cone::from_generators(ctx, Side::M, &gens)?;
    if dual.rays() != gens.as_slice() {
        return Err(Error::CrossCheck("an edge generator is not extremal".into()));
    }
    if dual.dim() != ctx.rank() {
        return Err(Error::CrossCheck(format!("dual cone has dimension {}", dual.dim())));
    }

    let fis = g.enumerate_first_independent_sets()?;
    let rays: Vec<IntVec> = fis.iter().map(|f| f.ray(g).reduced().to_vec()).collect();
    let primal = Cone::from_generators(ctx, Side::N, &rays)?;
    if primal.rays() != rays.as_slice() {
        return Err(Error::CrossCheck("first independent sets do not give distinct extremal rays".into()));
    }
    let primal = primal.with_facet_order(&gens)?;
    let from_dual: BTreeSet<IntVec> = oracle::dualize(&dual)?.rays().iter().cloned().collect();
    if from_dual != rays.iter().cloned().collect::<BTreeSet<_>>() {
        return Err(Error::CrossCheck("dual of the dual edge cone differs from the first independent set rays".into()));
    }

    let masks: Vec<Bits> = fis.iter().map(|f| g.associated_mask(&f.base)).collect();
    for (i, mask) in masks.iter().enumerate() {
        for e in 0..gens.len() {
            if mask.contains(e) != primal.facet_mask(e).contains(i) {
                return Err(Error::CrossCheck(format!("G{{A}} of {} disagrees with its facets", fis[i])));
            }
        }
    }
    Ok(EdgeConePair { graph: g.clone(), dual_cone: dual, primal_cone: primal, fis, masks })
}

impl EdgeConePair {
    pub fn ctx(&self) -> QuotientContext {
        self.graph.ctx()
    }

    pub fn ray_count(&self) -> usize {
        self.fis.len()
    }

    pub fn index_of(&self, a: &FirstIndependentSet) -> Option<usize> {
        self.fis.iter().position(|f| f == a)
    }

    pub fn ray_of(&self, a: &FirstIndependentSet) -> Result<NVector> {
        let i = self.index_of(a).ok_or(Error::NotFirstIndependent)?;
        Ok(self.primal_cone.ray_n(i))
    }

    pub fn ray(&self, i: usize) -> NVector {
        self.primal_cone.ray_n(i)
    }

    /// Kept-edge mask of `G{A_i}`.
    pub fn mask(&self, i: usize) -> &Bits {
        &self.masks[i]
    }

    fn member(&self, i: usize) -> Member {
        let b = &self.fis[i].base;
        match b.kind {
            SetKind::OneSidedLeft => Member::A(self.graph.left().minus(b.a1).min().expect("one vertex missing")),
            SetKind::OneSidedRight => Member::B(self.graph.right().minus(b.a2).min().expect("one vertex missing")),
            SetKind::TwoSided => Member::C(b.a1, b.a2),
        }
    }

    /// `G[S]`, its component count and the saturation of `S`.
    pub fn face_span(&self, s: &[usize]) -> FaceSpan {
        let mut kept = Bits::full(self.graph.edges().len());
        for &i in s {
            kept.and_assign(&self.masks[i]);
        }
        let comps = self.graph.subgraph(kept.clone()).component_count();
        let rays = (0..self.fis.len()).filter(|&j| kept.is_subset(&self.masks[j])).collect();
        FaceSpan { dim: comps - 1, rays, edges: kept }
    }

    /// `Some(d)` iff the `d` given rays are exactly the rays of a `d`-face.
    pub fn spans_face(&self, s: &[usize]) -> Option<usize> {
        let mut sorted = s.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.is_empty() || sorted.len() != s.len() {
            return None;
        }
        let span = self.face_span(&sorted);
        (span.dim == sorted.len() && span.rays == sorted).then_some(span.dim)
    }

    /// The face cut out by `Val(A)` for any independent set `A`.
    pub fn face_of_independent_set(&self, a: &IndependentSet) -> Result<FaceDescriptor> {
        let h = self.graph.associated_subgraph(a)?;
        let val = h.degree_sequence();
        let rays: Vec<usize> = (0..self.fis.len())
            .filter(|&i| lattice::pairing(&val, &self.ray(i)).is_ok_and(|p| p == Int::from(0)))
            .collect();
        let mut kept = Bits::full(self.graph.edges().len());
        for &i in &rays {
            kept.and_assign(&self.masks[i]);
        }
        Ok(FaceDescriptor { dim: h.component_count() - 1, ray_indices: rays, facet_indices: kept.to_vec() })
    }

    /// Degree sequence of `G[S]` for the face on the given rays.
    pub fn val_of(&self, s: &[usize]) -> MVector {
        let span = self.face_span(s);
        self.graph.subgraph(span.edges).degree_sequence()
    }

    pub fn classify_pair(&self, p: usize, q: usize) -> PairClass {
        assert_ne!(p, q, "pair members must differ");
        let rank = |m: Member| match m {
            Member::A(_) => 0,
            Member::B(_) => 1,
            Member::C(..) => 2,
        };
        let (p, q) = if rank(self.member(p)) <= rank(self.member(q)) { (p, q) } else { (q, p) };
        let g = &self.graph;
        let (u1, u2) = (g.left(), g.right());
        let conn = |s: VertexSet| g.induced_connected(s);
        let vs = VertexSet::single;
        let (shape, cc_type, is_two_face) = match (self.member(p), self.member(q)) {
            (Member::A(a), Member::A(a2)) => (PairShape::AA, None, conn(u1.minus(vs(a)).minus(vs(a2)).union(u2))),
            (Member::B(b), Member::B(b2)) => (PairShape::BB, None, conn(u2.minus(vs(b)).minus(vs(b2)).union(u1))),
            (Member::A(a), Member::B(b)) => (PairShape::AB, None, conn(u1.minus(vs(a)).union(u2.minus(vs(b))))),
            (Member::A(a), Member::C(c1, c2)) => (PairShape::AC, None, self.one_sided_with_c(a, c1, c2, u2.len())),
            (Member::B(b), Member::C(c1, c2)) => (PairShape::BC, None, self.one_sided_with_c(b, c2, c1, u1.len())),
            (Member::C(c1, c2), Member::C(d1, d2)) => {
                let (t, two) = self.cc_pair(c1, c2, d1, d2);
                (PairShape::CC, Some(t), two)
            }
            _ => unreachable!("members are ordered by kind"),
        };
        debug_assert_eq!(
            is_two_face,
            self.spans_face(&[p, q]).is_some(),
            "pair predicate disagrees with component count for {} and {}",
            self.fis[p],
            self.fis[q]
        );
        PairClass { members: [p, q], shape, cc_type, is_two_face }
    }

    /// `x` is the vertex missing from a one-sided set on the side of `own`;
    /// `(own, other)` are the sides of `C` on that side and the opposite one.
    fn one_sided_with_c(&self, x: usize, own: VertexSet, other: VertexSet, other_side_len: usize) -> bool {
        let g = &self.graph;
        if own.contains(x) {
            if own.len() == 1 {
                return other.len() + 1 == other_side_len;
            }
            let rest = own.minus(VertexSet::single(x));
            g.induced_connected(rest.union(g.neighbors(own)))
        } else {
            g.induced_connected(other.union(g.neighbors(other).minus(VertexSet::single(x))))
        }
    }

    fn cc_pair(&self, c1: VertexSet, c2: VertexSet, d1: VertexSet, d2: VertexSet) -> (CcType, bool) {
        let g = &self.graph;
        let (u1, u2) = (g.left(), g.right());
        if c1.is_subset(d1) || d1.is_subset(c1) {
            // orient so that c1 ⊊ d1 and d2 ⊊ c2
            let (c1, c2, d1, d2) = if c1.is_subset(d1) { (c1, c2, d1, d2) } else { (d1, d2, c1, c2) };
            return (CcType::I, g.induced_connected(d1.minus(c1).union(c2.minus(d2))));
        }
        let left_meet = !c1.inter(d1).is_empty();
        let right_meet = !c2.inter(d2).is_empty();
        match (left_meet, right_meet) {
            (false, false) => {
                let l = u1.minus(c1.union(d1)).len();
                let r = u2.minus(c2.union(d2)).len();
                (CcType::Ii, l + r == 1)
            }
            (true, false) => {
                let ok = c1.union(d1) == u1 && g.induced_connected(c1.inter(d1).union(u2.minus(c2.union(d2))));
                (CcType::Iii, ok)
            }
            (false, true) => {
                let ok = c2.union(d2) == u2 && g.induced_connected(c2.inter(d2).union(u1.minus(c1.union(d1))));
                (CcType::Iv, ok)
            }
            (true, true) => (CcType::V, false),
        }
    }

    pub fn all_pairs(&self) -> Vec<PairClass> {
        let k = self.fis.len();
        (0..k).flat_map(|p| (p + 1..k).map(move |q| (p, q))).map(|(p, q)| self.classify_pair(p, q)).collect()
    }

    /// Every 3-face with at least four rays, tagged. A three-dimensional cone
    /// counts as a face of itself. The oracle face lattice is the primary
    /// source; saturating non-adjacent pairs with four components is a second,
    /// cross-checked path.
    pub fn nonsimplicial_three_faces(&self) -> Result<Vec<NonSimplicial3Face>> {
        let from_oracle: BTreeSet<Vec<usize>> = self
            .primal_cone
            .faces_of_dim(3)
            .into_iter()
            .filter(|f| f.ray_indices.len() >= 4)
            .map(|f| f.ray_indices)
            .collect();

        let mut from_graph: BTreeSet<Vec<usize>> = BTreeSet::new();
        for pc in self.all_pairs() {
            if pc.is_two_face {
                continue;
            }
            let span = self.face_span(&pc.members);
            if span.dim == 3 && span.rays.len() >= 4 {
                from_graph.insert(span.rays);
            }
        }
        if from_graph != from_oracle {
            return Err(Error::CrossCheck(format!(
                "non-simplicial 3-faces differ: oracle {from_oracle:?}, graph {from_graph:?}"
            )));
        }
        Ok(from_oracle
            .into_iter()
            .map(|rays| NonSimplicial3Face { case_tag: self.case_tag(&rays), four_rays: rays })
            .collect())
    }

    /// Whether the whole cone is the degenerate 3-dimensional 4-ray case.
    pub fn is_degenerate_square(&self) -> bool {
        self.primal_cone.dim() == 3 && self.fis.len() == 4
    }

    fn case_tag(&self, rays: &[usize]) -> Option<CaseTag> {
        if rays.len() != 4 {
            return None;
        }
        let members: Vec<Member> = rays.iter().map(|&i| self.member(i)).collect();
        let na = members.iter().filter(|m| matches!(m, Member::A(_))).count();
        let nb = members.iter().filter(|m| matches!(m, Member::B(_))).count();
        let nc = 4 - na - nb;
        let diagonals: Vec<PairClass> = (0..4)
            .flat_map(|x| (x + 1..4).map(move |y| (x, y)))
            .map(|(x, y)| self.classify_pair(rays[x], rays[y]))
            .filter(|pc| !pc.is_two_face)
            .collect();
        let cc_types: Vec<CcType> = diagonals.iter().filter_map(|pc| pc.cc_type).collect();
        match (na, nb, nc) {
            (2, 2, 0) => Some(CaseTag::OneSidedSquare),
            (2, 1, 1) | (1, 2, 1) => Some(CaseTag::SameSidePairOppositeSingle),
            (2, 0, 2) | (0, 2, 2) => Some(CaseTag::SameSidePairTwoSidedPair),
            (1, 1, 2) => {
                let a = rays.iter().position(|&i| matches!(self.member(i), Member::A(_)))?;
                let b = rays.iter().position(|&i| matches!(self.member(i), Member::B(_)))?;
                if self.classify_pair(rays[a], rays[b]).is_two_face {
                    Some(CaseTag::OppositePairAdjacent)
                } else {
                    Some(CaseTag::OppositePairSplit)
                }
            }
            (1, 0, 3) | (0, 1, 3) => {
                let aligned = match cc_types.as_slice() {
                    [CcType::Iii] => na == 1,
                    [CcType::Iv] => nb == 1,
                    _ => return None,
                };
                Some(if aligned { CaseTag::OneSidedAlignedCrossing } else { CaseTag::OneSidedOpposedCrossing })
            }
            (0, 0, 4) => {
                let mut t = cc_types.clone();
                t.sort();
                match t.as_slice() {
                    [CcType::I, CcType::V] => Some(CaseTag::NestedInterleaved),
                    [CcType::Iii, CcType::Iv] | [CcType::Iii, CcType::Iii] | [CcType::Iv, CcType::Iv] => {
                        Some(CaseTag::CrossingPairs)
                    }
                    _ => None,
                }
            }
            _ => None,
        }
    }

    /// Checks the set-theoretic relations that define the face's tag.
    pub fn verify_construction(&self, face: &NonSimplicial3Face) -> bool {
        let Some(tag) = face.case_tag else { return false };
        let members: Vec<Member> = face.four_rays.iter().map(|&i| self.member(i)).collect();
        let g = &self.graph;
        let mirrored = members.iter().filter(|m| matches!(m, Member::B(_))).count()
            > members.iter().filter(|m| matches!(m, Member::A(_))).count();
        // swap the roles of U_1 and U_2 so only one orientation needs checking
        let (u1, u2) = if mirrored { (g.right(), g.left()) } else { (g.left(), g.right()) };
        let norm: Vec<Member> = members
            .iter()
            .map(|&m| match (m, mirrored) {
                (Member::A(a), true) => Member::B(a),
                (Member::B(b), true) => Member::A(b),
                (Member::C(c1, c2), true) => Member::C(c2, c1),
                (m, false) => m,
            })
            .collect();
        let a_missing: Vec<usize> = norm.iter().filter_map(|m| if let Member::A(a) = m { Some(*a) } else { None }).collect();
        let b_missing: Vec<usize> = norm.iter().filter_map(|m| if let Member::B(b) = m { Some(*b) } else { None }).collect();
        let cs: Vec<(VertexSet, VertexSet)> =
            norm.iter().filter_map(|m| if let Member::C(x, y) = m { Some((*x, *y)) } else { None }).collect();
        let vs = VertexSet::single;
        match tag {
            CaseTag::OneSidedSquare => a_missing.len() == 2 && b_missing.len() == 2,
            CaseTag::SameSidePairOppositeSingle => {
                let (a, a2, b) = (a_missing[0], a_missing[1], b_missing[0]);
                let (c1, c2) = cs[0];
                c1 == u1.minus(vs(a)).minus(vs(a2)) && c2 == vs(b)
            }
            CaseTag::SameSidePairTwoSidedPair => {
                let (a, a2) = (a_missing[0], a_missing[1]);
                let ((c1, c2), (d1, d2)) = (cs[0], cs[1]);
                c1.inter(d1).is_empty()
                    && c1.union(d1) == u1.minus(vs(a)).minus(vs(a2))
                    && c2.inter(d2).is_empty()
                    && c2.union(d2) == u2
            }
            CaseTag::OppositePairAdjacent => {
                let (a, b) = (a_missing[0], b_missing[0]);
                let ((c1, c2), (d1, d2)) = (cs[0], cs[1]);
                (c1.minus(d1) == vs(a) && d2.minus(c2) == vs(b)) || (d1.minus(c1) == vs(a) && c2.minus(d2) == vs(b))
            }
            CaseTag::OppositePairSplit => {
                let (a, b) = (a_missing[0], b_missing[0]);
                let ((c1, c2), (d1, d2)) = (cs[0], cs[1]);
                c1.inter(d1).is_empty()
                    && c1.union(d1) == u1.minus(vs(a))
                    && c2.inter(d2).is_empty()
                    && c2.union(d2) == u2.minus(vs(b))
            }
            CaseTag::OneSidedAlignedCrossing | CaseTag::OneSidedOpposedCrossing => {
                // after normalizing the one-sided set is A = U_1 \ {a}
                let Some(&a) = a_missing.first() else { return false };
                let aligned = tag == CaseTag::OneSidedAlignedCrossing;
                (0..3).any(|k| {
                    let x = cs[k];
                    let (c, d) = (cs[(k + 1) % 3], cs[(k + 2) % 3]);
                    if aligned {
                        !c.0.inter(d.0).is_empty()
                            && c.1.inter(d.1).is_empty()
                            && c.0.union(d.0) == u1.minus(vs(a))
                            && x == (c.0.inter(d.0), c.1.union(d.1))
                    } else {
                        !c.1.inter(d.1).is_empty()
                            && c.0.inter(d.0).is_empty()
                            && c.1.union(d.1) == u2
                            && x == (c.0.union(d.0).union(vs(a)), c.1.inter(d.1))
                    }
                })
            }
            CaseTag::CrossingPairs => {
                // diagonals (C, C') and (D, D') with C_1 ∪ C'_1 = U_1, D_1 ⊔ D'_1 = C_1 ∩ C'_1,
                // D_2 ∩ D'_2 = C_2 ⊔ C'_2, D_2 ∪ D'_2 = U_2 (or the mirrored statement)
                let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
                pairs.iter().any(|&((p, q), (r, s))| {
                    let check = |c: (VertexSet, VertexSet), c2: (VertexSet, VertexSet), d: (VertexSet, VertexSet), d2: (VertexSet, VertexSet), ua: VertexSet, ub: VertexSet| {
                        c.0.union(c2.0) == ua
                            && d.0.inter(d2.0).is_empty()
                            && d.0.union(d2.0) == c.0.inter(c2.0)
                            && c.1.inter(c2.1).is_empty()
                            && d.1.inter(d2.1) == c.1.union(c2.1)
                            && d.1.union(d2.1) == ub
                    };
                    let flip = |c: (VertexSet, VertexSet)| (c.1, c.0);
                    [(cs[p], cs[q], cs[r], cs[s]), (cs[r], cs[s], cs[p], cs[q])].iter().any(|&(c, c2, d, d2)| {
                        check(c, c2, d, d2, u1, u2) || check(flip(c), flip(c2), flip(d), flip(d2), u2, u1)
                    })
                })
            }
            CaseTag::NestedInterleaved => {
                let pairs = [((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))];
                pairs.iter().any(|&((p, q), (r, s))| {
                    [(p, q, r, s), (r, s, p, q)].iter().any(|&(p, q, r, s)| {
                        let (c, c2) = (cs[p], cs[q]);
                        let low = (c.0.inter(c2.0), c.1.union(c2.1));
                        let high = (c.0.union(c2.0), c.1.inter(c2.1));
                        (cs[r] == low && cs[s] == high) || (cs[r] == high && cs[s] == low)
                    })
                })
            }
        }
    }

    pub fn smoothness_codim2_report(&self) -> Result<SmoothnessReport> {
        let ctx = self.ctx();
        let mut two_faces = Vec::new();
        for pc in self.all_pairs() {
            if pc.is_two_face {
                let [p, q] = pc.members;
                let ok = lattice::is_smooth_ray_set(&[self.ray(p), self.ray(q)], ctx)?;
                two_faces.push(([p, q], ok));
            }
        }
        let smooth = two_faces.iter().all(|(_, ok)| *ok);
        Ok(SmoothnessReport { two_faces, smooth })
    }

    /// Primal rays in full canonical coordinates as `i64`.
    pub fn rays_full_i64(&self) -> Vec<Vec<i64>> {
        (0..self.fis.len()).map(|i| linalg::to_i64(&self.primal_cone.ray_full(i)).expect("small rays")).collect()
    }
}
