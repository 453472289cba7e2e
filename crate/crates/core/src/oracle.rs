//! Brute-force polyhedral engine: double description, face lattice, minimal
//! faces, exact LP membership and a bounded Hilbert-basis check.
//!
//! Vectors are reduced coordinates (see [`crate::lattice`]). A cone is stored
//! with its primitive extremal rays, inward facet normals in the dual lattice,
//! and a basis of the equations cutting out its linear span.

use crate::bits::Bits;
use crate::lattice::{QuotientContext, MVector, NVector};
use crate::linalg::{self, Int, IntVec, Rat};
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

/// Which lattice the cone lives in; decides how reduced coordinates lift.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    N,
    M,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::N => Side::M,
            Side::M => Side::N,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    ctx: QuotientContext,
    side: Side,
    rays: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
    dim: usize,
    /// Per facet, the rays lying on it.
    facet_masks: Vec<Bits>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FaceDescriptor {
    pub dim: usize,
    pub ray_indices: Vec<usize>,
    pub facet_indices: Vec<usize>,
}

impl FaceDescriptor {
    pub fn is_simplicial(&self) -> bool {
        self.ray_indices.len() == self.dim
    }
}

#[derive(Serialize, Deserialize)]
struct ConeJson {
    ambient_dim: usize,
    rays: Vec<Vec<i64>>,
}

/// `{x : E x = 0, A x >= 0}` as (lineality basis, rays modulo lineality).
/// Equations are processed first, then inequalities in order; new rays come
/// from combinatorially adjacent pairs.
pub fn double_description(k: usize, eqs: &[IntVec], ineqs: &[IntVec]) -> (Vec<IntVec>, Vec<IntVec>) {
    let mut lin: Vec<IntVec> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
        .collect();

    let pivot_out = |lin: &mut Vec<IntVec>, a: &[Int]| -> Option<(IntVec, Int)> {
        let p = lin.iter().position(|l| !linalg::dot(a, l).is_zero())?;
        let mut l0 = lin.remove(p);
        let mut s0 = linalg::dot(a, &l0);
        if s0.is_negative() {
            l0.iter_mut().for_each(|x| *x = -&*x);
            s0 = -s0;
        }
        for l in lin.iter_mut() {
            let s = linalg::dot(a, l);
            if !s.is_zero() {
                combine(l, &s0, &l0, &s);
            }
        }
        Some((l0, s0))
    };

    for a in eqs {
        pivot_out(&mut lin, a);
    }

    let cap = ineqs.len();
    let mut rays: Vec<(IntVec, Bits)> = Vec::new();
    for (t, a) in ineqs.iter().enumerate() {
        if linalg::is_zero_vec(a) {
            continue;
        }
        if let Some((l0, s0)) = pivot_out(&mut lin, a) {
            for (r, z) in rays.iter_mut() {
                let s = linalg::dot(a, r);
                if !s.is_zero() {
                    combine(r, &s0, &l0, &s);
                }
                z.insert(t);
            }
            rays.push((l0, Bits::from_indices(cap, 0..t)));
            continue;
        }
        let vals: Vec<Int> = rays.iter().map(|(r, _)| linalg::dot(a, r)).collect();
        let mut next: Vec<(IntVec, Bits)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                next.push((r.clone(), z.clone()));
            } else if vals[i].is_zero() {
                let mut z = z.clone();
                z.insert(t);
                next.push((r.clone(), z));
            }
        }
        for (p, (rp, zp)) in rays.iter().enumerate() {
            if !vals[p].is_positive() {
                continue;
            }
            for (q, (rq, zq)) in rays.iter().enumerate() {
                if !vals[q].is_negative() {
                    continue;
                }
                let common = zp.and(zq);
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(s, (_, zs))| s != p && s != q && common.is_subset(zs));
                if blocked {
                    continue;
                }
                // vals[p] > 0 > vals[q]: both coefficients positive
                let mut v: IntVec = rq.iter().zip(rp).map(|(x, y)| &vals[p] * x - &vals[q] * y).collect();
                linalg::make_primitive(&mut v);
                let mut z = common;
                z.insert(t);
                next.push((v, z));
            }
        }
        rays = next;
    }
    (lin, rays.into_iter().map(|(r, _)| r).collect())
}

/// `x <- s0 x - s l0`, made primitive; clears the pairing with the pivot row.
fn combine(x: &mut IntVec, s0: &Int, l0: &[Int], s: &Int) {
    for (xi, li) in x.iter_mut().zip(l0) {
        *xi = s0 * &*xi - s * li;
    }
    linalg::make_primitive(x);
}

impl Cone {
    /// The cone generated by `gens` (reduced coordinates). Rays keep the order of
    /// the first generator on each; facets are sorted.
    pub fn from_generators(ctx: QuotientContext, side: Side, gens: &[IntVec]) -> Result<Cone> {
        let k = ctx.rank();
        if let Some(g) = gens.iter().find(|g| g.len() != k) {
            return Err(Error::LengthMismatch { expected: k, got: g.len() });
        }
        let gens: Vec<IntVec> = gens.iter().filter(|g| !linalg::is_zero_vec(g)).cloned().collect();
        if gens.is_empty() {
            return Err(Error::EmptyInput);
        }
        let (equations, mut facets) = double_description(k, &[], &gens);
        let dim = k - equations.len();

        let mut all = facets.clone();
        all.extend(equations.iter().cloned());
        if linalg::rank(&all) < k {
            return Err(Error::NotStronglyConvex);
        }
        facets.sort();
        facets.dedup();

        let mut rays: Vec<IntVec> = Vec::new();
        for g in &gens {
            let mut p = g.clone();
            linalg::make_primitive(&mut p);
            if rays.contains(&p) {
                continue;
            }
            let mut tight: Vec<IntVec> = facets.iter().filter(|f| linalg::dot(f, &p).is_zero()).cloned().collect();
            tight.extend(equations.iter().cloned());
            if linalg::rank(&tight) == k - 1 {
                rays.push(p);
            }
        }
        Ok(Self::assemble(ctx, side, rays, facets, equations, dim))
    }

    fn assemble(
        ctx: QuotientContext,
        side: Side,
        rays: Vec<IntVec>,
        facets: Vec<IntVec>,
        equations: Vec<IntVec>,
        dim: usize,
    ) -> Cone {
        let facet_masks = facets
            .iter()
            .map(|f| Bits::from_indices(rays.len(), (0..rays.len()).filter(|&i| linalg::dot(f, &rays[i]).is_zero())))
            .collect();
        Cone { ctx, side, rays, facets, equations, dim, facet_masks }
    }

    /// Reorders facets to follow `order`, which must be the same set of normals.
    pub fn with_facet_order(mut self, order: &[IntVec]) -> Result<Cone> {
        let mut a = self.facets.clone();
        let mut b = order.to_vec();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::CrossCheck("facet normals differ from the expected set".into()));
        }
        self.facets = order.to_vec();
        Ok(Self::assemble(self.ctx, self.side, self.rays, self.facets, self.equations, self.dim))
    }

    /// Parses `{"ambient_dim": d, "rays": [[...], ...]}` as a cone in plain `Z^d`.
    pub fn from_json(s: &str) -> Result<Cone> {
        let c: ConeJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let gens: Vec<IntVec> = c.rays.iter().map(|r| linalg::int_vec(r)).collect();
        Cone::from_generators(QuotientContext::plain(c.ambient_dim), Side::N, &gens)
    }

    /// Full-coordinate JSON in the same format.
    pub fn to_json(&self) -> String {
        let rays: Vec<Vec<i64>> = (0..self.rays.len())
            .map(|i| linalg::to_i64(&self.ray_full(i)).expect("ray coordinates fit in i64"))
            .collect();
        serde_json::to_string(&ConeJson { ambient_dim: self.ctx.ambient_len(), rays }).expect("cone serializes")
    }

    pub fn ctx(&self) -> QuotientContext {
        self.ctx
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn ambient_dim(&self) -> usize {
        self.ctx.rank()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn facet_normals(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn facet_mask(&self, f: usize) -> &Bits {
        &self.facet_masks[f]
    }

    pub fn ray_full(&self, i: usize) -> IntVec {
        match self.side {
            Side::N => self.ctx.n_lift(&self.rays[i]),
            Side::M => self.ctx.m_lift(&self.rays[i]),
        }
    }

    pub fn ray_n(&self, i: usize) -> NVector {
        debug_assert_eq!(self.side, Side::N);
        NVector { coords: self.ray_full(i), ctx: self.ctx }
    }

    pub fn ray_m(&self, i: usize) -> MVector {
        debug_assert_eq!(self.side, Side::M);
        MVector { coords: self.ray_full(i), ctx: self.ctx }
    }

    pub fn rays_i64(&self) -> Option<Vec<Vec<i64>>> {
        self.rays.iter().map(|r| linalg::to_i64(r)).collect()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.equations.iter().all(|e| linalg::dot(e, x).is_zero())
            && self.facets.iter().all(|f| !linalg::dot(f, x).is_negative())
    }

    fn rank_of(&self, rays: &Bits) -> usize {
        let rows: Vec<IntVec> = rays.iter().map(|i| self.rays[i].clone()).collect();
        match rows.iter().map(|r| linalg::to_i64(r)).collect::<Option<Vec<_>>>() {
            Some(small) => linalg::rank_i64(&small),
            None => linalg::rank(&rows),
        }
    }

    /// Smallest face containing the given rays.
    pub fn closure(&self, rays: &Bits) -> FaceDescriptor {
        let mut face = Bits::full(self.rays.len());
        let mut facets = Vec::new();
        for (f, mask) in self.facet_masks.iter().enumerate() {
            if rays.is_subset(mask) {
                face.and_assign(mask);
                facets.push(f);
            }
        }
        FaceDescriptor { dim: self.rank_of(&face), ray_indices: face.to_vec(), facet_indices: facets }
    }

    pub fn minimal_face_containing(&self, rays: &[usize]) -> FaceDescriptor {
        self.closure(&Bits::from_indices(self.rays.len(), rays.iter().copied()))
    }

    /// All faces of dimension at most `max_dim`, apex included, ordered by
    /// dimension then ray list.
    pub fn face_lattice(&self, max_dim: usize) -> Vec<FaceDescriptor> {
        let nr = self.rays.len();
        let apex = self.closure(&Bits::new(nr));
        let mut out = vec![apex.clone()];
        let mut layer = vec![apex];
        while let Some(d) = layer.first().map(|f| f.dim) {
            if d >= max_dim {
                break;
            }
            let mut next: BTreeSet<FaceDescriptor> = BTreeSet::new();
            for face in &layer {
                let base = Bits::from_indices(nr, face.ray_indices.iter().copied());
                for r in 0..nr {
                    if base.contains(r) {
                        continue;
                    }
                    let mut s = base.clone();
                    s.insert(r);
                    let c = self.closure(&s);
                    if c.dim == d + 1 {
                        next.insert(c);
                    }
                }
            }
            layer = next.into_iter().collect();
            out.extend(layer.iter().cloned());
        }
        out
    }

    pub fn faces_of_dim(&self, dim: usize) -> Vec<FaceDescriptor> {
        self.face_lattice(dim).into_iter().filter(|f| f.dim == dim).collect()
    }

    /// Whether ray `i` lies outside the cone generated by the other rays.
    pub fn ray_is_extremal_by_lp(&self, i: usize) -> bool {
        let others: Vec<IntVec> = (0..self.rays.len()).filter(|&j| j != i).map(|j| self.rays[j].clone()).collect();
        !in_cone_lp(&others, &self.rays[i])
    }
}

/// The dual cone. A cone that is not full-dimensional is first rewritten in a
/// basis of its saturated span, so the result lives in a plain lattice of that
/// rank.
pub fn dualize(c: &Cone) -> Result<Cone> {
    if c.is_full_dimensional() {
        return Cone::from_generators(c.ctx, c.side.flip(), &c.facets);
    }
    let basis = linalg::saturated_basis(&c.rays, c.ctx.rank());
    let r = basis.len();
    let coords: Vec<IntVec> = c
        .rays
        .iter()
        .map(|ray| {
            linalg::coordinates_in(&basis, ray)
                .expect("ray lies in its own span")
                .into_iter()
                .map(|q| {
                    debug_assert!(q.is_integer());
                    q.to_integer()
                })
                .collect()
        })
        .collect();
    let inner = Cone::from_generators(QuotientContext::plain(r), c.side, &coords)?;
    Cone::from_generators(QuotientContext::plain(r), c.side.flip(), &inner.facets)
}

/// Exact feasibility of `sum λ_i g_i = x` with `λ >= 0`: phase one of the
/// simplex method with Bland's rule over the rationals.
pub fn in_cone_lp(gens: &[IntVec], x: &[Int]) -> bool {
    let k = x.len();
    let p = gens.len();
    let cols = p + k;
    // tableau rows: k constraints, then the phase-one objective
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(k + 1);
    for row in 0..k {
        let flip = x[row].is_negative();
        let sgn = |v: &Int| Rat::from_integer(if flip { -v.clone() } else { v.clone() });
        let mut r: Vec<Rat> = gens.iter().map(|g| sgn(&g[row])).collect();
        r.extend((0..k).map(|j| if j == row { Rat::one() } else { Rat::zero() }));
        r.push(sgn(&x[row]));
        t.push(r);
    }
    // minimize the sum of artificials: reduced costs are minus the column sums
    let mut obj = vec![Rat::zero(); cols + 1];
    for r in &t {
        for (j, v) in r.iter().enumerate() {
            if j < p || j == cols {
                obj[j] -= v;
            }
        }
    }
    t.push(obj);
    let mut basis: Vec<usize> = (p..p + k).collect();
    loop {
        let Some(enter) = (0..cols).find(|&j| t[k][j].is_negative()) else { break };
        let mut leave: Option<usize> = None;
        for i in 0..k {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][cols] / &t[i][enter];
            leave = match leave {
                None => Some(i),
                Some(l) => {
                    let best = &t[l][cols] / &t[l][enter];
                    if ratio < best || (ratio == best && basis[i] < basis[l]) {
                        Some(i)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        let Some(l) = leave else { break };
        let pv = t[l][enter].clone();
        for v in t[l].iter_mut() {
            *v = &*v / &pv;
        }
        for i in 0..=k {
            if i != l && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..=cols {
                    let d = &f * &t[l][j];
                    t[i][j] -= d;
                }
            }
        }
        basis[l] = enter;
    }
    t[k][cols].is_zero()
}

/// A lattice point of the cone inside the box `|x_i| <= bound` (reduced
/// coordinates) that is not a nonnegative integer combination of `gens`.
pub fn hilbert_witness(ctx: QuotientContext, gens: &[IntVec], bound: i64) -> Result<Option<Vec<i64>>> {
    let cone = Cone::from_generators(ctx, Side::M, gens)?;
    let small = |v: &[IntVec]| -> Result<Vec<Vec<i64>>> {
        v.iter()
            .map(|r| linalg::to_i64(r).ok_or_else(|| Error::CrossCheck("coordinates exceed i64".into())))
            .collect()
    };
    let facets = small(cone.facet_normals())?;
    let eqs = small(cone.equations())?;
    let g = small(gens)?;
    let k = ctx.rank();
    // strictly positive on nonzero cone points, so the recursion terminates
    let grade: Vec<i64> = (0..k).map(|i| facets.iter().map(|f| f[i]).sum()).collect();
    let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
    let inside = |x: &[i64]| eqs.iter().all(|e| dot(e, x) == 0) && facets.iter().all(|f| dot(f, x) >= 0);

    fn representable(
        x: &[i64],
        g: &[Vec<i64>],
        inside: &dyn Fn(&[i64]) -> bool,
        memo: &mut HashMap<Vec<i64>, bool>,
    ) -> bool {
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if let Some(&b) = memo.get(x) {
            return b;
        }
        let mut ok = false;
        for gi in g {
            let y: Vec<i64> = x.iter().zip(gi).map(|(a, b)| a - b).collect();
            if inside(&y) && representable(&y, g, inside, memo) {
                ok = true;
                break;
            }
        }
        memo.insert(x.to_vec(), ok);
        ok
    }

    let mut memo = HashMap::new();
    let mut x = vec![-bound; k];
    loop {
        if inside(&x) && dot(&grade, &x) > 0 && !representable(&x, &g, &inside, &mut memo) {
            return Ok(Some(x));
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok(None);
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// True when no witness against the Hilbert-basis property exists in the box.
pub fn hilbert_basis_check(gens: &[MVector], bound: i64) -> Result<bool> {
    let ctx = gens.first().ok_or(Error::EmptyInput)?.ctx;
    let red: Vec<IntVec> = gens.iter().map(|g| g.reduced().to_vec()).collect();
    Ok(hilbert_witness(ctx, &red, bound)?.is_none())
}
