//! The lattice pair `N = Z^{m+n}/Zw` and `M = Z^{m+n} ∩ w^⊥` with
//! `w = (1,..,1,-1,..,-1)`.
//!
//! Canonical representatives of `N` have last coordinate zero. Dropping that
//! coordinate identifies `N` with `Z^{m+n-1}`; dropping the last coordinate of an
//! element of `M` identifies `M` with `Z^{m+n-1}` too, and the pairing becomes
//! the standard dot product. The polyhedral code works in these reduced
//! coordinates. A plain context has no quotient and is the identity on `Z^d`.

use crate::linalg::{self, Int, IntVec};
use crate::{Error, Result};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuotientContext {
    Graph { m: usize, n: usize },
    Plain { dim: usize },
}

impl QuotientContext {
    pub fn graph(m: usize, n: usize) -> Self {
        assert!(m >= 1 && n >= 1, "both vertex classes must be nonempty");
        QuotientContext::Graph { m, n }
    }

    pub fn plain(dim: usize) -> Self {
        QuotientContext::Plain { dim }
    }

    /// Length of a full coordinate vector.
    pub fn ambient_len(&self) -> usize {
        match *self {
            QuotientContext::Graph { m, n } => m + n,
            QuotientContext::Plain { dim } => dim,
        }
    }

    /// Rank of `N` (and of `M`).
    pub fn rank(&self) -> usize {
        match *self {
            QuotientContext::Graph { m, n } => m + n - 1,
            QuotientContext::Plain { dim } => dim,
        }
    }

    pub fn is_plain(&self) -> bool {
        matches!(self, QuotientContext::Plain { .. })
    }

    pub fn w(&self) -> Option<IntVec> {
        match *self {
            QuotientContext::Graph { m, n } => {
                Some((0..m + n).map(|i| if i < m { Int::from(1) } else { Int::from(-1) }).collect())
            }
            QuotientContext::Plain { .. } => None,
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_len() {
            return Err(Error::LengthMismatch { expected: self.ambient_len(), got: len });
        }
        Ok(())
    }

    /// Reduced coordinates of a full `N` vector (canonicalized first).
    pub fn n_reduce(&self, raw: &[Int]) -> Result<IntVec> {
        let v = canonicalize(raw, *self)?;
        Ok(v.coords[..self.rank()].to_vec())
    }

    /// Full canonical coordinates from reduced `N` coordinates.
    pub fn n_lift(&self, reduced: &[Int]) -> IntVec {
        debug_assert_eq!(reduced.len(), self.rank());
        let mut v = reduced.to_vec();
        if !self.is_plain() {
            v.push(Int::zero());
        }
        v
    }

    /// Reduced coordinates of an `M` vector.
    pub fn m_reduce(&self, full: &[Int]) -> Result<IntVec> {
        let u = MVector::new(full.to_vec(), *self)?;
        Ok(u.coords[..self.rank()].to_vec())
    }

    /// Full coordinates from reduced `M` coordinates: the last entry balances the
    /// two coordinate sums.
    pub fn m_lift(&self, reduced: &[Int]) -> IntVec {
        debug_assert_eq!(reduced.len(), self.rank());
        let mut v = reduced.to_vec();
        if let QuotientContext::Graph { m, .. } = *self {
            let left: Int = reduced[..m].iter().sum();
            let right: Int = reduced[m..].iter().sum();
            v.push(left - right);
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NVector {
    pub coords: IntVec,
    pub ctx: QuotientContext,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MVector {
    pub coords: IntVec,
    pub ctx: QuotientContext,
}

impl NVector {
    pub fn new(raw: IntVec, ctx: QuotientContext) -> Result<Self> {
        canonicalize(&raw, ctx)
    }

    pub fn from_i64(raw: &[i64], ctx: QuotientContext) -> Result<Self> {
        canonicalize(&linalg::int_vec(raw), ctx)
    }

    pub fn reduced(&self) -> &[Int] {
        &self.coords[..self.ctx.rank()]
    }

    pub fn is_zero(&self) -> bool {
        linalg::is_zero_vec(&self.coords)
    }
}

impl MVector {
    pub fn new(coords: IntVec, ctx: QuotientContext) -> Result<Self> {
        ctx.check_len(coords.len())?;
        if let QuotientContext::Graph { m, .. } = ctx {
            let left: Int = coords[..m].iter().sum();
            let right: Int = coords[m..].iter().sum();
            if left != right {
                return Err(Error::NotInM(to_i64_lossy(&coords)));
            }
        }
        Ok(MVector { coords, ctx })
    }

    pub fn from_i64(coords: &[i64], ctx: QuotientContext) -> Result<Self> {
        Self::new(linalg::int_vec(coords), ctx)
    }

    pub fn reduced(&self) -> &[Int] {
        &self.coords[..self.ctx.rank()]
    }
}

pub(crate) fn to_i64_lossy(v: &[Int]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap_or(if x.is_negative() { i64::MIN } else { i64::MAX })).collect()
}

pub fn canonicalize(raw: &[Int], ctx: QuotientContext) -> Result<NVector> {
    ctx.check_len(raw.len())?;
    let mut coords = raw.to_vec();
    if let Some(w) = ctx.w() {
        let k = coords[coords.len() - 1].clone();
        if !k.is_zero() {
            for (c, wi) in coords.iter_mut().zip(&w) {
                *c += &k * wi;
            }
        }
        debug_assert!(coords.last().unwrap().is_zero());
    }
    Ok(NVector { coords, ctx })
}

pub fn pairing(u: &MVector, v: &NVector) -> Result<Int> {
    if u.ctx != v.ctx {
        return Err(Error::ContextMismatch);
    }
    Ok(linalg::dot(&u.coords, &v.coords))
}

pub fn primitive_part(v: &NVector) -> Result<NVector> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let mut coords = v.coords.clone();
    linalg::make_primitive(&mut coords);
    Ok(NVector { coords, ctx: v.ctx })
}

/// Whether the rays extend to a basis of `N`, decided on reduced coordinates by
/// the Smith form (all invariant factors one).
pub fn is_smooth_ray_set(rays: &[NVector], ctx: QuotientContext) -> Result<bool> {
    if rays.iter().any(|r| r.ctx != ctx) {
        return Err(Error::ContextMismatch);
    }
    let rows: Vec<IntVec> = rays.iter().map(|r| r.reduced().to_vec()).collect();
    is_smooth_reduced(&rows, ctx.rank())
}

pub fn is_smooth_reduced(rows: &[IntVec], rank: usize) -> Result<bool> {
    let snf = linalg::smith_normal_form(rows, rank);
    if snf.rank() < rows.len() {
        return Err(Error::DependentRays);
    }
    Ok(snf.is_unimodular_embedding())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use proptest::prelude::*;

    fn k22() -> QuotientContext {
        QuotientContext::graph(2, 2)
    }

    #[test]
    fn canonical_forms() {
        let c = k22();
        assert!(NVector::from_i64(&[1, 1, -1, -1], c).unwrap().is_zero());
        assert_eq!(NVector::from_i64(&[0, 1, -1, 0], c).unwrap().coords, int_vec(&[0, 1, -1, 0]));
        assert_eq!(NVector::from_i64(&[0, 0, 0, 1], c).unwrap().coords, int_vec(&[1, 1, -1, 0]));
        assert!(matches!(NVector::from_i64(&[0, 0, 1], c), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn pairing_examples() {
        let c = k22();
        let u = MVector::from_i64(&[1, 1, 1, 1], c).unwrap();
        let e1 = NVector::from_i64(&[1, 0, 0, 0], c).unwrap();
        assert_eq!(pairing(&u, &e1).unwrap(), Int::from(1));
        let f2 = NVector::from_i64(&[0, 0, 0, 1], c).unwrap();
        assert_eq!(f2.coords, int_vec(&[1, 1, -1, 0]));
        assert_eq!(pairing(&u, &f2).unwrap(), Int::from(1));

        let p = QuotientContext::plain(4);
        let r2 = MVector::from_i64(&[0, 1, 0, 1], p).unwrap();
        let a4 = NVector::from_i64(&[0, 0, 1, 1], p).unwrap();
        assert_eq!(pairing(&r2, &a4).unwrap(), Int::from(1));
        assert_eq!(pairing(&r2, &e1), Err(Error::ContextMismatch));
    }

    #[test]
    fn m_membership() {
        assert!(matches!(MVector::from_i64(&[1, 0, 0, 0], k22()), Err(Error::NotInM(_))));
        let c = QuotientContext::graph(2, 3);
        let full = int_vec(&[2, -1, 0, 3, -2]);
        let red = c.m_reduce(&full).unwrap();
        assert_eq!(c.m_lift(&red), full);
    }

    #[test]
    fn primitive_examples() {
        let c = k22();
        let pp = |v: &[i64]| primitive_part(&NVector::from_i64(v, c).unwrap()).unwrap().coords;
        assert_eq!(pp(&[0, 2, -2, 0]), int_vec(&[0, 1, -1, 0]));
        assert_eq!(pp(&[0, 1, -1, 0]), int_vec(&[0, 1, -1, 0]));
        assert_eq!(pp(&[3, 3, -3, 0]), int_vec(&[1, 1, -1, 0]));
        assert_eq!(primitive_part(&NVector::from_i64(&[1, 1, -1, -1], c).unwrap()), Err(Error::ZeroVector));
    }

    #[test]
    fn smoothness_examples() {
        let c = k22();
        let e1 = NVector::from_i64(&[1, 0, 0, 0], c).unwrap();
        let f1 = NVector::from_i64(&[0, 0, 1, 0], c).unwrap();
        assert!(is_smooth_ray_set(&[e1.clone(), f1.clone()], c).unwrap());
        let p = QuotientContext::plain(2);
        let a = NVector::from_i64(&[1, 0], p).unwrap();
        let b = NVector::from_i64(&[1, 2], p).unwrap();
        assert!(!is_smooth_ray_set(&[a, b], p).unwrap());
        assert_eq!(is_smooth_ray_set(&[e1.clone(), e1], c), Err(Error::DependentRays));
    }

    #[test]
    fn two_sided_ray_with_basis_vectors_is_smooth() {
        // c = e_2 + e_3 - f_1 in K_{3,3}, together with e_1 and f_2
        let c = QuotientContext::graph(3, 3);
        let rays: Vec<NVector> = [[0, 1, 1, -1, 0, 0], [1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0]]
            .iter()
            .map(|v| NVector::from_i64(v, c).unwrap())
            .collect();
        assert!(is_smooth_ray_set(&rays, c).unwrap());
    }

    fn small_vec(len: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-20i64..=20, len)
    }

    proptest! {
        #[test]
        fn canonicalize_constant_on_cosets(m in 1usize..5, n in 1usize..5, seed in small_vec(8), k in -10i64..=10) {
            let c = QuotientContext::graph(m, n);
            let raw: Vec<i64> = seed.into_iter().cycle().take(m + n).collect();
            let shifted: Vec<i64> = raw.iter().enumerate().map(|(i, x)| x + if i < m { k } else { -k }).collect();
            let a = NVector::from_i64(&raw, c).unwrap();
            let b = NVector::from_i64(&shifted, c).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(canonicalize(&a.coords, c).unwrap(), a);
        }

        #[test]
        fn pairing_constant_on_cosets(m in 1usize..5, n in 1usize..5, seed in small_vec(8), useed in small_vec(8), k in -10i64..=10) {
            let c = QuotientContext::graph(m, n);
            let raw: Vec<i64> = seed.into_iter().cycle().take(m + n).collect();
            let mut u: Vec<i64> = useed.into_iter().cycle().take(m + n).collect();
            let bal: i64 = u[..m].iter().sum::<i64>() - u[m..m + n - 1].iter().sum::<i64>();
            u[m + n - 1] = bal;
            let u = MVector::from_i64(&u, c).unwrap();
            let shifted: Vec<Int> = raw.iter().enumerate().map(|(i, x)| Int::from(x + if i < m { k } else { -k })).collect();
            let direct = linalg::dot(&u.coords, &shifted);
            prop_assert_eq!(pairing(&u, &NVector::from_i64(&raw, c).unwrap()).unwrap(), direct);
        }

        #[test]
        fn single_ray_smooth_iff_primitive(v in small_vec(4)) {
            let c = QuotientContext::graph(2, 3);
            let raw: Vec<i64> = v.into_iter().chain([0]).collect();
            let nv = NVector::from_i64(&raw, c).unwrap();
            prop_assume!(!nv.is_zero());
            let smooth = is_smooth_ray_set(std::slice::from_ref(&nv), c).unwrap();
            prop_assert_eq!(smooth, primitive_part(&nv).unwrap() == nv);
        }

        #[test]
        fn relabeling_commutes(seed in small_vec(5), perm_seed in 0usize..6) {
            // permute U_1 of a (3,2) context; canonicalization commutes since w is fixed
            let c = QuotientContext::graph(3, 2);
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            let p = perms[perm_seed];
            let apply = |v: &[i64]| -> Vec<i64> { (0..5).map(|i| if i < 3 { v[p[i]] } else { v[i] }).collect() };
            let a = NVector::from_i64(&apply(&seed), c).unwrap();
            let b = NVector::from_i64(&seed, c).unwrap();
            let b_perm: Vec<i64> = apply(&to_i64_lossy(&b.coords));
            prop_assert_eq!(a.coords, int_vec(&b_perm));
        }
    }
}
