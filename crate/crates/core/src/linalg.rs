//! Exact integer and rational linear algebra used by the lattice and cone code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;
pub type IntVec = Vec<BigInt>;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[Int], b: &[Int]) -> Int {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Int::zero(), |acc, (x, y)| acc + x * y)
}

pub fn gcd_of(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn make_primitive(v: &mut [Int]) {
    let g = gcd_of(v);
    if g.is_zero() || g.is_one() {
        return;
    }
    for x in v.iter_mut() {
        *x = &*x / &g;
    }
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Row-reduces a copy of `rows` over the rationals and returns the rank.
pub fn rank(rows: &[IntVec]) -> usize {
    let rat: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();
    rank_rat(rat)
}

pub fn rank_rat(mut rows: Vec<Vec<Rat>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in (r + 1)..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for k in c..ncols {
                let delta = &f * &rows[r][k];
                rows[i][k] -= delta;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Result of a Smith normal form computation on a `rows x cols` integer matrix.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Nonzero invariant factors, each dividing the next, all positive.
    pub invariants: Vec<Int>,
    /// Inverse of the accumulated column transform: the input equals
    /// `U^-1 * D * col_inverse`, so the first `rank` rows of this matrix form a
    /// basis of the saturation of the row lattice.
    pub col_inverse: Vec<IntVec>,
    /// Unimodular `U` (rows x rows) and `W` (cols x cols) with `U * A * W = D`.
    pub row_transform: Vec<IntVec>,
    pub col_transform: Vec<IntVec>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_unimodular_embedding(&self) -> bool {
        self.invariants.iter().all(|d| d.is_one())
    }
}

pub fn smith_normal_form(rows: &[IntVec], cols: usize) -> SmithForm {
    let mut a: Vec<IntVec> = rows.to_vec();
    let nrows = a.len();
    let identity = |k: usize| -> Vec<IntVec> {
        (0..k).map(|i| (0..k).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
    };
    let mut w = identity(cols);
    let mut u = identity(nrows);
    let mut wt = identity(cols);
    let mut diag = Vec::new();

    let mut t = 0;
    while t < nrows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..cols {
                if a[i][j].is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a[bi][bj].abs() <= a[i][j].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in wt.iter_mut() {
                row.swap(t, pj);
            }
            w.swap(t, pj);
        }

        loop {
            let mut dirty = false;
            for i in (t + 1)..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for k in t..cols {
                    let delta = &q * &a[t][k];
                    a[i][k] -= delta;
                }
                let ut = u[t].clone();
                for (x, y) in u[i].iter_mut().zip(ut.iter()) {
                    *x -= &q * y;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in (t + 1)..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                for row in wt.iter_mut() {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                // column j -= q * column t  ==>  row t of W += q * row j
                let wj = w[j].clone();
                for (x, y) in w[t].iter_mut().zip(wj.iter()) {
                    *x += &q * y;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // enforce divisibility of the trailing block
                let mut fix = None;
                'outer: for i in (t + 1)..nrows {
                    for j in (t + 1)..cols {
                        if !(&a[i][j] % &a[t][t]).is_zero() {
                            fix = Some(i);
                            break 'outer;
                        }
                    }
                }
                match fix {
                    Some(i) => {
                        for k in t..cols {
                            let v = a[i][k].clone();
                            a[t][k] += v;
                        }
                        let ui = u[i].clone();
                        for (x, y) in u[t].iter_mut().zip(ui.iter()) {
                            *x += y;
                        }
                        continue;
                    }
                    None => break,
                }
            }
            // move the smallest remaining entry of row/column t into the pivot
            let mut best = (t, t);
            for i in t..nrows {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                for row in wt.iter_mut() {
                    row.swap(t, best.1);
                }
                w.swap(t, best.1);
            }
        }

        if a[t][t].is_negative() {
            for k in t..cols {
                a[t][k] = -a[t][k].clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        diag.push(a[t][t].clone());
        t += 1;
    }

    SmithForm { invariants: diag, col_inverse: w, row_transform: u, col_transform: wt }
}

/// An integer solution of `A x = b`, if one exists.
pub fn solve_integral(rows: &[IntVec], cols: usize, b: &[Int]) -> Option<IntVec> {
    let snf = smith_normal_form(rows, cols);
    let ub: IntVec = snf.row_transform.iter().map(|r| dot(r, b)).collect();
    let r = snf.rank();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![Int::zero(); cols];
    for i in 0..r {
        let (q, rem) = ub[i].div_rem(&snf.invariants[i]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some((0..cols).map(|i| dot(&snf.col_transform[i], &y)).collect())
}

/// A basis of `span_Q(rows) ∩ Z^cols`.
pub fn saturated_basis(rows: &[IntVec], cols: usize) -> Vec<IntVec> {
    let snf = smith_normal_form(rows, cols);
    snf.col_inverse.into_iter().take(snf.invariants.len()).collect()
}

/// Solves `x = sum_i c_i basis_i` over the rationals. `None` when `x` is not in
/// the span.
pub fn coordinates_in(basis: &[IntVec], x: &[Int]) -> Option<Vec<Rat>> {
    let k = basis.len();
    let d = x.len();
    // augmented system: d equations, k unknowns
    let mut m: Vec<Vec<Rat>> = (0..d)
        .map(|row| {
            let mut r: Vec<Rat> = basis.iter().map(|b| Rat::from_integer(b[row].clone())).collect();
            r.push(Rat::from_integer(x[row].clone()));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..d).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = &*v / &pivot;
        }
        for i in 0..d {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for col in c..=k {
                    let delta = &f * &m[r][col];
                    m[i][col] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m.iter().skip(r).any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut out = vec![Rat::zero(); k];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = m[row][k].clone();
    }
    Some(out)
}

/// Rank of a small integer matrix. Fraction-free elimination in `i128`, with a
/// rational fallback on overflow.
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    fn attempt(rows: &[Vec<i64>]) -> Option<usize> {
        let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        if a.is_empty() {
            return Some(0);
        }
        let ncols = a[0].len();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, p);
            for i in (r + 1)..a.len() {
                if a[i][c] == 0 {
                    continue;
                }
                let (pv, f) = (a[r][c], a[i][c]);
                let mut g: i128 = 0;
                for k in c..ncols {
                    let v = a[i][k].checked_mul(pv)?.checked_sub(a[r][k].checked_mul(f)?)?;
                    a[i][k] = v;
                    g = gcd_i128(g, v);
                }
                if g > 1 {
                    for v in a[i][c..].iter_mut() {
                        *v /= g;
                    }
                }
            }
            r += 1;
            if r == a.len() {
                break;
            }
        }
        Some(r)
    }
    attempt(rows).unwrap_or_else(|| {
        let big: Vec<IntVec> = rows.iter().map(|r| int_vec(r)).collect();
        rank(&big)
    })
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn to_i64(v: &[Int]) -> Option<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).ok()).collect()
}
