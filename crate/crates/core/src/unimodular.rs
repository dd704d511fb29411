//! Rectangular unimodular `k x m` matrices over `H_S`.
//!
//! `M` is unimodular when its maximal minors generate the unit ideal. Since
//! `H_S` is a principal ideal domain this reduces to a gcd computation: the
//! finite places of `S` are read off the gcd of the minor numerators, and
//! the infinite place (when it lies in `S`) from the minor valuations.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use crate::error::invalid;
use crate::holomorphy::HolomorphySpec;
use crate::local::LocalRing;
use crate::places::{Place, RationalFunction, RationalFunctionField, Valuation};
use crate::polyring::Poly;
use crate::rational::one_minus_q_inv;
use crate::zeta::{zeta_h, LPolynomial};
use crate::{Error, Result};

/// A `k x m` matrix over `H_S`, stored row-major, with `1 <= k < m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<RationalFunction>,
}

impl PolyMatrix {
    /// Checks the shape and that every entry lies in `H_S`.
    pub fn new(spec: &HolomorphySpec, rows: usize, cols: usize, entries: Vec<RationalFunction>) -> Result<Self> {
        check_shape(rows, cols)?;
        if entries.len() != rows * cols {
            return Err(invalid!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            ));
        }
        if let Some(bad) = entries.iter().find(|u| !spec.in_holomorphy_ring(u)) {
            return Err(invalid!("entry {bad:?} is not in the holomorphy ring"));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(spec: &HolomorphySpec, rows: Vec<Vec<RationalFunction>>) -> Result<Self> {
        let k = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(invalid!("rows have different lengths"));
        }
        Self::new(spec, k, m, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[RationalFunction] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &RationalFunction {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[RationalFunction] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }
}

fn check_shape(k: usize, m: usize) -> Result<()> {
    if k < 1 || k >= m {
        return Err(invalid!("a rectangular matrix needs 1 <= k < m (got k = {k}, m = {m})"));
    }
    Ok(())
}

/// Column index sets of size `k` from `0..m`, lexicographic.
pub fn column_subsets(k: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Determinant of a square matrix over `F_q(x)`: cofactor expansion up to
/// size 4, Bareiss elimination above.
pub fn determinant(ff: &RationalFunctionField, a: &[RationalFunction], n: usize) -> RationalFunction {
    if n <= 4 {
        cofactor(ff, a, n, &(0..n).collect::<Vec<_>>(), 0)
    } else {
        bareiss(ff, a.to_vec(), n)
    }
}

fn cofactor(
    ff: &RationalFunctionField,
    a: &[RationalFunction],
    n: usize,
    cols: &[usize],
    row: usize,
) -> RationalFunction {
    if cols.len() == 1 {
        return a[row * n + cols[0]].clone();
    }
    let mut acc = RationalFunction::zero();
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &a[row * n + c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = ff.mul(entry, &cofactor(ff, a, n, &rest, row + 1));
        acc = if idx % 2 == 0 {
            ff.add(&acc, &term)
        } else {
            ff.sub(&acc, &term)
        };
    }
    acc
}

fn bareiss(ff: &RationalFunctionField, mut a: Vec<RationalFunction>, n: usize) -> RationalFunction {
    let mut negate = false;
    let mut prev = RationalFunction::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return RationalFunction::zero();
            };
            for c in 0..n {
                a.swap(k * n + c, r * n + c);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ff.sub(
                    &ff.mul(&a[i * n + j], &a[k * n + k]),
                    &ff.mul(&a[i * n + k], &a[k * n + j]),
                );
                a[i * n + j] = ff.div(&num, &prev).expect("Bareiss pivot is nonzero");
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if negate {
        ff.neg(&det)
    } else {
        det
    }
}

fn minors_of(ff: &RationalFunctionField, entries: &[RationalFunction], k: usize, m: usize) -> Vec<RationalFunction> {
    column_subsets(k, m)
        .into_iter()
        .map(|cols| {
            let sub: Vec<RationalFunction> = (0..k)
                .flat_map(|i| cols.iter().map(move |&j| entries[i * m + j].clone()))
                .collect();
            determinant(ff, &sub, k)
        })
        .collect()
}

/// All `C(m, k)` maximal minors, columns in lexicographic order.
pub fn maximal_minors(ff: &RationalFunctionField, mat: &PolyMatrix) -> Vec<RationalFunction> {
    minors_of(ff, &mat.entries, mat.rows, mat.cols)
}

/// Unit-ideal test for a list of elements of `H_S`.
pub fn generate_unit_ideal(spec: &HolomorphySpec, elems: &[RationalFunction]) -> bool {
    let ring = spec.function_field().ring();
    let mut g = Poly::zero();
    for u in elems {
        if !u.is_zero() {
            g = if g.is_zero() {
                ring.monic(u.num())
            } else {
                ring.gcd(&g, u.num()).expect("nonzero gcd")
            };
        }
    }
    if g.is_zero() || !spec.strip_excluded(&g).is_constant() {
        return false;
    }
    !spec.infinity_in_s()
        || elems
            .iter()
            .any(|u| spec.function_field().valuation(u, &Place::Infinity) == Valuation::Finite(0))
}

/// Unimodularity of a row-major `k x m` block of entries already in `H_S`.
pub fn is_unimodular_entries(spec: &HolomorphySpec, entries: &[RationalFunction], k: usize, m: usize) -> bool {
    generate_unit_ideal(spec, &minors_of(spec.function_field(), entries, k, m))
}

/// The maximal minors of `M` generate `H_S`.
pub fn is_unimodular(mat: &PolyMatrix, spec: &HolomorphySpec) -> bool {
    is_unimodular_entries(spec, &mat.entries, mat.rows, mat.cols)
}

/// Rank of `M mod P` over the residue field `O_P/P`, for `P` in `S`.
pub fn residue_rank(ff: &RationalFunctionField, mat: &PolyMatrix, place: &Place) -> Result<usize> {
    let ring = LocalRing::new(ff, place, 1)?;
    let reduced: Option<Vec<u32>> = mat.entries.iter().map(|u| ring.reduce(u)).collect();
    let reduced = reduced.ok_or_else(|| invalid!("matrix entry is not integral at {place:?}"))?;
    ring.rank(&reduced, mat.rows, mat.cols)
}

/// `1 - prod_{i=0}^{k-1} (1 - q^{-d(m-i)})` for `d = deg P`.
pub fn local_nonunimodular_measure_for_degree(q: u64, d: usize, k: usize, m: usize) -> Result<BigRational> {
    check_shape(k, m)?;
    let survive = (0..k).fold(BigRational::one(), |acc, i| {
        acc * one_minus_q_inv(q, (d * (m - i)) as u64)
    });
    Ok(BigRational::one() - survive)
}

pub fn local_nonunimodular_measure(q: u64, place: &Place, k: usize, m: usize) -> Result<BigRational> {
    local_nonunimodular_measure_for_degree(q, place.degree(), k, m)
}

/// Rank census over `(O_P/P)^{k x m}`: the fraction of rank-deficient matrices.
pub fn local_nonunimodular_bruteforce(
    ff: &RationalFunctionField,
    place: &Place,
    k: usize,
    m: usize,
    cap: u64,
) -> Result<BigRational> {
    check_shape(k, m)?;
    let ring = LocalRing::new(ff, place, 1)?;
    let size = ring.size() as u64;
    let cells = k * m;
    let total = u32::try_from(cells)
        .ok()
        .and_then(|c| size.checked_pow(c))
        .filter(|&t| t <= cap)
        .ok_or_else(|| Error::TooLarge {
            what: alloc::format!("(O_P/P)^({k}x{m})"),
            size: alloc::format!("{size}^{cells}"),
            cap,
        })?;
    let mut deficient: u64 = 0;
    let mut entries = vec![0u32; cells];
    for _ in 0..total {
        if ring.rank(&entries, k, m)? < k {
            deficient += 1;
        }
        for e in entries.iter_mut() {
            *e += 1;
            if (*e as u64) < size {
                break;
            }
            *e = 0;
        }
    }
    Ok(BigRational::new(deficient.into(), total.into()))
}

/// `prod_{i=m-k+1}^{m} 1 / zeta_H(i)`.
pub fn unimodular_density_exact(spec: &HolomorphySpec, k: usize, m: usize, l: &LPolynomial) -> Result<BigRational> {
    check_shape(k, m)?;
    let mut acc = BigRational::one();
    for i in m - k + 1..=m {
        acc /= zeta_h(i as i64, spec, l)?;
    }
    Ok(acc)
}
